"""Code tables and decoders for the [[7,1,3]] code and its [[49,1,9]] concatenation.

Qubits are labeled 1..7 (bit i-1 in packed masks) so that the check matrix
column of qubit j is the binary expansion of j.  A weight-w error pattern of a
single type (X or Z) is a 7- or 49-bit integer mask.  All decoders work on one
error type at a time; the code is self-dual so X and Z share every table.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

N7 = 7
N49 = 49
FULL7 = 127


def check_matrix() -> np.ndarray:
    """3x7 binary check matrix; column j (1-based) is binary(j)."""
    h = np.zeros((3, 7), dtype=np.int64)
    for j in range(1, 8):
        for k in range(3):
            h[k, j - 1] = (j >> k) & 1
    return h


def popcount(v: int) -> int:
    return bin(v).count("1")


def parity(v: int) -> int:
    return popcount(v) & 1


def syndrome_word(word: int) -> int:
    """Syndrome (0..7) of a 7-bit error indicator word."""
    s = 0
    for j in range(1, 8):
        if (word >> (j - 1)) & 1:
            s ^= j
    return s


# Lookup tables over all 128 single-type 7-bit patterns.
SYN7 = np.array([syndrome_word(w) for w in range(128)], dtype=np.int64)
PAR7 = np.array([parity(w) for w in range(128)], dtype=np.int64)


def _scan_cosets() -> tuple[np.ndarray, np.ndarray]:
    """Minimum weight and lexicographically-smallest representative for every
    (syndrome, logical class) coset, by exhaustive scan of the 128 patterns."""
    w = np.full((8, 2), 99, dtype=np.int64)
    rep = np.zeros((8, 2), dtype=np.int64)
    for v in range(128):
        s, b, wt = int(SYN7[v]), int(PAR7[v]), popcount(v)
        if wt < w[s, b] or (wt == w[s, b] and v < rep[s, b]):
            w[s, b] = wt
            rep[s, b] = v
    return w, rep


COSET_W, COSET_REP = _scan_cosets()

# Weight-3 logical representative used when the hierarchical decoder flips a
# whole block (syndrome 0, class 1 coset).
LOGICAL_REP7 = int(COSET_REP[0, 1])


def syndrome7(word: int) -> int:
    """Syndrome of a 7-bit mask (positions 1..7 at bits 0..6)."""
    return int(SYN7[word & FULL7])


def decode7(s: int) -> Optional[int]:
    """Position (1..7) of the single-bit pattern with syndrome s, or None."""
    if not 0 <= s <= 7:
        raise ValueError(f"syndrome out of range: {s}")
    return None if s == 0 else s


def logical_value(word: int) -> int:
    """Overlap parity with the transversal (all-ones) logical representative."""
    return int(PAR7[word & FULL7])


def coset_weights(s: int) -> tuple[int, int, int, int]:
    """(w0, rep0, w1, rep1): per-class minimum weights and representatives."""
    return (
        int(COSET_W[s, 0]),
        int(COSET_REP[s, 0]),
        int(COSET_W[s, 1]),
        int(COSET_REP[s, 1]),
    )


@dataclass(frozen=True)
class Syndrome49:
    """Two-level syndrome of one error type: 7 inner syndromes plus the outer
    syndrome of the 7 inner logical values (24 bits total)."""

    inner: tuple[int, ...]
    outer: int

    @classmethod
    def of_pattern(cls, v: int) -> "Syndrome49":
        """Syndrome of a 49-bit error pattern of a single type."""
        inner = tuple(int(SYN7[(v >> (7 * b)) & FULL7]) for b in range(7))
        lmask = 0
        for b in range(7):
            lmask |= int(PAR7[(v >> (7 * b)) & FULL7]) << b
        return cls(inner=inner, outer=int(SYN7[lmask]))

    def packed(self) -> int:
        p = 0
        for b in range(7):
            p |= self.inner[b] << (3 * b)
        return p | (self.outer << 21)

    @classmethod
    def from_packed(cls, p: int) -> "Syndrome49":
        return cls(
            inner=tuple((p >> (3 * b)) & 7 for b in range(7)),
            outer=(p >> 21) & 7,
        )

    @property
    def trivial(self) -> bool:
        return self.outer == 0 and all(s == 0 for s in self.inner)


@dataclass(frozen=True)
class CorrectionPlan:
    """A physical correction (49-bit flip mask) with its logical class."""

    mask: int
    logical_class: int

    @property
    def flips(self) -> frozenset[int]:
        return frozenset(q for q in range(1, 50) if (self.mask >> (q - 1)) & 1)

    @property
    def weight(self) -> int:
        return popcount(self.mask)


def decode49(s: Syndrome49) -> CorrectionPlan:
    """Exact minimum-weight decoding of the concatenated code.

    Enumerates the 128 inner-class vectors b; b is admissible when its own
    Hamming syndrome matches the outer syndrome, and its cost is the sum of
    per-block coset minimum weights.  Ties prefer logical class 0, then the
    lowest b; block representatives are the lexicographically smallest.
    """
    best_b, best_cost, best_cls = -1, 99, 2
    for b in range(128):
        if SYN7[b] != s.outer:
            continue
        cost = 0
        for i in range(7):
            cost += int(COSET_W[s.inner[i], (b >> i) & 1])
        cls = int(PAR7[b])
        if cost < best_cost or (
            cost == best_cost and (cls, b) < (best_cls, best_b)
        ):
            best_b, best_cost, best_cls = b, cost, cls
    mask = 0
    for i in range(7):
        mask |= int(COSET_REP[s.inner[i], (best_b >> i) & 1]) << (7 * i)
    return CorrectionPlan(mask=mask, logical_class=best_cls)


def hierarchical_decode49(s: Syndrome49) -> CorrectionPlan:
    """Level-by-level decoding: correct one bit per block, then decode the
    outer syndrome of the corrected logical values and flip one block."""
    mask = 0
    detected = 0
    for i in range(7):
        if s.inner[i]:
            mask |= 1 << (7 * i + s.inner[i] - 1)
            detected |= 1 << i
    # Inner corrections flip the affected blocks' logical values.
    outer = s.outer ^ int(SYN7[detected])
    if outer:
        mask ^= LOGICAL_REP7 << (7 * (outer - 1))
    cls = 0
    for i in range(7):
        cls ^= int(PAR7[(mask >> (7 * i)) & FULL7])
    return CorrectionPlan(mask=mask, logical_class=cls)


def true_class(v: int) -> int:
    """Outer logical value of a 49-bit single-type error pattern."""
    lmask = 0
    for b in range(7):
        lmask |= int(PAR7[(v >> (7 * b)) & FULL7]) << b
    return int(PAR7[lmask])


def crash_component(v: int) -> int:
    """1 iff perfect (minimum-weight) decoding of this component pattern
    lands in the wrong logical class."""
    s = Syndrome49.of_pattern(v)
    return decode49(s).logical_class ^ true_class(v)


def crash_check(x_mask: int, z_mask: int) -> int:
    """1 if either the X or the Z component of a 49-qubit frame crashes."""
    return 1 if (crash_component(x_mask) or crash_component(z_mask)) else 0
