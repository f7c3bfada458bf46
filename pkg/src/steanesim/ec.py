"""Error correction protocols on a 49-qubit data block.

Two protocols: the Steane baseline (level-by-level, with the low-memory-error
modification that extracts one syndrome at a time and stops early on trivial
or agreeing reads) and the single-syndrome procedure that decodes the full
[[49,1,9]] code from one transversal read with no 7-bit-level correction.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import hamming, kernel
from .ancilla import DEFAULT_BUDGET, FactoryStats, KernelRNG, ResourceExhausted
from .noise import NoiseParams
from .pauli import Frame

STEANE = "steane"
REJECT = "reject"
IDEAL = "ideal"

_SCHEME_CODE = {STEANE: kernel.STEANE, REJECT: kernel.REJECT, IDEAL: kernel.IDEAL}


def _type_code(ty: str) -> int:
    if ty == "X":
        return kernel.TX
    if ty == "Z":
        return kernel.TZ
    raise ValueError(f"error type must be 'X' or 'Z', got {ty!r}")


def pre_gate_ordering(role: str) -> tuple[str, str]:
    """Correction order before acting as `role` in the next transversal CNOT:
    control blocks correct Z then X (X errors copy control -> target, so the
    X correction should be freshest); targets are the dual case."""
    if role == "control":
        return ("Z", "X")
    if role == "target":
        return ("X", "Z")
    raise ValueError(f"role must be 'control' or 'target', got {role!r}")


@dataclass
class ECOutcome:
    syndromes_extracted: int
    correction_applied: bool


@dataclass
class DataBlock:
    """One logical qubit: its 49-qubit frame plus the outer syndromes carried
    from the previous round of each error type."""

    frame: Frame = field(default_factory=lambda: Frame(49))
    pend: np.ndarray = field(default_factory=lambda: np.zeros((2, 3), dtype=np.int64))
    pendn: np.ndarray = field(default_factory=lambda: np.zeros(2, dtype=np.int64))

    def crashed(self) -> bool:
        return bool(hamming.crash_check(self.frame.x_mask, self.frame.z_mask))


def extract_syndrome(data: DataBlock, ty: str, scheme: str, rng: KernelRNG,
                     noise: NoiseParams, checks: int = 4,
                     budget: int = DEFAULT_BUDGET) -> hamming.Syndrome49:
    """One transversal syndrome extraction against a fresh encoded ancilla.
    Side effects on the data frame (ancilla back-action and CNOT faults) are
    applied through the normal propagation rules."""
    gi = rng.bind(noise)
    ct = np.zeros(kernel.ROW_LEN, dtype=np.int64)
    ok, word, dx, dz = kernel.extract49(
        rng.rs, rng.cd, gi, np.int64(data.frame.x_mask), np.int64(data.frame.z_mask),
        _type_code(ty), _SCHEME_CODE[scheme], checks, budget, ct)
    if not ok:
        raise ResourceExhausted("ancilla budget exhausted during extraction")
    data.frame.x_mask = int(dx)
    data.frame.z_mask = int(dz)
    return hamming.Syndrome49.of_pattern(int(word))


def correct_single(data: DataBlock, ty: str, scheme: str, rng: KernelRNG,
                   noise: NoiseParams, checks: int = 4,
                   budget: int = DEFAULT_BUDGET) -> ECOutcome:
    """Single-syndrome distance-9 correction: one extraction, one decode49
    correction, never a 7-bit-level correction, never a second read."""
    gi = rng.bind(noise)
    ct = np.zeros(kernel.ROW_LEN, dtype=np.int64)
    ok, dx, dz = kernel.correct_single(
        rng.rs, rng.cd, gi, np.int64(data.frame.x_mask), np.int64(data.frame.z_mask),
        _type_code(ty), _SCHEME_CODE[scheme], checks, budget, ct)
    if not ok:
        raise ResourceExhausted("ancilla budget exhausted during correction")
    applied = (int(dx) != data.frame.x_mask) if ty == "X" else (int(dz) != data.frame.z_mask)
    data.frame.x_mask = int(dx)
    data.frame.z_mask = int(dz)
    return ECOutcome(syndromes_extracted=1, correction_applied=applied)


def correct_steane(data: DataBlock, ty: str, rng: KernelRNG, noise: NoiseParams,
                   checks: int = 4, budget: int = DEFAULT_BUDGET) -> ECOutcome:
    """Steane-baseline correction, level by level.

    Each sub-block gets one verified-ancilla syndrome read and an immediate
    single-bit correction; the block level then reads the outer syndrome of
    the inner-decoded logicals, acting on a nontrivial value only when it
    repeats (same round, or carried from the previous round of this type).
    """
    gi = rng.bind(noise)
    ct = np.zeros(kernel.ROW_LEN, dtype=np.int64)
    before = ct[kernel.R_SYND]
    ok, dx, dz = kernel.correct_steane(
        rng.rs, rng.cd, gi, np.int64(data.frame.x_mask), np.int64(data.frame.z_mask),
        _type_code(ty), checks, budget, ct, data.pend, data.pendn)
    if not ok:
        raise ResourceExhausted("ancilla budget exhausted during correction")
    applied = (int(dx) != data.frame.x_mask) if ty == "X" else (int(dz) != data.frame.z_mask)
    data.frame.x_mask = int(dx)
    data.frame.z_mask = int(dz)
    return ECOutcome(
        syndromes_extracted=int(ct[kernel.R_SYND] - before),
        correction_applied=applied,
    )
