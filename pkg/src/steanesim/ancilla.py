"""Ancilla factory: verified encoded ancillas at both levels.

Thin Python wrappers over the compiled kernels in kernel.py, plus a pure
Python verify7 used by the exhaustive detection-coverage tests.  All schemes
share one retry budget; exhausting it raises ResourceExhausted, which the
harness and CLI surface as a distinct exit status.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import kernel
from .noise import NoiseParams, RandomSource
from .pauli import Frame, Pauli

DEFAULT_BUDGET = 1_000_000


class ResourceExhausted(RuntimeError):
    """Retry budget spent without delivering an ancilla (gamma too high)."""


@dataclass
class FactoryStats:
    attempts: int = 0
    rejections_l1: int = 0
    rejections_l2: int = 0
    time_units: int = 0


class KernelRNG:
    """Owns the splitmix64 state and fault countdown the kernels mutate.

    The countdown is drawn from the geometric gap distribution for the gamma
    of the first operation, so one KernelRNG should be used with one noise
    setting (the factories assert this).
    """

    def __init__(self, seed: int, index: int = 0):
        self.rs = kernel.seed_stream(seed, index)
        self.cd = np.empty(1, dtype=np.int64)
        self.gi = None

    def bind(self, noise: NoiseParams) -> float:
        gi = 0.0 if noise.gamma <= 0.0 else 1.0 / math.log1p(-noise.gamma)
        if self.gi is None:
            self.gi = gi
            self.cd[0] = kernel.geom_gap(self.rs, gi)
        elif gi != self.gi:
            raise ValueError("KernelRNG is bound to a different gamma")
        return gi


def _basis_code(basis: str) -> int:
    if basis in ("+", "plus", "|+>"):
        return kernel.PLUS
    if basis in ("0", "zero", "|0>"):
        return kernel.ZERO
    raise ValueError(f"unknown basis {basis!r}")


def prepare7(rng: KernelRNG, noise: NoiseParams, basis: str, checks: int = 4,
             budget: int = DEFAULT_BUDGET) -> tuple[Frame, FactoryStats]:
    """Verified 7-qubit encoded ancilla (retries until verification passes)."""
    gi = rng.bind(noise)
    ct = np.zeros(kernel.ROW_LEN, dtype=np.int64)
    ok, x, z, t = kernel.prepare7(rng.rs, rng.cd, gi, _basis_code(basis), checks, budget, ct)
    if not ok:
        raise ResourceExhausted("prepare7 retry budget exhausted")
    stats = FactoryStats(
        attempts=int(ct[kernel.R_P7_ATT]),
        rejections_l1=int(ct[kernel.R_P7_REJ]),
        time_units=int(t),
    )
    return Frame(7, int(x), int(z)), stats


def verify7(rng: RandomSource, noise: NoiseParams, candidate: Frame, checks: int = 4,
            basis: str = "+") -> bool:
    """Verification sub-circuit on an existing 7-qubit candidate.

    For a |+>_L candidate each X-type check operator (3 stabilizers plus
    logical X, or only the first 3 under the 3-check variant) is measured with
    a fresh verification qubit; any flip rejects.  Dual roles for |0>_L.
    Mutates the candidate frame through the CNOT back-action, as the real
    circuit does.
    """
    from .noise import noisy_cnot, noisy_measure, sample_fault

    plus = _basis_code(basis) == kernel.PLUS
    for c in range(checks):
        sup = int(kernel.VSUP[c])
        pair = Frame(8, candidate.x_mask, candidate.z_mask)  # qubit 8 verifies
        pair.compose_at(8, sample_fault(rng, noise.gamma))
        for q in range(1, 8):
            if (sup >> (q - 1)) & 1:
                if plus:
                    noisy_cnot(rng, noise.gamma, pair, 8, q)
                else:
                    noisy_cnot(rng, noise.gamma, pair, q, 8)
        flip = noisy_measure(rng, noise.gamma, pair, 8, "X" if plus else "Z")
        candidate.x_mask = pair.x_mask & 127
        candidate.z_mask = pair.z_mask & 127
        if flip:
            return False
    return True


def _prepare49(rng: KernelRNG, noise: NoiseParams, basis: str, scheme: int,
               checks: int, budget: int) -> tuple[Frame, FactoryStats]:
    gi = rng.bind(noise)
    ct = np.zeros(kernel.ROW_LEN, dtype=np.int64)
    ok, x, z, t = kernel.prepare49(rng.rs, rng.cd, gi, _basis_code(basis), scheme,
                                   checks, budget, ct)
    if not ok:
        raise ResourceExhausted("prepare49 retry budget exhausted")
    stats = FactoryStats(
        attempts=int(ct[kernel.R_P49_ATT]),
        rejections_l1=int(ct[kernel.R_P7_REJ]),
        rejections_l2=int(ct[kernel.R_P49_REJ]),
        time_units=int(t),
    )
    return Frame(49, int(x), int(z)), stats


def prepare49_steane(rng: KernelRNG, noise: NoiseParams, basis: str, checks: int = 4,
                     budget: int = DEFAULT_BUDGET) -> tuple[Frame, FactoryStats]:
    """Steane 49-qubit ancilla: level-1 EC boxes plus logical verification."""
    return _prepare49(rng, noise, basis, kernel.STEANE, checks, budget)


def prepare49_reject(rng: KernelRNG, noise: NoiseParams, basis: str, checks: int = 4,
                     budget: int = DEFAULT_BUDGET) -> tuple[Frame, FactoryStats]:
    """Reject-on-detect 49-qubit ancilla: boxes detect, any hit discards all
    49 qubits; no logical checks."""
    return _prepare49(rng, noise, basis, kernel.REJECT, checks, budget)


def prepare49_ideal(rng: KernelRNG, noise: NoiseParams,
                    budget: int = DEFAULT_BUDGET) -> tuple[Frame, FactoryStats]:
    """Idealized ancilla: one fault chance per qubit, then a noiseless
    per-block syndrome check of both types; any detection rejects."""
    gi = rng.bind(noise)
    ct = np.zeros(kernel.ROW_LEN, dtype=np.int64)
    ok, x, z, t = kernel.prepare49_ideal(rng.rs, rng.cd, gi, budget, ct)
    if not ok:
        raise ResourceExhausted("prepare49_ideal retry budget exhausted")
    stats = FactoryStats(
        attempts=int(ct[kernel.R_P49_ATT]),
        rejections_l2=int(ct[kernel.R_P49_REJ]),
        time_units=int(t),
    )
    return Frame(49, int(x), int(z)), stats


def steane_time_baseline() -> int:
    """Time units for one gamma=0 Steane 49-qubit ancilla; the 1.0 of all
    overhead reporting."""
    rng = KernelRNG(0)
    _, stats = prepare49_steane(rng, NoiseParams(0.0), "+")
    return stats.time_units
