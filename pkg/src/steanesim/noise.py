"""Depolarizing noise model.

One rate gamma shared by the four elementary operation classes: preparation,
single-qubit gate, CNOT and destructive measurement.  A failing operation
depolarizes the affected qubit(s): each is replaced by a uniformly random
Pauli, independently, so a two-qubit failure has 16 equiprobable outcomes
(including II).  There is no idle/memory error parameter.
"""

from __future__ import annotations

from dataclasses import dataclass

from .pauli import Frame, Pauli

_PHI = 0x9E3779B97F4A7C15
_M64 = (1 << 64) - 1


@dataclass(frozen=True)
class NoiseParams:
    gamma: float

    def __post_init__(self):
        if not 0.0 <= self.gamma <= 1.0:
            raise ValueError(f"gamma must be in [0, 1], got {self.gamma}")


class RandomSource:
    """splitmix64 stream; same seed gives the same draws on any platform.

    Worker streams derive from (master seed, stream index) via spawn(), the
    same rule the compiled kernels use for per-trial streams.
    """

    def __init__(self, seed: int):
        self.state = seed & _M64

    @staticmethod
    def _mix(z: int) -> int:
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _M64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _M64
        return z ^ (z >> 31)

    def next_u64(self) -> int:
        self.state = (self.state + _PHI) & _M64
        return self._mix(self.state)

    def uniform(self) -> float:
        # In (0, 1], 53-bit resolution.
        return ((self.next_u64() >> 11) + 1) * (1.0 / 9007199254740992.0)

    @classmethod
    def spawn(cls, master: int, index: int) -> "RandomSource":
        rs = cls(0)
        rs.state = cls._mix((master ^ (((index + 1) * _PHI) & _M64)) & _M64)
        return rs


def sample_fault(rng: RandomSource, gamma: float) -> Pauli:
    """Uniform Pauli with probability gamma, else I."""
    if gamma > 0.0 and rng.uniform() <= gamma:
        return Pauli(rng.next_u64() & 3)
    return Pauli.I


def noisy_prep(rng: RandomSource, gamma: float, basis: str = "Z") -> Frame:
    """Fresh single-qubit frame; preparation itself may depolarize it."""
    f = Frame(1)
    f.compose_at(1, sample_fault(rng, gamma))
    return f


def noisy_cnot(rng: RandomSource, gamma: float, f: Frame, control: int, target: int) -> Frame:
    """Ideal propagation first, then (with probability gamma) independent
    uniform Paulis on both qubits."""
    f.apply_cnot(control, target)
    if gamma > 0.0 and rng.uniform() <= gamma:
        bits = rng.next_u64()
        f.compose_at(control, Pauli(bits & 3))
        f.compose_at(target, Pauli((bits >> 2) & 3))
    return f


def noisy_measure(rng: RandomSource, gamma: float, f: Frame, q: int, basis: str) -> int:
    """Destructive measurement; a failure depolarizes the qubit first."""
    f.compose_at(q, sample_fault(rng, gamma))
    return f.measure(q, basis)
