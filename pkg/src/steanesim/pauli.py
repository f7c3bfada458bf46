"""Phaseless Pauli-frame algebra.

The simulated "state" of a block is just a record of which Pauli error sits on
each qubit.  Phases are dropped: only error statistics matter, so composition
is XOR on (x_bit, z_bit) pairs and a frame is two packed bit masks.
"""

from __future__ import annotations

from enum import IntEnum


class Pauli(IntEnum):
    """Encoded as x_bit | (z_bit << 1): I=0, X=1, Z=2, Y=3."""

    I = 0
    X = 1
    Z = 2
    Y = 3

    @property
    def x_bit(self) -> int:
        return self.value & 1

    @property
    def z_bit(self) -> int:
        return (self.value >> 1) & 1


def compose(a: Pauli, b: Pauli) -> Pauli:
    """Phaseless Pauli product: bitwise XOR of the (x, z) flags."""
    return Pauli(a.value ^ b.value)


class Frame:
    """Error record for an n-qubit block, bit-packed as an x-mask and z-mask.

    Qubits are labeled 1..n.  Measurement is destructive: a measured qubit is
    retired and any further access to it is a usage error.
    """

    __slots__ = ("n", "x_mask", "z_mask", "_retired")

    def __init__(self, n: int, x_mask: int = 0, z_mask: int = 0):
        if n < 1:
            raise ValueError("frame length must be positive")
        self.n = n
        self.x_mask = x_mask
        self.z_mask = z_mask
        self._retired = 0

    def _check(self, q: int) -> int:
        if not 1 <= q <= self.n:
            raise IndexError(f"qubit {q} out of range 1..{self.n}")
        if (self._retired >> (q - 1)) & 1:
            raise ValueError(f"qubit {q} was already measured")
        return q - 1

    def pauli_at(self, q: int) -> Pauli:
        i = self._check(q)
        return Pauli(((self.x_mask >> i) & 1) | (((self.z_mask >> i) & 1) << 1))

    def set_pauli(self, q: int, p: Pauli) -> None:
        i = self._check(q)
        self.x_mask = (self.x_mask & ~(1 << i)) | (p.x_bit << i)
        self.z_mask = (self.z_mask & ~(1 << i)) | (p.z_bit << i)

    def compose_at(self, q: int, p: Pauli) -> None:
        i = self._check(q)
        self.x_mask ^= p.x_bit << i
        self.z_mask ^= p.z_bit << i

    @property
    def weight(self) -> int:
        return bin(self.x_mask | self.z_mask).count("1")

    def copy(self) -> "Frame":
        f = Frame(self.n, self.x_mask, self.z_mask)
        f._retired = self._retired
        return f

    def apply_cnot(self, control: int, target: int) -> None:
        """X on the control copies to the target; Z on the target copies to
        the control."""
        if control == target:
            raise ValueError("control and target must differ")
        c = self._check(control)
        t = self._check(target)
        self.x_mask ^= ((self.x_mask >> c) & 1) << t
        self.z_mask ^= ((self.z_mask >> t) & 1) << c

    def apply_hadamard(self, q: int) -> None:
        i = self._check(q)
        xb = (self.x_mask >> i) & 1
        zb = (self.z_mask >> i) & 1
        self.x_mask = (self.x_mask & ~(1 << i)) | (zb << i)
        self.z_mask = (self.z_mask & ~(1 << i)) | (xb << i)

    def measure(self, q: int, basis: str) -> int:
        """Flip bit of a destructive measurement: 1 iff the recorded error
        anticommutes with the measurement basis operator."""
        if basis not in ("Z", "X"):
            raise ValueError(f"basis must be 'Z' or 'X', got {basis!r}")
        i = self._check(q)
        self._retired |= 1 << i
        if basis == "Z":
            return (self.x_mask >> i) & 1
        return (self.z_mask >> i) & 1


def propagate_cnot(f: Frame, control: int, target: int) -> Frame:
    out = f.copy()
    out.apply_cnot(control, target)
    return out


def propagate_hadamard(f: Frame, q: int) -> Frame:
    out = f.copy()
    out.apply_hadamard(q)
    return out


def measure_flip(f: Frame, q: int, basis: str) -> int:
    return f.measure(q, basis)
