"""Encoding circuits against an independent stabilizer-tableau oracle.

The only place a full binary-symplectic tableau is needed: ideal execution of
each encoding circuit must produce a state stabilized by the six code
stabilizers plus the logical operator of the prepared basis.
"""

import numpy as np

from steanesim import circuits
from steanesim.hamming import check_matrix


class Tableau:
    """Stabilizer generators as rows over GF(2): (x | z) per qubit."""

    def __init__(self, n: int):
        self.n = n
        self.x = np.zeros((n, n), dtype=np.uint8)
        self.z = np.zeros((n, n), dtype=np.uint8)

    @classmethod
    def prepared(cls, n: int, plus_mask: int) -> "Tableau":
        t = cls(n)
        for q in range(n):
            if (plus_mask >> q) & 1:
                t.x[q, q] = 1  # stabilized by X_q
            else:
                t.z[q, q] = 1  # stabilized by Z_q
        return t

    def cnot(self, c: int, t: int) -> None:
        # Conjugation: X_c -> X_c X_t, Z_t -> Z_c Z_t.
        self.x[:, t] ^= self.x[:, c]
        self.z[:, c] ^= self.z[:, t]

    def stabilizes(self, xs: int, zs: int) -> bool:
        """Is the X-mask/Z-mask Pauli (phaseless) in the stabilizer group?"""
        rows = np.concatenate([self.x, self.z], axis=1).astype(np.uint8)
        target = np.array(
            [(xs >> q) & 1 for q in range(self.n)]
            + [(zs >> q) & 1 for q in range(self.n)],
            dtype=np.uint8,
        )
        # Gaussian elimination over GF(2).
        m = rows.copy()
        t = target.copy()
        r = 0
        for col in range(2 * self.n):
            piv = next((i for i in range(r, m.shape[0]) if m[i, col]), None)
            if piv is None:
                continue
            m[[r, piv]] = m[[piv, r]]
            for i in range(m.shape[0]):
                if i != r and m[i, col]:
                    m[i] ^= m[r]
            if t[col]:
                t ^= m[r]
            r += 1
        return not t.any()


def _run(circ: circuits.EncodingCircuit) -> Tableau:
    t = Tableau.prepared(7, circ.plus_mask)
    for c, tg in circ.cnots:
        t.cnot(c - 1, tg - 1)
    return t


def _stabilizer_masks() -> list[tuple[int, int]]:
    h = check_matrix()
    rows = []
    for k in range(3):
        m = 0
        for j in range(7):
            if h[k, j]:
                m |= 1 << j
        rows.append(m)
    out = [(m, 0) for m in rows]  # X-type
    out += [(0, m) for m in rows]  # Z-type
    return out


def test_plus_encoding_stabilizers():
    t = _run(circuits.build_encoding(circuits.PLUS))
    for xs, zs in _stabilizer_masks():
        assert t.stabilizes(xs, zs)
    assert t.stabilizes(127, 0)  # logical X
    assert not t.stabilizes(0, 127)  # logical Z must NOT stabilize |+>_L


def test_zero_encoding_stabilizers():
    t = _run(circuits.build_encoding(circuits.ZERO))
    for xs, zs in _stabilizer_masks():
        assert t.stabilizes(xs, zs)
    assert t.stabilizes(0, 127)  # logical Z
    assert not t.stabilizes(127, 0)


def test_layers_are_parallel():
    for basis in (circuits.PLUS, circuits.ZERO):
        circ = circuits.build_encoding(basis)
        for layer in circ.layers:
            qubits = [q for g in layer for q in g]
            assert len(qubits) == len(set(qubits))
        assert sorted(circ.cnots) == sorted(
            circuits.generator_cnots() if basis == circuits.PLUS
            else [(t, c) for c, t in circuits.generator_cnots()]
        )


def test_check_supports():
    sups = circuits.check_supports()
    assert len(sups) == 4
    assert sups[3] == 127  # logical comes last; the 3-check variant drops it
    h = check_matrix()
    for k in range(3):
        m = 0
        for j in range(7):
            if h[k, j]:
                m |= 1 << j
        assert sups[k] == m


def test_box_schedule_covers_all_blocks():
    for basis in (circuits.PLUS, circuits.ZERO):
        circ = circuits.build_encoding(basis)
        box_layer, _ = circuits.box_schedule(circ)
        assert len(box_layer) == 7
        assert all(0 <= li < len(circ.layers) for li in box_layer)
