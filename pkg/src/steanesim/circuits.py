"""Encoding circuits and check schedules for the ancilla factory.

Everything is derived from the check matrix: the information set is the
non-power-of-two positions, parity bits sit at 1, 2 and 4, and the CNOT list
realizes the classical generator matrix.  The dual-basis circuit swaps the
preparation bases and reverses every CNOT.  Circuit layers maximize
parallelism; all generator CNOTs pairwise commute (controls and targets live
in disjoint position sets), so scheduling is a pure matching problem.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .hamming import check_matrix

PLUS = 0  # |+>_L preparation
ZERO = 1  # |0>_L preparation

PARITY_POSITIONS = (1, 2, 4)
INFO_POSITIONS = (3, 5, 6, 7)


def generator_cnots() -> list[tuple[int, int]]:
    """CNOT pairs (info -> parity) realizing the Hamming generator matrix."""
    pairs = []
    for q in INFO_POSITIONS:
        for k, p in enumerate(PARITY_POSITIONS):
            if (q >> k) & 1:
                pairs.append((q, p))
    return pairs


def schedule(cnots: list[tuple[int, int]]) -> list[list[tuple[int, int]]]:
    """Greedy matching layers: highest remaining-degree edges first."""
    remaining = list(cnots)
    layers: list[list[tuple[int, int]]] = []
    while remaining:
        deg: dict[int, int] = {}
        for c, t in remaining:
            deg[c] = deg.get(c, 0) + 1
            deg[t] = deg.get(t, 0) + 1
        order = sorted(remaining, key=lambda e: -(deg[e[0]] + deg[e[1]]))
        layer: list[tuple[int, int]] = []
        busy: set[int] = set()
        for c, t in order:
            if c not in busy and t not in busy:
                layer.append((c, t))
                busy.update((c, t))
        layers.append(layer)
        for e in layer:
            remaining.remove(e)
    return layers


@dataclass(frozen=True)
class EncodingCircuit:
    """Preparation pattern plus layered CNOT list for one logical basis state.

    ``plus_mask`` has bit q-1 set when qubit q starts in |+> (|+>_L circuit)
    or, for the dual circuit, in |0> with the roles of X and Z exchanged.
    """

    basis: int
    plus_mask: int
    layers: tuple[tuple[tuple[int, int], ...], ...]

    @property
    def cnots(self) -> list[tuple[int, int]]:
        return [g for layer in self.layers for g in layer]

    @property
    def depth(self) -> int:
        return 1 + len(self.layers)


def build_encoding(basis: int) -> EncodingCircuit:
    gens = generator_cnots()
    if basis == PLUS:
        plus = INFO_POSITIONS
        pairs = gens
    else:
        plus = PARITY_POSITIONS
        pairs = [(t, c) for c, t in gens]
    mask = 0
    for q in plus:
        mask |= 1 << (q - 1)
    layers = tuple(tuple(sorted(layer)) for layer in schedule(pairs))
    return EncodingCircuit(basis=basis, plus_mask=mask, layers=layers)


def check_supports() -> list[int]:
    """Verification check supports as 7-bit masks: the three stabilizer rows
    of the check matrix, then the transversal logical operator.

    The 3-check variant keeps the stabilizer rows and drops the
    logical check.
    """
    h = check_matrix()
    sups = []
    for k in range(3):
        m = 0
        for j in range(7):
            if h[k, j]:
                m |= 1 << j
        sups.append(m)
    sups.append(127)
    return sups


def box_schedule(circ: EncodingCircuit) -> tuple[list[int], list[int]]:
    """Placement and type ordering of the lower-level correction boxes.

    One box per block, run right after the layer containing the block's last
    logical gate.  Blocks that acted as the control of that gate correct Z
    then X (phase errors would otherwise spread through the next coupling);
    targets correct X then Z.  Returns (box_layer, z_first), 0-based blocks.
    """
    last_layer = [0] * 7
    z_first = [0] * 7
    for li, layer in enumerate(circ.layers):
        for c, t in layer:
            last_layer[c - 1] = li
            z_first[c - 1] = 1
            last_layer[t - 1] = li
            z_first[t - 1] = 0
    return last_layer, z_first


def build_tables() -> dict[str, np.ndarray]:
    """All circuit constants as flat numpy arrays for the compiled kernels."""
    enc = [build_encoding(PLUS), build_encoding(ZERO)]
    nl = max(len(c.layers) for c in enc)
    enc_c = np.zeros((2, 9), dtype=np.int64)
    enc_t = np.zeros((2, 9), dtype=np.int64)
    enc_p = np.zeros((2, nl + 1), dtype=np.int64)
    plus_mask = np.zeros(2, dtype=np.int64)
    box_layer = np.zeros((2, 7), dtype=np.int64)
    box_zfirst = np.zeros((2, 7), dtype=np.int64)
    for b, c in enumerate(enc):
        plus_mask[b] = c.plus_mask
        g = 0
        for li, layer in enumerate(c.layers):
            for ctl, tgt in layer:
                enc_c[b, g] = ctl - 1
                enc_t[b, g] = tgt - 1
                g += 1
            enc_p[b, li + 1] = g
        bl, zf = box_schedule(c)
        box_layer[b] = bl
        box_zfirst[b] = zf
    return {
        "plus_mask": plus_mask,
        "enc_c": enc_c,
        "enc_t": enc_t,
        "enc_p": enc_p,
        "enc_nl": np.array([len(c.layers) for c in enc], dtype=np.int64),
        "box_layer": box_layer,
        "box_zfirst": box_zfirst,
        "vsup": np.array(check_supports(), dtype=np.int64),
    }
