"""Ancilla factory behavior: clean limits, verification coverage, scaling."""

import math

import numpy as np
import pytest

from steanesim import hamming, kernel
from steanesim.ancilla import (
    KernelRNG,
    ResourceExhausted,
    prepare7,
    prepare49_ideal,
    prepare49_reject,
    prepare49_steane,
    verify7,
)
from steanesim.noise import NoiseParams, RandomSource
from steanesim.pauli import Frame

CLEAN = NoiseParams(0.0)


def test_gamma0_first_attempt_all_clean():
    for i, fn in enumerate((prepare49_steane, prepare49_reject)):
        f, stats = fn(KernelRNG(3 + i), CLEAN, "+")
        assert (f.x_mask, f.z_mask) == (0, 0)
        assert stats.attempts == 1
        assert stats.rejections_l2 == 0
    f, stats = prepare7(KernelRNG(5), CLEAN, "0")
    assert (f.x_mask, f.z_mask) == (0, 0) and stats.attempts == 1
    f, stats = prepare49_ideal(KernelRNG(6), CLEAN)
    assert (f.x_mask, f.z_mask) == (0, 0) and stats.attempts == 1


def test_verify7_catches_all_single_z():
    # Every single Z on a |+>_L candidate anticommutes with some X check.
    for q in range(1, 8):
        rng = RandomSource(10 + q)
        cand = Frame(7, 0, 1 << (q - 1))
        assert not verify7(rng, CLEAN, cand, checks=4)
        # The three stabilizer checks already cover singles.
        cand = Frame(7, 0, 1 << (q - 1))
        assert not verify7(RandomSource(20 + q), CLEAN, cand, checks=3)


def test_verify7_three_check_escape():
    """Z patterns caught only by the omitted logical check: zero syndrome,
    odd overlap with the transversal logical (the inner-logical cosets)."""
    escapes = [w for w in range(1, 128)
               if hamming.syndrome7(w) == 0 and hamming.logical_value(w) == 1]
    assert escapes  # weight-3 codeword-like patterns exist
    for w in escapes[:3]:
        cand = Frame(7, 0, w)
        assert verify7(RandomSource(1), CLEAN, cand, checks=3)
        cand = Frame(7, 0, w)
        assert not verify7(RandomSource(1), CLEAN, cand, checks=4)


def test_verify7_accepts_clean():
    assert verify7(RandomSource(2), CLEAN, Frame(7), checks=4)


def test_budget_exhaustion_raises():
    with pytest.raises(ResourceExhausted):
        prepare49_reject(KernelRNG(7), NoiseParams(0.4), "+", budget=3)


def test_prepare7_residual_z_weight_scaling():
    """Residual Z errors of weight k scale like gamma^k (k = 1, 2)."""
    gammas = (3e-3, 1e-2)
    n = 40_000
    rates = {1: [], 2: []}
    for gamma in gammas:
        rng = KernelRNG(101)
        noise = NoiseParams(gamma)
        counts = {1: 0, 2: 0}
        for _ in range(n):
            f, _ = prepare7(rng, noise, "+")
            w = bin(f.z_mask).count("1")
            if w in counts:
                counts[w] += 1
        for k in (1, 2):
            assert counts[k] > 0
            rates[k].append(counts[k] / n)
    span = math.log(gammas[1] / gammas[0])
    slope1 = math.log(rates[1][1] / rates[1][0]) / span
    slope2 = math.log(rates[2][1] / rates[2][0]) / span
    assert abs(slope1 - 1.0) < 0.5
    assert abs(slope2 - 2.0) < 0.75


def test_ideal_detects_all_weight_le2():
    # Any in-block single-type pattern of weight 1 or 2 has nonzero syndrome.
    for w in range(1, 128):
        if bin(w).count("1") <= 2:
            assert hamming.syndrome7(w) != 0


def test_ideal_acceptance_closed_form():
    gamma = 0.01
    n = 200_000
    rows = kernel.ancilla_kernel(11, gamma, kernel.IDEAL, 4, kernel.PLUS, n, 10**6, 0)
    t = rows.sum(axis=0)
    attempts = int(t[kernel.R_P49_ATT])
    delivered = n - int(t[kernel.R_ABORT])
    p_hat = delivered / attempts
    p = (1 - 0.75 * gamma) ** 49
    sigma = math.sqrt(p * (1 - p) / attempts)
    assert abs(p_hat - p) < 5 * sigma


def test_attempts_geometric_consistency():
    """Mean attempts matches 1/p and the variance matches the geometric law
    (1-p)/p^2 within wide Monte Carlo tolerance."""
    n = 50_000
    rows = kernel.ancilla_kernel(12, 3e-3, kernel.REJECT, 4, kernel.PLUS, n, 10**6, 0)
    att = rows[:, kernel.R_P49_ATT].astype(float)
    mean = att.mean()
    p = 1.0 / mean
    var_expect = (1 - p) / (p * p)
    assert abs(att.var() - var_expect) < 6 * var_expect / math.sqrt(n) * 3 + 0.05 * var_expect


def test_dual_basis_symmetry():
    """|0>_L preparation is the X<->Z mirror of |+>_L: harmful-component
    residual rates agree within statistics."""
    n = 100_000
    a = kernel.ancilla_kernel(13, 3e-3, kernel.REJECT, 4, kernel.PLUS, n, 10**6, 0).sum(axis=0)
    b = kernel.ancilla_kernel(14, 3e-3, kernel.REJECT, 4, kernel.ZERO, n, 10**6, 0).sum(axis=0)
    ra = a[kernel.R_ANCPHYS] / (n - a[kernel.R_ABORT])
    rb = b[kernel.R_ANCPHYS] / (n - b[kernel.R_ABORT])
    assert abs(ra - rb) / max(ra, rb) < 0.1
