"""Depolarizing noise statistics."""

import math

import pytest

from steanesim.noise import NoiseParams, RandomSource, noisy_cnot, noisy_measure, noisy_prep, sample_fault
from steanesim.pauli import Frame, Pauli


def test_params_validation():
    NoiseParams(0.0)
    NoiseParams(1.0)
    with pytest.raises(ValueError):
        NoiseParams(-0.1)
    with pytest.raises(ValueError):
        NoiseParams(1.5)


def test_random_source_reproducible():
    a = RandomSource(123)
    b = RandomSource(123)
    assert [a.next_u64() for _ in range(10)] == [b.next_u64() for _ in range(10)]
    assert RandomSource.spawn(1, 0).next_u64() != RandomSource.spawn(1, 1).next_u64()


def test_sample_fault_gamma0():
    rng = RandomSource(1)
    assert all(sample_fault(rng, 0.0) == Pauli.I for _ in range(1000))


def test_sample_fault_gamma1_uniform():
    rng = RandomSource(2)
    n = 1_000_000
    counts = {p: 0 for p in Pauli}
    for _ in range(n):
        counts[sample_fault(rng, 1.0)] += 1
    sigma = math.sqrt(n * 0.25 * 0.75)
    for p in Pauli:
        assert abs(counts[p] - n / 4) < 5 * sigma


def test_sample_fault_nontrivial_rate():
    # Non-I frequency 3*gamma/4 within 5 sigma.
    gamma = 0.01
    rng = RandomSource(3)
    n = 1_000_000
    k = sum(1 for _ in range(n) if sample_fault(rng, gamma) != Pauli.I)
    p = 0.75 * gamma
    assert abs(k - n * p) < 5 * math.sqrt(n * p * (1 - p))


def test_noisy_prep():
    rng = RandomSource(4)
    f = noisy_prep(rng, 0.0)
    assert f.pauli_at(1) == Pauli.I
    # P(entry in {X, Y}) = gamma/2 flips a Z measurement.
    gamma = 0.2
    n = 200_000
    k = 0
    for _ in range(n):
        f = noisy_prep(rng, gamma)
        k += f.measure(1, "Z")
    p = gamma / 2
    assert abs(k - n * p) < 5 * math.sqrt(n * p * (1 - p))


def test_noisy_cnot_gamma0_is_ideal():
    rng = RandomSource(5)
    f = Frame(2)
    f.set_pauli(1, Pauli.X)
    noisy_cnot(rng, 0.0, f, 1, 2)
    assert f.pauli_at(2) == Pauli.X


def test_noisy_cnot_joint_faults():
    # At gamma=1 the added pair is uniform over 16 outcomes; P(any nontrivial
    # fault) = 15/16.
    rng = RandomSource(6)
    n = 200_000
    nontrivial = 0
    for _ in range(n):
        f = Frame(2)
        noisy_cnot(rng, 1.0, f, 1, 2)
        if f.weight > 0:
            nontrivial += 1
    p = 15 / 16
    assert abs(nontrivial - n * p) < 5 * math.sqrt(n * p * (1 - p))


def test_noisy_measure():
    rng = RandomSource(7)
    f = Frame(1)
    assert noisy_measure(rng, 0.0, f, 1, "Z") == 0
    n = 200_000
    k = 0
    for _ in range(n):
        f = Frame(1)
        k += noisy_measure(rng, 1.0, f, 1, "Z")
    assert abs(k - n / 2) < 5 * math.sqrt(n * 0.25)


def test_fault_marginal_uniform_conditioned_nontrivial():
    rng = RandomSource(8)
    counts = {Pauli.X: 0, Pauli.Y: 0, Pauli.Z: 0}
    n = 300_000
    total = 0
    for _ in range(n):
        p = sample_fault(rng, 0.3)
        if p != Pauli.I:
            counts[p] += 1
            total += 1
    # Chi-squared against uniform; 2 dof, p=0.001 cutoff ~ 13.8.
    expect = total / 3
    chi2 = sum((c - expect) ** 2 / expect for c in counts.values())
    assert chi2 < 13.8
