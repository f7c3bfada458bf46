"""Experiment harness: sweeps, thresholds, overhead, ancilla statistics.

Trials are independently seeded from (master seed, trial index), so every
tally is a sum of per-trial rows and identical for any worker count.  All
quantities the CLI writes live in SweepResult, one flat row per sweep point.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from . import kernel
from .ancilla import DEFAULT_BUDGET, ResourceExhausted, steane_time_baseline
from .ec import IDEAL, REJECT, STEANE, _SCHEME_CODE

DEFAULT_ROUNDS = 20
DEFAULT_BURNIN = 3
DEFAULT_POOL_CAP = 1024
REFERENCE_SLOPE = 0.75  # X, Y or Z physical faults arrive at (3/4) gamma


@dataclass(frozen=True)
class SweepResult:
    gamma: float
    scheme: str
    checks: int
    rounds: int
    crashes: int
    crash_rate: float
    ci_low: float
    ci_high: float
    mean_time_units: float
    rejections_l1: int
    rejections_l2: int
    aborts: int
    xz_correlation: float
    seed: int


@dataclass(frozen=True)
class ThresholdEstimate:
    gamma_star: Optional[float]
    bracket: Optional[tuple[float, float]]
    residual: float

    @property
    def crossed(self) -> bool:
        return self.gamma_star is not None


def wilson_interval(k: int, n: int, z: float = 1.959963984540054) -> tuple[float, float]:
    """Wilson score 95% interval for a binomial proportion."""
    if n == 0:
        return (0.0, 1.0)
    p = k / n
    z2 = z * z
    denom = 1.0 + z2 / n
    center = (p + z2 / (2 * n)) / denom
    half = (z / denom) * math.sqrt(p * (1 - p) / n + z2 / (4 * n * n))
    lo = 0.0 if k == 0 else max(0.0, center - half)
    hi = 1.0 if k == n else min(1.0, center + half)
    return (lo, hi)


def set_workers(workers: Optional[int]) -> None:
    """Worker count is a cap, clamped to available parallelism; tallies do
    not depend on it (per-trial streams)."""
    if workers is not None:
        import numba

        numba.set_num_threads(min(max(1, workers), numba.config.NUMBA_NUM_THREADS))


def _phi(both: int, cx: int, cz: int, n: int) -> float:
    """Phi coefficient between per-round X and Z crash indicators."""
    if n == 0:
        return 0.0
    px = cx / n
    pz = cz / n
    var = px * (1 - px) * pz * (1 - pz)
    if var <= 0.0:
        return 0.0
    return (both / n - px * pz) / math.sqrt(var)


def run_sweep(gammas: Sequence[float], scheme: str, trials: int,
              rounds_per_trial: int = DEFAULT_ROUNDS, seed: int = 0, *,
              checks: int = 4, burnin: int = DEFAULT_BURNIN,
              pool_cap: int = DEFAULT_POOL_CAP, budget: int = DEFAULT_BUDGET,
              workers: Optional[int] = None) -> list[SweepResult]:
    """Simulate `trials` independent trials per grid point and aggregate."""
    set_workers(workers)
    code = _SCHEME_CODE[scheme]
    out = []
    for gamma in gammas:
        rows = kernel.sweep_kernel(seed, gamma, code, checks, trials,
                                   rounds_per_trial, burnin, pool_cap, budget)
        t = rows.sum(axis=0)
        rounds = int(t[kernel.R_ROUNDS])
        crashes = int(t[kernel.R_CRASH])
        rate = crashes / rounds if rounds else 0.0
        lo, hi = wilson_interval(crashes, rounds)
        anc = int(t[kernel.R_ANC])
        mtu = t[kernel.R_TIME] / anc if anc else 0.0
        out.append(SweepResult(
            gamma=gamma, scheme=scheme, checks=checks, rounds=rounds,
            crashes=crashes, crash_rate=rate, ci_low=lo, ci_high=hi,
            mean_time_units=float(mtu),
            rejections_l1=int(t[kernel.R_P7_REJ]),
            rejections_l2=int(t[kernel.R_P49_REJ]),
            aborts=int(t[kernel.R_ABORT]),
            xz_correlation=_phi(int(t[kernel.R_CRASHBOTH]), int(t[kernel.R_CRASHX]),
                                int(t[kernel.R_CRASHZ]), rounds),
            seed=seed,
        ))
    return out


def run_ideal_experiment(gammas: Sequence[float], trials: int,
                         rounds_per_trial: int = DEFAULT_ROUNDS, seed: int = 0,
                         **kw) -> list[SweepResult]:
    """run_sweep with idealized ancillas."""
    return run_sweep(gammas, IDEAL, trials, rounds_per_trial, seed, **kw)


def estimate_threshold(results: Sequence[SweepResult]) -> ThresholdEstimate:
    """Crossing of the crash-rate curve with the reference line (3/4)*gamma,
    log-log interpolated between the bracketing grid points.  Points with
    zero crashes count as below the line; no crossing is reported explicitly,
    never extrapolated."""
    pts = sorted(results, key=lambda r: r.gamma)
    for a, b in zip(pts, pts[1:]):
        below_a = a.crash_rate < REFERENCE_SLOPE * a.gamma
        above_b = b.crash_rate >= REFERENCE_SLOPE * b.gamma
        if below_a and above_b and a.crash_rate > 0.0:
            # Solve log r(g) = log(0.75 g) with r log-log linear on [a, b].
            la, lb = math.log(a.gamma), math.log(b.gamma)
            ra, rb = math.log(a.crash_rate), math.log(b.crash_rate)
            slope = (rb - ra) / (lb - la)
            lg = la + (math.log(REFERENCE_SLOPE) + la - ra) / (slope - 1.0)
            lg = min(max(lg, la), lb)
            gstar = math.exp(lg)
            fit = ra + slope * (lg - la)
            return ThresholdEstimate(
                gamma_star=gstar,
                bracket=(a.gamma, b.gamma),
                residual=abs(fit - math.log(REFERENCE_SLOPE * gstar)),
            )
    return ThresholdEstimate(gamma_star=None, bracket=None, residual=0.0)


@dataclass(frozen=True)
class AncillaPoint:
    gamma: float
    scheme: str
    checks: int
    delivered: int
    attempts: int
    mean_time_units: float
    overhead: Optional[float]  # normalized; None marks budget exhaustion
    phys_error_rate: float  # harmful-type physical errors per delivered qubit
    logical_errors: int
    logical_error_rate: float


def ancilla_run(gammas: Sequence[float], scheme: str, count: int, seed: int = 0, *,
                checks: int = 4, basis: int = kernel.PLUS,
                budget: int = DEFAULT_BUDGET,
                workers: Optional[int] = None) -> list[AncillaPoint]:
    """Deliver `count` ancillas per grid point; report cost and residual
    error statistics (delivered-ancilla physical and logical rates)."""
    set_workers(workers)
    code = _SCHEME_CODE[scheme]
    baseline = steane_time_baseline()
    chunk = 2_000_000
    out = []
    for gamma in gammas:
        t = np.zeros(kernel.ROW_LEN, dtype=np.int64)
        for start in range(0, count, chunk):
            n = min(chunk, count - start)
            rows = kernel.ancilla_kernel(seed, gamma, code, checks, basis, n,
                                         budget, start)
            t += rows.sum(axis=0)
        delivered = count - int(t[kernel.R_ABORT])
        if delivered <= 0:
            out.append(AncillaPoint(gamma, scheme, checks, 0,
                                    int(t[kernel.R_P49_ATT]), 0.0, None, 0.0, 0, 0.0))
            continue
        mtu = float(t[kernel.R_TIME]) / delivered
        out.append(AncillaPoint(
            gamma=gamma, scheme=scheme, checks=checks, delivered=delivered,
            attempts=int(t[kernel.R_P49_ATT]), mean_time_units=mtu,
            overhead=mtu / baseline,
            phys_error_rate=float(t[kernel.R_ANCPHYS]) / (49 * delivered),
            logical_errors=int(t[kernel.R_ANCLOG]),
            logical_error_rate=float(t[kernel.R_ANCLOG]) / delivered,
        ))
    return out


def measure_overhead(gammas: Sequence[float], scheme: str, trials: int,
                     seed: int = 0, *, checks: int = 4,
                     budget: int = DEFAULT_BUDGET,
                     workers: Optional[int] = None) -> list[AncillaPoint]:
    """Mean time units per delivered 49-qubit ancilla, normalized so the
    gamma=0 Steane ancilla costs exactly 1.0."""
    return ancilla_run(gammas, scheme, trials, seed, checks=checks,
                       budget=budget, workers=workers)


def fit_loglog_slope(gammas: Sequence[float], counts: Sequence[int],
                     samples: Sequence[int], cap: float = 6.0) -> float:
    """Poisson maximum-likelihood exponent of rate = A * gamma^s.

    Zero counts at small gamma are informative (they push the slope up); the
    estimate is capped because with no low-gamma events the likelihood is
    maximized at arbitrarily steep slopes.
    """
    ks = np.asarray(counts, dtype=float)
    ns = np.asarray(samples, dtype=float)
    lg = np.log(np.asarray(gammas, dtype=float))
    ktot = ks.sum()
    if ktot == 0:
        raise ValueError("no events observed; slope is undefined")

    def profile_loglik(s: float) -> float:
        w = ns * np.exp(s * lg)
        return float((ks * (s * lg)).sum() - ktot * math.log(w.sum()))

    # Golden-section search on the concave profile likelihood.
    lo, hi = 0.0, cap
    invphi = (math.sqrt(5.0) - 1.0) / 2.0
    a, b = lo, hi
    c = b - invphi * (b - a)
    d = a + invphi * (b - a)
    fc, fd = profile_loglik(c), profile_loglik(d)
    for _ in range(80):
        if fc >= fd:
            b, d, fd = d, c, fc
            c = b - invphi * (b - a)
            fc = profile_loglik(c)
        else:
            a, c, fc = c, d, fd
            d = a + invphi * (b - a)
            fd = profile_loglik(d)
    return (a + b) / 2.0
