"""
Acceptance criteria.

Each test checks one criterion at its stated tolerance and runtime, records a
PASS/FAIL line (printed in the terminal summary) and then asserts.
"""

import time

import numpy as np
import pytest

from mbound import (
    Exponents,
    ShapePair,
    beta_grid_min,
    h_p_value,
    lemma21_gap,
    omega,
    sharp_constant,
    t1_of_beta,
)
from mbound.function_space import (
    discretize_extremal,
    extremal_from_eps,
    hardy_integral,
    moments,
    random_step_function,
    sharpness_search,
    theorem11_integrals,
    verify_main_bound,
    verify_theorem11,
)

import conftest
from oracles import h_plain, random_shape

MATRIX = [Exponents(*pq) for pq in conftest.EXPONENT_MATRIX]
SEED = 20240531

pytestmark = pytest.mark.acceptance


def record(number, title, ok, detail):
    line = f"[{'PASS' if ok else 'FAIL'}] criterion {number}: {title} ({detail})"
    conftest.ACCEPTANCE_LINES.append(line)
    print(line)
    assert ok, line


def eps_grid(exp):
    """1.05, 1.10, ... strictly below the conjugate exponent."""
    return np.round(np.arange(1.05, exp.conjugate - 1e-9, 0.05), 10)


def extremal_shape(exp, eps):
    return ShapePair(h_p_value(exp.p, eps), h_p_value(exp.q, eps))


def test_criterion_1_inverse_round_trip():
    start = time.perf_counter()
    worst = 0.0
    for r in (1.3, 1.5, 2.0, 3.0):
        for s in np.linspace(0.0, 1.0, 100):
            worst = max(worst, abs(h_plain(r, omega(r, s)) - s))
    elapsed = time.perf_counter() - start
    record(1, "inverse round trip", worst < 1e-10 and elapsed < 1.0,
           f"max error {worst:.2e} < 1e-10, {elapsed:.2f}s < 1s")


def test_criterion_2_sandwich_exactness():
    start = time.perf_counter()
    worst, count = 0.0, 0
    for exp in MATRIX:
        for eps in eps_grid(exp):
            res = sharp_constant(exp, extremal_shape(exp, eps))
            worst = max(worst, abs(res.t_sharp - eps))
            count += 1
    elapsed = time.perf_counter() - start
    record(2, "sandwich exactness", worst < 1e-6 and elapsed < 5.0,
           f"{count} points, max |t - eps| {worst:.2e} < 1e-6, {elapsed:.2f}s < 5s")


def test_criterion_3_extremal_equality():
    start = time.perf_counter()
    rng = np.random.default_rng(SEED)
    worst_closed, worst_quad = 0.0, 0.0
    for exp in MATRIX:
        for _ in range(5):
            eps = rng.uniform(1.02, exp.conjugate - 0.02)
            g = extremal_from_eps(exp, eps, rng.uniform(0.1, 1.0), rng.uniform(0.2, 5.0))
            z = moments(g, exp).z
            closed = hardy_integral(g, exp.p)
            quad = hardy_integral(g, exp.p, quad_tol=1e-12, method="quadrature")
            worst_closed = max(worst_closed, abs(closed - eps**exp.p * z) / closed)
            worst_quad = max(worst_quad, abs(quad - closed) / closed)
    elapsed = time.perf_counter() - start
    ok = worst_closed < 1e-13 and worst_quad < 1e-8 and elapsed < 2.0
    record(3, "extremal equality", ok,
           f"closed-form rel {worst_closed:.1e}, quadrature rel {worst_quad:.2e} < 1e-8, "
           f"{elapsed:.2f}s < 2s")


def test_criterion_4_dominance():
    start = time.perf_counter()
    rng = np.random.default_rng(SEED + 4)
    worst, trials = np.inf, 0
    for exp in MATRIX:
        for _ in range(10_000):
            rep = verify_main_bound(random_step_function(rng), exp)
            worst = min(worst, rep.slack)
            trials += 1
    elapsed = time.perf_counter() - start
    record(4, "dominance over random step functions", worst >= -1e-9 and elapsed < 60.0,
           f"{trials} trials, min slack {worst:.2e} >= -1e-9, {elapsed:.1f}s < 60s")


def test_criterion_5_grid_oracle_equivalence():
    start = time.perf_counter()
    rng = np.random.default_rng(SEED + 5)
    worst = 0.0
    for exp in MATRIX:
        for _ in range(50):
            shape = random_shape(rng, exp)
            _, t_grid = beta_grid_min(exp, shape, n_grid=1000)
            worst = max(worst, abs(t_grid - sharp_constant(exp, shape).t_sharp))
    elapsed = time.perf_counter() - start
    record(5, "case analysis vs grid minimum", worst < 1e-5 and elapsed < 30.0,
           f"150 shapes, max diff {worst:.2e} < 1e-5, {elapsed:.2f}s < 30s")


def test_criterion_6_two_moment_recovery():
    rng = np.random.default_rng(SEED + 6)
    worst_min, worst_gap, worst_loc = 0.0, np.inf, 0.0
    for exp in MATRIX:
        grid = np.linspace(0.0, exp.beta_max, 1000)
        step = grid[1] - grid[0]
        for s1 in rng.uniform(0.02, 0.98, 20):
            w = omega(exp.p, s1)
            t1 = np.array([t1_of_beta(exp, s1, b) for b in grid])
            gaps = np.array([lemma21_gap(exp, s1, b) for b in grid])
            worst_min = max(worst_min, abs(t1.min() - w))
            worst_gap = min(worst_gap, gaps.min())
            worst_loc = max(worst_loc, abs(grid[np.argmin(gaps)] - (w - 1.0)) / step)
    ok = worst_min < 1e-6 and worst_gap >= -1e-10 and worst_loc <= 1.0
    record(6, "two-moment recovery", ok,
           f"max |min t1 - omega_p| {worst_min:.2e} < 1e-6, min gap {worst_gap:.1e} >= -1e-10, "
           f"argmin within {worst_loc:.2f} grid steps of beta0")


def test_criterion_7_inequality_verification():
    start = time.perf_counter()
    rng = np.random.default_rng(SEED + 7)
    worst = np.inf
    for exp in MATRIX:
        for _ in range(1000):
            h = random_step_function(rng)
            integrals = theorem11_integrals(h, exp)
            for beta in 3.0 - rng.uniform(0.0, 3.0, 20):  # (0, 3]
                rep = verify_theorem11(h, exp, beta, integrals=integrals)
                worst = min(worst, rep.slack / rep.scale)
    ext = []
    for exp in MATRIX:
        for frac in (0.25, 0.5, 0.75):
            eps = 1.0 + frac * (exp.conjugate - 1.0)
            h = discretize_extremal(extremal_from_eps(exp, eps), 256)
            ext.append(verify_theorem11(h, exp, eps - 1.0).relative_slack)
    elapsed = time.perf_counter() - start
    ok = worst >= -1e-9 and max(ext) < 0.01 and min(ext) >= -1e-9 and elapsed < 30.0
    record(7, "weighted inequality verification", ok,
           f"min scaled slack {worst:.1e} >= -1e-9, discretized extremal rel slack "
           f"max {max(ext):.2e} < 1%, {elapsed:.1f}s < 30s")


def test_criterion_8_sharpness_probe():
    start = time.perf_counter()
    ratios, excess = [], -np.inf
    for exp in MATRIX:
        eps = 1.0 + 0.25 * (exp.conjugate - 1.0)
        shape = extremal_shape(exp, eps)
        best, _ = sharpness_search(exp, shape, n_steps=64, iters=5000, seed=1)
        ratios.append(best / eps)
        excess = max(excess, best - sharp_constant(exp, shape).t_sharp)
    rng = np.random.default_rng(SEED + 8)
    for exp in MATRIX:
        for _ in range(2):
            shape = random_shape(rng, exp, margin=0.05)
            best, _ = sharpness_search(exp, shape, n_steps=32, iters=500, seed=2)
            excess = max(excess, best - sharp_constant(exp, shape).t_sharp)
    elapsed = time.perf_counter() - start
    ok = min(ratios) >= 0.99 and excess <= 1e-9 and elapsed < 60.0
    record(8, "sharpness probe", ok,
           f"min best/eps {min(ratios):.5f} >= 0.99, max excess over t_sharp {excess:.1e} "
           f"<= 1e-9, {elapsed:.1f}s < 60s")
