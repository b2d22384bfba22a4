import math

import numpy as np
import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

import mbound.sharp_bound as sb
from mbound import (
    CaseTag,
    ConsistencyError,
    DomainError,
    Exponents,
    ShapePair,
    beta_grid_min,
    bellman_two_var,
    f_curve,
    h_p_value,
    lemma21_gap,
    omega,
    sharp_constant,
    t1_of_beta,
    t_of_beta,
    t_zero,
)

from oracles import (
    h_plain,
    omega_bisect,
    random_shape,
    t_min_brute,
    t_of_beta_scan,
    t_zero_bisect,
)

E215 = Exponents(2.0, 1.5)
MID = ShapePair(0.5, 0.9)


def extremal_shape(exp, eps):
    return ShapePair(h_plain(exp.p, eps), h_plain(exp.q, eps))


# ------------------------------------------------------------ two moments


@pytest.mark.parametrize("s1", [0.1, 0.4, 0.75, 0.95])
def test_t1_at_beta0_is_omega(exp, s1):
    w = omega(exp.p, s1)
    if w - 1.0 > exp.beta_max:
        pytest.skip("beta0 outside the admissible range")
    assert t1_of_beta(exp, s1, w - 1.0) == pytest.approx(w, abs=1e-9)


def test_t1_example():
    assert t1_of_beta(E215, 0.75, 0.5) == pytest.approx(1.5, abs=1e-9)


def test_t1_exceeds_omega_away_from_beta0(exp):
    s1 = 0.6
    w = omega(exp.p, s1)
    for beta in np.linspace(0.0, exp.beta_max, 25):
        if abs(beta - (w - 1.0)) < 1e-3:
            continue
        assert t1_of_beta(exp, s1, beta) > w


@pytest.mark.parametrize("beta", [0.25, 0.75])
def test_lemma21_gap_positive_off_beta0(beta):
    assert lemma21_gap(E215, 0.75, beta) > 0.0


def test_lemma21_gap_zero_at_beta0(exp):
    s1 = 0.7
    beta0 = omega(exp.p, s1) - 1.0
    assert lemma21_gap(exp, s1, beta0) == pytest.approx(0.0, abs=1e-12)


def test_lemma21_gap_by_hand():
    # w = omega_2(0.75) = 1.5; A_beta = G/(p (b+1)^q)
    beta = 0.25
    G = 1.5 * 1.25 - 1.0
    A = G / (2 * 1.25**1.5)
    expected = 1.5**0.5 - A * 1.5**2 - 0.75 * 0.75 / 1.25**0.5
    assert lemma21_gap(E215, 0.75, beta) == pytest.approx(expected, rel=1e-12)


@pytest.mark.parametrize("beta", [-0.1, 1.2])
def test_t1_beta_domain(beta):
    with pytest.raises(DomainError):
        t1_of_beta(E215, 0.5, beta)


# ------------------------------------------------------------- t(beta), t(0)


def test_t_zero_matches_bisection_oracle():
    expected = t_zero_bisect(2.0, 1.5, 0.5, 0.9)
    assert expected == pytest.approx(1.97, abs=0.01)
    assert t_zero(E215, MID) == pytest.approx(expected, abs=1e-11)


def test_t_zero_random_shapes(exp, rng):
    for _ in range(30):
        s = random_shape(rng, exp)
        assert t_zero(exp, s) == pytest.approx(t_zero_bisect(exp.p, exp.q, s.s1, s.s2), abs=1e-10)


def test_t_zero_extremal_upper_bound():
    s = ShapePair(0.96, h_plain(1.5, 1.2))
    assert t_zero(E215, s) >= 1.2


def test_t_zero_constant():
    assert t_zero(E215, ShapePair(1.0, 1.0)) == 1.0


def test_t_of_beta_zero_delegates():
    assert t_of_beta(E215, MID, 0.0) == t_zero(E215, MID)


def test_t_of_beta_example_against_scan():
    val = t_of_beta(E215, MID, 0.5)
    assert 1.0 <= val <= omega(2.0, 0.5) + 0.2
    assert val == pytest.approx(t_of_beta_scan(2.0, 1.5, 0.5, 0.9, 0.5), abs=1e-10)


def test_t_of_beta_random_against_scan(exp, rng):
    for _ in range(10):
        s = random_shape(rng, exp)
        beta = rng.uniform(0.01, exp.beta_max)
        assert t_of_beta(exp, s, beta) == pytest.approx(
            t_of_beta_scan(exp.p, exp.q, s.s1, s.s2, beta, hi=8.0), abs=1e-9)


@pytest.mark.parametrize("eps_frac", [0.2, 0.5, 0.8])
def test_t_of_beta_above_eps_on_extremal_shapes(exp, eps_frac):
    eps = 1.0 + eps_frac * (exp.conjugate - 1.0)
    s = extremal_shape(exp, eps)
    for beta in np.linspace(0.0, exp.beta_max, 30):
        assert t_of_beta(exp, s, beta) >= eps - 1e-9


# ---------------------------------------------------------------- t(s1, s2)


def test_sharp_constant_sandwich_example():
    res = sharp_constant(E215, ShapePair(0.96, h_plain(1.5, 1.2)))
    assert res.t_sharp == pytest.approx(1.2, abs=1e-6)
    assert res.omega_p_s1 == pytest.approx(1.2, abs=1e-12)


def test_sharp_constant_interior_example():
    res = sharp_constant(E215, MID)
    assert res.case_tag is CaseTag.INTERIOR_ROOT
    assert res.t_sharp < res.t_zero
    assert res.f_at_t_zero > 0
    assert res.t_sharp == pytest.approx(t_min_brute(2.0, 1.5, 0.5, 0.9, n=801), abs=1e-5)
    # beta* reproduces t_sharp through t(beta)
    assert t_of_beta(E215, MID, res.beta_star) == pytest.approx(res.t_sharp, abs=1e-8)


def test_sharp_constant_boundary_case():
    exp = Exponents(3.0, 2.0)
    s = ShapePair(0.686, 0.8403)
    res = sharp_constant(exp, s)
    assert res.case_tag is CaseTag.BOUNDARY_AT_ZERO
    assert res.t_sharp == res.t_zero
    assert res.f_at_t_zero <= 1e-12
    assert res.beta_star is None
    assert beta_grid_min(exp, s)[1] == pytest.approx(res.t_sharp, abs=1e-5)


def test_sharp_constant_constant_point():
    res = sharp_constant(E215, ShapePair(1.0, 1.0))
    assert res.constant_boundary
    assert res.t_sharp == 1.0


def test_sharp_constant_infeasible():
    with pytest.raises(DomainError, match="s1\\^\\(q-1\\)"):
        sharp_constant(E215, ShapePair(0.9, 0.3))


def test_consistency_error_when_f_has_no_sign_change(monkeypatch):
    monkeypatch.setattr(sb, "f_curve", lambda *a, **k: 1.0)
    with pytest.raises(ConsistencyError) as info:
        sharp_constant(E215, MID)
    assert info.value.values == (1.0, 1.0)


def test_holder_curve_is_not_constant():
    # The indicator of (0, m] sits on s1^(q-1) = s2^(p-1) and has a Hardy
    # ratio above 1, so the constant there must exceed it.
    m = 0.5
    p, q = 2.0, 1.5
    s = ShapePair(m ** (p - 1), m ** (q - 1))
    ratio = math.sqrt(1 + (1 - m) / (p - 1))
    res = sharp_constant(E215, s)
    assert not res.constant_boundary
    assert res.t_sharp >= ratio
    # continuous in s2 across the curve
    inner = sharp_constant(E215, ShapePair(s.s1, s.s2 * (1 + 1e-7)))
    assert inner.t_sharp == pytest.approx(res.t_sharp, abs=1e-4)


def test_s2_one_is_continuous_limit():
    s1 = 0.6
    near = sharp_constant(E215, ShapePair(s1, 1 - 1e-9)).t_sharp
    at = sharp_constant(E215, ShapePair(s1, 1.0)).t_sharp
    assert at == pytest.approx(near, abs=1e-4)
    assert at > 1.0


@settings(max_examples=60, deadline=None)
@given(u=st.floats(0.02, 0.98), v=st.floats(1e-3, 1 - 1e-3),
       pq=st.sampled_from([(2.0, 1.5), (3.0, 2.0), (1.8, 1.3)]))
def test_sharp_constant_bracketed(u, v, pq):
    exp = Exponents(*pq)
    lo = u ** ((exp.q - 1) / (exp.p - 1))
    s = ShapePair(u, lo + (1 - lo) * v)
    res = sharp_constant(exp, s)
    assert 1.0 <= res.t_sharp <= res.t_zero + 1e-12
    assert res.t_sharp <= res.omega_p_s1 + 1e-11
    # t_sharp is the minimum of t(beta): no grid value falls below it
    for beta in np.linspace(0.0, exp.beta_max, 7):
        assert t_of_beta(exp, s, beta) >= res.t_sharp - 1e-9


@settings(max_examples=40, deadline=None)
@given(u=st.floats(0.02, 0.98), v=st.floats(1e-3, 1 - 1e-3))
def test_f_sign_matches_case(u, v):
    lo = u**0.5
    s = ShapePair(u, lo + (1 - lo) * v)
    res = sharp_constant(E215, s)
    if res.case_tag is CaseTag.INTERIOR_ROOT:
        assert abs(f_curve(E215, s, res.t_sharp)) < 1e-9
        assert f_curve(E215, s, 1.0) <= 0
    else:
        assert res.f_at_t_zero <= 1e-12


# ------------------------------------------------------------ beta grid min


@pytest.mark.parametrize("eps_frac", [0.25, 0.75])
def test_beta_grid_min_extremal(exp, eps_frac):
    eps = 1.0 + eps_frac * (exp.conjugate - 1.0)
    _, t = beta_grid_min(exp, extremal_shape(exp, eps))
    assert t == pytest.approx(eps, abs=1e-5)


def test_beta_grid_min_constant():
    assert beta_grid_min(E215, ShapePair(1.0, 1.0)) == (0.0, 1.0)


def test_beta_grid_min_rejects_tiny_grid():
    with pytest.raises(DomainError):
        beta_grid_min(E215, MID, n_grid=2)


# --------------------------------------------------------------- Bellman


def test_bellman_examples():
    assert bellman_two_var(2.0, 1.0, 1.0) == 1.0
    assert bellman_two_var(2.0, 1.0, 4.0 / 3.0) == pytest.approx(3.0, abs=1e-12)
    big = 1e12
    assert bellman_two_var(2.0, 1.0, big) / big == pytest.approx(4.0, rel=1e-5)


def test_bellman_matches_oracle():
    for p, f, F in [(3.0, 2.0, 20.0), (1.5, 0.3, 1.0)]:
        s = f**p / F
        assert bellman_two_var(p, f, F) == pytest.approx(F * omega_bisect(p, s) ** p, rel=1e-10)


def test_bellman_domain():
    with pytest.raises(DomainError):
        bellman_two_var(2.0, 2.0, 1.0)
