"""
The sharp constant ``t(s1, s2)`` bounding the normalized Hardy ratio.

For a non-increasing ``h`` on ``(0, k]`` with ``x = int h``, ``y = int h^q`` and
``z = int h^p`` the quantity ``delta = (int A^p / z)^(1/p)``, with ``A`` the
Hardy average of ``h``, is bounded by ``t(beta)`` for every admissible
``beta``, and ``t(s1, s2) = min_beta t(beta)``.  The minimum is located either
at ``beta = 0`` or at an interior critical point characterized as the root of
:func:`~mbound.special_functions.f_curve`.  :func:`beta_grid_min` recomputes
the same minimum by brute force and serves as the cross-check.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import ConsistencyError, DomainError, InfeasibleParameterError
from .roots import DEFAULT_TOL, expand_bracket, find_root, golden_section
from .special_functions import (
    Exponents,
    ShapePair,
    a_beta,
    alpha_s2,
    big_g,
    check_shape,
    f_curve,
    omega,
    tau,
)


class CaseTag(str, enum.Enum):
    """Where the minimum of ``t(beta)`` sits."""

    INTERIOR_ROOT = "InteriorRoot"
    BOUNDARY_AT_ZERO = "BoundaryAtZero"

    def __str__(self):
        return self.value


@dataclass(frozen=True)
class BoundResult:
    """Outcome of :func:`sharp_constant`.

    Attributes
    ----------
    t_sharp : float
        The constant: ``int A^p <= t_sharp^p * int h^p``.
    t_zero : float
        ``t(0)``, the bound at ``beta = 0``.
    case_tag : CaseTag
        ``InteriorRoot`` when ``F(t(0)) > tol``, else ``BoundaryAtZero``.
    f_at_t_zero : float
        ``F(t(0))``; its sign decides the case.
    omega_p_s1 : float
        The two-moment ceiling ``omega_p(s1)``.
    beta_star : float or None
        Interior minimizer, recovered from ``tau(t_sharp) = H_q(beta + 1)``.
    constant_boundary : bool
        Set for ``s1 = 1`` (constant functions), where ``t_sharp = 1``.
    """

    t_sharp: float
    t_zero: float
    case_tag: CaseTag
    f_at_t_zero: float
    omega_p_s1: float
    beta_star: Optional[float] = None
    constant_boundary: bool = False


def h_beta(exp: Exponents, beta: float, y: float) -> float:
    """``y^(p-q) - A_beta y^p``, strictly decreasing on ``[1, inf)``."""
    return y ** (exp.p - exp.q) - a_beta(exp, beta) * y**exp.p


def _check_open_beta(exp, beta):
    beta = float(beta)
    if not (0.0 <= beta <= exp.beta_max):
        raise DomainError(f"beta={beta!r} outside [0, {exp.beta_max!r}]")
    return beta


def _check_s1(s1):
    s1 = float(s1)
    if not (0.0 < s1 <= 1.0):
        raise DomainError(f"s1={s1!r} outside (0, 1]")
    return s1


def t1_of_beta(exp: Exponents, s1: float, beta: float,
               tol: float = DEFAULT_TOL) -> float:
    """
    Two-moment bound ``t1(beta)``: the root ``>= 1`` of
    ``t^(p-q) - A_beta t^p = (q/p) s1 / (beta+1)^(q-1)``.

    Its minimum over ``beta`` is ``omega_p(s1)``, attained at
    ``beta = omega_p(s1) - 1``.
    """
    s1 = _check_s1(s1)
    beta = _check_open_beta(exp, beta)
    p, q = exp.p, exp.q
    A = a_beta(exp, beta)
    level = q / p * s1 / (beta + 1.0) ** (q - 1.0)

    def resid(t):
        return level - (t ** (p - q) - A * t**p)

    r1 = resid(1.0)
    if r1 > tol:
        raise InfeasibleParameterError(
            f"no root >= 1: level {level!r} exceeds h_beta(1) = {1.0 - A!r}"
        )
    if r1 >= 0.0:
        return 1.0
    lo, hi = expand_bracket(resid, 1.0)
    return find_root(resid, lo, hi)


def lemma21_gap(exp: Exponents, s1: float, beta: float,
                tol: float = DEFAULT_TOL) -> float:
    """
    ``[w^(p-q) - A_beta w^p] - (q/p) s1/(beta+1)^(q-1)`` with ``w = omega_p(s1)``.

    Non-negative, vanishing only at ``beta = omega_p(s1) - 1``.
    """
    s1 = _check_s1(s1)
    beta = _check_open_beta(exp, beta)
    p, q = exp.p, exp.q
    w = omega(p, s1, tol)
    lhs = q / p * s1 / (beta + 1.0) ** (q - 1.0)
    return w ** (p - q) - a_beta(exp, beta) * w**p - lhs


def t1_rhs(exp: Exponents, shape: ShapePair, beta: float,
           tol: float = DEFAULT_TOL, wq: float | None = None) -> float:
    """
    Right-hand side ``T1(beta)`` of the defining equation of ``t(beta)``:

        T1 = (p-q)(beta+1) s1 / G + (s1/s2)(p(q-1) beta w_q - p (beta+1)^q) / G

    with ``w_q = omega_q(s2)^q``.
    """
    p, q = exp.p, exp.q
    if wq is None:
        wq = omega(q, shape.s2, tol) ** q
    G = big_g(exp, beta)
    b1 = beta + 1.0
    return ((p - q) * b1 * shape.s1
            + shape.ratio * (p * (q - 1.0) * beta * wq - p * b1**q)) / G


def _solve_t_of_beta(exp, shape, beta, wq, tol):
    p, q = exp.p, exp.q
    G = big_g(exp, beta)
    c = p * (beta + 1.0) ** q / G
    rhs = t1_rhs(exp, shape, beta, wq=wq)

    def phi(t):
        return t**p - c * t ** (p - q) - rhs

    f1 = phi(1.0)
    if f1 > tol:
        raise InfeasibleParameterError(
            f"t(beta) has no root >= 1 at beta={beta!r}: "
            f"residual at 1 is {f1!r} (s1={shape.s1!r}, s2={shape.s2!r})"
        )
    if f1 >= 0.0:
        return 1.0
    lo, hi = expand_bracket(phi, 1.0)
    t = find_root(phi, lo, hi)
    res = phi(t)
    if abs(res) > max(tol, 64 * math.ulp(t**p)):
        raise ConsistencyError(f"t(beta) residual {res!r} above tolerance",
                               values=(t, res))
    return t


def t_of_beta(exp: Exponents, shape: ShapePair, beta: float,
              tol: float = DEFAULT_TOL) -> float:
    """
    The bound ``t(beta) >= 1``: root of ``t^p - (p (beta+1)^q / G) t^(p-q) = T1(beta)``.

    At ``beta = 0`` this is :func:`t_zero`.
    """
    shape = check_shape(exp, shape)
    beta = _check_open_beta(exp, beta)
    if beta == 0.0:
        return t_zero(exp, shape, tol)
    return _solve_t_of_beta(exp, shape, beta, omega(exp.q, shape.s2, tol) ** exp.q, tol)


def t_zero(exp: Exponents, shape: ShapePair, tol: float = DEFAULT_TOL) -> float:
    """
    ``t(0)``: the root ``>= 1`` of ``y^p - (p/(p-q)) y^(p-q) = s1 - (p/(p-q)) s1/s2``.

    The left side increases from ``-q/(p-q)`` at ``y = 1``.  The constant
    point ``s1 = 1`` returns 1.
    """
    shape = check_shape(exp, shape)
    if shape.is_constant:
        return 1.0
    p, q = exp.p, exp.q
    k = p / (p - q)
    rhs = shape.s1 - k * shape.ratio
    g1 = -q / (p - q)
    if rhs <= g1:
        raise InfeasibleParameterError(
            f"t(0) equation has right side {rhs!r} <= g(1) = {g1!r}; "
            f"shape (s1={shape.s1!r}, s2={shape.s2!r}) is corrupted"
        )

    def g(y):
        return y**p - k * y ** (p - q) - rhs

    lo, hi = expand_bracket(g, 1.0)
    return find_root(g, lo, hi)


def sharp_constant(exp: Exponents, shape: ShapePair,
                   tol: float = DEFAULT_TOL) -> BoundResult:
    """
    Compute ``t(s1, s2)``, the greatest ``t`` in ``[1, t(0)]`` with ``F(t) <= 0``.

    Raises
    ------
    DomainError
        Infeasible shape.
    ConsistencyError
        ``F`` has no sign change on ``[1, t(0)]`` although ``F(t(0)) > 0``,
        or the result exceeds the ceiling ``omega_p(s1)``.
    """
    shape = check_shape(exp, shape)
    p, q = exp.p, exp.q
    if shape.is_constant:
        return BoundResult(1.0, 1.0, CaseTag.BOUNDARY_AT_ZERO, 0.0, 1.0,
                           None, constant_boundary=True)

    t0 = t_zero(exp, shape, tol)
    alpha = alpha_s2(exp, shape.s2, tol)
    ceiling = omega(p, shape.s1, tol)

    def F(t):
        return f_curve(exp, shape, t, tol, alpha=alpha)

    f0 = F(t0)
    beta_star = None
    if f0 <= tol:
        case = CaseTag.BOUNDARY_AT_ZERO
        t_sharp = t0
    else:
        case = CaseTag.INTERIOR_ROOT
        f1 = F(1.0)
        if f1 > 0.0:
            raise ConsistencyError(
                f"F does not change sign on [1, t(0)]: F(1)={f1!r}, "
                f"F(t(0))={f0!r}",
                values=(f1, f0),
            )
        t_sharp = find_root(F, 1.0, t0)
        beta_star = omega(q, min(tau(exp, shape, t_sharp), 1.0), tol) - 1.0

    if t_sharp > ceiling + 10.0 * tol:
        raise ConsistencyError(
            f"t_sharp={t_sharp!r} exceeds ceiling omega_p(s1)={ceiling!r}",
            values=(t_sharp, ceiling),
        )
    return BoundResult(t_sharp, t0, case, f0, ceiling, beta_star)


def beta_grid_min(exp: Exponents, shape: ShapePair, n_grid: int = 1000,
                  tol: float = DEFAULT_TOL) -> tuple[float, float]:
    """
    Minimize ``t(beta)`` over ``[0, 1/(p-1)]`` directly.

    A uniform ``n_grid``-point scan picks the best grid point (ties go to the
    smaller ``beta``), then golden-section search refines inside the two
    neighbouring cells.

    Returns
    -------
    beta_min, t_min : float
    """
    if n_grid < 3:
        raise DomainError(f"n_grid must be >= 3, got {n_grid}")
    shape = check_shape(exp, shape)
    if shape.is_constant:
        return 0.0, 1.0
    wq = omega(exp.q, shape.s2, tol) ** exp.q
    t0 = t_zero(exp, shape, tol)

    def t_at(beta):
        if beta <= 0.0:
            return t0
        return _solve_t_of_beta(exp, shape, min(beta, exp.beta_max), wq, tol)

    grid = np.linspace(0.0, exp.beta_max, n_grid)
    values = np.array([t_at(b) for b in grid])
    i = int(np.argmin(values))
    lo = grid[max(i - 1, 0)]
    hi = grid[min(i + 1, n_grid - 1)]
    b, t = golden_section(t_at, lo, hi, tol=tol)
    if values[i] <= t:
        return float(grid[i]), float(values[i])
    return float(b), float(t)


def bellman_two_var(p: float, f: float, F: float,
                    tol: float = DEFAULT_TOL) -> float:
    """``F * omega_p(f^p / F)^p``, the Bellman value with only ``int phi`` and ``int phi^p`` fixed."""
    if not p > 1.0:
        raise DomainError(f"p must exceed 1, got {p!r}")
    if not f > 0.0:
        raise DomainError(f"f must be positive, got {f!r}")
    s = f**p / F
    if s > 1.0:
        if s > 1.0 + 1e-12:
            raise DomainError(f"need f^p <= F, got f^p={f**p!r} > F={F!r}")
        s = 1.0
    return F * omega(p, s, tol) ** p
