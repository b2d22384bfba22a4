"""
Scalar special functions of the three-moment Hardy bound.

Notation follows the usual one for the dyadic maximal operator: for ``r > 1``

    H_r(z) = -(r - 1) z^r + r z^(r - 1),     1 <= z <= r/(r - 1),

decreases from 1 to 0, and ``omega(r, .)`` is its inverse on ``[0, 1]``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import DegenerateInputError, DomainError
from .roots import DEFAULT_TOL, MAX_ITER, newton_bisect

TAU_GUARD = 1e-14
BOUNDARY_RTOL = 1e-12


@dataclass(frozen=True)
class Exponents:
    """The exponent pair ``1 < q < p``."""

    p: float
    q: float

    def __post_init__(self):
        p, q = float(self.p), float(self.q)
        if not (math.isfinite(p) and math.isfinite(q)):
            raise DomainError(f"exponents must be finite, got p={p}, q={q}")
        if not 1.0 < q < p:
            raise DomainError(f"need 1 < q < p, got p={p}, q={q}")
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "q", q)

    @property
    def conjugate(self) -> float:
        """``p/(p-1)``, the unconstrained Hardy constant."""
        return self.p / (self.p - 1.0)

    @property
    def beta_max(self) -> float:
        """Right end ``1/(p-1)`` of the admissible parameter range."""
        return 1.0 / (self.p - 1.0)


@dataclass(frozen=True)
class ShapePair:
    """
    Normalized moment ratios ``s1 = x^p/(k^(p-1) z)``, ``s2 = x^q/(k^(q-1) y)``.

    Only the range ``0 < s1, s2 <= 1`` is checked here; the Hölder
    compatibility ``s1^(q-1) <= s2^(p-1)`` depends on the exponents and is
    enforced by :func:`check_shape`.  ``s1 == 1`` (which forces ``s2 == 1``)
    is the constant-function point and is flagged rather than rejected.
    Pairs with ``s2 == 1 > s1`` are limits of spiky functions, not attained,
    and are handled by continuity.
    """

    s1: float
    s2: float

    def __post_init__(self):
        s1, s2 = float(self.s1), float(self.s2)
        if not (0.0 < s1 <= 1.0 + BOUNDARY_RTOL):
            raise DomainError(f"s1 must lie in (0, 1], got {s1!r}")
        if not (0.0 < s2 <= 1.0 + BOUNDARY_RTOL):
            raise DomainError(f"s2 must lie in (0, 1], got {s2!r}")
        object.__setattr__(self, "s1", min(s1, 1.0))
        object.__setattr__(self, "s2", min(s2, 1.0))

    @property
    def is_constant(self) -> bool:
        """True at ``s1 = 1``, attained only by constant functions."""
        return self.s1 >= 1.0 - BOUNDARY_RTOL

    @property
    def ratio(self) -> float:
        return self.s1 / self.s2

    def on_holder_curve(self, exp: Exponents) -> bool:
        """True when ``s1^(q-1) = s2^(p-1)`` within the boundary slack."""
        floor = self.s1 ** ((exp.q - 1.0) / (exp.p - 1.0))
        return self.s2 <= floor * (1.0 + BOUNDARY_RTOL)


def check_shape(exp: Exponents, shape: ShapePair) -> ShapePair:
    """
    Validate ``s1^(q-1) <= s2^(p-1)``.

    Violations within relative slack ``1e-12`` are clamped onto the curve;
    larger ones raise :class:`DomainError` naming the inequality.
    """
    floor = shape.s1 ** ((exp.q - 1.0) / (exp.p - 1.0))
    if shape.s2 >= floor:
        return shape
    if shape.s2 < floor * (1.0 - BOUNDARY_RTOL):
        raise DomainError(
            "infeasible shape: s1^(q-1) <= s2^(p-1) violated "
            f"(s1={shape.s1!r}, s2={shape.s2!r}, need s2 >= {floor!r})"
        )
    return ShapePair(shape.s1, floor)


def _exponent(r) -> float:
    r = float(r.p if isinstance(r, Exponents) else r)
    if not r > 1.0:
        raise DomainError(f"exponent must exceed 1, got {r!r}")
    return r


def h_p_value(r, z: float) -> float:
    """
    Evaluate ``H_r(z) = -(r-1) z^r + r z^(r-1)`` on ``[1, r/(r-1)]``.

    ``r`` may be a bare exponent or an :class:`Exponents` (its ``p`` is used).
    """
    r = _exponent(r)
    z = float(z)
    top = r / (r - 1.0)
    if not (1.0 <= z <= top):
        raise DomainError(f"z={z!r} outside [1, {top!r}]")
    return z ** (r - 1.0) * (r - (r - 1.0) * z)


def _h_unchecked(r, z):
    return z ** (r - 1.0) * (r - (r - 1.0) * z)


def _dh(r, z):
    return r * (r - 1.0) * z ** (r - 2.0) * (1.0 - z)


def omega(r, s: float, tol: float = DEFAULT_TOL) -> float:
    """
    Inverse of ``H_r``: the unique ``lam`` in ``[1, r/(r-1)]`` with ``H_r(lam) = s``.

    The endpoints ``s = 1`` and ``s = 0`` are returned exactly.

    Raises
    ------
    DomainError
        ``s`` outside ``[0, 1]``.
    ConvergenceError
        Iteration cap reached; carries the final bracket.
    """
    r = _exponent(r)
    s = float(s)
    if not (0.0 <= s <= 1.0):
        raise DomainError(f"s={s!r} outside [0, 1]")
    top = r / (r - 1.0)
    # Computed H at the endpoints carries rounding (e.g. H(top) ~ 1e-15), so
    # targets beyond those values map to the endpoint itself.
    if s >= _h_unchecked(r, 1.0):
        return 1.0
    if s <= _h_unchecked(r, top):
        return top
    return newton_bisect(
        lambda z: _h_unchecked(r, z),
        lambda z: _dh(r, z),
        1.0, top, target=s, tol=tol, maxiter=MAX_ITER,
    )


def big_g(exp: Exponents, beta: float) -> float:
    """``G(beta) = q(p-1)(beta+1) - p(q-1)``; equals ``p - q`` at 0 and ``p`` at ``1/(p-1)``."""
    if beta < 0.0:
        raise DomainError(f"beta must be >= 0, got {beta!r}")
    p, q = exp.p, exp.q
    return q * (p - 1.0) * (beta + 1.0) - p * (q - 1.0)


def _check_beta(exp: Exponents, beta: float) -> float:
    beta = float(beta)
    if not (0.0 <= beta <= exp.beta_max):
        raise DomainError(f"beta={beta!r} outside [0, {exp.beta_max!r}]")
    return beta


def a_beta(exp: Exponents, beta: float) -> float:
    """``A_beta = G / (p (beta+1)^q)``, the leading coefficient of ``h_beta``."""
    beta = _check_beta(exp, beta)
    return big_g(exp, beta) / (exp.p * (beta + 1.0) ** exp.q)


def theta_beta(exp: Exponents, beta: float) -> float:
    """``(p-1)(beta+1)^q - p (beta+1)^(q-1)``; increases from -1 to 0 on the range."""
    beta = _check_beta(exp, beta)
    p, q = exp.p, exp.q
    if beta == 0.0:
        return -1.0
    if beta == exp.beta_max:
        return 0.0
    b1 = beta + 1.0
    return b1 ** (q - 1.0) * ((p - 1.0) * b1 - p)


def alpha_s2(exp: Exponents, s2: float, tol: float = DEFAULT_TOL) -> float:
    """``omega_q(s2)^q / s2 - 1``; strictly decreasing, zero at ``s2 = 1``."""
    s2 = float(s2)
    if not (0.0 < s2 <= 1.0):
        raise DomainError(f"s2={s2!r} outside (0, 1]")
    if s2 == 1.0:
        return 0.0
    return omega(exp.q, s2, tol) ** exp.q / s2 - 1.0


def tau(exp: Exponents, shape: ShapePair, t: float) -> float:
    """
    ``((p-q)/p) (t^p - s1) / (t^(p-q) - s1/s2)`` for ``t >= 1``.

    Strictly increasing in ``t``; equals 1 at the ``beta = 0`` bound ``t(0)``.
    """
    t = float(t)
    if t < 1.0:
        raise DomainError(f"t={t!r} must be >= 1")
    p, q = exp.p, exp.q
    den = t ** (p - q) - shape.ratio
    if abs(den) < TAU_GUARD:
        raise DegenerateInputError(
            f"tau denominator {den:.3e} below guard at t={t!r} "
            f"(s1={shape.s1!r}, s2={shape.s2!r})"
        )
    return (p - q) / p * (t**p - shape.s1) / den


def f_curve(exp: Exponents, shape: ShapePair, t: float,
            tol: float = DEFAULT_TOL, alpha: float | None = None) -> float:
    """
    Critical-point function whose root is the interior minimum of ``t(beta)``.

    ``F(t) = q (p w^(q-1) - (p-1) w^q)(t^(p-q) - s1/s2) - (p-q) s1 alpha(s2)``
    with ``w = omega_q(tau(t))``.  Defined while ``tau(t) <= 1``, i.e. on
    ``[1, t(0)]``.  ``alpha`` may be passed in to skip recomputing
    ``alpha_s2``.
    """
    p, q = exp.p, exp.q
    tv = tau(exp, shape, t)
    if tv > 1.0:
        if tv > 1.0 + 1e3 * tol:
            raise DomainError(f"tau(t)={tv!r} > 1: t={t!r} lies beyond t(0)")
        tv = 1.0
    if tv < 0.0:
        raise DomainError(f"tau(t)={tv!r} < 0 at t={t!r}")
    w = omega(q, tv, tol)
    if alpha is None:
        alpha = alpha_s2(exp, shape.s2, tol)
    coeff = q * w ** (q - 1.0) * (p - (p - 1.0) * w)
    return coeff * (t ** (p - q) - shape.ratio) - (p - q) * shape.s1 * alpha
