"""Hardy averages and the integrals built from them."""

from __future__ import annotations

import numpy as np

from ..errors import DomainError
from ..quadrature import DEFAULT_RTOL, integrate_pieces, integrate_singular_left
from ..special_functions import Exponents
from .functions import PowerExtremal, StepFunction


def step_average_coefficients(h: StepFunction):
    """
    Coefficients of the Hardy average ``A(t) = c_i + d_i / t`` on each cell.

    ``c_i = v_i`` and ``d_i = P_i - v_i e_i`` where ``P_i`` is the mass to the
    left of the cell and ``e_i`` its left edge.  ``d_i >= 0`` since ``h`` is
    non-increasing, and ``d_0 = 0``.
    """
    e = h.edges
    v = h.values
    mass = np.concatenate([[0.0], np.cumsum(v * np.diff(e))])[:-1]
    d = mass - v * e[:-1]
    d[0] = 0.0
    return v.copy(), np.maximum(d, 0.0)


def hardy_average(h, t, quad_tol: float | None = None):
    """
    ``A(t) = (1/t) int_0^t h``.

    With ``quad_tol`` given and ``h`` a power function, the inner integral is
    computed by quadrature instead of from the primitive.
    """
    t = np.asarray(t, dtype=float)
    if isinstance(h, StepFunction):
        c, d = step_average_coefficients(h)
        idx = np.minimum(np.searchsorted(h.breakpoints, t, side="left"), h.n - 1)
        return c[idx] + d[idx] / t
    if isinstance(h, PowerExtremal):
        if quad_tol is None:
            return h.primitive(t) / t
        out = np.empty(t.shape)
        for j, tj in np.ndenumerate(t):
            val, _ = integrate_singular_left(h, float(tj), rtol=quad_tol)
            out[j] = val / tj
        return out
    raise TypeError(f"unsupported function type {type(h).__name__}")


def _step_pieces(h: StepFunction):
    c, d = step_average_coefficients(h)
    e = h.edges
    return e[:-1], e[1:], c, d


def hardy_integral(h, r: float, quad_tol: float = DEFAULT_RTOL,
                   method: str = "auto") -> float:
    """
    ``int_0^kappa A(t)^r dt``.

    Step functions are integrated cell by cell with adaptive Gauss-Kronrod.
    Power functions use ``A = eps * g`` and the exact power moment unless
    ``method="quadrature"``, which integrates ``(G(t)/t)^r`` numerically with
    ``G`` the primitive of ``g``.
    """
    if r < 1.0:
        raise DomainError(f"exponent r must be >= 1, got {r!r}")
    if isinstance(h, StepFunction):
        a, b, c, d = _step_pieces(h)
        vals, _ = integrate_pieces(lambda t, c, d: (c + d / t) ** r, a, b,
                                   params=(c, d), rtol=quad_tol)
        return float(vals.sum())
    if isinstance(h, PowerExtremal):
        if method == "quadrature":
            val, _ = integrate_singular_left(
                lambda t: (h.primitive(t) / t) ** r, h.kappa0, rtol=quad_tol)
            return val
        return h.eps**r * h.power_integral(r)
    raise TypeError(f"unsupported function type {type(h).__name__}")


def mixed_integral(h, exp: Exponents, quad_tol: float = DEFAULT_RTOL) -> float:
    """``int_0^kappa A(t)^(p-q) h(t)^q dt``."""
    p, q = exp.p, exp.q
    if isinstance(h, StepFunction):
        a, b, c, d = _step_pieces(h)
        vals, _ = integrate_pieces(lambda t, c, d: (c + d / t) ** (p - q) * c**q,
                                   a, b, params=(c, d), rtol=quad_tol)
        return float(vals.sum())
    if isinstance(h, PowerExtremal):
        return h.eps ** (p - q) * h.power_integral(p)
    raise TypeError(f"unsupported function type {type(h).__name__}")
