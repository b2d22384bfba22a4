"""
One-dimensional root finding and minimization helpers.

Every equation solved in this package is a strictly monotone scalar map on a
half-line or a compact interval, so bracketing methods are sufficient.
"""

import math

from scipy.optimize import brentq

from .errors import ConvergenceError, NoSolutionError

DEFAULT_TOL = 1e-12
MAX_ITER = 200
BRACKET_CAP = 2.0**20

_INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0


def newton_bisect(f, df, lo, hi, target=0.0, tol=DEFAULT_TOL, maxiter=MAX_ITER):
    """
    Solve ``f(x) = target`` on ``[lo, hi]`` for a strictly monotone ``f``.

    A Newton step is taken from the current iterate whenever it stays inside
    the bracket; otherwise the bracket is bisected.  Iteration continues past
    the residual tolerance until the step is at machine resolution, so
    ill-conditioned roots (vanishing derivative) are still located to full
    precision.

    Parameters
    ----------
    f, df : callable
        The function and its derivative.
    lo, hi : float
        Bracket.  ``f(lo) - target`` and ``f(hi) - target`` must not share a
        strict sign.
    target : float
        Right-hand side.
    tol : float
        Absolute tolerance on the residual ``|f(x) - target|``.
    maxiter : int
        Iteration cap.

    Returns
    -------
    float
    """
    flo = f(lo) - target
    fhi = f(hi) - target
    if flo == 0.0:
        return lo
    if fhi == 0.0:
        return hi
    if flo * fhi > 0.0:
        raise NoSolutionError(
            f"no sign change on [{lo!r}, {hi!r}]: residuals {flo!r}, {fhi!r}"
        )
    increasing = fhi > 0.0
    x = 0.5 * (lo + hi)
    for _ in range(maxiter):
        fx = f(x) - target
        if fx == 0.0:
            return x
        if (fx > 0.0) == increasing:
            hi = x
        else:
            lo = x
        d = df(x)
        step_ok = False
        if d != 0.0 and math.isfinite(d):
            xn = x - fx / d
            step_ok = lo < xn < hi
        if not step_ok:
            xn = 0.5 * (lo + hi)
        if abs(xn - x) <= 4.0 * math.ulp(x) or hi - lo <= 4.0 * math.ulp(hi):
            x = xn
            break
        x = xn
    else:
        raise ConvergenceError(
            f"newton_bisect did not converge in {maxiter} iterations",
            bracket=(lo, hi),
        )
    if abs(f(x) - target) > tol:
        raise ConvergenceError(
            f"residual {abs(f(x) - target):.3e} above tolerance {tol:.1e}",
            bracket=(lo, hi),
        )
    return x


def expand_bracket(f, lo=1.0, start=2.0, cap=BRACKET_CAP):
    """Double ``hi`` from ``start`` until ``f(lo)`` and ``f(hi)`` differ in sign."""
    flo = f(lo)
    hi = start
    while hi <= cap:
        fhi = f(hi)
        if flo * fhi <= 0.0:
            return lo, hi
        hi *= 2.0
    raise NoSolutionError(f"no sign change on [{lo!r}, {cap!r}]")


def find_root(f, lo, hi, xtol=1e-15, maxiter=MAX_ITER):
    """Brent's method on a bracket known to contain a sign change."""
    try:
        root, info = brentq(f, lo, hi, xtol=xtol, maxiter=maxiter,
                            full_output=True, disp=False)
    except ValueError as exc:
        raise NoSolutionError(str(exc)) from exc
    if not info.converged:
        raise ConvergenceError(f"brentq: {info.flag}", bracket=(lo, hi))
    return root


def golden_section(f, lo, hi, tol=1e-12, maxiter=MAX_ITER):
    """
    Minimize a unimodal ``f`` on ``[lo, hi]``.

    Returns ``(x_min, f_min)``.  Endpoint values are compared against the
    interior estimate so that a minimum on the boundary is reported exactly.
    """
    a, b = lo, hi
    c = b - _INV_PHI * (b - a)
    d = a + _INV_PHI * (b - a)
    fc, fd = f(c), f(d)
    it = 0
    while b - a > tol and it < maxiter:
        if fc <= fd:
            b, d, fd = d, c, fc
            c = b - _INV_PHI * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + _INV_PHI * (b - a)
            fd = f(d)
        it += 1
    x, fx = (c, fc) if fc <= fd else (d, fd)
    for xe in (lo, hi):
        fe = f(xe)
        if fe < fx:
            x, fx = xe, fe
    return x, fx
