"""
Randomized lower-bound search for the Hardy ratio at a fixed shape.

The ratio ``(int A^p / int h^p)^(1/p)`` and the shape ``(s1, s2)`` are
invariant under ``h -> c h``, so the search works with ``kappa = 1`` and
moments ``x = 1``, ``y = 1/s2``, ``z = 1/s1``.  Candidates are n-step
functions on a geometric-looking partition; each is pushed onto the three
moment constraints by a three-parameter Newton deformation
(:func:`project_moments`).
"""

from __future__ import annotations

import numpy as np

from ..errors import DomainError, SearchError
from ..quadrature import DEFAULT_RTOL
from ..special_functions import Exponents, ShapePair, check_shape
from ..roots import find_root
from .functions import StepFunction
from .integrals import hardy_integral

PROJECTION_TOL = 1e-13
PROJECTION_ITERS = 30
MAX_HALVINGS = 12
MAX_FAILURE_RATE = 0.9
SIGMA_FACTOR = 1.25
SIGMA_MIN = 1e-9
SIGMA_MAX = 0.3


def project_moments(breakpoints, values, exp: Exponents, targets,
                    tol: float = PROJECTION_TOL, maxiter: int = PROJECTION_ITERS):
    """
    Deform a non-increasing step function on ``(0, 1]`` onto the moments
    ``targets = (x, y, z)``.

    The head values are mapped by ``v_i -> c v_i^a`` (``i < n``) and the last
    value ``v_n`` is free, which keeps the ordering for ``a > 0`` and gives
    every unknown leverage on all three moments even when the first cells are
    tiny.  Newton's method runs on ``(log c, a, log v_n)`` with step halving
    until the deformed function is admissible and the residual drops.

    Returns
    -------
    (breakpoints, values) or None
        ``None`` when Newton's method fails to reach ``tol``.
    """
    b = np.asarray(breakpoints, dtype=float)
    v0 = np.asarray(values, dtype=float)
    n = v0.size
    if n < 2 or np.any(v0 <= 0.0):
        return None
    targets = np.asarray(targets, dtype=float)
    r = np.array([1.0, exp.q, exp.p])
    w = np.diff(np.concatenate([[0.0], b, [1.0]]))
    wh, wn = w[:-1], w[-1]
    lv = np.log(v0[:-1])

    def evaluate(u):
        head = np.exp(u[0] + u[1] * lv)
        last = np.exp(u[2])
        if not (u[1] > 0.0 and last <= head[-1] and np.all(np.isfinite(head))):
            return None
        hp = head[None, :] ** r[:, None] * wh[None, :]
        lp = last**r * wn
        res = (hp.sum(axis=1) + lp) / targets - 1.0
        jac = np.column_stack([r * hp.sum(axis=1),
                               r * (hp * lv[None, :]).sum(axis=1),
                               r * lp]) / targets[:, None]
        return res, jac, head, last

    u = np.array([0.0, 1.0, np.log(v0[-1])])
    with np.errstate(over="ignore", invalid="ignore", divide="ignore"):
        state = evaluate(u)
        if state is None:
            return None
        res, jac = state[0], state[1]
        norm = np.max(np.abs(res))
        for _ in range(maxiter):
            if norm <= tol:
                break
            try:
                step = np.linalg.solve(jac, -res)
            except np.linalg.LinAlgError:
                return None
            if not np.all(np.isfinite(step)):
                return None
            # Trust region: at most a factor e^2 per step on each unknown.
            lam = min(1.0, 2.0 / max(np.max(np.abs(step)), 1e-300))
            for _ in range(MAX_HALVINGS):
                cand = evaluate(u + lam * step)
                if cand is not None and np.max(np.abs(cand[0])) < norm:
                    break
                lam *= 0.5
            else:
                return None
            u = u + lam * step
            state = cand
            res, jac = state[0], state[1]
            norm = np.max(np.abs(res))
    if norm > tol:
        return None
    return b, np.concatenate([state[2], [state[3]]])


def project_edges(breakpoints, values, exp: Exponents, targets,
                  tol: float = PROJECTION_TOL, maxiter: int = PROJECTION_ITERS):
    """
    Newton projection on ``(log v_1, log v_n, log b_1)`` with step halving.

    The Jacobian is explicit: ``dM_r/dlog v_1 = r v_1^r b_1``,
    ``dM_r/dlog v_n = r v_n^r w_n`` and ``dM_r/dlog b_1 = b_1 (v_1^r - v_2^r)``.
    Well conditioned when the first cell carries real mass, e.g. for two steps.
    """
    b = np.array(breakpoints, dtype=float)
    v = np.array(values, dtype=float)
    n = v.size
    if n < 2:
        return None
    targets = np.asarray(targets, dtype=float)
    r = np.array([1.0, exp.q, exp.p])

    def evaluate(b, v):
        nxt = b[1] if b.size > 1 else 1.0
        if not (0.0 < b[0] < nxt and v[0] >= v[1] and v[-1] <= v[-2] and v[-1] > 0.0):
            return None
        w = np.diff(np.concatenate([[0.0], b, [1.0]]))
        m = (v[None, :] ** r[:, None] * w[None, :]).sum(axis=1)
        if not np.all(np.isfinite(m)):
            return None
        return m / targets - 1.0, w

    with np.errstate(over="ignore", invalid="ignore", divide="ignore"):
        state = evaluate(b, v)
        if state is None:
            return None
        res, w = state
        norm = np.max(np.abs(res))
        for _ in range(maxiter):
            if norm <= tol:
                break
            jac = np.column_stack([r * v[0] ** r * w[0],
                                   r * v[-1] ** r * w[-1],
                                   b[0] * (v[0] ** r - v[1] ** r)]) / targets[:, None]
            try:
                step = np.linalg.solve(jac, -res)
            except np.linalg.LinAlgError:
                return None
            if not np.all(np.isfinite(step)):
                return None
            lam = min(1.0, 2.0 / max(np.max(np.abs(step)), 1e-300))
            for _ in range(MAX_HALVINGS):
                vn, bn = v.copy(), b.copy()
                vn[0] *= np.exp(lam * step[0])
                vn[-1] *= np.exp(lam * step[1])
                bn[0] *= np.exp(lam * step[2])
                cand = evaluate(bn, vn)
                if cand is not None and np.max(np.abs(cand[0])) < norm:
                    break
                lam *= 0.5
            else:
                return None
            b, v = bn, vn
            res, w = cand
            norm = np.max(np.abs(res))
    return (b, v) if norm <= tol else None


def two_step_solution(exp: Exponents, shape: ShapePair, n_scan: int = 400):
    """
    The two-step function ``v_1 1_(0,b] + v_2 1_(b,1]`` with ``int h = 1`` and
    shape ``(s1, s2)``.

    For each ``b`` the first-cell mass ``m = v_1 b`` is fixed by the ``p``-th
    moment (solved in ``log m``); the ``q``-th moment residual is then scanned
    over a log grid of ``b`` for a sign change and polished by Brent's method.

    Returns
    -------
    StepFunction or None
        ``None`` for constant shapes or when no sign change is found.
    """
    shape = check_shape(exp, shape)
    if shape.is_constant:
        return None
    p, q = exp.p, exp.q
    s1, s2 = shape.s1, shape.s2
    b_hi = s1 ** (1.0 / (p - 1.0))
    b_lo = 10.0 ** -min(280.0, 250.0 / (p - 1.0))

    def values_at(b):
        def zres(lm):
            m = np.exp(lm)
            return m**p * b ** (1.0 - p) + (-np.expm1(lm)) ** p * (1.0 - b) ** (1.0 - p) - 1.0 / s1

        lm = find_root(zres, np.log(b), 0.0, xtol=1e-15)
        m = np.exp(lm)
        return m / b, -np.expm1(lm) / (1.0 - b)

    def yres(lb):
        b = np.exp(lb)
        v1, v2 = values_at(b)
        return (v1**q * b + v2**q * (1.0 - b)) * s2 - 1.0

    lbs = np.linspace(np.log(b_lo), np.log(b_hi) + np.log1p(-1e-9), n_scan)
    with np.errstate(over="ignore", invalid="ignore", divide="ignore"):
        rs = np.array([yres(lb) for lb in lbs])
    idx = np.flatnonzero(np.isfinite(rs[:-1] * rs[1:]) & (rs[:-1] * rs[1:] < 0.0))
    if not idx.size:
        return None
    i = idx[-1]
    b = float(np.exp(find_root(yres, lbs[i], lbs[i + 1], xtol=1e-15)))
    v1, v2 = values_at(b)
    if not (v1 >= v2 > 0.0 and 0.0 < b < 1.0):
        return None
    return StepFunction(1.0, [b], [v1, v2])


def _refine_two_step(rng, h2: StepFunction, n, sigma):
    """Spread a two-step function over ``n`` cells with small monotone noise."""
    b = float(h2.breakpoints[0])
    k = int(rng.integers(1, n))
    head = b * np.geomspace(rng.uniform(1e-3, 0.5), 1.0, k)[:-1] if k > 1 else np.empty(0)
    tail = b + (1.0 - b) * np.sort(rng.uniform(0.0, 1.0, n - k - 1))
    bs = np.concatenate([head, [b], tail])
    v = np.concatenate([np.full(k, h2.values[0]), np.full(n - k, h2.values[1])])
    v = np.sort(v * np.exp(rng.normal(0.0, sigma, n)))[::-1]
    return bs, v


def _geometric_breakpoints(rng, n):
    b_min = 10.0 ** -rng.uniform(1.0, 9.0)
    if n == 2:
        return np.array([rng.uniform(0.05, 0.95)])
    if rng.random() < 0.5:
        logs = np.linspace(0.0, 1.0, n)[:-1]
    else:
        logs = np.concatenate([[0.0], np.sort(rng.uniform(0.0, 1.0, n - 2))])
    return b_min ** (1.0 - logs)


def _cell_means(b, gamma):
    e = np.concatenate([[0.0], b, [1.0]])
    return np.diff(e ** (1.0 - gamma)) / np.diff(e)


def _s1_of(b, v, p):
    w = np.diff(np.concatenate([[0.0], b, [1.0]]))
    return (v @ w) ** p / (v**p @ w)


def _power_profile(rng, n, exp, s1, sigma):
    """Cell means of ``t^(-gamma)`` with ``gamma`` fitted to ``s1``, plus noise."""
    b = _geometric_breakpoints(rng, n)
    lo, hi = 0.0, 1.0 / exp.p
    for _ in range(50):
        mid = 0.5 * (lo + hi)
        if _s1_of(b, _cell_means(b, mid), exp.p) > s1:
            lo = mid
        else:
            hi = mid
    v = _cell_means(b, 0.5 * (lo + hi))
    v *= np.exp(rng.normal(0.0, sigma, n))
    return b, np.sort(v)[::-1]


def _lognormal_profile(rng, n):
    w = rng.dirichlet(np.full(n, rng.uniform(0.3, 3.0)))
    b = np.cumsum(w)[:-1]
    v = np.sort(np.exp(rng.normal(0.0, rng.uniform(0.1, 3.0), n)))[::-1]
    return b, v


def _perturb(rng, b, v, scale):
    lb = np.log(b) + rng.normal(0.0, scale, b.size)
    b = np.sort(np.exp(lb))
    b = np.clip(b, 1e-300, 1.0 - 1e-12)
    v = np.sort(v * np.exp(rng.normal(0.0, scale, v.size)))[::-1]
    return b, v


def _project(b, v, exp, targets, n_steps):
    if b.size != n_steps - 1 or np.any(np.diff(b) <= 0.0) or b[0] <= 0.0 or b[-1] >= 1.0:
        return None
    w = np.diff(np.concatenate([[0.0], b, [1.0]]))
    v = v / (v @ w)
    out = project_moments(b, v, exp, targets)
    if out is None:
        out = project_edges(b, v, exp, targets)
    if out is None:
        return None
    try:
        return StepFunction(1.0, *out)
    except DomainError:
        return None


def sharpness_search(exp: Exponents, shape: ShapePair, n_steps: int = 64,
                     iters: int = 5000, seed: int = 0,
                     quad_tol: float = DEFAULT_RTOL):
    """
    Seeded randomized search for the largest Hardy ratio at a given shape.

    Each iteration either draws a fresh candidate (a refined exact two-step
    solution, a discretized power profile fitted to ``s1``, or a sorted
    log-normal profile) or perturbs the incumbent, projects it onto the moment
    constraints and keeps it if its ratio is larger.

    Returns
    -------
    best_ratio : float
    best_h : StepFunction

    Raises
    ------
    SearchError
        More than 90% of candidates failed to project, or the shape cannot be
        realized with ``n_steps`` cells.
    """
    shape = check_shape(exp, shape)
    if n_steps < 1:
        raise DomainError(f"n_steps must be >= 1, got {n_steps}")
    if shape.is_constant:
        return 1.0, StepFunction(1.0, [], [1.0])
    if n_steps == 1:
        raise SearchError(
            "a single step is constant and cannot realize a non-constant shape "
            f"(s1={shape.s1!r}, s2={shape.s2!r})"
        )
    if iters < 1:
        raise DomainError(f"iters must be >= 1, got {iters}")
    rng = np.random.default_rng(seed)
    targets = np.array([1.0, 1.0 / shape.s2, 1.0 / shape.s1])
    h2 = two_step_solution(exp, shape)
    best = (-np.inf, None)
    failures = 0
    # Noise level adapted to keep roughly half of the projections successful.
    sigma = 1e-2
    for _ in range(iters):
        scale = sigma * 10.0 ** -rng.uniform(0.0, 1.5)
        if best[1] is None or rng.random() < 0.3:
            u = rng.random()
            if h2 is not None and (u < 0.35 or n_steps == 2):
                b, v = _refine_two_step(rng, h2, n_steps, scale)
            elif u < 0.85:
                b, v = _power_profile(rng, n_steps, exp, shape.s1, scale)
            else:
                b, v = _lognormal_profile(rng, n_steps)
        else:
            hb = best[1]
            b, v = _perturb(rng, hb.breakpoints, hb.values, scale)
        h = _project(b, v, exp, targets, n_steps)
        if h is None:
            failures += 1
            sigma = max(sigma / SIGMA_FACTOR, SIGMA_MIN)
            continue
        sigma = min(sigma * SIGMA_FACTOR, SIGMA_MAX)
        ratio = (hardy_integral(h, exp.p, quad_tol) * shape.s1) ** (1.0 / exp.p)
        if ratio > best[0]:
            best = (ratio, h)

    if best[1] is None or failures > MAX_FAILURE_RATE * iters:
        raise SearchError(
            f"{failures}/{iters} candidates failed moment projection; "
            f"shape (s1={shape.s1!r}, s2={shape.s2!r}) may be infeasible "
            f"for {n_steps} steps"
        )
    return float(best[0]), best[1]
