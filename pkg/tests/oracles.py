"""
Independent reference computations used by the tests.

Nothing here imports the package's solvers: roots are found by plain
bisection, integrals by midpoint sums or closed forms, and every formula is
written out again from scratch.
"""

import math

import numpy as np


def h_plain(r, z):
    return -(r - 1.0) * z**r + r * z ** (r - 1.0)


def bisect(f, lo, hi, iters=200):
    """Plain bisection; ``f(lo)`` and ``f(hi)`` must differ in sign."""
    flo = f(lo)
    if flo == 0:
        return lo
    if f(hi) == 0:
        return hi
    for _ in range(iters):
        mid = 0.5 * (lo + hi)
        fm = f(mid)
        if (fm > 0) == (flo > 0):
            lo, flo = mid, fm
        else:
            hi = mid
        if hi - lo <= 4e-16 * max(1.0, abs(lo)):
            break
    return 0.5 * (lo + hi)


def omega_bisect(r, s):
    """Inverse of ``H_r`` on ``[1, r/(r-1)]`` (``H_r`` decreases there)."""
    return bisect(lambda z: h_plain(r, z) - s, 1.0, r / (r - 1.0))


def t_zero_bisect(p, q, s1, s2):
    k = p / (p - q)
    rhs = s1 - k * s1 / s2
    return bisect(lambda y: y**p - k * y ** (p - q) - rhs, 1.0, 64.0)


def t_of_beta_scan(p, q, s1, s2, beta, lo=1.0, hi=4.0, n=40001):
    """Locate the root of the ``t(beta)`` equation by a fine scan, then bisect."""
    G = q * (p - 1.0) * (beta + 1.0) - p * (q - 1.0)
    wq = omega_bisect(q, s2) ** q
    b1 = beta + 1.0
    T1 = ((p - q) * b1 * s1 + (s1 / s2) * (p * (q - 1.0) * beta * wq - p * b1**q)) / G
    c = p * b1**q / G

    def phi(t):
        return t**p - c * t ** (p - q) - T1

    ts = np.linspace(lo, hi, n)
    vals = phi(ts)
    i = int(np.flatnonzero(np.sign(vals[:-1]) != np.sign(vals[1:]))[0])
    return bisect(phi, ts[i], ts[i + 1])


def t_min_brute(p, q, s1, s2, n=4001):
    """Minimum over a fine ``beta`` grid of the scanned ``t(beta)``."""
    betas = np.linspace(0.0, 1.0 / (p - 1.0), n)
    vals = [t_zero_bisect(p, q, s1, s2) if b == 0 else t_of_beta_scan(p, q, s1, s2, b, hi=8.0)
            for b in betas]
    return min(vals)


def step_average(breaks, values, kappa, t):
    """``(1/t) int_0^t h`` by summing clipped cell lengths."""
    edges = np.concatenate([[0.0], breaks, [kappa]])
    t = np.asarray(t, dtype=float)
    lens = np.clip(t[..., None] - edges[None, :-1], 0.0, np.diff(edges)[None, :])
    return lens @ np.asarray(values) / t


def midpoint_integral(func, kappa, n=10**6):
    t = (np.arange(n) + 0.5) * (kappa / n)
    return float(func(t).sum() * (kappa / n))


def step_hardy_closed_form(breaks, values, kappa, r):
    """``int A^r`` for integer ``r`` in {1, 2, 3} by expanding ``(c + d/t)^r``."""
    edges = np.concatenate([[0.0], breaks, [kappa]])
    total = 0.0
    mass = 0.0
    for i, v in enumerate(values):
        a, b = edges[i], edges[i + 1]
        d = mass - v * a
        if i == 0:
            total += v**r * (b - a)
        else:
            terms = {
                1: v * (b - a) + d * math.log(b / a),
                2: v**2 * (b - a) + 2 * v * d * math.log(b / a) + d**2 * (1 / a - 1 / b),
                3: (v**3 * (b - a) + 3 * v**2 * d * math.log(b / a)
                    + 3 * v * d**2 * (1 / a - 1 / b) + d**3 * (1 / a**2 - 1 / b**2) / 2),
            }
            total += terms[r]
        mass += v * (b - a)
    return total


def random_shape(rng, exp, margin=1e-3):
    """A feasible shape strictly inside the region (drawn, not solved for)."""
    from mbound import ShapePair

    s1 = rng.uniform(0.02, 0.98)
    lo = s1 ** ((exp.q - 1.0) / (exp.p - 1.0))
    s2 = lo + (1.0 - lo) * rng.uniform(margin, 1.0 - margin)
    return ShapePair(s1, s2)
