"""
Concrete non-increasing functions on ``(0, kappa]`` and their moments.

Two families are supported: step functions (finite partitions with
non-increasing positive values) and the power functions
``g(t) = theta * t^(-1 + 1/eps)`` that realize equality in the Hardy bound.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ..errors import DomainError, NoSolutionError
from ..roots import DEFAULT_TOL, find_root
from ..special_functions import BOUNDARY_RTOL, Exponents, ShapePair, omega


@dataclass(frozen=True, eq=False)
class StepFunction:
    """
    Non-increasing step function on ``(0, kappa]``.

    ``values[i]`` is taken on the ``i``-th cell of the partition
    ``0 < breakpoints[0] < ... < breakpoints[-1] < kappa``.
    """

    kappa: float
    breakpoints: np.ndarray
    values: np.ndarray

    def __post_init__(self):
        kappa = float(self.kappa)
        b = np.array(self.breakpoints, dtype=float).reshape(-1)
        v = np.array(self.values, dtype=float).reshape(-1)
        if not (0.0 < kappa <= 1.0):
            raise DomainError(f"kappa must lie in (0, 1], got {kappa!r}")
        if v.size != b.size + 1:
            raise DomainError(
                f"need len(values) == len(breakpoints) + 1, got {v.size} and {b.size}"
            )
        if not np.all(np.isfinite(v)) or np.any(v <= 0.0):
            raise DomainError("values must be finite and strictly positive")
        if np.any(np.diff(v) > 0.0):
            raise DomainError("values must be non-increasing")
        if b.size:
            if not np.all(np.isfinite(b)) or b[0] <= 0.0 or b[-1] >= kappa:
                raise DomainError("breakpoints must lie strictly inside (0, kappa)")
            if np.any(np.diff(b) <= 0.0):
                raise DomainError("breakpoints must be strictly increasing")
        b.setflags(write=False)
        v.setflags(write=False)
        object.__setattr__(self, "kappa", kappa)
        object.__setattr__(self, "breakpoints", b)
        object.__setattr__(self, "values", v)

    @property
    def n(self) -> int:
        return self.values.size

    @property
    def edges(self) -> np.ndarray:
        return np.concatenate([[0.0], self.breakpoints, [self.kappa]])

    @property
    def widths(self) -> np.ndarray:
        return np.diff(self.edges)

    def __eq__(self, other):
        if not isinstance(other, StepFunction):
            return NotImplemented
        return (self.kappa == other.kappa
                and np.array_equal(self.breakpoints, other.breakpoints)
                and np.array_equal(self.values, other.values))

    def __call__(self, t):
        t = np.asarray(t, dtype=float)
        idx = np.searchsorted(self.breakpoints, t, side="left")
        return self.values[np.minimum(idx, self.n - 1)]

    def scaled(self, c: float) -> "StepFunction":
        return StepFunction(self.kappa, self.breakpoints, c * self.values)


@dataclass(frozen=True)
class PowerExtremal:
    """``g(t) = theta * t^(-1 + 1/eps)`` on ``(0, kappa0]``."""

    theta: float
    eps: float
    kappa0: float

    def __post_init__(self):
        if not self.theta > 0.0:
            raise DomainError(f"theta must be positive, got {self.theta!r}")
        if not self.eps > 1.0:
            raise DomainError(f"eps must exceed 1, got {self.eps!r}")
        if not (0.0 < self.kappa0 <= 1.0):
            raise DomainError(f"kappa0 must lie in (0, 1], got {self.kappa0!r}")

    @property
    def kappa(self) -> float:
        return self.kappa0

    def __call__(self, t):
        return self.theta * np.asarray(t, dtype=float) ** (1.0 / self.eps - 1.0)

    def primitive(self, t):
        """``int_0^t g = theta * eps * t^(1/eps)``."""
        return self.theta * self.eps * np.asarray(t, dtype=float) ** (1.0 / self.eps)

    def power_integral(self, r: float) -> float:
        """``int_0^kappa0 g^r``; finite only for ``r < eps/(eps-1)``."""
        a = 1.0 + r * (1.0 / self.eps - 1.0)
        if not a > 0.0:
            raise DomainError(
                f"int g^{r} diverges for eps={self.eps!r} (need eps < {r}/({r}-1))"
            )
        return self.theta**r * self.kappa0**a / a


@dataclass(frozen=True)
class MomentData:
    """``(kappa, x, y, z) = (length, int h, int h^q, int h^p)``."""

    kappa: float
    x: float
    y: float
    z: float

    def __post_init__(self):
        if not (0.0 < self.kappa <= 1.0):
            raise DomainError(f"kappa must lie in (0, 1], got {self.kappa!r}")
        for name in ("x", "y", "z"):
            if not getattr(self, name) > 0.0:
                raise DomainError(f"{name} must be positive, got {getattr(self, name)!r}")

    def violations(self, exp: Exponents, rtol: float = BOUNDARY_RTOL) -> list[str]:
        """Names of the Hölder inequalities violated beyond relative slack ``rtol``."""
        p, q = exp.p, exp.q
        k, x, y, z = self.kappa, self.x, self.y, self.z
        out = []
        if x**q / k ** (q - 1.0) > y * (1.0 + rtol):
            out.append("x^q/kappa^(q-1) <= y")
        if y > x ** ((p - q) / (p - 1.0)) * z ** ((q - 1.0) / (p - 1.0)) * (1.0 + rtol):
            out.append("y <= x^((p-q)/(p-1)) * z^((q-1)/(p-1))")
        if x**p / k ** (p - 1.0) > z * (1.0 + rtol):
            out.append("x^p/kappa^(p-1) <= z")
        return out


def moments(h, exp: Exponents) -> MomentData:
    """Exact ``(kappa, int h, int h^q, int h^p)`` for a step or power function."""
    if isinstance(h, StepFunction):
        w = h.widths
        v = h.values
        return MomentData(h.kappa, float(v @ w), float(v**exp.q @ w), float(v**exp.p @ w))
    if isinstance(h, PowerExtremal):
        if not h.eps < exp.conjugate:
            raise DomainError(
                f"eps={h.eps!r} must be below p/(p-1)={exp.conjugate!r} for int g^p < inf"
            )
        return MomentData(h.kappa0, h.power_integral(1.0), h.power_integral(exp.q),
                          h.power_integral(exp.p))
    raise TypeError(f"unsupported function type {type(h).__name__}")


def shape_params(m: MomentData, exp: Exponents) -> ShapePair:
    """
    ``(s1, s2) = (x^p/(kappa^(p-1) z), x^q/(kappa^(q-1) y))``.

    Raises :class:`DomainError` naming the violated inequality when the moments
    are not those of any function.  Values within relative slack ``1e-12`` of
    a boundary are clamped onto it.
    """
    bad = m.violations(exp)
    if bad:
        raise DomainError("moment data infeasible: violates " + "; ".join(bad))
    p, q = exp.p, exp.q
    s1 = min(m.x**p / (m.kappa ** (p - 1.0) * m.z), 1.0)
    s2 = min(m.x**q / (m.kappa ** (q - 1.0) * m.y), 1.0)
    floor = s1 ** ((q - 1.0) / (p - 1.0))
    return ShapePair(s1, max(s2, floor))


def extremal_from_eps(exp: Exponents, eps: float, kappa0: float = 1.0,
                      f: float = 1.0) -> PowerExtremal:
    """
    The power function with ``int g = f`` on ``(0, kappa0]`` and exponent ``eps``.

    Its shape is ``(H_p(eps), H_q(eps))`` for every ``kappa0`` and ``f``.
    """
    eps = float(eps)
    if not (1.0 < eps < exp.conjugate):
        raise DomainError(f"eps={eps!r} outside (1, {exp.conjugate!r})")
    if not f > 0.0:
        raise DomainError(f"f must be positive, got {f!r}")
    theta = f / (kappa0 ** (1.0 / eps) * eps)
    return PowerExtremal(theta, eps, kappa0)


def solve_kappa0(exp: Exponents, f: float, A: float, F: float,
                 tol: float = DEFAULT_TOL, n_scan: int = 256) -> float:
    """
    Find ``kappa0`` in ``(0, 1]`` with
    ``omega_q(f^q/(kappa0^(q-1) A)) = omega_p(f^p/(kappa0^(p-1) F))``.

    Both arguments must stay in ``[0, 1]``, which restricts ``kappa`` to
    ``[kappa_min, 1]``.  That interval is scanned for the largest sign change
    of the difference, which is then polished by Brent's method.

    Raises
    ------
    NoSolutionError
        No sign change on the admissible interval.
    """
    p, q = exp.p, exp.q
    if not (f > 0.0 and A > 0.0 and F > 0.0):
        raise DomainError("f, A and F must be positive")
    kmin = max((f**q / A) ** (1.0 / (q - 1.0)), (f**p / F) ** (1.0 / (p - 1.0)))
    if kmin > 1.0 * (1.0 + 1e-12):
        raise NoSolutionError(f"no admissible kappa: need kappa >= {kmin!r} > 1")
    kmin = min(kmin, 1.0)

    def D(k):
        sq = min(f**q / (k ** (q - 1.0) * A), 1.0)
        sp = min(f**p / (k ** (p - 1.0) * F), 1.0)
        return omega(q, sq, tol) - omega(p, sp, tol)

    d1 = D(1.0)
    if abs(d1) <= 10 * tol:
        return 1.0
    ks = np.geomspace(kmin, 1.0, n_scan)
    ds = np.array([D(k) for k in ks])
    hits = np.flatnonzero(np.abs(ds) <= 10 * tol)
    # The largest root is the one belonging to (1.3) with kappa0 <= 1 maximal.
    sign_change = np.flatnonzero(ds[:-1] * ds[1:] < 0.0)
    cands = []
    if sign_change.size:
        i = sign_change[-1]
        cands.append(find_root(D, ks[i], ks[i + 1]))
    if hits.size:
        cands.append(float(ks[hits[-1]]))
    if not cands:
        raise NoSolutionError(
            "omega_q and omega_p sides never meet on "
            f"[{kmin!r}, 1] (difference at 1: {d1!r})"
        )
    return max(cands)


def discretize_extremal(g: PowerExtremal, n: int, floor: float = 1e-6) -> StepFunction:
    """
    Cell-average discretization of ``g`` on a geometric partition.

    Breakpoints are ``kappa * rho^(n-i)``, ``i = 1..n-1``, with ``rho`` chosen
    so the first breakpoint equals ``floor * kappa``.
    """
    if n < 1:
        raise DomainError(f"n must be >= 1, got {n}")
    k = g.kappa0
    if n == 1:
        return StepFunction(k, [], [float(g.primitive(k)) / k])
    rho = floor ** (1.0 / (n - 1))
    b = k * rho ** np.arange(n - 1, 0, -1, dtype=float)
    edges = np.concatenate([[0.0], b, [k]])
    vals = np.diff(g.primitive(edges)) / np.diff(edges)
    vals = np.minimum.accumulate(vals)
    return StepFunction(k, b, vals)


def random_step_function(rng: np.random.Generator, n: int | None = None,
                         kappa: float | None = None) -> StepFunction:
    """
    Draw a random non-increasing step function.

    Log-values are normal with a random spread, sorted decreasing; cell widths
    are a flat Dirichlet sample scaled to ``kappa``.  Spreads from 0.05 to 3
    give both nearly flat and very spiky profiles.
    """
    if n is None:
        n = int(rng.integers(2, 13))
    if kappa is None:
        kappa = float(rng.uniform(0.05, 1.0))
    while True:
        w = rng.dirichlet(np.ones(n)) * kappa
        b = np.cumsum(w)[:-1]
        if n == 1 or (np.all(np.diff(b) > 0.0) and b[0] > 0.0 and b[-1] < kappa):
            break
    spread = math.exp(rng.uniform(math.log(0.05), math.log(3.0)))
    v = np.sort(np.exp(rng.normal(0.0, spread, n)))[::-1]
    return StepFunction(kappa, b, v)
