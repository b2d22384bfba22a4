"""
Numerical verification of the inequalities satisfied by Hardy averages.

Each verifier returns a :class:`SlackReport` rather than raising, so callers
(tests, the CLI) decide how to treat a negative slack.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from ..quadrature import DEFAULT_RTOL
from ..roots import DEFAULT_TOL
from ..sharp_bound import sharp_constant
from ..special_functions import Exponents, big_g, omega
from .functions import moments, shape_params
from .integrals import hardy_integral, mixed_integral


@dataclass(frozen=True)
class SlackReport:
    """``slack = rhs - lhs`` for an inequality ``lhs <= rhs``.

    ``scale`` is the magnitude against which ``tolerance`` is measured and
    ``passed`` is ``slack >= -tolerance * scale``.
    """

    name: str
    lhs: float
    rhs: float
    slack: float
    scale: float
    tolerance: float
    details: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.slack >= -self.tolerance * self.scale

    @property
    def relative_slack(self) -> float:
        return self.slack / self.scale if self.scale else 0.0


def theorem11_integrals(h, exp: Exponents, quad_tol: float = DEFAULT_RTOL) -> dict:
    """The beta-independent ingredients of :func:`theorem11_terms`."""
    return {
        "moments": moments(h, exp),
        "hardy_p": hardy_integral(h, exp.p, quad_tol),
        "hardy_q": hardy_integral(h, exp.q, quad_tol),
        "mixed": mixed_integral(h, exp, quad_tol),
    }


def theorem11_terms(h, exp: Exponents, beta: float,
                    quad_tol: float = DEFAULT_RTOL,
                    integrals: dict | None = None) -> tuple[float, list[float]]:
    """
    Left side and the four right-side terms of the one-parameter Hardy inequality

        int A^p <= (p(b+1)^q/G) int A^(p-q) h^q + ((p-q)(b+1)/G) x^p / k^(p-1)
                   + (p(q-1)b/G) (x/k)^(p-q) int A^q - (p(b+1)^q/G) (x/k)^(p-q) y

    Pass ``integrals`` from :func:`theorem11_integrals` to reuse them across
    many ``beta``.
    """
    p, q = exp.p, exp.q
    if integrals is None:
        integrals = theorem11_integrals(h, exp, quad_tol)
    m = integrals["moments"]
    G = big_g(exp, beta)
    b1 = beta + 1.0
    mean_pow = (m.x / m.kappa) ** (p - q)
    terms = [
        p * b1**q / G * integrals["mixed"],
        (p - q) * b1 / G * m.x**p / m.kappa ** (p - 1.0),
        p * (q - 1.0) * beta / G * mean_pow * integrals["hardy_q"],
        -p * b1**q / G * mean_pow * m.y,
    ]
    return integrals["hardy_p"], terms


def verify_theorem11(h, exp: Exponents, beta: float,
                     quad_tol: float = DEFAULT_RTOL,
                     tolerance: float = 1e-9,
                     integrals: dict | None = None) -> SlackReport:
    """Check the one-parameter inequality for a single ``beta > 0``."""
    if not beta > 0.0:
        raise ValueError(f"beta must be positive, got {beta!r}")
    lhs, terms = theorem11_terms(h, exp, beta, quad_tol, integrals)
    rhs = float(sum(terms))
    scale = max(abs(lhs), sum(abs(x) for x in terms))
    return SlackReport("theorem11", lhs, rhs, rhs - lhs, scale, tolerance,
                       {"beta": beta, "terms": terms})


def omega_q_chain(y: float, s2: float, q: float, beta):
    """The beta-dependent upper member of the ``int A^q`` chain.

    ``((b+1)/b) ((b+1)^(q-1) y - s2 y) / (q-1)``; minimized at
    ``b = omega_q(s2) - 1`` with minimum ``omega_q(s2)^q y``.
    """
    beta = np.asarray(beta, dtype=float)
    b1 = beta + 1.0
    return b1 / beta * (b1 ** (q - 1.0) * y - s2 * y) / (q - 1.0)


def verify_omega_q_bound(h, exp: Exponents, quad_tol: float = DEFAULT_RTOL,
                         tolerance: float = 1e-9, n_beta: int = 200,
                         tol: float = DEFAULT_TOL) -> SlackReport:
    """
    Check ``int A^q <= omega_q(s2)^q * y <= chain(beta)`` for all ``beta > 0``.

    The report's ``lhs``/``rhs`` are the first inequality.  ``details`` carry
    the smallest slack of the second over a ``beta`` grid and the gap between
    the middle term and the chain evaluated at ``omega_q(s2) - 1``.
    """
    q = exp.q
    m = moments(h, exp)
    s2 = shape_params(m, exp).s2
    lhs = hardy_integral(h, q, quad_tol)
    w = omega(q, s2, tol)
    middle = w**q * m.y
    details = {"s2": s2, "omega_q_s2": w}
    if s2 < 1.0:
        betas = np.linspace(0.0, 3.0 * (w - 1.0) + 1.0, n_beta + 1)[1:]
        chain = omega_q_chain(m.y, s2, q, betas)
        details["chain_min_slack"] = float(np.min(chain - middle))
        details["chain_argmin_beta"] = float(betas[int(np.argmin(chain))])
        details["chain_at_optimum_gap"] = float(
            omega_q_chain(m.y, s2, q, w - 1.0) - middle)
        details["beta_grid_step"] = float(betas[1] - betas[0])
    return SlackReport("omega_q_bound", lhs, middle, middle - lhs,
                       max(abs(lhs), abs(middle)), tolerance, details)


def verify_main_bound(h, exp: Exponents, tol: float = DEFAULT_TOL,
                      quad_tol: float = DEFAULT_RTOL,
                      tolerance: float = 1e-9) -> SlackReport:
    """
    Check ``(int A^p / int h^p)^(1/p) <= t(s1, s2)``.

    Constant functions sit at ``s1 = s2 = 1`` and are compared against ``t = 1``
    with ``details["constant_boundary"]`` set.
    """
    m = moments(h, exp)
    shape = shape_params(m, exp)
    ratio = (hardy_integral(h, exp.p, quad_tol) / m.z) ** (1.0 / exp.p)
    res = sharp_constant(exp, shape, tol)
    return SlackReport(
        "main_bound", ratio, res.t_sharp, res.t_sharp - ratio,
        res.t_sharp, tolerance,
        {"s1": shape.s1, "s2": shape.s2, "case_tag": str(res.case_tag),
         "t_zero": res.t_zero, "omega_p_s1": res.omega_p_s1,
         "constant_boundary": res.constant_boundary},
    )
