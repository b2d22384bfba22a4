"""
Sharp three-moment bounds for the Hardy average of non-increasing functions.

For a non-increasing ``h > 0`` on ``(0, kappa]`` with ``x = int h``,
``y = int h^q`` and ``z = int h^p`` (``1 < q < p``), the shape parameters

    s1 = x^p / (kappa^(p-1) z),    s2 = x^q / (kappa^(q-1) y)

determine the best constant ``t(s1, s2)`` in

    int_0^kappa (1/t int_0^t h)^p dt <= t(s1, s2)^p int_0^kappa h^p.

Modules
-------
special_functions
    ``H_r``, its inverse ``omega_r`` and the auxiliary curves.
sharp_bound
    ``t(beta)``, ``t(0)`` and :func:`sharp_constant`.
function_space
    Step and power functions, Hardy integrals, verifiers and a randomized
    lower-bound search.
cli
    The ``mbound`` command line tool.
"""

from .errors import (
    ConsistencyError,
    ConvergenceError,
    DegenerateInputError,
    DomainError,
    FormatError,
    InfeasibleParameterError,
    MBoundError,
    NoSolutionError,
    QuadratureError,
    SearchError,
)
from .sharp_bound import (
    BoundResult,
    CaseTag,
    beta_grid_min,
    bellman_two_var,
    lemma21_gap,
    sharp_constant,
    t1_of_beta,
    t_of_beta,
    t_zero,
)
from .special_functions import (
    Exponents,
    ShapePair,
    a_beta,
    alpha_s2,
    big_g,
    check_shape,
    f_curve,
    h_p_value,
    omega,
    tau,
    theta_beta,
)

__version__ = "0.1.0"
