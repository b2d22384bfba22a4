from .functions import (
    MomentData,
    PowerExtremal,
    StepFunction,
    discretize_extremal,
    extremal_from_eps,
    moments,
    random_step_function,
    shape_params,
    solve_kappa0,
)
from .integrals import hardy_average, hardy_integral, mixed_integral
from .search import (
    project_edges,
    project_moments,
    sharpness_search,
    two_step_solution,
)
from .serialize import dumps, load, loads, save
from .verify import (
    SlackReport,
    theorem11_integrals,
    theorem11_terms,
    verify_main_bound,
    verify_omega_q_bound,
    verify_theorem11,
)
