"""Weighted theta functions of non-commutative graphs via semidefinite programming."""

__version__ = "0.1.0"

from . import errors, io, rand, suites
from .cstar import (
    S0Algebra,
    algebra_subspace,
    blockscale,
    commproj,
    commutant,
    complement,
    diagonal_algebra,
    pauli_basis,
    pauli_partial_twirl,
    scaling_matrix,
    twirl_projector,
)
from .sdp import (
    BuiltSolution,
    ProgramBuilder,
    SdpProblem,
    SdpSolution,
    solve,
    solve_with_linear_objective_over_feasible_set,
)
from .subspace import (
    NCGraph,
    OperatorSubspace,
    ci_graph,
    disjunctive_product,
    from_classical_graph,
    full_graph,
    quotient,
    span,
    strong_product,
    sum_spaces,
)
from .theta import (
    MAX_FORMS,
    MIN_FORMS,
    ThetaResult,
    all_form_values,
    classical_theta,
    theta,
    theta_dual,
    theta_max_forms,
)
from .bodies import (
    CompatibleReport,
    MembershipResult,
    SupportResult,
    antiblocker_support,
    check_compatible,
    clique_polytope_support,
    compatible_instance,
    fp_membership_classical,
    is_s_full_projector,
    theta_body_membership,
    theta_commutant_min,
    theta_psi_support,
    thin_complement,
)
from .io import load_graph, load_weight, result_json
from .suites import SUITES, SuiteCheck, SuiteReport, run_suite

__all__ = [
    "errors", "io", "rand", "suites",
    "S0Algebra", "algebra_subspace", "blockscale", "commproj", "commutant",
    "complement", "diagonal_algebra", "pauli_basis", "pauli_partial_twirl",
    "scaling_matrix", "twirl_projector",
    "BuiltSolution", "ProgramBuilder", "SdpProblem", "SdpSolution", "solve",
    "solve_with_linear_objective_over_feasible_set",
    "NCGraph", "OperatorSubspace", "ci_graph", "disjunctive_product",
    "from_classical_graph", "full_graph", "quotient", "span", "strong_product",
    "sum_spaces",
    "MAX_FORMS", "MIN_FORMS", "ThetaResult", "all_form_values",
    "classical_theta", "theta", "theta_dual", "theta_max_forms",
    "CompatibleReport", "MembershipResult", "SupportResult",
    "antiblocker_support", "check_compatible", "clique_polytope_support",
    "compatible_instance", "fp_membership_classical", "is_s_full_projector",
    "theta_body_membership", "theta_commutant_min", "theta_psi_support",
    "thin_complement",
    "load_graph", "load_weight", "result_json",
    "SUITES", "SuiteCheck", "SuiteReport", "run_suite",
    "__version__",
]
