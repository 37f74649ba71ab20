"""ptflab: hard threshold-function families with exact weight/degree checks."""

from .shapes import Convention, GroupShape, ShapeError, Variant, make_shape
from .boolfun import (
    BoolFun,
    EvalError,
    assignment_of_index,
    index_of_assignment,
    linear_forms,
    make_g,
    make_gt,
    make_hard,
)
from .tuple_order import (
    ChainStep,
    DominanceChain,
    OrderContext,
    OrderError,
    compare,
    dominance_chain,
    enumerate_ordered,
    oracle_compare,
    order_bits,
    ordinal,
)
from .polynomial import (
    IntPolynomial,
    PolynomialError,
    UvAssignment,
    eval_poly,
    symmetric_coefficient,
    symmetrize,
    to_uv,
    witness_gate,
)
from .exact_lp import (
    IlpResult,
    LpBudgetError,
    LpError,
    LpOutcome,
    LpProblem,
    check_farkas,
    check_l1_bound,
    check_witness,
    ilp_min,
    min_l1,
    problem_from_text,
    problem_to_text,
    solve,
)
from .threshold_analysis import (
    AnalysisError,
    BoundReport,
    BudgetError,
    CertifyResult,
    Counterexample,
    HypothesisError,
    MinWeightResult,
    RepresentationProblem,
    SignDegreeResult,
    build_representation_problem,
    certify_coefficient_lemma,
    certify_negated_row,
    check_sign_representation,
    min_weight,
    sign_degree,
    theorem_bound,
    verify_theorem_instance,
)
from .harness import (
    ExperimentSpec,
    ResultRow,
    preset,
    replay_certificate,
    run,
)

__version__ = "0.1.0"
