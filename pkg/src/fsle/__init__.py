"""Fuzzy systems of linear equations ``A v = w`` with crisp A and fuzzy w, v."""

from .fuzzy import (
    AffineZ,
    FuzzyNumber,
    SampledZ,
    TriangularFuzzy,
    ValidityReport,
    default_grid,
    evaluate,
    fuzzy_add,
    fuzzy_residual,
    fuzzy_sub,
    parametric_to_triangular,
    scalar_mul,
    triangular_to_parametric,
    validate_fuzzy_number,
)
from .linalg import SingularMatrixError, inverse, lu_factor, solve
from .opcount import (
    COST_MODELS,
    CostModel,
    Counted,
    OpCounts,
    Tally,
    counted_solve,
    formula_counts,
)
from .solvers import (
    NO_SOLUTION_MESSAGE,
    FSLEProblem,
    Method,
    NotTriangularError,
    SolveReport,
    Status,
    WeakRule,
    classify,
    embedding_solve,
    ezzati_solve,
    friedman_solve,
    solve_auto,
    triangular_embedding_solve,
)
from .splitting import BCSplit, block_inverse, build_s, split_bc

__version__ = "0.1.0"

__all__ = [
    "AffineZ",
    "BCSplit",
    "COST_MODELS",
    "CostModel",
    "Counted",
    "FSLEProblem",
    "FuzzyNumber",
    "Method",
    "NO_SOLUTION_MESSAGE",
    "NotTriangularError",
    "OpCounts",
    "SampledZ",
    "SingularMatrixError",
    "SolveReport",
    "Status",
    "Tally",
    "TriangularFuzzy",
    "ValidityReport",
    "WeakRule",
    "block_inverse",
    "build_s",
    "classify",
    "counted_solve",
    "default_grid",
    "embedding_solve",
    "evaluate",
    "ezzati_solve",
    "formula_counts",
    "friedman_solve",
    "fuzzy_add",
    "fuzzy_residual",
    "fuzzy_sub",
    "inverse",
    "lu_factor",
    "parametric_to_triangular",
    "scalar_mul",
    "solve",
    "solve_auto",
    "split_bc",
    "triangular_embedding_solve",
    "triangular_to_parametric",
    "validate_fuzzy_number",
]
