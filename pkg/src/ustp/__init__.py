"""Uncertain solid transportation planning.

Model multi-objective, multi-item solid transportation problems whose
costs, supplies, demands, and conveyance capacities are uncertain
variables; convert chance constraints to crisp quantile bounds; and trade
the objectives off by weighted sums or distance to the ideal point.

Typical use::

    from ustp import load_model, transform, sweep

    det = transform(load_model("instance.json"))
    for point in sweep(det, steps=5):
        print(point.weights.values, point.objective_values)
"""

from .errors import InfeasibleModelError, InvalidModelError, UstpError
from .model import (
    DecisionTensor,
    MmstpModel,
    expected_cost_array,
    objective_expectation,
    validate,
)
from .modelfile import (
    BUNDLED_EXAMPLE,
    bundled_example_path,
    document_from_model,
    load_model,
    lp_text,
    model_from_document,
    resolve_model_path,
    save_model,
    write_lp,
)
from .pareto import FrontierPoint, certify_nondominated, dominates, sweep, weight_grid
from .scalarize import (
    IdealPoint,
    Method,
    SolveReport,
    SolveStatus,
    WeightVector,
    ideal_point,
    solve_distance,
    solve_weighted,
)
from .simplex import (
    LpRow,
    LpSolution,
    LpStatus,
    StandardLp,
    enumerate_vertices_bruteforce,
    solve_lp,
)
from .transform import ConstraintKind, DeterministicModel, chance_holds, transform
from .uncertain import (
    ConfidenceLevel,
    Family,
    UncertainValue,
    inverse_of_monotone_combination,
    scale,
    sum_independent,
)

__version__ = "0.1.0"

__all__ = [
    "BUNDLED_EXAMPLE",
    "ConfidenceLevel",
    "ConstraintKind",
    "DecisionTensor",
    "DeterministicModel",
    "Family",
    "FrontierPoint",
    "IdealPoint",
    "InfeasibleModelError",
    "InvalidModelError",
    "LpRow",
    "LpSolution",
    "LpStatus",
    "Method",
    "MmstpModel",
    "SolveReport",
    "SolveStatus",
    "StandardLp",
    "UncertainValue",
    "UstpError",
    "WeightVector",
    "bundled_example_path",
    "certify_nondominated",
    "chance_holds",
    "document_from_model",
    "dominates",
    "enumerate_vertices_bruteforce",
    "expected_cost_array",
    "ideal_point",
    "inverse_of_monotone_combination",
    "load_model",
    "lp_text",
    "model_from_document",
    "objective_expectation",
    "resolve_model_path",
    "save_model",
    "scale",
    "solve_distance",
    "solve_lp",
    "solve_weighted",
    "sum_independent",
    "sweep",
    "transform",
    "validate",
    "weight_grid",
    "write_lp",
]
