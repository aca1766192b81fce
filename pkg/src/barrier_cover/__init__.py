"""Min-max sensor movement solvers for covering multiple barriers on a line."""

from .candidates import (
    CandidateValue,
    Lambda1Arrays,
    Lambda3Arrays,
    build_lambda1_arrays,
    eval_B,
    lambda1_value,
    lambda3_arrays,
    mirror_lambda2,
)
from .core import (
    Barrier,
    BarrierCoverError,
    DEFAULT_TOL,
    DegenerateBarrier,
    Instance,
    NumericalFailure,
    OverlappingBarriers,
    Placement,
    Sensor,
    ToleranceConfig,
    Uncoverable,
    UnsortedInput,
    ValidationError,
    coverage_ok,
    instance_from_dict,
    instance_to_dict,
    load_instance,
    movement_upper_bound,
    reach_interval,
    save_instance,
    validate_coverable,
    validate_instance,
)
from .feasibility import (
    BadRankPermutation,
    Decision,
    NotLineConstrained,
    decide_line,
    decide_plane,
    decide_plane_presorted,
)
from .oracle import TooLarge, oracle_decide, oracle_lambda_line, oracle_lambda_plane
from .search import NoFeasibleElement, SearchStats, SortedArrayHandle, smallest_feasible
from .solver_line import LineSolution, solve_line
from .solver_mbc import (
    ParamInterval,
    PlaneSolution,
    PresortResult,
    RFunction,
    lower_envelope,
    presort,
    solve_curve_event,
    solve_plane,
)
from .successor import BitsetSuccessor, VebSuccessor

__version__ = "0.1.0"

__all__ = [
    "Barrier",
    "BarrierCoverError",
    "BadRankPermutation",
    "BitsetSuccessor",
    "CandidateValue",
    "DEFAULT_TOL",
    "Decision",
    "DegenerateBarrier",
    "Instance",
    "Lambda1Arrays",
    "Lambda3Arrays",
    "LineSolution",
    "NoFeasibleElement",
    "NotLineConstrained",
    "NumericalFailure",
    "OverlappingBarriers",
    "ParamInterval",
    "Placement",
    "PlaneSolution",
    "PresortResult",
    "RFunction",
    "SearchStats",
    "Sensor",
    "SortedArrayHandle",
    "ToleranceConfig",
    "TooLarge",
    "Uncoverable",
    "UnsortedInput",
    "ValidationError",
    "VebSuccessor",
    "build_lambda1_arrays",
    "coverage_ok",
    "decide_line",
    "decide_plane",
    "decide_plane_presorted",
    "eval_B",
    "instance_from_dict",
    "instance_to_dict",
    "lambda1_value",
    "lambda3_arrays",
    "load_instance",
    "lower_envelope",
    "mirror_lambda2",
    "movement_upper_bound",
    "oracle_decide",
    "oracle_lambda_line",
    "oracle_lambda_plane",
    "presort",
    "reach_interval",
    "save_instance",
    "smallest_feasible",
    "solve_curve_event",
    "solve_line",
    "solve_plane",
    "validate_coverable",
    "validate_instance",
]
