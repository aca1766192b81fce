"""Exact solver for the line-constrained problem.

The optimum is the smallest feasible value among three implicitly sorted
candidate families (left-aligned chains, their mirror, and pinned pairs), each
searched with the sorted-array engine driven by the linear greedy decision.
A final decision call at the optimum produces the witness placement.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .candidates import build_lambda1_arrays, lambda3_arrays, mirror_lambda2
from .core import DEFAULT_TOL, Instance, Placement, ToleranceConfig, Uncoverable, validate_coverable
from .feasibility import NotLineConstrained, decide_line
from .search import NoFeasibleElement, SearchStats, smallest_feasible


@dataclass(frozen=True)
class LineSolution:
    lambda_star: float
    placement: Placement
    tests_by_family: dict[str, int] = field(default_factory=dict)

    @property
    def feasibility_tests(self) -> int:
        return sum(self.tests_by_family.values())


def solve_line(inst: Instance, tol: ToleranceConfig = DEFAULT_TOL) -> LineSolution:
    """Minimum max-movement for a line instance, with a witness placement."""
    if not inst.line_constrained:
        raise NotLineConstrained("solve_line requires every sensor on the axis")
    if not validate_coverable(inst, tol):
        raise Uncoverable("sensors cannot cover the barriers at any budget")

    at_zero = decide_line(inst, 0.0, tol)
    if at_zero.feasible:
        return LineSolution(0.0, at_zero.placement, {})

    def predicate(v: float) -> bool:
        return decide_line(inst, v, tol, witness=False).feasible

    families = {
        "lambda1": build_lambda1_arrays(inst).handles(),
        "lambda2": mirror_lambda2(inst).handles(),
        "lambda3": lambda3_arrays(inst).handles(),
    }
    best: float | None = None
    tests: dict[str, int] = {}
    for name, handles in families.items():
        stats = SearchStats()
        try:
            found = smallest_feasible(handles, predicate, stats=stats)
        except NoFeasibleElement:
            # The optimum may live entirely in another family.
            found = None
        tests[name] = stats.feasibility_tests
        if found is not None and (best is None or found < best):
            best = found
    if best is None:
        raise Uncoverable("no candidate family contains a feasible value")

    witness = decide_line(inst, best, tol)
    assert witness.feasible, "the optimum must be feasible by construction"
    return LineSolution(best, witness.placement, tests)
