"""Smallest feasible value over collections of implicitly sorted arrays.

Given sorted arrays (random access only, no materialization) and a monotone
predicate, find the minimum array element on which the predicate holds while
invoking the predicate only O(log N + log M) times.  Each round evaluates the
median of every array's active range, takes the size-weighted median of those
medians, tests it, and halves every array whose median landed on the settled
side; a feasible test value is also kept as the incumbent answer.  Once few
enough elements survive they are collected and the boundary is located by
binary search over their sorted values.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

from .core import BarrierCoverError


class NoFeasibleElement(BarrierCoverError):
    """The predicate is false even at the largest array element."""


@dataclass(frozen=True)
class SortedArrayHandle:
    """A nondecreasing virtual array: ``eval(t)`` for 1-based ``t`` in [1, length]."""

    length: int
    eval: Callable[[int], float]


@dataclass
class SearchStats:
    """Counters exposed for the complexity checks."""

    feasibility_tests: int = 0
    rounds: int = 0
    evals: int = 0


def smallest_feasible(
    arrays: list[SortedArrayHandle],
    feasible: Callable[[float], bool],
    *,
    cutoff: int = 64,
    stats: SearchStats | None = None,
) -> float:
    """Minimum element ``v`` over all arrays with ``feasible(v)`` true.

    Requires the predicate to be monotone (once true, true for everything
    larger).  The result is always an actual array element, never an
    interpolated value.  Raises :class:`NoFeasibleElement` when even the
    global maximum fails.
    """
    if stats is None:
        stats = SearchStats()

    def test(v: float) -> bool:
        stats.feasibility_tests += 1
        return feasible(v)

    def ev(handle: SortedArrayHandle, t: int) -> float:
        stats.evals += 1
        return handle.eval(t)

    active = [[1, h.length, h] for h in arrays if h.length >= 1]
    incumbent: float | None = None

    while True:
        total = sum(max(0, hi - lo + 1) for lo, hi, _ in active)
        if total <= cutoff:
            break
        stats.rounds += 1
        meds = []
        for idx, (lo, hi, h) in enumerate(active):
            if lo > hi:
                continue
            mid = (lo + hi) // 2
            meds.append((ev(h, mid), idx, mid, hi - lo + 1))
        meds.sort(key=lambda e: (e[0], e[1], e[2]))
        weight = sum(e[3] for e in meds)
        acc = 0
        mu = meds[-1][0]
        for val, _, _, w in meds:
            acc += w
            if 2 * acc >= weight:
                mu = val
                break
        if test(mu):
            if incumbent is None or mu < incumbent:
                incumbent = mu
            for val, idx, mid, _ in meds:
                if val >= mu:
                    active[idx][1] = mid - 1  # everything from the median up is >= mu
        else:
            for val, idx, mid, _ in meds:
                if val <= mu:
                    active[idx][0] = mid + 1  # everything up to the median is <= mu

    remaining = set()
    for lo, hi, h in active:
        for t in range(lo, hi + 1):
            remaining.add(ev(h, t))
    if incumbent is not None:
        candidates = sorted(v for v in remaining if v < incumbent)
        candidates.append(incumbent)
        known_hi_feasible = True
    else:
        candidates = sorted(remaining)
        known_hi_feasible = False
    if not candidates:
        raise NoFeasibleElement("all arrays are empty")

    lo_i, hi_i = 0, len(candidates) - 1
    if not known_hi_feasible:
        if not test(candidates[hi_i]):
            raise NoFeasibleElement(
                f"predicate is false at the maximum element {candidates[hi_i]}"
            )
    while lo_i < hi_i:
        mid = (lo_i + hi_i) // 2
        if test(candidates[mid]):
            hi_i = mid
        else:
            lo_i = mid + 1
    return candidates[lo_i]
