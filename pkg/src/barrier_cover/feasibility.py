"""Decision algorithms: can every sensor move at most ``lam`` and cover all barriers?

Two algorithms are provided.  ``decide_line`` is the linear greedy for
instances whose sensors already sit on the axis: conceptually shift every
sensor right by ``lam``, then walk the barriers left to right pulling sensors
back only as far as needed.  ``decide_plane`` handles arbitrary instances by
starting every sensor at its rightmost reachable axis position and committing
sensors to the coverage frontier one at a time; a sensor is either already
covering the frontier (and is frozen where it stands) or is the leftmost one
that could be pulled back to touch it.

Feasibility is monotone in ``lam``: anything feasible stays feasible with a
bigger budget.  Both algorithms return a witness placement when feasible.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass
from typing import Callable, Sequence

from .core import (
    BarrierCoverError,
    DEFAULT_TOL,
    Instance,
    Placement,
    ToleranceConfig,
    make_placement,
    next_frontier,
)
from .successor import BitsetSuccessor


class NotLineConstrained(BarrierCoverError):
    """A line-only operation was applied to sensors off the axis."""


class BadRankPermutation(BarrierCoverError):
    """The supplied rank order does not sort the rightmost reachable positions."""


@dataclass(frozen=True)
class Decision:
    """Outcome of a feasibility test.

    ``sequence`` lists ``(sensor_index, position)`` for the sensors the
    algorithm committed, in commitment order; indices refer to the instance's
    sorted sensor tuple.  ``placement`` is only present when feasible.
    """

    feasible: bool
    placement: Placement | None = None
    sequence: tuple[tuple[int, float], ...] = ()


def decide_line(
    inst: Instance,
    lam: float,
    tol: ToleranceConfig = DEFAULT_TOL,
    *,
    witness: bool = True,
) -> Decision:
    """Greedy feasibility test for line-constrained instances, O(n + m).

    After the conceptual right-shift by ``lam`` each sensor may move left by
    at most ``2*lam``.  The frontier ``p`` is the leftmost uncovered barrier
    point; each sensor in input order either is useless (ends before ``p``),
    already covers ``p``, or is pulled back so its covering interval starts
    exactly at ``p``.
    """
    if not inst.line_constrained:
        raise NotLineConstrained("decide_line requires every sensor on the axis")
    if lam < 0.0:
        return Decision(feasible=False)

    eps = tol.eps_cmp
    r = inst.r
    xs = inst.xs
    n = inst.n
    positions = list(xs)  # unused sensors stay put
    seq: list[tuple[int, float]] = []

    p, covered, j = next_frontier(inst, 0.0, eps)
    i = 0
    while not covered:
        if i == n:
            return Decision(feasible=False)
        xr = xs[i] + lam
        if xr + r <= p + eps:
            i += 1
            continue
        if xr - r <= p + eps:
            positions[i] = xr
            p = xr + r
        elif xr - 2.0 * lam - r <= p + eps:
            positions[i] = p + r
            p = p + 2.0 * r
        else:
            return Decision(feasible=False)
        seq.append((i, positions[i]))
        i += 1
        p, covered, j = next_frontier(inst, p, eps, j)
    return Decision(
        feasible=True,
        placement=make_placement(inst, positions, tol) if witness else None,
        sequence=tuple(seq),
    )


def decide_plane(
    inst: Instance,
    lam: float,
    tol: ToleranceConfig = DEFAULT_TOL,
    *,
    successor_factory: Callable[[int], object] | None = None,
    debug: bool = False,
    witness: bool = True,
) -> Decision:
    """Feasibility test for arbitrary instances, O(m + n log n).

    Sorts the rightmost reachable positions, then runs the frontier sweep.
    """
    if lam < 0.0:
        return Decision(feasible=False)
    reach = _reach_distances(inst, lam, tol)
    if reach is None:
        return Decision(feasible=False)
    xr = [x + d for x, d in zip(inst.xs, reach)]
    order = sorted(range(inst.n), key=lambda i: (xr[i], i))
    return _sweep(inst, lam, order, tol, successor_factory, debug, witness)


def decide_plane_presorted(
    inst: Instance,
    lam: float,
    order: Sequence[int],
    tol: ToleranceConfig = DEFAULT_TOL,
    *,
    successor_factory: Callable[[int], object] | None = None,
    debug: bool = False,
    witness: bool = True,
) -> Decision:
    """Same decision as :func:`decide_plane`, skipping the rank sort.

    ``order`` must list sensor indices by increasing rightmost reachable
    position at ``lam`` (ties by index).  It is verified only when ``debug``
    is set; the leftmost-pending-sensor set is keyed by these integer ranks in
    a successor structure instead of a comparison tree.
    """
    if lam < 0.0:
        return Decision(feasible=False)
    reach = _reach_distances(inst, lam, tol)
    if reach is None:
        return Decision(feasible=False)
    if debug:
        if sorted(order) != list(range(inst.n)):
            raise BadRankPermutation("order is not a permutation of sensor indices")
        xr = [x + d for x, d in zip(inst.xs, reach)]
        for t in range(inst.n - 1):
            if xr[order[t + 1]] < xr[order[t]] - tol.eps_cmp:
                raise BadRankPermutation(
                    f"order ranks {t} and {t + 1} are out of order at lambda={lam}"
                )
    return _sweep(inst, lam, list(order), tol, successor_factory, debug, witness)


def _reach_distances(
    inst: Instance, lam: float, tol: ToleranceConfig
) -> list[float] | None:
    """Per-sensor axis reach radius, or None when some sensor cannot land."""
    out = []
    lam_sq = lam * lam
    for y in inst.ys:
        if lam + tol.eps_cmp < abs(y):
            return None
        out.append(math.sqrt(max(0.0, lam_sq - y * y)))
    return out


class SweepState:
    """Mutable state of the plane-decision sweep.

    Tracks the frontier ``R``, the FIFO of sensors currently covering the
    point just right of ``R``, a successor structure (keyed by rank of the
    rightmost reachable position) of sensors that could be pulled back to the
    frontier, and a validity flag per sensor so events of moved sensors are
    ignored.
    """

    def __init__(self, inst: Instance, lam: float, order: Sequence[int], reach, factory):
        self.inst = inst
        self.xr = [inst.xs[i] + reach[i] for i in range(inst.n)]
        self.xl = [inst.xs[i] - reach[i] for i in range(inst.n)]
        self.order = list(order)
        self.rank = [0] * inst.n
        for t, k in enumerate(self.order):
            self.rank[k] = t
        self.s2_entry = sorted(range(inst.n), key=lambda i: (self.xl[i], i))
        self.queue: deque[int] = deque()
        self.pending = factory(inst.n)
        self.invalid = [False] * inst.n
        self.in_pending = [False] * inst.n
        self.p1 = 0  # next rank whose covering interval starts at or before R
        self.p2 = 0  # next entry event for the pull-back set
        self.R = 0.0
        self.barrier_idx = 0
        self.chosen: list[tuple[int, float]] = []

    def advance(self, eps: float) -> None:
        """Process every event at or before the current frontier."""
        xr = self.xr
        xl = self.xl
        r = self.inst.r
        R = self.R
        # Entries into the pull-back set (skip sensors already past it).
        while self.p2 < len(self.s2_entry):
            k = self.s2_entry[self.p2]
            if xl[k] - r > R + eps:
                break
            if not self.invalid[k] and xr[k] - r > R + eps:
                self.pending.insert(self.rank[k])
                self.in_pending[k] = True
            self.p2 += 1
        # Covering-interval starts: enter the FIFO and leave the pull-back set.
        while self.p1 < len(self.order):
            k = self.order[self.p1]
            if xr[k] - r > R + eps:
                break
            if not self.invalid[k]:
                self.queue.append(k)
                if self.in_pending[k]:
                    self.pending.discard(self.rank[k])
                    self.in_pending[k] = False
            self.p1 += 1
        # Covering-interval ends: fall out of the FIFO.
        while self.queue and xr[self.queue[0]] + r <= R + eps:
            self.queue.popleft()


def _sweep(
    inst: Instance,
    lam: float,
    order: Sequence[int],
    tol: ToleranceConfig,
    successor_factory,
    debug: bool,
    witness: bool = True,
) -> Decision:
    eps = tol.eps_cmp
    factory = successor_factory or BitsetSuccessor
    reach = _reach_distances(inst, lam, tol)
    assert reach is not None
    st = SweepState(inst, lam, order, reach, factory)
    r = inst.r

    R, covered, st.barrier_idx = next_frontier(inst, 0.0, eps, 0)
    st.R = R
    while not covered:
        st.advance(eps)
        if st.queue:
            g = st.queue[0]
            new_pos = st.xr[g]
        else:
            rk = st.pending.min()
            if rk is None:
                if debug:
                    _assert_maximal(inst, st, eps)
                return Decision(feasible=False, sequence=tuple(st.chosen))
            g = st.order[rk]
            new_pos = st.R + r
            st.pending.discard(rk)
            st.in_pending[g] = False
            st.invalid[g] = True
        st.chosen.append((g, new_pos))
        R = new_pos + r
        R, covered, st.barrier_idx = next_frontier(inst, R, eps, st.barrier_idx)
        st.R = R

    if not witness:
        return Decision(feasible=True, sequence=tuple(st.chosen))
    positions = list(inst.xs)  # unused sensors drop straight down
    for g, pos in st.chosen:
        positions[g] = pos
    return Decision(
        feasible=True,
        placement=make_placement(inst, positions, tol),
        sequence=tuple(st.chosen),
    )


def _assert_maximal(inst: Instance, st: SweepState, eps: float) -> None:
    # On failure no uncommitted sensor may be able to cover the point just
    # right of the frontier, i.e. both candidate sets are genuinely empty.
    chosen = {g for g, _ in st.chosen}
    for k in range(inst.n):
        if k in chosen:
            continue
        can_cover = st.xl[k] - inst.r <= st.R + eps and not (
            st.xr[k] + inst.r <= st.R + eps
        )
        assert not can_cover, (
            f"sensor {k} could still cover the frontier at R={st.R}"
        )
