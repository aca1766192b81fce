"""Problem model: barriers, sensors, instances, placements, tolerances.

An instance consists of ``m`` pairwise disjoint barrier segments sorted along
the x-axis and ``n`` sensors located anywhere in the plane, all with the same
sensing half-range ``r``.  A sensor parked at ``x`` on the axis covers the
interval ``[x - r, x + r]``.  Solvers move every sensor onto the axis so the
union of covering intervals contains every barrier point, minimizing the
largest single-sensor movement.

Coordinates are normalized on load so the first barrier starts at 0; the shift
is recorded in ``Instance.offset`` and undone on export.  The original input
coordinates are kept verbatim so save/load round-trips are bit-exact.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from typing import IO, Iterable, Sequence


class BarrierCoverError(Exception):
    """Base class for all errors raised by this package."""


class ValidationError(BarrierCoverError):
    """An instance violates a structural invariant."""


class DegenerateBarrier(ValidationError):
    """A barrier has zero length (left endpoint equals right endpoint)."""


class OverlappingBarriers(ValidationError):
    """Two barriers overlap or touch."""


class UnsortedInput(ValidationError):
    """Barriers are not given left-to-right, or a barrier is reversed."""


class Uncoverable(BarrierCoverError):
    """Total sensor capacity cannot cover the barriers even with unbounded moves."""


class NumericalFailure(BarrierCoverError):
    """A root bracket could not be resolved to the configured tolerance."""


@dataclass(frozen=True)
class ToleranceConfig:
    """Floating-point slack used throughout the solvers.

    ``eps_cmp`` pads comparisons between computed quantities, ``eps_root`` is
    the absolute tolerance for root finding, and ``eps_accept`` is the slack
    used when comparing solver output against independent oracles.
    """

    eps_cmp: float = 1e-9
    eps_root: float = 1e-12
    eps_accept: float = 1e-6

    def __post_init__(self) -> None:
        if not (0.0 < self.eps_root <= self.eps_cmp <= self.eps_accept):
            raise ValueError(
                "tolerances must satisfy 0 < eps_root <= eps_cmp <= eps_accept"
            )


DEFAULT_TOL = ToleranceConfig()


@dataclass(frozen=True)
class Barrier:
    """A closed segment ``[a, b]`` on the axis, with ``a < b``."""

    a: float
    b: float

    @property
    def length(self) -> float:
        return self.b - self.a


@dataclass(frozen=True)
class Sensor:
    """A sensor at plane coordinates ``(x, y)``.

    ``id`` is the 1-based position of the sensor in the original input; the
    instance stores sensors sorted by x-coordinate, so ``id`` is how callers
    map results back to their own ordering.
    """

    x: float
    y: float
    id: int


@dataclass(frozen=True)
class Placement:
    """Final axis positions for every sensor, in instance (sorted) order."""

    positions: tuple[float, ...]
    max_move: float
    covered: bool


@dataclass(frozen=True)
class Instance:
    """A normalized problem instance.

    ``barriers`` are sorted and pairwise disjoint with the first left endpoint
    at 0.  ``sensors`` are sorted by x (ties by input order).  ``offset`` is
    the shift that was subtracted from every input coordinate;
    ``source_barriers``/``source_sensors`` hold the untouched input.
    """

    barriers: tuple[Barrier, ...]
    sensors: tuple[Sensor, ...]
    r: float
    offset: float = 0.0
    source_barriers: tuple[tuple[float, float], ...] = ()
    source_sensors: tuple[tuple[float, float], ...] = ()
    # Derived views, populated in __post_init__.
    lefts: tuple[float, ...] = field(init=False, repr=False, compare=False)
    rights: tuple[float, ...] = field(init=False, repr=False, compare=False)
    xs: tuple[float, ...] = field(init=False, repr=False, compare=False)
    ys: tuple[float, ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "lefts", tuple(b.a for b in self.barriers))
        object.__setattr__(self, "rights", tuple(b.b for b in self.barriers))
        object.__setattr__(self, "xs", tuple(s.x for s in self.sensors))
        object.__setattr__(self, "ys", tuple(s.y for s in self.sensors))

    @property
    def n(self) -> int:
        return len(self.sensors)

    @property
    def m(self) -> int:
        return len(self.barriers)

    @property
    def beta(self) -> float:
        """Right endpoint of the last barrier (the global right end)."""
        return self.barriers[-1].b

    @property
    def line_constrained(self) -> bool:
        return all(y == 0.0 for y in self.ys)

    @classmethod
    def create(
        cls,
        barriers: Iterable[Sequence[float]],
        sensors: Iterable[Sequence[float]],
        r: float,
        *,
        merge_touching: bool = False,
    ) -> "Instance":
        """Build, normalize, and validate an instance from raw coordinates."""
        raw_barriers = tuple((float(a), float(b)) for a, b in barriers)
        raw_sensors = tuple((float(x), float(y)) for x, y in sensors)
        barrier_list = list(raw_barriers)
        if merge_touching:
            barrier_list = _merge_touching(barrier_list)
        if not barrier_list:
            raise ValidationError("instance needs at least one barrier")
        if not raw_sensors:
            raise ValidationError("instance needs at least one sensor")
        if not (float(r) > 0.0):
            raise ValidationError(f"sensing half-range must be positive, got {r}")

        offset = barrier_list[0][0]
        norm_barriers = tuple(Barrier(a - offset, b - offset) for a, b in barrier_list)
        indexed = sorted(
            ((x - offset, y, i + 1) for i, (x, y) in enumerate(raw_sensors)),
            key=lambda t: (t[0], t[2]),
        )
        norm_sensors = tuple(Sensor(x, y, i) for x, y, i in indexed)
        inst = cls(
            barriers=norm_barriers,
            sensors=norm_sensors,
            r=float(r),
            offset=offset,
            source_barriers=raw_barriers,
            source_sensors=raw_sensors,
        )
        validate_instance(inst)
        return inst


def _merge_touching(
    barriers: list[tuple[float, float]]
) -> list[tuple[float, float]]:
    # Merges chains whose endpoints coincide exactly; anything else is left
    # for validation to judge.
    if not barriers:
        return barriers
    merged = [barriers[0]]
    for a, b in barriers[1:]:
        pa, pb = merged[-1]
        if a == pb:
            merged[-1] = (pa, b)
        else:
            merged.append((a, b))
    return merged


def validate_instance(inst: Instance) -> None:
    """Check every structural invariant; raise naming the first violation.

    Comparisons between stored input values are exact: degeneracy and overlap
    are judged on the numbers as given, not within tolerance.
    """
    if inst.m == 0:
        raise ValidationError("instance has no barriers")
    if inst.n == 0:
        raise ValidationError("instance has no sensors")
    if not (inst.r > 0.0):
        raise ValidationError(f"sensing half-range must be positive, got {inst.r}")
    for k, bar in enumerate(inst.barriers):
        if bar.a == bar.b:
            raise DegenerateBarrier(f"barrier {k} has zero length at {bar.a}")
        if bar.a > bar.b:
            raise UnsortedInput(f"barrier {k} has reversed endpoints ({bar.a}, {bar.b})")
    for k in range(inst.m - 1):
        cur, nxt = inst.barriers[k], inst.barriers[k + 1]
        if nxt.a < cur.a:
            raise UnsortedInput(f"barriers {k} and {k + 1} are out of order")
        if nxt.a < cur.b:
            raise OverlappingBarriers(f"barriers {k} and {k + 1} overlap")
        if nxt.a == cur.b:
            raise OverlappingBarriers(
                f"barriers {k} and {k + 1} touch; pass merge_touching to combine them"
            )
    if inst.barriers[0].a != 0.0:
        raise ValidationError("instance is not normalized (first barrier must start at 0)")
    ids = sorted(s.id for s in inst.sensors)
    if ids != list(range(1, inst.n + 1)):
        raise ValidationError("sensor ids must be a permutation of 1..n")
    for i in range(inst.n - 1):
        a, b = inst.sensors[i], inst.sensors[i + 1]
        if b.x < a.x or (b.x == a.x and b.id < a.id):
            raise UnsortedInput(f"sensors {i} and {i + 1} are not sorted by x")


def validate_coverable(inst: Instance, tol: ToleranceConfig = DEFAULT_TOL) -> bool:
    """True iff the sensors can cover all barriers with unbounded movement.

    Greedy sweep: cover barriers left to right with non-overlapping covering
    intervals and count how many are needed.  Runs in O(m).
    """
    two_r = 2.0 * inst.r
    used = 0
    cov = 0.0
    for bar in inst.barriers:
        p = max(bar.a, cov)
        if p >= bar.b:
            continue
        # Tiny slack so a demand that is an exact multiple of 2r does not
        # round up to an extra interval.
        needed = math.ceil((bar.b - p) / two_r - tol.eps_cmp)
        needed = max(needed, 1)
        used += needed
        if used > inst.n:
            return False
        cov = p + needed * two_r
    return used <= inst.n


def reach_interval(
    sensor: Sensor, lam: float
) -> tuple[float, float] | None:
    """Axis interval a sensor can reach with movement at most ``lam``.

    Returns ``None`` when the sensor cannot reach the axis at all.
    """
    if lam < abs(sensor.y):
        return None
    d = math.sqrt(max(0.0, lam * lam - sensor.y * sensor.y))
    return (sensor.x - d, sensor.x + d)


def movement_upper_bound(inst: Instance) -> float:
    """A movement budget at which every sensor can reach every barrier point.

    Any coverable instance is feasible at this value, so it bounds the
    optimum from above.
    """
    beta = inst.beta
    worst = 0.0
    for x, y in zip(inst.xs, inst.ys):
        span = max(abs(x), abs(x - beta))
        worst = max(worst, math.hypot(span, y))
    return worst


def next_frontier(
    inst: Instance, p: float, eps: float, j: int = 0
) -> tuple[float, bool, int]:
    """Advance a coverage frontier across gaps between barriers.

    Returns ``(p', covered, j')`` where ``p'`` is ``p`` jumped to the left
    endpoint of the next barrier if ``p`` sat in a gap (a frontier at a
    barrier's right endpoint counts as a gap), ``covered`` reports that all
    barriers end at or before ``p``, and ``j'`` is the barrier index to resume
    scanning from.  Frontiers only move right, so passing the previous ``j``
    keeps a full sweep linear in ``m``.
    """
    rights = inst.rights
    m = inst.m
    while j < m and rights[j] <= p + eps:
        j += 1
    if j == m:
        return p, True, j
    a_j = inst.lefts[j]
    if p < a_j:
        return a_j, False, j
    return p, False, j


def make_placement(inst: Instance, positions: Sequence[float], tol: ToleranceConfig = DEFAULT_TOL) -> Placement:
    """Assemble a placement, recomputing max movement and coverage."""
    pos = tuple(float(v) for v in positions)
    max_move = 0.0
    for s, v in zip(inst.sensors, pos):
        max_move = max(max_move, math.hypot(s.x - v, s.y))
    return Placement(positions=pos, max_move=max_move, covered=coverage_ok(inst, pos, tol))


def coverage_ok(
    inst: Instance, positions: Sequence[float], tol: ToleranceConfig = DEFAULT_TOL
) -> bool:
    """Independent check that the covering intervals contain every barrier.

    Merges the covering intervals into maximal runs, then walks barriers and
    runs in one pass; O((n + m) log n) and deliberately sharing no logic with
    the decision algorithms.
    """
    r = inst.r
    eps = tol.eps_cmp
    merged: list[list[float]] = []
    for left in sorted(p - r for p in positions):
        right = left + 2.0 * r
        if merged and left <= merged[-1][1] + eps:
            merged[-1][1] = max(merged[-1][1], right)
        else:
            merged.append([left, right])
    idx = 0
    for bar in inst.barriers:
        while idx < len(merged) and merged[idx][1] < bar.a - eps:
            idx += 1
        if idx == len(merged):
            return False
        lo, hi = merged[idx]
        # Runs are separated by real holes, so one run must span the barrier.
        if lo > bar.a + eps or hi < bar.b - eps:
            return False
    return True


def instance_from_dict(
    data: dict, *, merge_touching: bool = False
) -> Instance:
    """Build an instance from the JSON wire format."""
    try:
        r = data["r"]
        barriers = data["barriers"]
        sensors = data["sensors"]
    except (KeyError, TypeError) as exc:
        raise ValidationError(f"instance JSON missing field: {exc}") from exc
    return Instance.create(barriers, sensors, r, merge_touching=merge_touching)


def instance_to_dict(inst: Instance) -> dict:
    """Export an instance to the JSON wire format, in original coordinates."""
    if inst.source_barriers:
        barriers = [list(b) for b in inst.source_barriers]
        sensors = [list(s) for s in inst.source_sensors]
    else:
        barriers = [[b.a + inst.offset, b.b + inst.offset] for b in inst.barriers]
        by_id = sorted(inst.sensors, key=lambda s: s.id)
        sensors = [[s.x + inst.offset, s.y] for s in by_id]
    return {"r": inst.r, "barriers": barriers, "sensors": sensors}


def load_instance(path_or_file: str | IO[str], *, merge_touching: bool = False) -> Instance:
    if hasattr(path_or_file, "read"):
        data = json.load(path_or_file)
    else:
        with open(path_or_file, "r", encoding="utf-8") as fh:
            data = json.load(fh)
    return instance_from_dict(data, merge_touching=merge_touching)


def save_instance(inst: Instance, path_or_file: str | IO[str]) -> None:
    data = instance_to_dict(inst)
    if hasattr(path_or_file, "write"):
        json.dump(data, path_or_file)
    else:
        with open(path_or_file, "w", encoding="utf-8") as fh:
            json.dump(data, fh)


def placement_to_dict(inst: Instance, lam: float, placement: Placement) -> dict:
    """Export a placement in original coordinates and input sensor order."""
    restored = [0.0] * inst.n
    for s, v in zip(inst.sensors, placement.positions):
        restored[s.id - 1] = v + inst.offset
    return {"lambda": lam, "positions": restored, "offset": inst.offset}
