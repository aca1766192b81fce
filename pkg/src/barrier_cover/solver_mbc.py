"""Exact solver for the general (plane) problem via a parametrized decision run.

The plane decision algorithm commits sensors to the coverage frontier one at a
time.  Run it with the movement budget left symbolic: maintain a half-open
interval ``(lo, hi]`` certified to contain the optimum (``lo`` tested
infeasible, ``hi`` feasible), the committed sensor list (identical for every
budget inside the open interval), and the frontier as an explicit function of
the budget - either a constant or "sensor curve plus offset".  Every step
computes the budget values at which the decision's branching could change
(frontier meets a covering-interval edge, a pull-back reach limit, or a
barrier endpoint), narrows the interval between adjacent such events with
O(log) feasibility tests, and then resolves the step at the interval midpoint.
When the pull-back set comes up empty the optimum is one of three certified
endpoint values; otherwise the committed set grows and the loop continues, so
at most n steps run.

A preprocessing pass fixes the sorted order of the rightmost reachable
positions on an interval containing the optimum, by enumerating all pairwise
curve crossings and binary searching them with the decision algorithm.  The
fixed order lets every feasibility test inside the loop skip its sort.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .core import (
    DEFAULT_TOL,
    Instance,
    NumericalFailure,
    Placement,
    ToleranceConfig,
    Uncoverable,
    movement_upper_bound,
    validate_coverable,
)
from .feasibility import decide_plane, decide_plane_presorted


@dataclass(frozen=True)
class RFunction:
    """Frontier position as a function of the movement budget.

    Either a constant, or ``x_j + sqrt(lam^2 - y_j^2) + c`` for the sensor at
    index ``sensor``; both shapes are closed under every step of the driver.
    """

    const: float
    sensor: int | None = None

    @classmethod
    def constant(cls, c: float) -> "RFunction":
        return cls(const=c, sensor=None)

    @classmethod
    def curve(cls, sensor: int, c: float) -> "RFunction":
        return cls(const=c, sensor=sensor)

    def value(self, inst: Instance, lam: float) -> float:
        if self.sensor is None:
            return self.const
        y = inst.ys[self.sensor]
        return inst.xs[self.sensor] + math.sqrt(max(0.0, lam * lam - y * y)) + self.const

    def shifted(self, dc: float) -> "RFunction":
        return RFunction(const=self.const + dc, sensor=self.sensor)

    def describe(self) -> str:
        if self.sensor is None:
            return f"const({self.const})"
        return f"curve(sensor={self.sensor}, offset={self.const})"


@dataclass(frozen=True)
class ParamInterval:
    """Half-open interval ``(lo, hi]`` certified to contain the optimum."""

    lo: float
    hi: float

    def __post_init__(self) -> None:
        if not self.lo < self.hi:
            raise ValueError(f"need lo < hi, got ({self.lo}, {self.hi})")

    @property
    def mid(self) -> float:
        return 0.5 * (self.lo + self.hi)


@dataclass
class ParamState:
    """Driver state carried between steps, mostly for tracing and asserts."""

    interval: ParamInterval
    chosen: list[tuple[int, float]]
    r_func: RFunction
    step: int


@dataclass(frozen=True)
class PresortResult:
    order: tuple[int, ...]
    interval: ParamInterval


@dataclass(frozen=True)
class PlaneSolution:
    lambda_star: float
    placement: Placement
    sequence: tuple[int, ...]
    feasibility_tests: int
    trace: tuple[dict, ...] = ()


@dataclass(frozen=True)
class _Expr:
    """``base + sign * sqrt(lam^2 - ysq)``; sign 0 means a plain constant."""

    base: float
    ysq: float = 0.0
    sign: int = 0

    def value(self, lam: float) -> float:
        if self.sign == 0:
            return self.base
        return self.base + self.sign * math.sqrt(max(0.0, lam * lam - self.ysq))


def _expr_of(inst: Instance, f: RFunction) -> _Expr:
    if f.sensor is None:
        return _Expr(base=f.const)
    y = inst.ys[f.sensor]
    return _Expr(base=inst.xs[f.sensor] + f.const, ysq=y * y, sign=+1)


def _rightmost_expr(inst: Instance, k: int, shift: float) -> _Expr:
    y = inst.ys[k]
    return _Expr(base=inst.xs[k] + shift, ysq=y * y, sign=+1)


def _leftmost_expr(inst: Instance, k: int, shift: float) -> _Expr:
    y = inst.ys[k]
    return _Expr(base=inst.xs[k] + shift, ysq=y * y, sign=-1)


def _root_candidate(e1: _Expr, e2: _Expr) -> float | None:
    """Unique solution of ``e1(lam) = e2(lam)`` from the closed form, if any.

    Isolating one radical and squaring leaves a linear equation in lam^2;
    candidates whose implied radical is negative are rejected here and
    everything else is validated by substitution at the call site.
    """
    c = e1.base - e2.base
    terms = []
    if e1.sign:
        terms.append((e1.sign, e1.ysq))
    if e2.sign:
        terms.append((-e2.sign, e2.ysq))
    if not terms:
        return None
    if len(terms) == 1:
        s_sign, p = terms[0]
        rad = -c / s_sign
        if rad < 0.0:
            return None
        return math.sqrt(p + rad * rad)
    (s1, p1), (s2, p2) = terms
    if s1 == s2:
        # s * (sqrt(lam^2-p1) + sqrt(lam^2-p2)) = -c
        d = -c / s1
        if d <= 0.0:
            return None
        if p1 == p2:
            rad = d / 2.0
            return math.sqrt(p1 + rad * rad)
        kk = d * d + p1 + p2
        u = (kk * kk - 4.0 * p1 * p2) / (4.0 * d * d)
        if u < max(p1, p2):
            return None
        return math.sqrt(u)
    # s1 * sqrt(lam^2-p1) - s1 * sqrt(lam^2-p2) = -c
    d = -c / s1
    if p1 == p2:
        return None  # identical radicals: no isolated crossing
    rad = (p2 - p1 - d * d) / (2.0 * d) if d != 0.0 else -1.0
    if rad < 0.0:
        return None
    return math.sqrt(p2 + rad * rad)


def solve_curve_event(
    e1: _Expr | RFunction,
    e2: _Expr | RFunction,
    lo: float,
    hi: float,
    inst: Instance,
    tol: ToleranceConfig = DEFAULT_TOL,
) -> float | None:
    """Unique root of ``e1(lam) = e2(lam)`` strictly inside ``(lo, hi)``.

    Closed-form candidates are validated by substitution; an ambiguous
    residual falls back to bisection, which is safe because every difference
    of these expressions is monotone on the interval.
    """
    if isinstance(e1, RFunction):
        e1 = _expr_of(inst, e1)
    if isinstance(e2, RFunction):
        e2 = _expr_of(inst, e2)
    cand = _root_candidate(e1, e2)
    if cand is not None and lo < cand < hi:
        v1, v2 = e1.value(cand), e2.value(cand)
        scale = max(1.0, abs(v1), abs(v2))
        resid = abs(v1 - v2)
        if resid <= tol.eps_root * scale:
            return cand
        if resid <= tol.eps_cmp * scale:
            return _bisect_root(e1, e2, lo, hi, tol)
        return None
    if cand is not None:
        return None
    return None


def _bisect_root(
    e1: _Expr, e2: _Expr, lo: float, hi: float, tol: ToleranceConfig
) -> float | None:
    span = hi - lo
    a = lo + span * 1e-12
    b = hi - span * 1e-12
    fa = e1.value(a) - e2.value(a)
    fb = e1.value(b) - e2.value(b)
    if fa == 0.0:
        return a
    if fb == 0.0:
        return b
    if (fa > 0.0) == (fb > 0.0):
        return None
    for _ in range(200):
        mid = 0.5 * (a + b)
        if b - a <= tol.eps_root:
            return mid
        fm = e1.value(mid) - e2.value(mid)
        if fm == 0.0:
            return mid
        if (fm > 0.0) == (fa > 0.0):
            a, fa = mid, fm
        else:
            b = mid
    raise NumericalFailure(
        f"root bracket ({lo}, {hi}) did not converge to {tol.eps_root}"
    )


def lower_envelope(
    inst: Instance,
    sensor_indices: list[int],
    lo: float,
    hi: float,
    tol: ToleranceConfig = DEFAULT_TOL,
) -> tuple[list[float], list[int]]:
    """Lower envelope of the rightmost-reachable curves over ``(lo, hi)``.

    Any two of the curves cross at most once, so a divide-and-conquer merge
    yields at most ``len(sensor_indices) - 1`` interior breakpoints.  Returns
    the sorted breakpoints and the owning sensor of each piece (one more owner
    than breakpoints).  Every curve must be defined on the whole interval.
    """
    for k in sensor_indices:
        if abs(inst.ys[k]) > lo + tol.eps_cmp:
            raise ValueError(f"sensor {k} cannot reach the axis everywhere in ({lo}, {hi})")

    def curve_val(k: int, lam: float) -> float:
        y = inst.ys[k]
        return inst.xs[k] + math.sqrt(max(0.0, lam * lam - y * y))

    def winner(k1: int, k2: int, lam: float) -> int:
        v1, v2 = curve_val(k1, lam), curve_val(k2, lam)
        if v1 < v2:
            return k1
        if v2 < v1:
            return k2
        return min(k1, k2)

    def merge(env1, env2):
        bps1, own1 = env1
        bps2, own2 = env2
        cuts = sorted(set(bps1) | set(bps2) | {lo, hi})
        out_bps: list[float] = []
        out_own: list[int] = []

        def emit(bp: float | None, owner: int) -> None:
            if out_own and out_own[-1] == owner:
                return
            if out_own:
                out_bps.append(bp if bp is not None else math.nan)
            out_own.append(owner)

        i1 = i2 = 0
        for seg in range(len(cuts) - 1):
            u, v = cuts[seg], cuts[seg + 1]
            while i1 < len(bps1) and bps1[i1] <= u:
                i1 += 1
            while i2 < len(bps2) and bps2[i2] <= u:
                i2 += 1
            k1, k2 = own1[i1], own2[i2]
            if k1 == k2:
                emit(u if seg else None, k1)
                continue
            cross = solve_curve_event(
                _rightmost_expr(inst, k1, 0.0),
                _rightmost_expr(inst, k2, 0.0),
                u,
                v,
                inst,
                tol,
            )
            if cross is None:
                emit(u if seg else None, winner(k1, k2, 0.5 * (u + v)))
            else:
                emit(u if seg else None, winner(k1, k2, 0.5 * (u + cross)))
                emit(cross, winner(k1, k2, 0.5 * (cross + v)))
        return out_bps, out_own

    def build(ks: list[int]):
        if len(ks) == 1:
            return [], [ks[0]]
        half = len(ks) // 2
        return merge(build(ks[:half]), build(ks[half:]))

    bps, owners = build(list(sensor_indices))
    return bps, owners


def presort(inst: Instance, tol: ToleranceConfig = DEFAULT_TOL) -> PresortResult:
    """Fix the sorted order of rightmost reachable positions near the optimum.

    Enumerates all pairwise crossings of the curves on the bracket from the
    largest |y| (infeasible, by precondition) to the always-feasible upper
    bound, then binary searches the crossing values with the plane decision to
    find adjacent values straddling the optimum.  The order is constant
    between adjacent crossings, hence on the returned interval.
    """
    if not validate_coverable(inst, tol):
        raise Uncoverable("sensors cannot cover the barriers at any budget")
    lam_base = max(abs(y) for y in inst.ys)
    lam_max = movement_upper_bound(inst)
    if lam_max <= lam_base:
        lam_max = lam_base + max(1.0, abs(lam_base))

    grid: set[float] = set()
    n = inst.n
    for i in range(n):
        for j in range(i + 1, n):
            root = solve_curve_event(
                _rightmost_expr(inst, i, 0.0),
                _rightmost_expr(inst, j, 0.0),
                lam_base,
                lam_max,
                inst,
                tol,
            )
            if root is not None:
                grid.add(root)
    values = [lam_base, *sorted(grid), lam_max]

    lo_i, hi_i = 0, len(values) - 1  # values[0] infeasible, values[-1] feasible
    while hi_i - lo_i > 1:
        mid = (lo_i + hi_i) // 2
        if decide_plane(inst, values[mid], tol, witness=False).feasible:
            hi_i = mid
        else:
            lo_i = mid

    interval = ParamInterval(values[lo_i], values[hi_i])
    xr_mid = _xr_values(inst, interval.mid)
    order = tuple(sorted(range(n), key=lambda i: (xr_mid[i], i)))
    return PresortResult(order=order, interval=interval)


def _xr_values(inst: Instance, lam: float) -> list[float]:
    out = []
    for x, y in zip(inst.xs, inst.ys):
        out.append(x + math.sqrt(max(0.0, lam * lam - y * y)))
    return out


class _Driver:
    """Runs the parametrized decision; one instance per solve call."""

    def __init__(self, inst: Instance, tol: ToleranceConfig, debug: bool):
        self.inst = inst
        self.tol = tol
        self.debug = debug
        self.memo: dict[float, bool] = {}
        self.tests = 0
        self.order: tuple[int, ...] = ()
        self.trace: list[dict] = []

    def feasible(self, lam: float) -> bool:
        if lam in self.memo:
            return self.memo[lam]
        res = decide_plane_presorted(
            self.inst, lam, self.order, self.tol, debug=self.debug, witness=False
        ).feasible
        self.memo[lam] = res
        self.tests += 1
        return res

    def shrink(self, events: list[float], lo: float, hi: float) -> tuple[float, float]:
        """Narrow ``(lo, hi]`` to an adjacent pair of the event list.

        Endpoints act as sentinels whose feasibility is already certified;
        only strictly interior events are ever tested.
        """
        vals = sorted({e for e in events if lo < e < hi and math.isfinite(e)})
        if not vals:
            return lo, hi
        lo_i, hi_i = 0, len(vals)
        while lo_i < hi_i:
            mid = (lo_i + hi_i) // 2
            if self.feasible(vals[mid]):
                hi_i = mid
            else:
                lo_i = mid + 1
        new_lo = vals[lo_i - 1] if lo_i > 0 else lo
        new_hi = vals[lo_i] if lo_i < len(vals) else hi
        return new_lo, new_hi


def solve_plane(
    inst: Instance,
    tol: ToleranceConfig = DEFAULT_TOL,
    *,
    debug: bool = False,
    collect_trace: bool = False,
) -> PlaneSolution:
    """Minimum max-movement for an arbitrary instance, with a witness.

    The returned ``sequence`` is the certified prefix of the driver's
    committed sensors: the commitments made while the optimum was strictly
    inside the open interval, which a decision re-run at the optimum must
    reproduce.
    """
    if not validate_coverable(inst, tol):
        raise Uncoverable("sensors cannot cover the barriers at any budget")

    lam_base = max(abs(y) for y in inst.ys)
    base_decision = decide_plane(inst, lam_base, tol)
    if base_decision.feasible:
        # Nothing below the tallest sensor's drop can ever be feasible.
        return PlaneSolution(
            lambda_star=lam_base,
            placement=base_decision.placement,
            sequence=tuple(g for g, _ in base_decision.sequence),
            feasibility_tests=1,
        )

    pre = presort(inst, tol)
    drv = _Driver(inst, tol, debug)
    drv.order = pre.order
    lo, hi = pre.interval.lo, pre.interval.hi
    drv.memo[lo] = False
    drv.memo[hi] = True

    eps = tol.eps_cmp
    r = inst.r
    beta = inst.beta
    n = inst.n
    xs, ys = inst.xs, inst.ys
    chosen: list[tuple[int, float]] = []  # (sensor, hi at commitment)
    unchosen = [True] * n
    R = RFunction.constant(0.0)
    lam_star: float | None = None
    step = 0

    def xr_at(k: int, lam: float) -> float:
        return xs[k] + math.sqrt(max(0.0, lam * lam - ys[k] * ys[k]))

    def xl_at(k: int, lam: float) -> float:
        return xs[k] - math.sqrt(max(0.0, lam * lam - ys[k] * ys[k]))

    while lam_star is None:
        step += 1
        assert step <= n + 1, "driver must terminate within n steps"
        prev_lo, prev_hi = lo, hi
        if hi - lo < 4.0 * tol.eps_root:
            lam_star = hi  # bracket exhausted: hi is certified feasible
            break
        hi_step_start = hi
        entry: dict = {"step": step, "interval_start": [lo, hi]}

        # Budget values where the frontier meets a covering-interval edge.
        events = []
        for k in range(n):
            if not unchosen[k]:
                continue
            for shift in (r, -r):
                root = solve_curve_event(
                    _expr_of(inst, R), _rightmost_expr(inst, k, shift), lo, hi, inst, tol
                )
                if root is not None:
                    events.append(root)
        lo, hi = drv.shrink(events, lo, hi)
        entry["s1_events"] = len(events)
        lam_mid = 0.5 * (lo + hi)
        r_mid = R.value(inst, lam_mid)
        covering = [
            k
            for k in range(n)
            if unchosen[k]
            and xr_at(k, lam_mid) - r <= r_mid + eps
            and not (xr_at(k, lam_mid) + r <= r_mid + eps)
        ]

        if covering:
            g = min(covering, key=lambda k: (xr_at(k, lam_mid), k))
            unchosen[g] = False
            chosen.append((g, hi))
            R = RFunction.curve(g, r)
            entry["branch"] = "covering"
            entry["chosen"] = g
        else:
            hi_after_s1 = hi
            # Budget values where a pull-back reach limit meets the frontier.
            events = []
            for k in range(n):
                if not unchosen[k]:
                    continue
                root = solve_curve_event(
                    _expr_of(inst, R), _leftmost_expr(inst, k, -r), lo, hi, inst, tol
                )
                if root is not None:
                    events.append(root)
            lo, hi = drv.shrink(events, lo, hi)
            entry["s2_events"] = len(events)
            lam_mid = 0.5 * (lo + hi)
            r_mid = R.value(inst, lam_mid)
            pullback = [
                k
                for k in range(n)
                if unchosen[k]
                and xl_at(k, lam_mid) - r <= r_mid + eps
                and not (xr_at(k, lam_mid) - r <= r_mid + eps)
            ]
            if not pullback:
                # The decision at any interior budget stalls here, so the
                # optimum is one of the certified interval endpoints.
                entry["branch"] = "endpoint"
                for cand in sorted({hi, hi_after_s1, hi_step_start}):
                    if drv.feasible(cand):
                        lam_star = cand
                        break
                assert lam_star is not None, "one endpoint candidate must be feasible"
                if collect_trace:
                    entry["interval_end"] = [lo, hi]
                    drv.trace.append(entry)
                break
            if len(pullback) > 1:
                bps, owners = lower_envelope(inst, pullback, lo, hi, tol)
                lo, hi = drv.shrink(bps, lo, hi)
                lam_mid = 0.5 * (lo + hi)
            g = min(pullback, key=lambda k: (xr_at(k, lam_mid), k))
            unchosen[g] = False
            chosen.append((g, hi))
            R = R.shifted(2.0 * r)
            entry["branch"] = "pullback"
            entry["chosen"] = g

        # Keep the frontier strictly left of the global right end on the
        # open interval; where it would cross, the crossing budget is a
        # certified feasible value and becomes the new upper end.
        r_hi = R.value(inst, hi)
        if r_hi > beta:
            if R.sensor is None:
                raise NumericalFailure(
                    "constant frontier at or past the right end cannot happen "
                    "inside a certified interval"
                )
            root = solve_curve_event(
                _expr_of(inst, R), _Expr(base=beta), lo, hi, inst, tol
            )
            if root is not None:
                hi = root
                drv.memo.setdefault(root, True)  # coverage completes exactly there
                entry["clipped_hi"] = root
            elif R.value(inst, lo) > beta + eps:
                raise NumericalFailure(
                    "frontier past the right end on a certified-infeasible budget"
                )
            # else: the crossing is indistinguishable from hi at this
            # precision, so the open interval already satisfies the bound

        # Jump the frontier across a gap, resolving which gap (if any) by
        # narrowing between barrier-endpoint crossings.
        if R.sensor is None:
            jumped = _jump_constant(inst, R.const, eps)
            if jumped is not None:
                R = RFunction.constant(jumped)
        else:
            events = []
            r_expr = _expr_of(inst, R)
            for a, b in zip(inst.lefts, inst.rights):
                for target in (a, b):
                    root = solve_curve_event(
                        r_expr, _Expr(base=target), lo, hi, inst, tol
                    )
                    if root is not None:
                        events.append(root)
            lo, hi = drv.shrink(events, lo, hi)
            entry["jump_events"] = len(events)
            lam_mid = 0.5 * (lo + hi)
            jumped = _jump_constant(inst, R.value(inst, lam_mid), eps)
            if jumped is not None:
                R = RFunction.constant(jumped)

        if debug:
            assert prev_lo <= lo < hi <= prev_hi, "intervals must nest"
            assert drv.memo.get(hi, True), "upper end must stay feasible"
            assert not drv.memo.get(lo, False), "lower end must stay infeasible"
        if collect_trace:
            entry["interval_end"] = [lo, hi]
            entry["frontier"] = R.describe()
            drv.trace.append(entry)

    witness = decide_plane(inst, lam_star, tol)
    assert witness.feasible, "the computed optimum must pass its own decision"
    certified = []
    for g, hi_rec in chosen:
        if hi_rec == lam_star:
            break
        certified.append(g)
    if debug:
        rerun = [g for g, _ in witness.sequence]
        assert rerun[: len(certified)] == certified, (
            "decision re-run must reproduce the certified commitment prefix"
        )
    return PlaneSolution(
        lambda_star=lam_star,
        placement=witness.placement,
        sequence=tuple(certified),
        feasibility_tests=drv.tests,
        trace=tuple(drv.trace),
    )


def _jump_constant(inst: Instance, v: float, eps: float) -> float | None:
    """Left endpoint of the next barrier when ``v`` sits in a gap, else None.

    A frontier exactly at a barrier's right endpoint counts as being in the
    gap; one at a left endpoint does not.
    """
    idx = 0
    rights = inst.rights
    m = inst.m
    while idx < m and rights[idx] <= v + eps:
        idx += 1
    if idx == m:
        return None  # at or past the global right end
    a = inst.lefts[idx]
    if v < a:
        return a
    return None
