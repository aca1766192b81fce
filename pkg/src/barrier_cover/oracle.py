"""Brute-force reference implementations for testing the real solvers.

These deliberately share no code with the decision algorithms or the
optimizers: the frontier bookkeeping, gap skipping, and candidate enumeration
are all re-derived here from the problem statement.  They are exponential or
quadratic and only meant for small instances.
"""

from __future__ import annotations

import itertools
import math

from .core import (
    BarrierCoverError,
    DEFAULT_TOL,
    Instance,
    ToleranceConfig,
    Uncoverable,
    movement_upper_bound,
    validate_coverable,
)


class TooLarge(BarrierCoverError):
    """The brute-force oracle was asked for an instance it cannot afford."""


_MAX_ORACLE_N = 10


def _reaches(inst: Instance, lam: float, eps: float):
    """Per-sensor reachable axis intervals, or None if some sensor is stuck."""
    out = []
    for x, y in zip(inst.xs, inst.ys):
        if lam + eps < abs(y):
            return None
        d = math.sqrt(max(0.0, lam * lam - y * y))
        out.append((x - d, x + d))
    return out


def _skip_gaps(inst: Instance, p: float, eps: float) -> float:
    """Move a frontier sitting between barriers to the next left endpoint.

    Returns ``inf`` once every barrier ends at or before ``p``.
    """
    for a, b in zip(inst.lefts, inst.rights):
        if b <= p + eps:
            continue
        return p if p >= a else a
    return math.inf


def oracle_decide(inst: Instance, lam: float, tol: ToleranceConfig = DEFAULT_TOL) -> bool:
    """Exhaustive feasibility test over all sensor orderings.

    For a fixed ordering, sensors are placed left to right, each as far right
    as it can go while keeping barrier coverage contiguous; an ordering
    succeeds when the frontier passes the last barrier.  The maximum frontier
    over all n! orderings is computed with a subset dynamic program (placement
    is monotone in the incoming frontier, so only the best frontier per used
    subset matters); ``oracle_decide_slow`` enumerates permutations literally
    and is used in tests to validate this program.
    """
    n = inst.n
    if n > _MAX_ORACLE_N:
        raise TooLarge(f"oracle_decide supports at most {_MAX_ORACLE_N} sensors, got {n}")
    if lam < 0.0:
        return False
    eps = tol.eps_cmp
    reaches = _reaches(inst, lam, eps)
    if reaches is None:
        return False

    beta = inst.beta
    best = [-math.inf] * (1 << n)
    best[0] = _skip_gaps(inst, 0.0, eps)
    if best[0] == math.inf:
        return True
    masks_by_bits = sorted(range(1 << n), key=int.bit_count)
    for mask in masks_by_bits:
        f = best[mask]
        if f == -math.inf:
            continue
        if f >= beta - eps:
            return True
        for i in range(n):
            bit = 1 << i
            if mask & bit:
                continue
            nf = _place(inst, reaches[i], f, eps)
            nxt = mask | bit
            if nf > best[nxt]:
                best[nxt] = nf
    return best[(1 << n) - 1] >= beta - eps


def _place(inst: Instance, reach: tuple[float, float], p: float, eps: float) -> float:
    """Frontier after greedily placing one sensor against frontier ``p``."""
    xl, xr = reach
    pos = min(xr, p + inst.r)
    if pos < xl - eps:
        return p  # cannot connect: would leave the frontier point uncovered
    new = pos + inst.r
    if new <= p + eps:
        return p  # entirely behind the frontier, contributes nothing
    return _skip_gaps(inst, new, eps)


def oracle_decide_slow(
    inst: Instance, lam: float, tol: ToleranceConfig = DEFAULT_TOL
) -> bool:
    """Literal permutation enumeration; only for tiny n (test cross-check)."""
    n = inst.n
    if n > 7:
        raise TooLarge("oracle_decide_slow supports at most 7 sensors")
    if lam < 0.0:
        return False
    eps = tol.eps_cmp
    reaches = _reaches(inst, lam, eps)
    if reaches is None:
        return False
    beta = inst.beta
    for perm in itertools.permutations(range(n)):
        p = _skip_gaps(inst, 0.0, eps)
        for i in perm:
            if p >= beta - eps:
                break
            p = _place(inst, reaches[i], p, eps)
        if p >= beta - eps:
            return True
    return False


def _line_candidates(inst: Instance) -> list[float]:
    """Every closed-form candidate optimum for a line instance, plus 0.

    Three families: chains of attached sensors left-aligned at a barrier's
    left endpoint, the mirrored right-aligned case, and two sensors pinned
    against each other splitting the slack.
    """
    xs, r = inst.xs, inst.r
    n = inst.n
    vals = {0.0}
    for jj in range(1, n + 1):
        for ii in range(1, jj + 1):
            span = 2.0 * r * (jj - ii)
            for a in inst.lefts:
                vals.add(xs[jj - 1] - (a + span + r))
            for b in inst.rights:
                vals.add(b - r - span - xs[ii - 1])
    for ii in range(1, n + 1):
        for jj in range(ii + 1, n + 1):
            vals.add((xs[jj - 1] - xs[ii - 1] - 2.0 * r * (jj - ii)) / 2.0)
    return sorted(v for v in vals if v >= 0.0)


def oracle_lambda_line(
    inst: Instance,
    tol: ToleranceConfig = DEFAULT_TOL,
    *,
    cross_check: bool = False,
) -> float:
    """Optimum for a line instance by scanning all candidates smallest-first.

    The accept test is the linear greedy decision; with ``cross_check`` every
    scanned candidate is also judged by the ordering-exhaustive oracle and the
    two must agree.
    """
    from .feasibility import decide_line

    if not validate_coverable(inst, tol):
        raise Uncoverable("sensors cannot cover the barriers at any budget")
    for v in _line_candidates(inst):
        ok = decide_line(inst, v, tol, witness=False).feasible
        if cross_check:
            alt = oracle_decide(inst, v, tol)
            assert ok == alt, f"decision mismatch at lambda={v}: greedy={ok} oracle={alt}"
        if ok:
            return v
    raise BarrierCoverError("no candidate was feasible; candidate set is incomplete")


def oracle_lambda_plane(
    inst: Instance,
    tol: ToleranceConfig = DEFAULT_TOL,
    *,
    max_iter: int = 200,
) -> float:
    """Optimum by bisection on the monotone feasibility predicate.

    Uses the ordering-exhaustive oracle for small n and the plane decision
    algorithm otherwise.  The final bracket is certified narrower than
    ``1e-12 * max(1, upper_bound)``.
    """
    if not validate_coverable(inst, tol):
        raise Uncoverable("sensors cannot cover the barriers at any budget")
    if inst.n <= 7:
        def feasible(v: float) -> bool:
            return oracle_decide(inst, v, tol)
    else:
        from .feasibility import decide_plane

        def feasible(v: float) -> bool:
            return decide_plane(inst, v, tol, witness=False).feasible

    hi = movement_upper_bound(inst)
    if feasible(0.0):
        return 0.0
    lo = 0.0
    width_goal = 1e-12 * max(1.0, hi)
    for _ in range(max_iter):
        if hi - lo < width_goal:
            break
        mid = 0.5 * (lo + hi)
        if feasible(mid):
            hi = mid
        else:
            lo = mid
    return 0.5 * (lo + hi)
