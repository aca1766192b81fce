"""Implicit sorted arrays of candidate optima for the line-constrained solver.

The optimum of a line instance is always realized by one of three closed-form
families: (a) a chain of sensors in attached positions whose first covering
interval starts at some barrier's left endpoint, with the chain's last sensor
moved left by exactly the optimum; (b) the mirror image, right-aligned at a
barrier's right endpoint; (c) two sensors pinned against each other, splitting
their slack evenly.

Family (a) contains one value per (first sensor i, last sensor j, barrier k):

    value(i, j, k) = x_j - (a_k + 2r(j - i) + r)

For fixed (j, k) these form an arithmetic progression in i with step 2r, so
the whole family is a union of n*m short progressions.  To search it with a
sorted-array selection engine we need, for each j, random access into the
sorted union over k.  Materializing is too slow, so every progression is
extended downwards to a common "ladder" spacing aligned on the family minimum,
which makes the merged order independent of the rung: the t-th smallest
element is rung ceil(t/m) of the list whose first element ranks (t mod m)
among first elements.  That first-element order is the same for every j, so
one sort suffices.

The ladder length would be unbounded for widely separated barriers, so the
barriers are first partitioned into maximal runs ("groups") of consecutive
indices whose progressions interleave within one step; distinct groups never
interleave, for any j, so group-local ladders concatenate into a globally
sorted array.  Per-group ladder lengths and prefix sizes for any j follow from
the j = n values by fixed integer shifts, giving O(log m) evaluation after
O(m log m) preprocessing.  The arrays are supersets of family (a) but every
extra element is a harmless candidate; negative entries are clamped to zero
when handed to the search engine, which is safe because feasibility at zero is
tested separately up front.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .core import DEFAULT_TOL, Instance, ToleranceConfig
from .search import SortedArrayHandle


def ladder_steps(gap: float, two_r: float) -> int:
    """``floor(gap / two_r)`` computed exactly.

    Ladder lengths are integers derived from coordinate gaps; an off-by-one
    from float division near an integer boundary would change an array's
    size, so the floor is taken in exact rational arithmetic.
    """
    return int(Fraction(gap) / Fraction(two_r))  # both nonnegative here


def lambda1_value(i: int, j: int, k: int, inst: Instance) -> float:
    """Left-aligned chain candidate for 1-based sensor pair (i, j), barrier k."""
    if not (1 <= i <= j <= inst.n):
        raise IndexError(f"need 1 <= i <= j <= n, got i={i}, j={j}, n={inst.n}")
    if not (1 <= k <= inst.m):
        raise IndexError(f"need 1 <= k <= m, got k={k}, m={inst.m}")
    return inst.xs[j - 1] - (inst.lefts[k - 1] + 2.0 * inst.r * (j - i) + inst.r)


@dataclass(frozen=True)
class Group:
    """One run of consecutive barrier indices whose progressions interleave.

    ``ks`` are the 0-based barrier indices.  ``slots`` holds the same indices
    ordered by their ladder's first element; ``w_by_slot`` are the matching
    first-element offsets, so the first element of barrier ``slots[s]``'s
    ladder for sensor j is ``u_j + w_by_slot[s]``.  ``alpha_n`` is the ladder
    length at j = n.
    """

    ks: tuple[int, ...]
    slots: tuple[int, ...]
    w_by_slot: tuple[float, ...]
    alpha_n: int

    @property
    def count(self) -> int:
        return len(self.ks)


@dataclass(frozen=True)
class Lambda1Arrays:
    """Random-access sorted superset arrays, one per last-chain sensor j.

    Groups are stored in ascending value order (descending barrier index).
    ``beta_n[g]`` is the cumulative element count of groups 0..g at j = n and
    ``delta[g]`` the cumulative barrier count; both shift linearly in j.
    ``side`` records whether this is the left-aligned family or its mirror.
    """

    n: int
    m: int
    r: float
    xs: tuple[float, ...]
    groups: tuple[Group, ...]
    beta_n: tuple[int, ...]
    delta: tuple[int, ...]
    side: str = "lambda1"

    def alpha(self, g: int, j: int) -> int:
        """Ladder length of group ``g`` for sensor ``j`` (1-based j)."""
        return self.groups[g].alpha_n - self.n + j

    def beta(self, g: int, j: int) -> int:
        """Elements in groups 0..g for sensor ``j`` (1-based j)."""
        return self.beta_n[g] + self.delta[g] * (j - self.n)

    def total(self, j: int) -> int:
        return self.beta(len(self.groups) - 1, j)

    def first_element_base(self, j: int) -> float:
        """The j-dependent part shared by every ladder's first element."""
        return self.xs[j - 1] - 2.0 * self.r * j

    def handles(self) -> list[SortedArrayHandle]:
        """One clamped sorted-array handle per j, for the search engine."""
        out = []
        for j in range(1, self.n + 1):
            def ev(t: int, j: int = j) -> float:
                return max(0.0, eval_B(j, t, self))

            out.append(SortedArrayHandle(length=self.total(j), eval=ev))
        return out


def build_lambda1_arrays(inst: Instance, side: str = "lambda1") -> Lambda1Arrays:
    """Group the barriers and lay out the ladders; O(m log m).

    The group scan compares each progression's first element against the next
    progression's last element plus one step, which reduces to the barrier gap
    test ``a[k+1] - a[k] > 2rn``.
    """
    n, m, r = inst.n, inst.m, inst.r
    a = inst.lefts
    two_r = 2.0 * r

    runs: list[tuple[int, int]] = []
    start = 0
    for k in range(m - 1):
        if a[k + 1] - a[k] > two_r * n:
            runs.append((start, k))
            start = k + 1
    runs.append((start, m - 1))

    groups: list[Group] = []
    for k1, k2 in reversed(runs):  # ascending value order = descending index
        ks = tuple(range(k1, k2 + 1))
        w = {}
        for k in ks:
            q = ladder_steps(a[k2] - a[k], two_r)
            w[k] = r - a[k] - q * two_r
        slots = tuple(sorted(ks, key=lambda k: (w[k], k)))
        alpha_n = n + ladder_steps(a[k2] - a[k1], two_r)
        groups.append(
            Group(ks=ks, slots=slots, w_by_slot=tuple(w[k] for k in slots), alpha_n=alpha_n)
        )

    beta_n = []
    delta = []
    csize = 0
    ccount = 0
    for grp in groups:
        assert grp.alpha_n - inst.n + 1 >= 1, "ladder must stay nonempty for every j"
        assert grp.alpha_n <= grp.count * (n + 1), "intra-group interleaving bound"
        csize += grp.count * grp.alpha_n
        ccount += grp.count
        beta_n.append(csize)
        delta.append(ccount)
    assert csize <= m * m * (n + 1), "superset size bound"

    return Lambda1Arrays(
        n=n,
        m=m,
        r=r,
        xs=inst.xs,
        groups=tuple(groups),
        beta_n=tuple(beta_n),
        delta=tuple(delta),
        side=side,
    )


def eval_B(j: int, t: int, arrays: Lambda1Arrays) -> float:
    """t-th smallest element of sensor ``j``'s superset array (both 1-based).

    Binary search over cumulative group sizes picks the group, then the rung
    and slot follow by division.  O(log m).
    """
    total = arrays.total(j)
    if not (1 <= j <= arrays.n):
        raise IndexError(f"need 1 <= j <= n, got j={j}")
    if not (1 <= t <= total):
        raise IndexError(f"need 1 <= t <= {total}, got t={t}")
    lo, hi = 0, len(arrays.groups) - 1
    while lo < hi:
        mid = (lo + hi) // 2
        if arrays.beta(mid, j) >= t:
            hi = mid
        else:
            lo = mid + 1
    grp = arrays.groups[lo]
    before = arrays.beta(lo - 1, j) if lo > 0 else 0
    local = t - before
    rung, slot = divmod(local - 1, grp.count)
    return arrays.first_element_base(j) + grp.w_by_slot[slot] + 2.0 * arrays.r * rung


def mirror_lambda2(inst: Instance) -> Lambda1Arrays:
    """The right-aligned family, as the left-aligned family of the reflection.

    Reflecting the axis swaps barrier endpoint roles and reverses both
    orderings; candidate values are preserved because they only depend on
    coordinate differences.
    """
    barriers = [(-b.b, -b.a) for b in reversed(inst.barriers)]
    sensors = [(-s.x, s.y) for s in reversed(inst.sensors)]
    reflected = Instance.create(barriers, sensors, inst.r)
    return build_lambda1_arrays(reflected, side="lambda2")


@dataclass(frozen=True)
class Lambda3Arrays:
    """Sorted-difference superset of the two-pinned-sensors candidates.

    With ``z_i = x_i - 2r*i`` every pinned-pair value is ``(z_j - z_i) / 2``.
    Row ``a`` of the virtual matrix pairs the a-th smallest z against all z in
    descending order, so rows are sorted and all pairs appear.
    """

    z_sorted: tuple[float, ...]

    @property
    def n(self) -> int:
        return len(self.z_sorted)

    def value(self, a: int, b: int) -> float:
        """Entry (a, b), 1-based, clamped at zero."""
        n = self.n
        if not (1 <= a <= n and 1 <= b <= n):
            raise IndexError(f"need indices in [1, {n}], got ({a}, {b})")
        return max(0.0, (self.z_sorted[a - 1] - self.z_sorted[n - b]) / 2.0)

    def handles(self) -> list[SortedArrayHandle]:
        return [
            SortedArrayHandle(length=self.n, eval=lambda b, a=a: self.value(a, b))
            for a in range(1, self.n + 1)
        ]


def lambda3_arrays(inst: Instance) -> Lambda3Arrays:
    z = [x - 2.0 * inst.r * (i + 1) for i, x in enumerate(inst.xs)]
    return Lambda3Arrays(z_sorted=tuple(sorted(z)))


@dataclass(frozen=True)
class CandidateValue:
    """A candidate optimum with its provenance, for debugging dumps."""

    value: float
    source: str


def materialize(arrays: Lambda1Arrays, j: int) -> list[float]:
    """Explicit superset array for sensor ``j`` (small instances only)."""
    return [eval_B(j, t, arrays) for t in range(1, arrays.total(j) + 1)]


def dump_candidates(
    inst: Instance, max_size: int, tol: ToleranceConfig = DEFAULT_TOL
) -> dict:
    """Materialize every candidate array; refuses oversized instances."""
    l1 = build_lambda1_arrays(inst)
    l2 = mirror_lambda2(inst)
    l3 = lambda3_arrays(inst)
    total = sum(l1.total(j) + l2.total(j) for j in range(1, inst.n + 1))
    total += inst.n * inst.n
    if total > max_size:
        raise ValueError(f"candidate arrays hold {total} elements, above the cap {max_size}")
    return {
        "lambda1": {str(j): materialize(l1, j) for j in range(1, inst.n + 1)},
        "lambda2": {str(j): materialize(l2, j) for j in range(1, inst.n + 1)},
        "lambda3": [
            [l3.value(a, b) for b in range(1, inst.n + 1)] for a in range(1, inst.n + 1)
        ],
        "total_elements": total,
    }
