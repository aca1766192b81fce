import io
import json
import math

import pytest
from hypothesis import given, strategies as st

from barrier_cover import (
    DegenerateBarrier,
    Instance,
    OverlappingBarriers,
    Sensor,
    ToleranceConfig,
    UnsortedInput,
    ValidationError,
    coverage_ok,
    instance_from_dict,
    instance_to_dict,
    movement_upper_bound,
    reach_interval,
    validate_coverable,
    validate_instance,
)
from conftest import line_instance


class TestValidation:
    def test_minimal_valid_instance(self):
        inst = Instance.create([[0, 1]], [(0, 0)], 1.0)
        validate_instance(inst)  # must not raise

    def test_overlapping_barriers_rejected(self):
        with pytest.raises(OverlappingBarriers):
            Instance.create([[0, 1], [0.5, 2]], [(0, 0)], 1.0)

    def test_degenerate_barrier_rejected(self):
        with pytest.raises(DegenerateBarrier):
            Instance.create([[0, 0]], [(0, 0)], 1.0)

    def test_touching_barriers_rejected_without_merge(self):
        with pytest.raises(OverlappingBarriers):
            Instance.create([[0, 1], [1, 2]], [(0, 0)], 1.0)

    def test_merge_touching_combines_chains(self):
        inst = Instance.create(
            [[0, 1], [1, 2], [2, 3], [5, 6]], [(0, 0)], 1.0, merge_touching=True
        )
        assert inst.m == 2
        assert inst.barriers[0].length == pytest.approx(3.0)

    def test_unsorted_barriers_rejected(self):
        with pytest.raises(UnsortedInput):
            Instance.create([[4, 6], [0, 2]], [(0, 0)], 1.0)

    def test_reversed_barrier_rejected(self):
        with pytest.raises(UnsortedInput):
            Instance.create([[2, 1]], [(0, 0)], 1.0)

    def test_nonpositive_range_rejected(self):
        with pytest.raises(ValidationError):
            Instance.create([[0, 1]], [(0, 0)], 0.0)

    def test_sensor_ids_follow_input_order(self):
        inst = Instance.create([[0, 1]], [(5, 0), (2, 1), (5, -1)], 1.0)
        assert [s.id for s in inst.sensors] == [2, 1, 3]
        assert inst.xs == (2.0, 5.0, 5.0)


class TestNormalization:
    def test_first_barrier_shifted_to_zero(self):
        inst = Instance.create([[-3, -1], [2, 4]], [(0, 1)], 1.0)
        assert inst.barriers[0].a == 0.0
        assert inst.offset == -3.0
        assert inst.sensors[0].x == 3.0

    def test_round_trip_is_bit_exact(self):
        raw = {
            "r": 0.75,
            "barriers": [[0.1, 0.30000000000000004], [1.7976931348623157, 2.5]],
            "sensors": [[-1.2345678901234567, 0.1], [3.3, -0.7]],
        }
        inst = instance_from_dict(raw)
        assert instance_to_dict(inst) == raw
        buf = io.StringIO()
        json.dump(instance_to_dict(inst), buf)
        again = instance_from_dict(json.loads(buf.getvalue()))
        assert instance_to_dict(again) == raw


class TestCoverable:
    def test_single_sensor_enough(self):
        assert validate_coverable(line_instance([[0, 1]], [0], 1.0))

    def test_single_sensor_short(self):
        assert not validate_coverable(line_instance([[0, 3]], [0], 1.0))

    def test_two_sensors_two_barriers(self):
        # Greedy packing: one interval per barrier suffices.
        inst = line_instance([[0, 1.5], [2, 3.5]], [0, 1], 1.0)
        assert validate_coverable(inst)

    def test_exact_capacity_accepted(self):
        inst = line_instance([[0, 4]], [0, 1], 1.0)
        assert validate_coverable(inst)

    def test_shared_interval_across_barriers(self):
        # One interval spans both tiny barriers across the gap.
        inst = line_instance([[0, 0.3], [0.8, 1.1]], [0], 1.0)
        assert validate_coverable(inst)


class TestReachInterval:
    def test_on_axis(self):
        assert reach_interval(Sensor(2, 0, 1), 1.0) == (1.0, 3.0)

    def test_exactly_reaching(self):
        assert reach_interval(Sensor(0, 3, 1), 3.0) == (0.0, 0.0)

    def test_three_four_five(self):
        lo, hi = reach_interval(Sensor(0, 3, 1), 5.0)
        assert lo == pytest.approx(-4.0)
        assert hi == pytest.approx(4.0)

    def test_unreachable(self):
        assert reach_interval(Sensor(0, 3, 1), 2.0) is None

    @given(
        st.floats(-100, 100),
        st.floats(-50, 50),
        st.floats(0, 80),
        st.floats(0, 80),
    )
    def test_monotone_in_budget(self, x, y, lam1, lam2):
        lam_lo, lam_hi = sorted((lam1, lam2))
        s = Sensor(x, y, 1)
        small = reach_interval(s, lam_lo)
        big = reach_interval(s, lam_hi)
        if small is not None:
            assert big is not None
            assert big[0] <= small[0] + 1e-12
            assert big[1] >= small[1] - 1e-12


class TestCoverageCheck:
    def test_covered(self):
        inst = line_instance([[0, 2], [4, 6]], [1, 4], 1.0)
        assert coverage_ok(inst, [1.0, 5.0])

    def test_hole_detected(self):
        inst = line_instance([[0, 2], [4, 6]], [1, 4], 1.0)
        assert not coverage_ok(inst, [1.0, 4.0])

    def test_gap_between_barriers_ignored(self):
        inst = line_instance([[0, 1], [9, 10]], [0.5, 9.5], 1.0)
        assert coverage_ok(inst, [0.5, 9.5])


def test_movement_upper_bound_is_feasible():
    from barrier_cover import decide_plane

    inst = Instance.create([[0, 2], [5, 6]], [(9, 3), (-4, 1)], 1.0)
    assert decide_plane(inst, movement_upper_bound(inst)).feasible


def test_tolerance_ordering_enforced():
    with pytest.raises(ValueError):
        ToleranceConfig(eps_cmp=1e-12, eps_root=1e-9)
