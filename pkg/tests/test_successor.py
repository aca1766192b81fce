import pytest
from hypothesis import given, settings, strategies as st

from barrier_cover.successor import BitsetSuccessor, VebSuccessor


@pytest.mark.parametrize("cls", [BitsetSuccessor, VebSuccessor])
def test_basic_ops(cls):
    s = cls(100)
    assert s.min() is None
    assert len(s) == 0
    s.insert(42)
    s.insert(7)
    s.insert(99)
    assert s.min() == 7
    assert 42 in s
    assert 8 not in s
    s.discard(7)
    assert s.min() == 42
    s.discard(7)  # idempotent
    assert len(s) == 2
    assert s.successor(42) == 99
    assert s.successor(99) is None


@pytest.mark.parametrize("cls", [BitsetSuccessor, VebSuccessor])
def test_single_element_universe(cls):
    s = cls(1)
    s.insert(0)
    assert s.min() == 0
    s.discard(0)
    assert s.min() is None


ops_strategy = st.lists(
    st.tuples(st.sampled_from(["insert", "discard", "successor"]), st.integers(0, 149)),
    max_size=200,
)


@settings(max_examples=200, deadline=None)
@given(ops_strategy)
def test_against_set_model(ops):
    bitset = BitsetSuccessor(150)
    veb = VebSuccessor(150)
    model: set[int] = set()
    for op, key in ops:
        if op == "insert":
            bitset.insert(key)
            veb.insert(key)
            model.add(key)
        elif op == "discard":
            bitset.discard(key)
            veb.discard(key)
            model.discard(key)
        else:
            expected = min((v for v in model if v > key), default=None)
            assert bitset.successor(key) == expected
            assert veb.successor(key) == expected
        expected_min = min(model) if model else None
        assert bitset.min() == expected_min
        assert veb.min() == expected_min
        assert len(bitset) == len(model) == len(veb)
