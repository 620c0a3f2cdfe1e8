import pytest

from helpers import covering
from repeatdeg import (
    Block,
    Covering,
    SetFamily,
    Universe,
    build_covering,
    canonical_equal,
    infer_universe,
)
from repeatdeg.core import canonical_key, canonical_masks
from repeatdeg.errors import (
    EmptyBlock,
    EmptyFamily,
    NotACovering,
    UniverseMismatch,
    UniverseTooLarge,
    UnknownElement,
)


def test_overlap_covering_is_valid(overlap):
    assert len(overlap) == 3
    assert overlap.universe.elements == ("1", "2", "3", "4")


def test_canonical_order_is_size_then_lexicographic():
    c = covering("234 34 12 1 4", universe="1234")
    assert c.block_names() == [("1",), ("4",), ("1", "2"), ("3", "4"), ("2", "3", "4")]


def test_input_order_does_not_matter():
    a = covering("12 234 34", universe="1234")
    b = covering("34 234 12 12", universe="1234")
    assert a == b
    assert a.masks == b.masks


def test_canonical_numpy_path_agrees_with_python_sort():
    import random

    rng = random.Random(1)
    masks = {rng.getrandbits(14) for _ in range(5000)}
    fast = canonical_masks(masks, 14)
    slow = sorted(masks, key=lambda m: canonical_key(m, 14))
    assert fast == slow


def test_infer_universe_first_appearance():
    assert infer_universe([["a", "b"], ["b", "c"], ["a", "c"]]).elements == ("a", "b", "c")


def test_infer_universe_rejects_empty_family():
    with pytest.raises(EmptyFamily):
        infer_universe([])


def test_empty_block_rejected():
    with pytest.raises(EmptyBlock):
        build_covering(Universe(("1", "2")), [["1", "2"], []])


def test_uncovered_element_reports_family():
    with pytest.raises(NotACovering) as info:
        build_covering(Universe(("1", "2", "3")), [["1", "2"]])
    assert info.value.family is not None
    assert info.value.family.block_names() == [("1", "2")]


def test_unknown_element():
    with pytest.raises(UnknownElement):
        build_covering(Universe(("1", "2")), [["1", "3"]])


def test_universe_cap():
    names = [str(i) for i in range(70)]
    with pytest.raises(UniverseTooLarge):
        build_covering(Universe(tuple(names)), [names])
    c = build_covering(Universe(tuple(names)), [names], cap=80)
    assert len(c.universe) == 70


def test_wide_universe_uses_big_ints():
    names = [f"v{i}" for i in range(100)]
    c = build_covering(Universe(tuple(names)), [names[:70], names[50:]], cap=128)
    assert c.union_mask == (1 << 100) - 1


def test_duplicate_universe_names_rejected():
    with pytest.raises(ValueError):
        Universe(("a", "a"))


def test_block_operations():
    a, b = Block(0b0011, 4), Block(0b0110, 4)
    assert (a | b).bits == 0b0111
    assert (a & b).bits == 0b0010
    assert Block(0b0010, 4).issubset(a)
    assert not a.issubset(b)
    assert a.indices() == (0, 1)
    assert len(a) == 2
    with pytest.raises(UniverseMismatch):
        a | Block(1, 5)
    with pytest.raises(ValueError):
        Block(0b10000, 4)


def test_set_family_allows_empty_and_partial():
    u = Universe(("a", "b", "c"))
    f = SetFamily(u, (0, 0b001))
    assert len(f) == 2
    with pytest.raises(EmptyBlock):
        Covering(u, (0, 0b111))


def test_family_mask_out_of_range():
    with pytest.raises(UniverseMismatch):
        SetFamily(Universe(("a",)), (0b10,))


def test_canonical_equal_ignores_universe_order():
    c1 = build_covering(Universe(("a", "b", "c")), [["a", "b"], ["c"]])
    c2 = build_covering(Universe(("c", "b", "a")), [["c"], ["b", "a"]])
    assert canonical_equal(c1, c2)
    c3 = build_covering(Universe(("a", "b", "c")), [["a"], ["b", "c"]])
    assert not canonical_equal(c1, c3)


def test_canonical_equal_different_names():
    c1 = covering("ab")
    c2 = covering("xy")
    with pytest.raises(UniverseMismatch):
        canonical_equal(c1, c2)


def test_minus_and_membership(overlap):
    u = overlap.universe
    rest = overlap.minus([u.block("34")])
    assert rest.block_names() == [("1", "2"), ("2", "3", "4")]
    assert u.block("12") in overlap
    assert u.block("13") not in overlap
