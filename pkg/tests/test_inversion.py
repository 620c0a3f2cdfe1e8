from itertools import product

import numpy as np
import pytest

import oracles
from helpers import block_sets, corpus, covering, names_of
from repeatdeg import (
    Covering,
    DegreeTable,
    RealSubsetFunction,
    Universe,
    degree_table,
    indicator_table,
    mobius_transform,
    parity_pair,
    reconstruct_covering,
    tables_equal,
    zeta_transform,
)
from repeatdeg.errors import (
    IncompleteTable,
    InconsistentTable,
    InvalidSize,
    NotACovering,
    UniverseMismatch,
    UniverseTooLarge,
    WindowMismatch,
)
from repeatdeg.inversion import degree_function, naive_mobius, naive_zeta


def table_dict(t):
    u = t.universe
    return {frozenset(u.names(m)): v for m, v in t.items()}


def test_parity_pair_window():
    c1 = covering("ab bc ac")
    assert table_dict(degree_table(c1, {1, 2})) == {
        frozenset("a"): 2, frozenset("b"): 2, frozenset("c"): 2,
        frozenset("ab"): 1, frozenset("bc"): 1, frozenset("ac"): 1,
    }


def test_empty_window_entry(overlap):
    t = degree_table(overlap, {0})
    assert list(t.items()) == [(0, 3)]


def test_overlap_full_table(overlap):
    t = degree_table(overlap, range(1, 5))
    got = table_dict(t)
    blocks = block_sets(overlap)
    assert len(got) == 15
    for subset, value in got.items():
        assert value == oracles.degree(blocks, subset)
    assert got[frozenset("34")] == 2
    assert got[frozenset("234")] == 1


def test_degree_tables_match_oracle():
    # Small windows take the direct counting route, full ones the dense route.
    for c in corpus(40, 9, seed=31, min_n=2):
        n = len(c.universe)
        blocks = block_sets(c)
        for window in ({1}, {1, 2}, {n}, set(range(n + 1))):
            t = degree_table(c, window)
            assert t.is_complete()
            for m, v in t.items():
                assert m.bit_count() in window
                assert v == oracles.degree(blocks, c.universe.names(m))


def test_degree_table_past_lattice_cap_with_small_window():
    import random

    from repeatdeg.generate import random_covering

    c = random_covering(30, random.Random(2))
    t = degree_table(c, {1})
    assert len(t) == 30
    with pytest.raises(UniverseTooLarge):
        degree_table(c, range(31))


def test_window_out_of_range(overlap):
    with pytest.raises(WindowMismatch):
        degree_table(overlap, {5})


def test_indicator_path():
    c = covering("12 23")
    ind = indicator_table(c)
    u = c.universe
    flags = {frozenset(u.names(m)): v for m, v in ind.items()}
    assert flags == {
        frozenset("1"): 0, frozenset("2"): 0, frozenset("3"): 0,
        frozenset("12"): 1, frozenset("23"): 1, frozenset("13"): 0,
        frozenset("123"): 0,
    }
    assert len(ind) == 7


def test_indicator_examples(overlap):
    whole = covering("abc")
    assert indicator_table(whole).members() == [0b111]
    assert {frozenset(overlap.universe.names(m)) for m in indicator_table(overlap).members()} == set(block_sets(overlap))


def test_zeta_of_indicator_is_degree(overlap):
    ind = indicator_table(overlap)
    g = RealSubsetFunction(overlap.universe, ind.flags.astype(float))
    f = zeta_transform(g)
    blocks = block_sets(overlap)
    for bits in range(16):
        assert f[bits] == oracles.degree(blocks, overlap.universe.names(bits))
    assert f[0] == 3


def test_zero_function():
    u = Universe(tuple("abcd"))
    z = RealSubsetFunction(u, np.zeros(16))
    assert zeta_transform(z) == z
    assert mobius_transform(z) == z


def test_mobius_of_overlap_degrees(overlap):
    f = degree_function(overlap)
    g = mobius_transform(f)
    assert sorted(np.flatnonzero(g.values).tolist()) == sorted(overlap.masks)
    assert set(g.values.tolist()) == {0, 1}


def test_mobius_of_single_full_block():
    u = Universe(tuple("abc"))
    f = RealSubsetFunction(u, np.ones(8, dtype=np.int64))
    g = mobius_transform(f)
    assert g.values.tolist() == [0] * 7 + [1]


def test_transforms_match_oracle_small():
    rng = np.random.default_rng(4)
    u = Universe(tuple("abcde"))
    subs = oracles.subsets(u.elements)
    values = rng.integers(-9, 10, size=32)
    g = RealSubsetFunction(u, values)
    as_dict = {frozenset(u.names(m)): int(values[m]) for m in range(32)}
    z = oracles.zeta(as_dict, u.elements)
    mb = oracles.mobius(as_dict, u.elements)
    fz = zeta_transform(g)
    fm = mobius_transform(g)
    for s in subs:
        m = u.mask(s)
        assert fz[m] == z[s]
        assert fm[m] == mb[s]


def test_naive_transforms_match_oracle():
    rng = np.random.default_rng(5)
    values = rng.integers(-9, 10, size=16)
    elems = tuple(range(4))
    as_dict = {frozenset(i for i in elems if m >> i & 1): int(values[m]) for m in range(16)}
    z = oracles.zeta(as_dict, elems)
    mb = oracles.mobius(as_dict, elems)
    nz, nm = naive_zeta(values), naive_mobius(values)
    for m in range(16):
        key = frozenset(i for i in elems if m >> i & 1)
        assert nz[m] == z[key]
        assert nm[m] == mb[key]


def test_transform_cap():
    u = Universe(tuple("abcd"))
    with pytest.raises(UniverseTooLarge):
        zeta_transform(RealSubsetFunction(u, np.zeros(16)), cap=3)


def test_reconstruct_overlap(overlap):
    assert reconstruct_covering(degree_table(overlap, range(1, 5))) == overlap
    assert reconstruct_covering(degree_table(overlap, range(0, 5))) == overlap


def test_reconstruct_single_block():
    u = Universe(tuple("abc"))
    t = DegreeTable(u, range(1, 4), np.arange(1, 8, dtype=np.uint64), np.ones(7, dtype=np.int64))
    assert reconstruct_covering(t).block_names() == [("a", "b", "c")]


def _altered(overlap, names, value):
    t = degree_table(overlap, range(1, 5))
    mask = overlap.universe.mask(names)
    values = t.values.copy()
    values[np.flatnonzero(t.masks == mask)[0]] = value
    return DegreeTable(t.universe, t.window, t.masks, values)


def test_overlap_with_degree_of_2_raised_to_3(overlap):
    # The altered table is exactly the table of C plus the block {2}: the
    # inversion stays binary, so the result is a valid but different covering.
    got = reconstruct_covering(_altered(overlap, "2", 3))
    assert names_of(got) == set(block_sets(overlap)) | {frozenset("2")}


def test_inconsistent_table_reports_first_subset(overlap):
    # Raising a pair degree above both singleton degrees breaks monotonicity.
    with pytest.raises(InconsistentTable):
        _altered(overlap, "12", 3)
    # A singleton bump of two makes the recovered indicator 2 at {2}.
    with pytest.raises(InconsistentTable) as info:
        reconstruct_covering(_altered(overlap, "2", 4))
    assert info.value.subset == overlap.universe.mask("2")
    assert info.value.value == 2
    # Raising deg({2,3}) to 2 keeps the table monotone but makes the
    # recovered indicator -1 at {2} and {3}; {2} comes first.
    with pytest.raises(InconsistentTable) as info:
        reconstruct_covering(_altered(overlap, "23", 2))
    assert info.value.subset == overlap.universe.mask("2")
    assert info.value.value == -1


def test_lowering_a_pair_degree_can_stay_consistent(overlap):
    got = reconstruct_covering(_altered(overlap, "12", 0))
    assert names_of(got) == {frozenset("1"), frozenset("2"), frozenset("34"), frozenset("234")}


def test_reconstruct_not_a_covering():
    u = Universe(tuple("abc"))
    c = Covering.from_masks(Universe(tuple("ab")), [0b11])
    t = degree_table(c, range(1, 3))
    padded = {}
    for m, v in t.items():
        padded[m] = v
    for m in range(1, 8):
        padded.setdefault(m, 0)
    with pytest.raises(NotACovering) as info:
        reconstruct_covering(DegreeTable.from_mapping(u, range(1, 4), padded))
    assert info.value.family.block_names() == [("a", "b")]


def test_reconstruct_needs_full_window(overlap):
    with pytest.raises(IncompleteTable):
        reconstruct_covering(degree_table(overlap, range(1, 4)))
    t = degree_table(overlap, range(1, 5))
    keep = t.masks != overlap.universe.mask("13")
    with pytest.raises(IncompleteTable):
        reconstruct_covering(DegreeTable(t.universe, t.window, t.masks[keep], t.values[keep]))


def test_negative_degree_rejected(overlap):
    with pytest.raises(InconsistentTable):
        _altered(overlap, "1", -1)


def test_parity_pair_n3_names():
    even, odd = parity_pair(3, "abc")
    assert names_of(even) == {frozenset("ab"), frozenset("bc"), frozenset("ac")}
    assert names_of(odd) == {frozenset("abc"), frozenset("a"), frozenset("b"), frozenset("c")}


def test_parity_pair_n2_default_names():
    even, odd = parity_pair(2)
    assert even.block_names() == [("x1", "x2")]
    assert odd.block_names() == [("x1",), ("x2",)]


def test_parity_pair_invalid():
    with pytest.raises(InvalidSize):
        parity_pair(1)
    with pytest.raises(InvalidSize):
        parity_pair(3, "ab")


@pytest.mark.parametrize("n", range(2, 9))
def test_parity_closed_forms(n):
    even, odd = parity_pair(n)
    te = degree_table(even, range(0, n + 1))
    to = degree_table(odd, range(0, n + 1))
    for (m, de), (m2, do) in zip(te.items(), to.items()):
        t = m.bit_count()
        if t < n:
            assert de == oracles.parity_degree(n, t, odd_family=False)
            assert do == oracles.parity_degree(n, t, odd_family=True)
        if 1 <= t < n:
            assert de == do == 2 ** (n - t - 1)
    assert te[(1 << n) - 1] == (1 - n % 2)
    assert to[(1 << n) - 1] == n % 2


def test_tables_equal_examples():
    even, odd = parity_pair(3)
    assert tables_equal(degree_table(even, {1, 2}), degree_table(odd, {1, 2}))
    assert not tables_equal(degree_table(even, {1, 2, 3}), degree_table(odd, {1, 2, 3}))
    t = degree_table(even, {1, 2})
    assert tables_equal(t, t)


def test_tables_equal_errors():
    even, odd = parity_pair(3)
    with pytest.raises(WindowMismatch):
        tables_equal(degree_table(even, {1}), degree_table(odd, {1, 2}))
    with pytest.raises(UniverseMismatch):
        tables_equal(degree_table(even, {1}), degree_table(covering("pqr"), {1}))


def test_tables_equal_realigns():
    c1 = covering("ab c", universe="abc")
    c2 = covering("c ab", universe="cba")
    assert tables_equal(degree_table(c1, {1, 2, 3}), degree_table(c2, {1, 2, 3}))


def test_roundtrip_corpus():
    for c in corpus(200, 8, seed=33):
        n = len(c.universe)
        assert reconstruct_covering(degree_table(c, range(1, n + 1))) == c


def _all_coverings(n):
    u = Universe(tuple(range(n)))
    nonempty = list(range(1, 1 << n))
    for flags in product((0, 1), repeat=len(nonempty)):
        masks = [m for m, f in zip(nonempty, flags) if f]
        union = 0
        for m in masks:
            union |= m
        if union == (1 << n) - 1:
            yield Covering.from_masks(u, masks)


@pytest.mark.parametrize("n", [2, 3, 4])
def test_only_parity_pairs_share_proper_tables(n):
    seen = {}
    collisions = []
    for c in _all_coverings(n):
        key = tuple(degree_table(c, range(1, n)).values.tolist())
        if key in seen:
            collisions.append((seen[key], c))
        else:
            seen[key] = c
    even, odd = parity_pair(n, tuple(range(n)))
    assert len(collisions) == 1
    a, b = collisions[0]
    assert {a.masks, b.masks} == {even.masks, odd.masks}


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_proper_table_kernel_is_parity_direction(n):
    # The map from indicators (over nonempty subsets) to degrees on sizes
    # 1..n-1 has a one-dimensional kernel spanned by the signed parity vector;
    # since indicators are 0/1, only the parity pair can collide.
    nonempty = list(range(1, 1 << n))
    rows = [m for m in nonempty if m != (1 << n) - 1]
    a = np.array([[1 if y & x == y else 0 for x in nonempty] for y in rows], dtype=float)
    assert np.linalg.matrix_rank(a) == len(nonempty) - 1
    sign = np.array([1 if m.bit_count() % 2 else -1 for m in nonempty], dtype=float)
    assert np.allclose(a @ sign, 0)
