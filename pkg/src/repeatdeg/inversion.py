"""Subset-lattice transforms and reconstruction of a covering from its degrees.

The repeat degree of ``Y`` is the superset sum of the block indicator, so
the full degree table and the indicator determine each other: the fast
zeta transform goes one way, its signed inverse the other.  Both run in
place over a dense array indexed by bitmask, one pass per element.
"""

from __future__ import annotations

from typing import Iterable, Sequence

import numpy as np

from .core import Covering, SetFamily, Universe, canonical_key
from .errors import (
    IncompleteTable,
    InconsistentTable,
    InvalidSize,
    NotACovering,
    UniverseMismatch,
    UniverseTooLarge,
    WindowMismatch,
)
from .tables import (
    DegreeTable,
    IndicatorTable,
    RealSubsetFunction,
    check_lattice,
    lattice_cap,
    masks_of_sizes,
    popcounts,
    window_size,
)

__all__ = [
    "DegreeTable",
    "IndicatorTable",
    "RealSubsetFunction",
    "degree_table",
    "indicator_table",
    "zeta_transform",
    "mobius_transform",
    "zeta_inplace",
    "mobius_inplace",
    "naive_zeta",
    "naive_mobius",
    "reconstruct_covering",
    "parity_pair",
    "tables_equal",
]


def _log2_len(a: np.ndarray) -> int:
    n = len(a).bit_length() - 1
    if len(a) != 1 << n:
        raise ValueError(f"array length {len(a)} is not a power of two")
    return n


def zeta_inplace(a: np.ndarray) -> np.ndarray:
    """Replace ``a[Y]`` by the sum of ``a[X]`` over all supersets X of Y."""
    n = _log2_len(a)
    for i in range(n):
        view = a.reshape(-1, 2, 1 << i)
        view[:, 0, :] += view[:, 1, :]
    return a


def mobius_inplace(a: np.ndarray) -> np.ndarray:
    """Inverse of :func:`zeta_inplace`: signed sum over supersets."""
    n = _log2_len(a)
    for i in range(n):
        view = a.reshape(-1, 2, 1 << i)
        view[:, 0, :] -= view[:, 1, :]
    return a


def naive_zeta(values: np.ndarray) -> np.ndarray:
    """Superset sums by direct enumeration of all (Y, X) pairs; O(4^n)."""
    n = _log2_len(values)
    masks = np.arange(1 << n)
    out = np.empty_like(values)
    for y in range(1 << n):
        out[y] = values[(masks & y) == y].sum()
    return out


def naive_mobius(values: np.ndarray) -> np.ndarray:
    """Signed superset sums by direct enumeration; O(4^n)."""
    n = _log2_len(values)
    masks = np.arange(1 << n)
    parity = popcounts(masks.astype(np.uint64), n) & 1
    sign = np.where(parity == 1, -1, 1).astype(values.dtype)
    out = np.empty_like(values)
    for v in range(1 << n):
        sup = (masks & v) == v
        s = sign[sup] if parity[v] == 0 else -sign[sup]
        out[v] = (s * values[sup]).sum()
    return out


def zeta_transform(g: RealSubsetFunction, cap: int | None = None) -> RealSubsetFunction:
    check_lattice(len(g.universe), cap)
    return RealSubsetFunction(g.universe, zeta_inplace(np.array(g.values, copy=True)))


def mobius_transform(f: RealSubsetFunction, cap: int | None = None) -> RealSubsetFunction:
    check_lattice(len(f.universe), cap)
    return RealSubsetFunction(f.universe, mobius_inplace(np.array(f.values, copy=True)))


def _indicator_array(c: SetFamily) -> np.ndarray:
    rho = np.zeros(1 << len(c.universe), dtype=np.int64)
    rho[list(c.masks)] = 1
    return rho


def indicator_table(c: Covering, cap: int | None = None) -> IndicatorTable:
    check_lattice(len(c.universe), cap)
    return IndicatorTable(c.universe, _indicator_array(c).astype(np.uint8))


def degree_function(c: Covering, cap: int | None = None) -> RealSubsetFunction:
    """Repeat degree of every subset, the empty set included, as integers."""
    check_lattice(len(c.universe), cap)
    return RealSubsetFunction(c.universe, zeta_inplace(_indicator_array(c)))


def degree_table(c: Covering, window: Iterable[int], cap: int | None = None) -> DegreeTable:
    """Degrees of every subset whose size is in ``window``.

    Large windows go through the dense transform; small ones (such as the
    pair window) count containing blocks directly, which also works for
    universes beyond the lattice cap.
    """
    n = len(c.universe)
    window = frozenset(window)
    if any(k < 0 or k > n for k in window):
        raise WindowMismatch(f"window {sorted(window)} not within 0..{n}")
    cap = lattice_cap(cap)
    size = window_size(n, window)
    if n <= cap and size * max(len(c), 1) >= 1 << n:
        dense = zeta_inplace(_indicator_array(c))
        if window >= set(range(n + 1)):
            masks = np.arange(1 << n, dtype=np.uint64)
            values = dense
        else:
            masks = masks_of_sizes(n, window)
            values = dense[masks.astype(np.int64)]
        return DegreeTable(c.universe, window, masks, values)
    if size > 1 << cap:
        raise UniverseTooLarge(f"window needs {size} entries, more than 2^{cap}")
    masks = masks_of_sizes(n, window)
    values = np.zeros(len(masks), dtype=np.int64)
    for m in c.masks:
        if masks.dtype == object:
            values += np.array([int(x) & m == int(x) for x in masks], dtype=np.int64)
        else:
            values += (masks & np.uint64(m)) == masks
    return DegreeTable(c.universe, window, masks, values)


def reconstruct_covering(t: DegreeTable, cap: int | None = None) -> Covering:
    """Recover the unique covering whose full degree table is ``t``.

    The empty-set entry is not needed: the signed superset sum at a
    nonempty subset only touches nonempty subsets.
    """
    n = t.n
    check_lattice(n, cap)
    needed = set(range(1, n + 1))
    if not needed <= t.window:
        raise IncompleteTable(f"reconstruction needs sizes 1..{n}, window is {sorted(t.window)}")
    dense = np.zeros(1 << n, dtype=np.int64)
    idx = t.masks.astype(np.int64)
    dense[idx] = t.values
    present = np.zeros(1 << n, dtype=bool)
    present[idx] = True
    present[0] = True
    if not present.all():
        first = min(np.flatnonzero(~present).tolist(), key=lambda m: canonical_key(m, n))
        raise IncompleteTable(f"no degree for {list(t.universe.names(first))}")
    rho = mobius_inplace(dense)
    bad = np.flatnonzero((rho < 0) | (rho > 1))
    bad = bad[bad != 0]
    if len(bad):
        first = min(bad.tolist(), key=lambda m: canonical_key(m, n))
        value = int(rho[first])
        raise InconsistentTable(
            f"recovered indicator {value} at {list(t.universe.names(first))} is not 0 or 1",
            subset=first,
            value=value,
        )
    rho[0] = 0
    members = np.flatnonzero(rho).tolist()
    family = SetFamily.from_masks(t.universe, members)
    if family.union_mask != t.universe.full_mask:
        raise NotACovering("recovered family does not cover the universe", family=family)
    return Covering._trusted(t.universe, family.masks)


def parity_pair(n: int, names: Sequence | None = None, cap: int | None = None):
    """The (even, odd) pair of coverings whose degree tables agree below size n.

    ``even`` holds every nonempty subset of even size, ``odd`` every subset
    of odd size.
    """
    if n <= 1:
        raise InvalidSize(f"parity pair needs more than one element, got {n}")
    check_lattice(n, cap)
    if names is None:
        names = [f"x{i}" for i in range(1, n + 1)]
    names = tuple(names)
    if len(names) != n:
        raise InvalidSize(f"expected {n} names, got {len(names)}")
    u = Universe(names)
    masks = np.arange(1, 1 << n, dtype=np.uint64)
    odd = (popcounts(masks, n) & 1).astype(bool)
    even_c = Covering.from_masks(u, masks[~odd].tolist())
    odd_c = Covering.from_masks(u, masks[odd].tolist())
    return even_c, odd_c


def tables_equal(t1: DegreeTable, t2: DegreeTable) -> bool:
    if not t1.universe.same_names(t2.universe):
        raise UniverseMismatch("tables are over different element sets")
    if t1.window != t2.window:
        raise WindowMismatch(f"windows differ: {sorted(t1.window)} vs {sorted(t2.window)}")
    if t1.universe != t2.universe:
        t2 = _realign_table(t2, t1.universe)
    return np.array_equal(t1.masks, t2.masks) and np.array_equal(t1.values, t2.values)


def _realign_table(t: DegreeTable, universe: Universe) -> DegreeTable:
    mapping = [universe.index[name] for name in t.universe.elements]
    masks = []
    for m in t.masks:
        m = int(m)
        bits = 0
        for i, j in enumerate(mapping):
            if m >> i & 1:
                bits |= 1 << j
        masks.append(bits)
    return DegreeTable(universe, t.window, np.array(masks, dtype=object), t.values)
