"""Degree tables, indicator tables and real-valued subset functions.

All three are indexed by subset bitmask.  Degree tables keep parallel sorted
arrays of masks and values, so a full table over 20 elements costs two
arrays of a million 64-bit integers instead of a million dict entries.
"""

from __future__ import annotations

import os
from itertools import combinations
from dataclasses import dataclass, field
from math import comb
from typing import Iterable, Iterator, Mapping

import numpy as np

from .core import Block, Universe, canonical_key
from .errors import (
    IncompleteTable,
    InconsistentTable,
    UniverseMismatch,
    UniverseTooLarge,
    WindowMismatch,
)

LATTICE_CAP = 24
LATTICE_CAP_ENV = "REPEATDEG_LATTICE_CAP"
DENSE_CHECK_MAX = 26


def lattice_cap(override: int | None = None) -> int:
    if override is not None:
        return override
    value = os.environ.get(LATTICE_CAP_ENV)
    return int(value) if value else LATTICE_CAP


def check_lattice(n: int, cap: int | None = None) -> None:
    cap = lattice_cap(cap)
    if n > cap:
        raise UniverseTooLarge(f"{n} elements exceed the lattice cap of {cap} (2^{n} subsets)")


def _mask_dtype(n: int):
    return np.uint64 if n <= 64 else object


def masks_of_sizes(n: int, sizes: Iterable[int]) -> np.ndarray:
    """All masks over ``n`` bits whose popcount lies in ``sizes``, ascending."""
    sizes = sorted(k for k in set(sizes) if 0 <= k <= n)
    if n <= 26 and window_size(n, sizes) * 8 > (1 << n):
        all_masks = np.arange(1 << n, dtype=np.uint64)
        return all_masks[np.isin(popcounts(all_masks, n), sizes)]
    out = []
    for k in sizes:
        for combo in combinations(range(n), k):
            bits = 0
            for i in combo:
                bits |= 1 << i
            out.append(bits)
    out.sort()
    return np.array(out, dtype=_mask_dtype(n))


def popcounts(masks: np.ndarray, n: int) -> np.ndarray:
    if masks.dtype == object:
        return np.array([int(m).bit_count() for m in masks], dtype=np.int64)
    return np.bitwise_count(masks.astype(np.uint64)).astype(np.int64)


def window_size(n: int, window: Iterable[int]) -> int:
    return sum(comb(n, k) for k in set(window) if 0 <= k <= n)


@dataclass(frozen=True, eq=False)
class DegreeTable:
    """Repeat degrees of subsets whose cardinality lies in ``window``.

    ``masks`` is sorted ascending; ``values[i]`` is the degree of
    ``masks[i]``.  A table may be partial (e.g. parsed from a truncated
    file); :meth:`is_complete` tells whether every subset admitted by the
    window is present.
    """

    universe: Universe
    window: frozenset
    masks: np.ndarray
    values: np.ndarray
    _lookup: dict | None = field(default=None, init=False, repr=False)

    def __post_init__(self):
        n = len(self.universe)
        window = frozenset(int(k) for k in self.window)
        if any(k < 0 or k > n for k in window):
            raise WindowMismatch(f"window {sorted(window)} not within 0..{n}")
        object.__setattr__(self, "window", window)
        masks = np.asarray(self.masks, dtype=_mask_dtype(n))
        values = np.asarray(self.values, dtype=np.int64)
        if masks.shape != values.shape:
            raise ValueError("masks and values must have equal length")
        if len(masks) > 1 and not np.all(masks[1:] > masks[:-1]):
            order = np.argsort(masks, kind="stable")
            masks, values = masks[order], values[order]
            if np.any(masks[1:] == masks[:-1]):
                raise ValueError("duplicate subsets in degree table")
        if len(masks) and int(masks[-1]) >> n:
            raise UniverseMismatch("table entry outside the universe")
        if np.any(values < 0):
            bad = int(masks[np.argmax(values < 0)])
            raise InconsistentTable("negative repeat degree", subset=bad)
        sizes = popcounts(masks, n)
        if len(masks) and not np.all(np.isin(sizes, sorted(window))):
            raise WindowMismatch("table entry cardinality outside the declared window")
        object.__setattr__(self, "masks", masks)
        object.__setattr__(self, "values", values)
        self._check_monotone()

    @classmethod
    def from_mapping(cls, universe: Universe, window: Iterable[int], entries: Mapping):
        """Build from ``{Block | int mask: degree}``."""
        masks = [b.bits if isinstance(b, Block) else int(b) for b in entries]
        return cls(universe, frozenset(window), np.array(masks, dtype=object), np.array(list(entries.values())))

    @property
    def n(self) -> int:
        return len(self.universe)

    def __len__(self) -> int:
        return len(self.masks)

    def _index(self, bits: int) -> int:
        if self.masks.dtype == object or len(self.masks) < 64:
            if self._lookup is None:
                object.__setattr__(self, "_lookup", {int(m): i for i, m in enumerate(self.masks)})
            return self._lookup.get(bits, -1)
        i = int(np.searchsorted(self.masks, np.uint64(bits)))
        return i if i < len(self.masks) and int(self.masks[i]) == bits else -1

    def __contains__(self, subset) -> bool:
        return self._index(_bits(subset)) >= 0

    def get(self, subset, default=None):
        i = self._index(_bits(subset))
        return default if i < 0 else int(self.values[i])

    def __getitem__(self, subset) -> int:
        i = self._index(_bits(subset))
        if i < 0:
            raise IncompleteTable(f"no entry for subset {self.universe.names(_bits(subset))}")
        return int(self.values[i])

    def is_complete(self) -> bool:
        return len(self.masks) == window_size(self.n, self.window)

    def items(self) -> Iterator[tuple[int, int]]:
        """(mask, degree) pairs in canonical subset order."""
        n = self.n
        pairs = [(int(m), int(v)) for m, v in zip(self.masks, self.values)]
        pairs.sort(key=lambda p: canonical_key(p[0], n))
        return iter(pairs)

    def restrict(self, window: Iterable[int]) -> DegreeTable:
        """Sub-table on ``window``; sizes this table lacks stay missing."""
        window = frozenset(window)
        keep = np.isin(popcounts(self.masks, self.n), sorted(window))
        return DegreeTable(self.universe, window, self.masks[keep], self.values[keep])

    def _check_monotone(self) -> None:
        masks, values, n = self.masks, self.values, self.n
        if len(masks) < 2:
            return
        if n <= DENSE_CHECK_MAX:
            self._check_monotone_dense()
            return
        if masks.dtype == object:
            lookup = {int(m): int(v) for m, v in zip(masks, values)}
            for m, v in lookup.items():
                for i in range(n):
                    sup = m | (1 << i)
                    if sup != m and sup in lookup and lookup[sup] > v:
                        raise InconsistentTable("repeat degree increases on a superset", subset=sup)
            return
        for i in range(n):
            bit = np.uint64(1 << i)
            lacking = (masks & bit) == 0
            sub = masks[lacking]
            sup = sub | bit
            pos = np.searchsorted(masks, sup)
            pos_clipped = np.minimum(pos, len(masks) - 1)
            present = masks[pos_clipped] == sup
            bad = present & (values[pos_clipped] > values[lacking])
            if np.any(bad):
                j = int(np.argmax(bad))
                raise InconsistentTable(
                    "repeat degree increases on a superset", subset=int(sup[j])
                )

    def _check_monotone_dense(self) -> None:
        n = self.n
        dense = np.full(1 << n, -1, dtype=np.int64)
        dense[self.masks.astype(np.int64)] = self.values
        for i in range(n):
            view = dense.reshape(-1, 2, 1 << i)
            low, high = view[:, 0, :], view[:, 1, :]
            bad = (low >= 0) & (high > low)
            if np.any(bad):
                a, b = np.argwhere(bad)[0]
                sup = int(a) * (2 << i) + (1 << i) + int(b)
                raise InconsistentTable("repeat degree increases on a superset", subset=sup)


def _bits(subset) -> int:
    return subset.bits if isinstance(subset, Block) else int(subset)


@dataclass(frozen=True, eq=False)
class IndicatorTable:
    """0/1 membership flag for every nonempty subset; ``flags[0]`` is unused."""

    universe: Universe
    flags: np.ndarray

    def __post_init__(self):
        n = len(self.universe)
        flags = np.asarray(self.flags, dtype=np.uint8)
        if flags.shape != (1 << n,):
            raise ValueError(f"indicator table needs 2^{n} slots")
        if np.any(flags > 1):
            raise ValueError("indicator values must be 0 or 1")
        flags = flags.copy()
        flags[0] = 0
        object.__setattr__(self, "flags", flags)

    def __getitem__(self, subset) -> int:
        bits = _bits(subset)
        if bits == 0:
            raise KeyError("the indicator table excludes the empty set")
        return int(self.flags[bits])

    def __len__(self) -> int:
        return len(self.flags) - 1

    def items(self) -> Iterator[tuple[int, int]]:
        """(mask, flag) for every nonempty subset, canonical order."""
        n = len(self.universe)
        masks = sorted(range(1, 1 << n), key=lambda m: canonical_key(m, n))
        return ((m, int(self.flags[m])) for m in masks)

    def members(self) -> list[int]:
        return [int(m) for m in np.flatnonzero(self.flags)]

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, IndicatorTable)
            and self.universe == other.universe
            and np.array_equal(self.flags, other.flags)
        )


@dataclass(frozen=True, eq=False)
class RealSubsetFunction:
    """A function from every subset (``values[mask]``) to a number."""

    universe: Universe
    values: np.ndarray

    def __post_init__(self):
        n = len(self.universe)
        values = np.asarray(self.values)
        if values.shape != (1 << n,):
            raise ValueError(f"subset function needs 2^{n} values, got shape {values.shape}")
        object.__setattr__(self, "values", values)

    def __getitem__(self, subset):
        return self.values[_bits(subset)]

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, RealSubsetFunction)
            and self.universe == other.universe
            and np.array_equal(self.values, other.values)
        )
