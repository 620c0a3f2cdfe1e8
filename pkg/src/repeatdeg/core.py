"""Universes, bitset blocks, set families and coverings.

Every subset of a universe is stored as a Python ``int`` whose bit ``i`` is
set when the element at position ``i`` belongs to the subset.  Python ints
have arbitrary width, so nothing here is tied to a single machine word; the
width cap is a guard against accidental blow-ups, not a representation limit.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from types import MappingProxyType
from typing import Hashable, Iterable, Iterator, Mapping, Sequence

import numpy as np

from .errors import (
    EmptyBlock,
    EmptyFamily,
    NotACovering,
    UniverseMismatch,
    UniverseTooLarge,
    UnknownElement,
)

UNIVERSE_CAP = 64


@dataclass(frozen=True)
class Universe:
    """Ordered, duplicate-free sequence of element names."""

    elements: tuple
    index: Mapping[Hashable, int] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        elements = tuple(self.elements)
        if not elements:
            raise EmptyFamily("universe must be nonempty")
        index = {}
        for i, name in enumerate(elements):
            if name in index:
                raise ValueError(f"duplicate element name {name!r}")
            index[name] = i
        object.__setattr__(self, "elements", elements)
        object.__setattr__(self, "index", MappingProxyType(index))

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self) -> Iterator:
        return iter(self.elements)

    def __contains__(self, name) -> bool:
        return name in self.index

    @property
    def full_mask(self) -> int:
        return (1 << len(self.elements)) - 1

    def position(self, name) -> int:
        try:
            return self.index[name]
        except KeyError:
            raise UnknownElement(f"element {name!r} is not in the universe") from None

    def mask(self, names: Iterable) -> int:
        bits = 0
        for name in names:
            bits |= 1 << self.position(name)
        return bits

    def block(self, names: Iterable) -> Block:
        return Block(self.mask(names), len(self.elements))

    def singleton(self, name) -> Block:
        return Block(1 << self.position(name), len(self.elements))

    def names(self, bits: int | Block) -> tuple:
        """Element names of a subset, in universe order."""
        if isinstance(bits, Block):
            bits = bits.bits
        return tuple(self.elements[i] for i in iter_bits(bits))

    def same_names(self, other: Universe) -> bool:
        return set(self.elements) == set(other.elements)


@dataclass(frozen=True, slots=True)
class Block:
    """A subset of a universe of ``width`` elements."""

    bits: int
    width: int
    cardinality: int = field(init=False, compare=False, repr=False)

    def __post_init__(self):
        if self.bits < 0 or self.bits >> self.width:
            raise ValueError(f"bits {self.bits:#x} do not fit in width {self.width}")
        object.__setattr__(self, "cardinality", self.bits.bit_count())

    def __len__(self) -> int:
        return self.cardinality

    def __iter__(self) -> Iterator[int]:
        return iter_bits(self.bits)

    def __contains__(self, i: int) -> bool:
        return bool(self.bits >> i & 1)

    def __bool__(self) -> bool:
        return self.bits != 0

    def _check(self, other: Block) -> None:
        if other.width != self.width:
            raise UniverseMismatch(f"block widths differ: {self.width} vs {other.width}")

    def __or__(self, other: Block) -> Block:
        self._check(other)
        return Block(self.bits | other.bits, self.width)

    def __and__(self, other: Block) -> Block:
        self._check(other)
        return Block(self.bits & other.bits, self.width)

    def issubset(self, other: Block) -> bool:
        self._check(other)
        return self.bits & other.bits == self.bits

    def indices(self) -> tuple[int, ...]:
        return tuple(iter_bits(self.bits))


def iter_bits(bits: int) -> Iterator[int]:
    while bits:
        low = bits & -bits
        yield low.bit_length() - 1
        bits ^= low


def _reverse_bits(bits: int, width: int) -> int:
    return int(format(bits, f"0{width}b")[::-1], 2) if width else 0


def canonical_key(bits: int, width: int) -> tuple[int, int]:
    # For equal cardinality, lexicographic order on ascending index lists is
    # decided by the lowest differing bit, i.e. the highest bit after reversal.
    return bits.bit_count(), -_reverse_bits(bits, width)


_NUMPY_SORT_MIN = 2048


def canonical_masks(masks: Iterable[int], width: int) -> list[int]:
    """Deduplicate and sort masks by (cardinality, lexicographic indices)."""
    unique = set(masks)
    if len(unique) < _NUMPY_SORT_MIN or width > 62:
        return sorted(unique, key=lambda m: canonical_key(m, width))
    arr = np.fromiter(unique, dtype=np.int64, count=len(unique))
    rev = np.zeros_like(arr)
    for i in range(width):
        rev |= ((arr >> i) & 1) << (width - 1 - i)
    order = np.lexsort((-rev, np.bitwise_count(arr)))
    return arr[order].tolist()


def _as_mask(m) -> int:
    return m.bits if isinstance(m, Block) else int(m)


@dataclass(frozen=True)
class SetFamily:
    """Deduplicated, canonically ordered family of subsets of a universe.

    Unlike :class:`Covering`, the empty block is allowed and the blocks need
    not cover the universe.  Members are stored as bitmasks in ``masks``;
    ``blocks`` exposes them as :class:`Block` objects.
    """

    universe: Universe
    masks: tuple[int, ...]

    def __post_init__(self):
        width = len(self.universe)
        masks = [_as_mask(m) for m in self.masks]
        for m in masks:
            if m < 0 or m >> width:
                raise UniverseMismatch(f"subset {m:#x} does not fit a universe of {width}")
        object.__setattr__(self, "masks", tuple(canonical_masks(masks, width)))
        self._validate()

    def _validate(self) -> None:
        pass

    @classmethod
    def from_masks(cls, universe: Universe, masks: Iterable):
        return cls(universe, tuple(masks))

    @classmethod
    def _trusted(cls, universe: Universe, canonical: Sequence[int]):
        """Wrap masks that are already deduplicated and canonically sorted."""
        fam = object.__new__(cls)
        object.__setattr__(fam, "universe", universe)
        object.__setattr__(fam, "masks", tuple(canonical))
        fam._validate()
        return fam

    @cached_property
    def blocks(self) -> tuple[Block, ...]:
        width = len(self.universe)
        return tuple(Block(m, width) for m in self.masks)

    def __len__(self) -> int:
        return len(self.masks)

    def __iter__(self) -> Iterator[Block]:
        return iter(self.blocks)

    def __contains__(self, block) -> bool:
        return _as_mask(block) in self.mask_set

    @cached_property
    def mask_set(self) -> frozenset:
        return frozenset(self.masks)

    @cached_property
    def union_mask(self) -> int:
        bits = 0
        for m in self.masks:
            bits |= m
        return bits

    def block_names(self) -> list[tuple]:
        return [self.universe.names(m) for m in self.masks]

    def issubfamily(self, other: SetFamily) -> bool:
        return self.universe == other.universe and self.mask_set <= other.mask_set

    def as_family(self) -> SetFamily:
        return SetFamily._trusted(self.universe, self.masks)

    def minus(self, blocks: Iterable) -> SetFamily:
        drop = {_as_mask(b) for b in blocks}
        return SetFamily._trusted(self.universe, [m for m in self.masks if m not in drop])

    def realign(self, universe: Universe):
        """Re-express this family over ``universe`` (same names, any order)."""
        if universe == self.universe:
            return self
        if not self.universe.same_names(universe):
            raise UniverseMismatch("families are over different element sets")
        mapping = [universe.index[name] for name in self.universe.elements]
        masks = []
        for m in self.masks:
            bits = 0
            for i in iter_bits(m):
                bits |= 1 << mapping[i]
            masks.append(bits)
        return type(self).from_masks(universe, masks)


@dataclass(frozen=True)
class Covering(SetFamily):
    """A set family with no empty block whose union is the universe."""

    def _validate(self) -> None:
        if self.masks and self.masks[0] == 0:
            raise EmptyBlock("a covering cannot contain the empty set")
        if self.union_mask != self.universe.full_mask:
            missing = self.universe.names(self.universe.full_mask & ~self.union_mask)
            raise NotACovering(
                f"blocks do not cover elements {list(missing)}",
                family=SetFamily._trusted(self.universe, self.masks),
            )


def infer_universe(raw_blocks: Sequence[Iterable]) -> Universe:
    """Universe made of every name in ``raw_blocks``, in first-appearance order."""
    seen = {}
    for raw in raw_blocks:
        for name in raw:
            seen.setdefault(name, None)
    if not seen:
        raise EmptyFamily("cannot infer a universe from an empty family")
    return Universe(tuple(seen))


def build_covering(
    universe: Universe | None,
    raw_blocks: Sequence[Iterable],
    *,
    cap: int = UNIVERSE_CAP,
) -> Covering:
    """Validate ``raw_blocks`` as a covering of ``universe``.

    When ``universe`` is None it is taken to be the union of the blocks.
    Duplicate blocks merge silently.
    """
    raw_blocks = [list(raw) for raw in raw_blocks]
    if universe is None:
        universe = infer_universe(raw_blocks)
    if len(universe) > cap:
        raise UniverseTooLarge(f"universe has {len(universe)} elements, cap is {cap}")
    masks = []
    for raw in raw_blocks:
        if not raw:
            raise EmptyBlock("a covering block cannot be empty")
        masks.append(universe.mask(raw))
    return Covering.from_masks(universe, masks)


def canonical_equal(f1: SetFamily, f2: SetFamily) -> bool:
    """True iff the two families hold the same blocks, ignoring order."""
    if not f1.universe.same_names(f2.universe):
        raise UniverseMismatch("families are over different element sets")
    return f1.masks == f2.realign(f1.universe).masks


def aligned(c1: SetFamily, c2: SetFamily):
    """Return ``c2`` re-expressed over ``c1``'s universe."""
    if not c1.universe.same_names(c2.universe):
        raise UniverseMismatch("families are over different element sets")
    return c2.realign(c1.universe)
