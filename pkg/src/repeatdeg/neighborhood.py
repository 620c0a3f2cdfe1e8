"""Neighborhoods, the covering of neighborhoods and the induced relation."""

from __future__ import annotations

from dataclasses import dataclass

from .core import Block, Covering, Universe, aligned, iter_bits


@dataclass(frozen=True)
class NeighborhoodMap:
    universe: Universe
    neighborhoods: tuple[Block, ...]

    def __getitem__(self, name) -> Block:
        return self.neighborhoods[self.universe.position(name)]

    def items(self):
        return zip(self.universe.elements, self.neighborhoods)


@dataclass(frozen=True)
class RelationEdges:
    """Binary relation on a universe stored as one adjacency bitset per source."""

    universe: Universe
    rows: tuple[int, ...]

    @property
    def pairs(self) -> list[tuple]:
        names = self.universe.elements
        return [(names[i], names[j]) for i, row in enumerate(self.rows) for j in iter_bits(row)]

    def __contains__(self, pair) -> bool:
        x, y = pair
        return bool(self.rows[self.universe.position(x)] >> self.universe.position(y) & 1)

    def __len__(self) -> int:
        return sum(row.bit_count() for row in self.rows)


def neighborhood_masks(c: Covering) -> list[int]:
    """N(x) for every element position, in one pass over the blocks."""
    n = len(c.universe)
    acc = [c.universe.full_mask] * n
    for block in c.blocks:
        bits = block.bits
        for i in iter_bits(bits):
            acc[i] &= bits
    return acc


def neighborhoods(c: Covering) -> NeighborhoodMap:
    n = len(c.universe)
    return NeighborhoodMap(c.universe, tuple(Block(m, n) for m in neighborhood_masks(c)))


def neighborhood(c: Covering, x) -> Block:
    """Intersection of all blocks of ``c`` containing ``x``."""
    bit = 1 << c.universe.position(x)
    acc = c.universe.full_mask
    for block in c.blocks:
        if block.bits & bit:
            acc &= block.bits
    return Block(acc, len(c.universe))


def cov(c: Covering) -> Covering:
    """The covering of neighborhoods of ``c``."""
    return Covering.from_masks(c.universe, neighborhood_masks(c))


def relation(c: Covering) -> RelationEdges:
    return RelationEdges(c.universe, tuple(neighborhood_masks(c)))


def successor_neighborhood(r: RelationEdges, x) -> Block:
    return Block(r.rows[r.universe.position(x)], len(r.universe))


def neighborhood_witness(c1: Covering, c2: Covering):
    """First element (in ``c1``'s order) whose neighborhoods differ, or None."""
    c2 = aligned(c1, c2)
    for name, m1, m2 in zip(c1.universe.elements, neighborhood_masks(c1), neighborhood_masks(c2)):
        if m1 != m2:
            return name
    return None


def same_relation(c1: Covering, c2: Covering) -> bool:
    """Whether two coverings of one universe induce the same relation.

    Decided elementwise on neighborhoods rather than by building pair sets.
    """
    return neighborhood_witness(c1, c2) is None
