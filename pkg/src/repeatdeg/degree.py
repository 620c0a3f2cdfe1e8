"""Repeat degree and the operators built from it (P, Gamma)."""

from __future__ import annotations

from dataclasses import dataclass

from .core import Block, Covering, Universe, aligned, iter_bits
from .errors import IncompleteTable, UniverseMismatch
from .tables import DegreeTable


def repeat_degree(c: Covering, x_set: Block) -> int:
    """Number of blocks of ``c`` that contain ``x_set``."""
    if x_set.width != len(c.universe):
        raise UniverseMismatch(f"subset width {x_set.width} != universe size {len(c.universe)}")
    bits = x_set.bits
    return sum(1 for b in c.blocks if b.bits & bits == bits)


def pair_degrees(c: Covering, x) -> list[int]:
    """``row[y]`` = degree of {x, y} for every position y; ``row[x]`` = degree of {x}."""
    i = c.universe.position(x)
    row = [0] * len(c.universe)
    bit = 1 << i
    for b in c.blocks:
        if b.bits & bit:
            for j in iter_bits(b.bits):
                row[j] += 1
    return row


def p_set(c: Covering, x) -> Block:
    """Elements y whose pair degree with x equals the degree of x."""
    row = pair_degrees(c, x)
    own = row[c.universe.position(x)]
    bits = 0
    for j, d in enumerate(row):
        if d == own:
            bits |= 1 << j
    return Block(bits, len(c.universe))


def p_witness(c1: Covering, c2: Covering):
    """First element of ``c1``'s universe where the P sets differ, or None."""
    c2 = aligned(c1, c2)
    for name in c1.universe.elements:
        if p_set(c1, name) != p_set(c2, name):
            return name
    return None


def same_p(c1: Covering, c2: Covering) -> bool:
    return p_witness(c1, c2) is None


def cov_from_pair_degrees(t: DegreeTable) -> Covering:
    """The covering of neighborhoods, read off a table of singleton and pair degrees.

    Only the table is consulted, never the covering that produced it.
    """
    u = t.universe
    n = len(u)
    missing = {1, 2} - t.window if n > 1 else {1} - t.window
    if missing:
        raise IncompleteTable(f"table window lacks sizes {sorted(missing)}")
    masks = []
    for i in range(n):
        own = t.get(1 << i)
        if own is None:
            raise IncompleteTable(f"no degree for {{{u.elements[i]}}}")
        bits = 1 << i
        for j in range(n):
            if j == i:
                continue
            d = t.get((1 << i) | (1 << j))
            if d is None:
                raise IncompleteTable(f"no degree for {{{u.elements[i]}, {u.elements[j]}}}")
            if d == own:
                bits |= 1 << j
        masks.append(bits)
    return Covering.from_masks(u, masks)


def gamma_family(c: Covering, x) -> tuple[Block, ...]:
    """Every block K containing x on which all y satisfy deg({x,y}) == deg(x).

    Kept literal so the at-most-one property can be checked, not assumed.
    """
    i = c.universe.position(x)
    row = pair_degrees(c, x)
    own = row[i]
    return tuple(
        b for b in c.blocks
        if b.bits >> i & 1 and all(row[j] == own for j in iter_bits(b.bits))
    )


def gamma(c: Covering, x) -> Block | None:
    family = gamma_family(c, x)
    return family[0] if family else None


@dataclass(frozen=True)
class GammaMap:
    universe: Universe
    gamma: tuple[Block | None, ...]

    def __getitem__(self, name) -> Block | None:
        return self.gamma[self.universe.position(name)]

    def items(self):
        return zip(self.universe.elements, self.gamma)


def gamma_map(c: Covering) -> GammaMap:
    return GammaMap(c.universe, tuple(gamma(c, x) for x in c.universe.elements))
