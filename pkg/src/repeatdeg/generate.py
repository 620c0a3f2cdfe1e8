"""Seeded random coverings and neighborhood-preserving mutations."""

from __future__ import annotations

import random

from .core import Covering, Universe


def default_universe(n: int) -> Universe:
    return Universe(tuple(f"e{i}" for i in range(1, n + 1)))


def random_covering(
    universe: Universe | int,
    rng: random.Random,
    max_blocks: int | None = None,
) -> Covering:
    """Random covering: 1..3n Bernoulli(1/2) blocks, then singletons for gaps.

    With ``max_blocks`` the draw is repeated until the deduplicated result
    has at most that many blocks.
    """
    if isinstance(universe, int):
        universe = default_universe(universe)
    n = len(universe)
    upper = 3 * n if max_blocks is None else max(1, min(3 * n, max_blocks))
    while True:
        masks = set()
        for _ in range(rng.randint(1, upper)):
            m = 0
            while not m:
                m = rng.getrandbits(n)
            masks.add(m)
        covered = 0
        for m in masks:
            covered |= m
        for i in range(n):
            if not covered >> i & 1:
                masks.add(1 << i)
        if max_blocks is None or len(masks) <= max_blocks:
            return Covering.from_masks(universe, masks)


def augment_with_unions(c: Covering, rng: random.Random, count: int | None = None) -> Covering:
    """Add unions of existing blocks; every neighborhood stays the same."""
    masks = list(c.masks)
    count = rng.randint(1, 3) if count is None else count
    extra = []
    for _ in range(count):
        k = rng.randint(2, max(2, len(masks))) if len(masks) > 1 else 1
        union = 0
        for m in rng.sample(masks, min(k, len(masks))):
            union |= m
        extra.append(union)
    return Covering.from_masks(c.universe, masks + extra)
