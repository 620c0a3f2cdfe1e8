"""Small constructors shared by the test modules."""

import random

from repeatdeg import Universe, build_covering
from repeatdeg.generate import random_covering


def covering(spec: str, universe: str | None = None):
    """``covering("12 234 34")``: one block per word, one element per character."""
    u = Universe(tuple(universe)) if universe is not None else None
    return build_covering(u, [list(word) for word in spec.split()])


def names_of(family) -> set[frozenset]:
    return {frozenset(names) for names in family.block_names()}


def block_sets(c) -> list[frozenset]:
    return [frozenset(names) for names in c.block_names()]


def corpus(count: int, max_n: int, seed: int, max_blocks: int | None = None, min_n: int = 1):
    rng = random.Random(seed)
    for _ in range(count):
        yield random_covering(rng.randint(min_n, max_n), rng, max_blocks=max_blocks)
