"""Union closure membership, reducible elements and reducts.

Membership in the union closure of a family avoids subfamily enumeration:
any subfamily whose union is ``k`` consists of subsets of ``k``, and adding
further subsets of ``k`` never overshoots it, so ``k`` is a union of
members iff it equals the union of all members contained in it.
"""

from __future__ import annotations

from dataclasses import dataclass

from .core import Block, Covering, SetFamily
from .degree import gamma
from .errors import UniverseMismatch


def _union_of_subsets(masks, k: int) -> int:
    acc = 0
    for m in masks:
        if m & k == m:
            acc |= m
    return acc


def in_union_closure(family: SetFamily, k: Block) -> bool:
    """Whether ``k`` is the union of some subfamily (the empty union is the empty set)."""
    if k.width != len(family.universe):
        raise UniverseMismatch(f"block width {k.width} != universe size {len(family.universe)}")
    return _union_of_subsets(family.masks, k.bits) == k.bits


def _reducible_masks(masks) -> list[int]:
    # Families are duplicate-free, so "other members contained in K" are the
    # proper subsets of K.
    return [k for k in masks if _union_of_subsets((m for m in masks if m != k), k) == k]


def reducible_elements(c: SetFamily) -> SetFamily:
    """Blocks of ``c`` that are unions of other blocks of ``c``."""
    return SetFamily.from_masks(c.universe, _reducible_masks(c.masks))


@dataclass(frozen=True)
class ReductReport:
    reduct: Covering
    removed: tuple[Block, ...]
    cov_equals_reduct: bool
    gamma_witness: object = None


def reduct(c: Covering) -> ReductReport:
    """Drop every reducible block at once.

    Removing several reducible blocks never turns another reducible block
    irreducible, so a single pass is enough.
    """
    removed = reducible_elements(c).blocks
    kept = c.minus(removed)
    ok, witness = cov_is_reduct(c)
    return ReductReport(Covering._trusted(c.universe, kept.masks), removed, ok, witness)


def is_reduct_of(b: SetFamily, c: Covering) -> bool:
    """Check the two-sided characterisation of the reduct of ``c``.

    ``b`` must reproduce every block of ``c`` as a union, and dropping any
    single block of ``b`` must break that.
    """
    if not b.universe.same_names(c.universe):
        raise UniverseMismatch("families are over different element sets")
    b = b.realign(c.universe)
    if not set(b.masks) <= set(c.masks):
        return False
    b_masks = b.masks
    if any(_union_of_subsets(b_masks, k) != k for k in c.masks):
        return False
    for drop in b_masks:
        rest = [m for m in b_masks if m != drop]
        if all(_union_of_subsets(rest, k) == k for k in c.masks):
            return False
    return True


def cov_is_reduct(c: Covering):
    """``(True, None)`` when every element has a nonempty Gamma, else ``(False, x)``.

    ``x`` is the first element (universe order) whose Gamma is empty.
    """
    for x in c.universe.elements:
        if gamma(c, x) is None:
            return False, x
    return True, None
