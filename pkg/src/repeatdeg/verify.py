"""Runtime invariant suite over a covering and seeded random variants of it.

Each property is checked on the input covering and on ``iters`` mutants:
even iterations add unions of existing blocks (which keeps every
neighborhood), odd iterations draw an unrelated covering of the same
universe.  Pair properties compare the input against each mutant.

Implementations are looked up through an ``impl`` mapping so a caller can
substitute a deliberately broken one and watch the suite catch it.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from .degree import cov_from_pair_degrees, gamma_family, p_set, repeat_degree, same_p
from .inversion import degree_table, indicator_table, reconstruct_covering, tables_equal
from .neighborhood import cov, neighborhood, relation, same_relation, successor_neighborhood
from .reduct import cov_is_reduct, in_union_closure, is_reduct_of, reducible_elements, reduct
from .core import Block, Covering, SetFamily, build_covering, canonical_equal
from .errors import RepeatDegreeError
from .generate import augment_with_unions, random_covering
from .io import format_set
from .tables import lattice_cap

BRUTE_FORCE_MAX_BLOCKS = 16

DEFAULT_IMPL = {
    "neighborhood": neighborhood,
    "cov": cov,
    "relation": relation,
    "successor_neighborhood": successor_neighborhood,
    "same_relation": same_relation,
    "repeat_degree": repeat_degree,
    "p_set": p_set,
    "gamma_family": gamma_family,
    "same_p": same_p,
    "cov_from_pair_degrees": cov_from_pair_degrees,
    "in_union_closure": in_union_closure,
    "reducible_elements": reducible_elements,
    "reduct": reduct,
    "is_reduct_of": is_reduct_of,
    "cov_is_reduct": cov_is_reduct,
    "degree_table": degree_table,
    "indicator_table": indicator_table,
    "reconstruct_covering": reconstruct_covering,
}


class Violation(Exception):
    pass


def _require(ok: bool, message: str) -> None:
    if not ok:
        raise Violation(message)


@dataclass
class PropertyResult:
    name: str
    cases: int = 0
    skipped: int = 0
    failure: str | None = None

    @property
    def passed(self) -> bool:
        return self.failure is None


@dataclass
class SuiteReport:
    seed: int
    iters: int
    results: list[PropertyResult] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.results)

    def render(self) -> str:
        lines = [f"seed: {self.seed}", f"iters: {self.iters}"]
        for r in self.results:
            if r.failure is not None:
                lines.append(f"FAIL {r.name}: {r.failure}")
            elif r.cases == 0:
                lines.append(f"SKIP {r.name}")
            else:
                lines.append(f"PASS {r.name} ({r.cases} cases)")
        failed = sum(not r.passed for r in self.results)
        lines.append(f"{len(self.results) - failed}/{len(self.results)} properties passed")
        return "\n".join(lines) + "\n"

    def as_dict(self) -> dict:
        return {
            "seed": self.seed,
            "iters": self.iters,
            "passed": self.passed,
            "properties": [
                {"name": r.name, "status": "fail" if r.failure else ("skip" if r.cases == 0 else "pass"),
                 "cases": r.cases, "counterexample": r.failure}
                for r in self.results
            ],
        }


class Skip(Exception):
    pass


def _describe(c: SetFamily) -> str:
    return "[" + ", ".join(format_set(c.universe, b) for b in c.blocks) + "]"


def _brute_reducible(masks) -> set[int]:
    """Blocks equal to the union of some subfamily of the other blocks."""
    out = set()
    for k in masks:
        others = [m for m in masks if m != k]
        unions = {0}
        for m in others:
            unions |= {u | m for u in unions}
        if k in unions:
            out.add(k)
    return out


# single-covering properties: (name, check(c, impl, rng))

def _canonical_permutation(c, impl, rng):
    names = c.block_names()
    rng.shuffle(names)
    again = build_covering(c.universe, names)
    _require(again.masks == c.masks, "permuted input changed the canonical block order")


def _covers_universe(c, impl, rng):
    _require(c.union_mask == c.universe.full_mask, "blocks do not cover the universe")
    _require(all(b.bits for b in c.blocks), "empty block present")


def _reflexive(c, impl, rng):
    for x in c.universe:
        nx = impl["neighborhood"](c, x)
        _require(c.universe.position(x) in nx, f"{x} not in N({x})")
        for b in c.blocks:
            if c.universe.position(x) in b:
                _require(nx.issubset(b), f"N({x}) not inside block {format_set(c.universe, b)}")


def _nested(c, impl, rng):
    u = c.universe
    n_of = {x: impl["neighborhood"](c, x) for x in u}
    for x in u:
        for j in n_of[x]:
            y = u.elements[j]
            _require(n_of[y].issubset(n_of[x]), f"{y} in N({x}) but N({y}) not inside N({x})")


def _cov_union(c, impl, rng):
    _require(impl["cov"](c).union_mask == c.union_mask, "union of Cov(C) differs from union of C")


def _successor(c, impl, rng):
    r = impl["relation"](c)
    for x in c.universe:
        _require(impl["successor_neighborhood"](r, x) == impl["neighborhood"](c, x),
                 f"successor neighborhood of {x} differs from N({x})")


def _pair_degree_criterion(c, impl, rng):
    u = c.universe
    deg = impl["repeat_degree"]
    for x in u:
        nx = impl["neighborhood"](c, x)
        dx = deg(c, u.block([x]))
        for y in u:
            in_n = u.position(y) in nx
            _require(in_n == (deg(c, u.block({x, y})) == dx),
                     f"pair-degree test disagrees with N({x}) at {y}")


def _p_equals_n(c, impl, rng):
    for x in c.universe:
        _require(impl["p_set"](c, x) == impl["neighborhood"](c, x), f"P({x}) != N({x})")


def _monotone(c, impl, rng):
    u = c.universe
    n = len(u)
    for _ in range(32):
        y = rng.getrandbits(n)
        x = y & rng.getrandbits(n)
        dx = impl["repeat_degree"](c, Block(x, n))
        dy = impl["repeat_degree"](c, Block(y, n))
        _require(dx >= dy, f"deg{format_set(u, x)}={dx} < deg{format_set(u, y)}={dy}")
    _require(impl["repeat_degree"](c, Block(0, n)) == len(c), "degree of the empty set is not |C|")


def _gamma(c, impl, rng):
    blocks = set(c.blocks)
    for x in c.universe:
        fam = impl["gamma_family"](c, x)
        nx = impl["neighborhood"](c, x)
        _require(len(fam) <= 1, f"Gamma({x}) has {len(fam)} blocks")
        if fam:
            _require(fam[0] == nx, f"Gamma({x}) differs from N({x})")
        _require(bool(fam) == (nx in blocks), f"Gamma({x}) nonempty does not match N({x}) being a block")


def _cov_from_pairs(c, impl, rng):
    t = impl["degree_table"](c, {1, 2} if len(c.universe) > 1 else {1})
    _require(canonical_equal(impl["cov_from_pair_degrees"](t), impl["cov"](c)),
             "Cov(C) from pair degrees differs from Cov(C)")


def _brute_reducible_check(c, impl, rng):
    if len(c) > BRUTE_FORCE_MAX_BLOCKS:
        raise Skip
    fast = set(impl["reducible_elements"](c).masks)
    slow = _brute_reducible(c.masks)
    _require(fast == slow, f"reducible elements {sorted(fast)} != brute force {sorted(slow)} on {_describe(c)}")


def _irreducible(c, impl, rng):
    red = impl["reduct"](c).reduct
    _require(not _brute_reducible(red.masks) if len(red) <= BRUTE_FORCE_MAX_BLOCKS
             else not reducible_elements(red).blocks,
             f"reduct of {_describe(c)} still has reducible blocks")


def _reduct_generates(c, impl, rng):
    rep = impl["reduct"](c)
    red = rep.reduct
    _require(set(red.masks) | {b.bits for b in rep.removed} == set(c.masks), "reduct and removed do not partition C")
    for b in c.blocks:
        _require(impl["in_union_closure"](red, b), f"{format_set(c.universe, b)} not a union of reduct blocks")


def _is_reduct(c, impl, rng):
    red = impl["reduct"](c).reduct
    _require(impl["is_reduct_of"](red, c), f"reduct of {_describe(c)} fails the characterisation")
    if red.masks != c.masks:
        _require(not impl["is_reduct_of"](c, c), "C passes as its own reduct though it has reducible blocks")


def _cov_fixed(c, impl, rng):
    cv = impl["cov"](c)
    _require(canonical_equal(impl["reduct"](cv).reduct, cv), "reduct(Cov(C)) != Cov(C)")


def _cov_generates(c, impl, rng):
    cv = impl["cov"](c)
    for b in c.blocks:
        _require(impl["in_union_closure"](cv, b), f"{format_set(c.universe, b)} not a union of neighborhoods")


def _gamma_theorem(c, impl, rng):
    ok, witness = impl["cov_is_reduct"](c)
    direct = canonical_equal(impl["cov"](c), impl["reduct"](c).reduct)
    _require(ok == direct, f"cov_is_reduct={ok} but direct comparison={direct} on {_describe(c)}")
    if not ok:
        _require(not impl["gamma_family"](c, witness), f"witness {witness} has nonempty Gamma")


def _batch_removal(c, impl, rng):
    s = list(impl["reducible_elements"](c).blocks)
    f = [b for b in s if rng.random() < 0.5]
    rest = c.minus(f)
    lhs = set(b.bits for b in s) - {b.bits for b in f}
    rhs = set(impl["reducible_elements"](rest).masks)
    _require(lhs == rhs, f"S(C)-F != S(C-F) with F={[format_set(c.universe, b) for b in f]}")


def _s_monotone(c, impl, rng):
    sub = SetFamily(c.universe, tuple(b for b in c.blocks if rng.random() < 0.6))
    _require(set(impl["reducible_elements"](sub).masks) <= set(impl["reducible_elements"](c).masks),
             "S(B) not inside S(C) for a subfamily B")


def _lattice(c):
    if len(c.universe) > min(lattice_cap(), 16):
        raise Skip


def _zeta_relation(c, impl, rng):
    _lattice(c)
    n = len(c.universe)
    t = impl["degree_table"](c, range(n + 1))
    for mask, value in t.items():
        _require(value == impl["repeat_degree"](c, Block(mask, n)),
                 f"table degree of {format_set(c.universe, mask)} is {value}")


def _roundtrip(c, impl, rng):
    _lattice(c)
    n = len(c.universe)
    back = impl["reconstruct_covering"](impl["degree_table"](c, range(1, n + 1)))
    _require(canonical_equal(back, c), f"reconstruction returned {_describe(back)}")


def _indicator(c, impl, rng):
    _lattice(c)
    ind = impl["indicator_table"](c)
    _require(sorted(ind.members()) == sorted(c.masks), "indicator table is not 1 exactly on blocks")


SINGLE = [
    ("core.canonical_order", _canonical_permutation),
    ("core.covers_universe", _covers_universe),
    ("neighborhood.contains_self_and_inside_blocks", _reflexive),
    ("neighborhood.nested", _nested),
    ("neighborhood.cov_union", _cov_union),
    ("neighborhood.successor_roundtrip", _successor),
    ("degree.pair_degree_criterion", _pair_degree_criterion),
    ("degree.p_equals_neighborhood", _p_equals_n),
    ("degree.monotone", _monotone),
    ("degree.gamma", _gamma),
    ("degree.cov_from_pair_degrees", _cov_from_pairs),
    ("reduct.reducible_brute_force", _brute_reducible_check),
    ("reduct.irreducible", _irreducible),
    ("reduct.generates_covering", _reduct_generates),
    ("reduct.characterisation", _is_reduct),
    ("reduct.cov_is_fixed", _cov_fixed),
    ("reduct.cov_generates", _cov_generates),
    ("reduct.cov_is_reduct_iff_gamma", _gamma_theorem),
    ("reduct.batch_removal", _batch_removal),
    ("reduct.s_monotone", _s_monotone),
    ("inversion.superset_sum", _zeta_relation),
    ("inversion.roundtrip", _roundtrip),
    ("inversion.indicator", _indicator),
]


def _triple(c1, c2, impl, rng):
    p = impl["same_p"](c1, c2)
    r = impl["same_relation"](c1, c2)
    v = canonical_equal(impl["cov"](c1), impl["cov"](c2))
    _require(p == r == v, f"P={p} relation={r} cov={v} for {_describe(c1)} vs {_describe(c2)}")


def _injective(c1, c2, impl, rng):
    _lattice(c1)
    n = len(c1.universe)
    if canonical_equal(c1, c2):
        return
    t1 = impl["degree_table"](c1, range(1, n + 1))
    t2 = impl["degree_table"](c2, range(1, n + 1))
    _require(not tables_equal(t1, t2), f"distinct coverings share a full table: {_describe(c2)}")
    _require(impl["indicator_table"](c1) != impl["indicator_table"](c2), "distinct coverings share an indicator table")


PAIR = [
    ("pair.p_relation_cov_agree", _triple),
    ("pair.tables_injective", _injective),
]


def _run(result: PropertyResult, check, *args) -> None:
    if result.failure is not None:
        return
    try:
        check(*args)
    except Skip:
        result.skipped += 1
        return
    except Violation as exc:
        result.failure = str(exc)
        return
    except RepeatDegreeError as exc:
        result.failure = f"{type(exc).__name__}: {exc}"
        return
    result.cases += 1


def verify_suite(c: Covering, seed: int = 0, iters: int = 10, *, impl: dict | None = None) -> SuiteReport:
    impl = {**DEFAULT_IMPL, **(impl or {})}
    rng = random.Random(seed)
    report = SuiteReport(seed, iters)
    single = {name: PropertyResult(name) for name, _ in SINGLE}
    pair = {name: PropertyResult(name) for name, _ in PAIR}
    variants = [c]
    for i in range(iters):
        if i % 2 == 0:
            variants.append(augment_with_unions(c, rng))
        else:
            variants.append(random_covering(c.universe, rng))
    for k, v in enumerate(variants):
        for name, check in SINGLE:
            _run(single[name], check, v, impl, rng)
        if k:
            for name, check in PAIR:
                _run(pair[name], check, c, v, impl, rng)
    report.results = list(single.values()) + list(pair.values())
    return report
