"""Command-line front end.

Exit codes: 0 success or affirmative verdict, 1 negative verdict or a
violated property, 2 malformed input or usage error.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import dataclass

import numpy as np

from . import __version__
from .core import UNIVERSE_CAP, Covering, canonical_equal
from .degree import gamma, p_witness, repeat_degree
from .errors import NotACovering, RepeatDegreeError
from .inversion import (
    degree_table,
    mobius_inplace,
    naive_mobius,
    naive_zeta,
    parity_pair,
    reconstruct_covering,
    tables_equal,
    zeta_inplace,
)
from .io import (
    covering_json,
    degree_table_json,
    format_covering,
    format_degree_table,
    format_set,
    read_covering,
    read_degree_table,
)
from .neighborhood import cov, neighborhood_masks, neighborhood_witness, relation
from .reduct import cov_is_reduct, reduct
from .tables import check_lattice, lattice_cap
from .verify import verify_suite

EXIT_OK, EXIT_NEGATIVE, EXIT_INPUT = 0, 1, 2


@dataclass
class CommandOutcome:
    exit_code: int
    stdout: str = ""
    stderr: str = ""


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: error: {message}")


def _names(universe, bits) -> list[str]:
    return [str(x) for x in universe.names(bits)]


def _dump(obj) -> str:
    return json.dumps(obj, indent=2) + "\n"


def _window(text: str) -> set[int]:
    try:
        return {int(tok) for tok in text.replace(",", " ").split()}
    except ValueError:
        raise UsageError(f"bad window {text!r}; expected e.g. 1,2") from None


def cmd_neigh(args) -> CommandOutcome:
    c = _load(args.file, args)
    u = c.universe
    rows = list(zip(u.elements, neighborhood_masks(c)))
    if args.json:
        return CommandOutcome(0, _dump({"neighborhoods": [
            {"element": str(x), "neighborhood": _names(u, m)} for x, m in rows]}))
    return CommandOutcome(0, "".join(f"{x} : {format_set(u, m)}\n" for x, m in rows))


def cmd_cov(args) -> CommandOutcome:
    result = cov(_load(args.file, args))
    return CommandOutcome(0, _dump(covering_json(result)) if args.json else format_covering(result))


def cmd_relation(args) -> CommandOutcome:
    pairs = relation(_load(args.file, args)).pairs
    if args.json:
        return CommandOutcome(0, _dump({"pairs": [[str(x), str(y)] for x, y in pairs]}))
    return CommandOutcome(0, "".join(f"({x}, {y})\n" for x, y in pairs))


def cmd_gamma(args) -> CommandOutcome:
    c = _load(args.file, args)
    u = c.universe
    rows = [(x, gamma(c, x)) for x in u.elements]
    if args.json:
        return CommandOutcome(0, _dump({"gamma": [
            {"element": str(x), "block": _names(u, g) if g else None} for x, g in rows]}))
    return CommandOutcome(0, "".join(
        f"{x} : {format_set(u, g) if g else '-'}\n" for x, g in rows))


def _verdict_line(ok: bool, witness) -> str:
    return "cov==reduct: yes" if ok else f"cov==reduct: no (witness: {witness})"


def cmd_reduct(args) -> CommandOutcome:
    c = _load(args.file, args)
    rep = reduct(c)
    u = c.universe
    if args.json:
        return CommandOutcome(0, _dump({
            "reduct": [_names(u, b) for b in rep.reduct.blocks],
            "removed": [_names(u, b) for b in rep.removed],
            "cov_equals_reduct": rep.cov_equals_reduct,
            "witness": None if rep.gamma_witness is None else str(rep.gamma_witness),
        }))
    kept = " ".join(format_set(u, b) for b in rep.reduct.blocks)
    removed = " ".join(format_set(u, b) for b in rep.removed) or "-"
    text = f"reduct: {kept}\nremoved: {removed}\n{_verdict_line(rep.cov_equals_reduct, rep.gamma_witness)}\n"
    return CommandOutcome(0, text)


def cmd_degree(args) -> CommandOutcome:
    c = _load(args.file, args)
    u = c.universe
    if args.set is not None:
        block = u.block(args.set.replace(",", " ").split())
        value = repeat_degree(c, block)
        if args.json:
            return CommandOutcome(0, _dump({"set": _names(u, block), "degree": value}))
        return CommandOutcome(0, f"{value}\n")
    window = _window(args.window) if args.window else set(range(1, len(u) + 1))
    t = degree_table(c, window, cap=args.lattice_cap)
    return CommandOutcome(0, _dump(degree_table_json(t)) if args.json else format_degree_table(t))


def cmd_same(args) -> CommandOutcome:
    c1 = _load(args.file1, args)
    c2 = _load(args.file2, args)
    rel_witness = neighborhood_witness(c1, c2)
    p_diff = p_witness(c1, c2)
    cov_equal = canonical_equal(cov(c1), cov(c2))
    verdicts = {
        "relation": rel_witness is None,
        "cov": cov_equal,
        "P": p_diff is None,
    }
    word = {True: "equal", False: "differ"}
    tables = None
    n = len(c1.universe)
    if n > 1 and n <= lattice_cap(args.lattice_cap):
        c2a = c2.realign(c1.universe)
        below = range(1, n)
        full = range(1, n + 1)
        tables = {
            "below_full": tables_equal(degree_table(c1, below, args.lattice_cap), degree_table(c2a, below, args.lattice_cap)),
            "full": tables_equal(degree_table(c1, full, args.lattice_cap), degree_table(c2a, full, args.lattice_cap)),
        }
    consistent = len(set(verdicts.values())) == 1
    code = EXIT_OK if consistent and verdicts["relation"] else EXIT_NEGATIVE
    stderr = "" if consistent else "error: P, relation and Cov verdicts disagree\n"
    if args.json:
        out = {**verdicts, "witness": None if rel_witness is None else str(rel_witness)}
        if tables is not None:
            out["tables"] = tables
        return CommandOutcome(code, _dump(out), stderr)
    text = ", ".join(f"{k}: {word[v]}" for k, v in verdicts.items()) + "\n"
    if rel_witness is not None:
        text += f"witness: {rel_witness}\n"
    if tables is not None:
        text += f"tables 1..{n - 1}: {word[tables['below_full']]}, tables 1..{n}: {word[tables['full']]}\n"
    return CommandOutcome(code, text, stderr)


def cmd_cov_is_reduct(args) -> CommandOutcome:
    ok, witness = cov_is_reduct(_load(args.file, args))
    code = EXIT_OK if ok else EXIT_NEGATIVE
    if args.json:
        return CommandOutcome(code, _dump({"cov_equals_reduct": ok,
                                           "witness": None if witness is None else str(witness)}))
    return CommandOutcome(code, _verdict_line(ok, witness) + "\n")


def cmd_invert(args) -> CommandOutcome:
    t = read_degree_table(args.file)
    try:
        c = reconstruct_covering(t, cap=args.lattice_cap)
    except NotACovering as exc:
        detail = f"error: NotACovering: {exc}\n"
        if exc.family is not None:
            detail += format_covering(exc.family)
        return CommandOutcome(EXIT_INPUT, "", detail)
    return CommandOutcome(0, _dump(covering_json(c)) if args.json else format_covering(c))


def cmd_parity_pair(args) -> CommandOutcome:
    names = args.names.replace(",", " ").split() if args.names else None
    even, odd = parity_pair(args.n, names, cap=args.lattice_cap)
    if args.json:
        return CommandOutcome(0, _dump({"even": covering_json(even), "odd": covering_json(odd)}))
    return CommandOutcome(0, "# even\n" + format_covering(even) + "# odd\n" + format_covering(odd))


def cmd_verify(args) -> CommandOutcome:
    c = _load(args.file, args)
    report = verify_suite(c, seed=args.seed, iters=args.iters)
    code = EXIT_OK if report.passed else EXIT_NEGATIVE
    return CommandOutcome(code, _dump(report.as_dict()) if args.json else report.render())


def benchmark(n: int, repeat: int = 3, seed: int = 0) -> dict:
    """Best-of-``repeat`` wall time of the O(4^n) and O(n 2^n) transforms."""
    check_lattice(n)
    rng = np.random.default_rng(seed)
    g = rng.integers(-5, 6, size=1 << n, dtype=np.int64)

    def best(fn):
        times = []
        for _ in range(repeat):
            start = time.perf_counter()
            fn()
            times.append(time.perf_counter() - start)
        return min(times)

    naive = best(lambda: naive_mobius(naive_zeta(g)))
    fast = best(lambda: mobius_inplace(zeta_inplace(g.copy())))
    return {"n": n, "naive_seconds": naive, "fast_seconds": fast, "speedup": naive / fast}


def cmd_bench(args) -> CommandOutcome:
    result = benchmark(args.n, args.repeat)
    if args.json:
        return CommandOutcome(0, _dump(result))
    return CommandOutcome(0, (
        f"n: {result['n']}\nnaive: {result['naive_seconds']:.6f} s\n"
        f"fast: {result['fast_seconds']:.6f} s\nspeedup: {result['speedup']:.1f}x\n"))


def _load(path, args) -> Covering:
    return read_covering(path, cap=args.universe_cap)


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--json", action="store_true", help="structured output")
    common.add_argument("--lattice-cap", type=int, default=None,
                        help="max universe size for full-lattice work (default $REPEATDEG_LATTICE_CAP or 24)")
    common.add_argument("--universe-cap", type=int, default=UNIVERSE_CAP,
                        help=f"max universe size accepted (default {UNIVERSE_CAP})")

    parser = _Parser(prog="repeatdeg", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, func, help_text):
        p = sub.add_parser(name, parents=[common], help=help_text)
        p.set_defaults(func=func)
        return p

    for name, func, help_text in [
        ("neigh", cmd_neigh, "neighborhood of every element"),
        ("cov", cmd_cov, "covering of neighborhoods"),
        ("relation", cmd_relation, "induced relation as a pair list"),
        ("gamma", cmd_gamma, "Gamma block of every element"),
        ("reduct", cmd_reduct, "reduct, removed blocks and the cov==reduct verdict"),
        ("cov-is-reduct", cmd_cov_is_reduct, "whether Cov(C) is the reduct of C"),
    ]:
        add(name, func, help_text).add_argument("file")

    p = add("degree", cmd_degree, "repeat degrees of a set or a window of sizes")
    p.add_argument("file")
    group = p.add_mutually_exclusive_group()
    group.add_argument("--window", help="comma-separated subset sizes (default 1..n)")
    group.add_argument("--set", help='one subset, e.g. "a b"')

    p = add("same", cmd_same, "compare P sets, relations and Cov of two coverings")
    p.add_argument("file1")
    p.add_argument("file2")

    add("invert", cmd_invert, "rebuild a covering from its full degree table").add_argument("file")

    p = add("parity-pair", cmd_parity_pair, "even/odd coverings sharing all proper-size degrees")
    p.add_argument("-n", type=int, required=True)
    p.add_argument("--names", help="comma-separated element names")

    p = add("verify", cmd_verify, "run the invariant suite on a covering and random variants")
    p.add_argument("file")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--iters", type=int, default=10)

    p = add("bench", cmd_bench, "time naive against fast lattice transforms")
    p.add_argument("-n", type=int, default=12)
    p.add_argument("--repeat", type=int, default=3)
    return parser


def run(argv: list[str]) -> CommandOutcome:
    try:
        args = build_parser().parse_args(argv)
        return args.func(args)
    except UsageError as exc:
        return CommandOutcome(EXIT_INPUT, "", f"{exc}\n")
    except (RepeatDegreeError, OSError) as exc:
        return CommandOutcome(EXIT_INPUT, "", f"error: {type(exc).__name__}: {exc}\n")


def main(argv: list[str] | None = None) -> int:
    try:
        outcome = run(sys.argv[1:] if argv is None else argv)
    except SystemExit as exc:  # --help / --version
        return int(exc.code or 0)
    sys.stdout.write(outcome.stdout)
    sys.stderr.write(outcome.stderr)
    return outcome.exit_code


if __name__ == "__main__":
    sys.exit(main())
