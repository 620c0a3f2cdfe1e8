"""Reading and writing coverings and degree tables.

Covering text format::

    # universe: a b c        (optional header)
    a b                      (one block per line)
    b c

Lines starting with ``#`` are comments, except the ``universe:`` header.
The JSON form is ``{"universe": [...], "blocks": [[...], ...]}`` with the
universe optional.

Degree-table text format::

    # universe: a b c
    # window: 1 2
    a : 2
    a b : 1

The universe header is mandatory for tables; the window header defaults to
the sizes that occur.  ``: 3`` is the entry for the empty set.
"""

from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from .core import UNIVERSE_CAP, Block, Covering, SetFamily, Universe, build_covering
from .errors import FormatError
from .tables import DegreeTable

UNIVERSE_HEADER = "universe:"
WINDOW_HEADER = "window:"


def _header(line: str, key: str) -> str | None:
    body = line.lstrip("#").strip()
    if body.startswith(key):
        return body[len(key):].strip()
    return None


def parse_covering(text: str, *, cap: int = UNIVERSE_CAP) -> Covering:
    if text.lstrip().startswith("{"):
        return _covering_from_json(text, cap)
    universe = None
    blocks = []
    for raw in text.splitlines():
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            names = _header(line, UNIVERSE_HEADER)
            if names is not None:
                if blocks or universe is not None:
                    raise FormatError("universe header must precede all blocks")
                universe = _universe(names.split())
            continue
        blocks.append(line.split())
    return build_covering(universe, blocks, cap=cap)


def _universe(names) -> Universe:
    try:
        return Universe(tuple(names))
    except ValueError as exc:
        raise FormatError(f"bad universe header: {exc}") from None


def _covering_from_json(text: str, cap: int) -> Covering:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"invalid JSON: {exc}") from None
    if not isinstance(data, dict) or not isinstance(data.get("blocks"), list):
        raise FormatError('JSON covering needs a "blocks" list')
    universe = data.get("universe")
    universe = _universe([str(x) for x in universe]) if universe is not None else None
    blocks = [[str(x) for x in block] for block in data["blocks"]]
    return build_covering(universe, blocks, cap=cap)


def read_covering(path: str | Path, *, cap: int = UNIVERSE_CAP) -> Covering:
    return parse_covering(Path(path).read_text(), cap=cap)


def format_covering(c: SetFamily, header: bool = True) -> str:
    lines = []
    if header:
        lines.append("# universe: " + " ".join(map(str, c.universe.elements)))
    for names in c.block_names():
        lines.append(" ".join(map(str, names)))
    return "\n".join(lines) + "\n"


def format_set(universe: Universe, subset: int | Block) -> str:
    return "{" + ", ".join(map(str, universe.names(subset))) + "}"


def parse_degree_table(text: str) -> DegreeTable:
    if text.lstrip().startswith("{"):
        return _table_from_json(text)
    universe = None
    window = None
    entries = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            names = _header(line, UNIVERSE_HEADER)
            if names is not None:
                universe = _universe(names.split())
                continue
            sizes = _header(line, WINDOW_HEADER)
            if sizes is not None:
                window = _parse_window(sizes.replace(",", " ").split())
            continue
        if ":" not in line:
            raise FormatError(f"line {lineno}: expected 'elements : value'")
        left, _, right = line.rpartition(":")
        try:
            value = int(right)
        except ValueError:
            raise FormatError(f"line {lineno}: degree {right.strip()!r} is not an integer") from None
        entries.append((left.split(), value))
    if universe is None:
        raise FormatError("degree table needs a '# universe:' header")
    return _build_table(universe, window, entries)


def _parse_window(tokens) -> set[int]:
    try:
        return {int(t) for t in tokens}
    except ValueError:
        raise FormatError(f"bad window {' '.join(tokens)!r}") from None


def _build_table(universe: Universe, window, entries) -> DegreeTable:
    masks = []
    values = []
    for names, value in entries:
        if len(set(names)) != len(names):
            raise FormatError(f"repeated element in entry {names}")
        masks.append(universe.mask(names))
        values.append(value)
    if len(set(masks)) != len(masks):
        raise FormatError("a subset appears twice in the table")
    if window is None:
        window = {m.bit_count() for m in masks}
    return DegreeTable(universe, frozenset(window), np.array(masks, dtype=object), np.array(values, dtype=np.int64))


def _table_from_json(text: str) -> DegreeTable:
    try:
        data = json.loads(text)
        universe = _universe([str(x) for x in data["universe"]])
        window = data.get("window")
        entries = [([str(x) for x in e["set"]], int(e["degree"])) for e in data["entries"]]
    except (json.JSONDecodeError, KeyError, TypeError, ValueError) as exc:
        raise FormatError(f"invalid JSON degree table: {exc}") from None
    return _build_table(universe, set(window) if window is not None else None, entries)


def read_degree_table(path: str | Path) -> DegreeTable:
    return parse_degree_table(Path(path).read_text())


def format_degree_table(t: DegreeTable) -> str:
    u = t.universe
    lines = [
        "# universe: " + " ".join(map(str, u.elements)),
        "# window: " + " ".join(map(str, sorted(t.window))),
    ]
    for mask, value in t.items():
        names = " ".join(map(str, u.names(mask)))
        lines.append(f"{names} : {value}" if names else f": {value}")
    return "\n".join(lines) + "\n"


def degree_table_json(t: DegreeTable) -> dict:
    u = t.universe
    return {
        "universe": list(map(str, u.elements)),
        "window": sorted(t.window),
        "entries": [{"set": list(map(str, u.names(m))), "degree": v} for m, v in t.items()],
    }


def covering_json(c: SetFamily) -> dict:
    return {
        "universe": list(map(str, c.universe.elements)),
        "blocks": [list(map(str, names)) for names in c.block_names()],
    }
