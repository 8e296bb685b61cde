"""Group records and the on-disk catalog formats.

Three inputs are understood:

* ``.gens``: blocks of ``name:``, ``degree:`` and ``gen:`` lines;
* Cayley CSV: ``order,n`` followed by n rows of n indices;
* ``.jsonl`` records (one object per line) carrying a source and,
  optionally, previously computed results to be re-verified.

A plain text file with one group expression per line is also accepted.
"""

from __future__ import annotations

import copy
import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Literal

from .constructions import build, parse_group_expr
from .errors import DegreeMismatch, DuplicateName, InputError, ParseError
from .group import GroupTable, Permutation, group_from_cayley, group_from_generators, regular_representation


@dataclass
class GroupRecord:
    name: str
    source: Literal["constructed", "generators", "cayley"]
    expr: str | None = None
    degree: int | None = None
    generators: list[tuple[int, ...]] = field(default_factory=list)
    table: list[list[int]] | None = None
    results: dict[str, Any] | None = None

    def build(self, max_order: int | None = None) -> GroupTable:
        if self.source == "constructed":
            G = build(self.expr, max_order=max_order)
        elif self.source == "generators":
            G = group_from_generators([Permutation(g) for g in self.generators], name=self.name, max_order=max_order)
        else:
            G = group_from_cayley(self.table, name=self.name)
        if G.name != self.name:
            G = copy.copy(G)  # constructed tables are cached and shared
            G.name = self.name
        return G

    def to_json(self) -> dict:
        if self.source == "constructed":
            src = {"kind": "constructed", "expr": self.expr}
        elif self.source == "generators":
            src = {"kind": "generators", "degree": self.degree, "gens": [list(g) for g in self.generators]}
        else:
            src = {"kind": "cayley", "table": self.table}
        out = {"name": self.name, "source": src}
        if self.results is not None:
            out["results"] = self.results
        return out


def constructed(expr: str, name: str | None = None) -> GroupRecord:
    canonical = str(parse_group_expr(expr))
    return GroupRecord(name=name or canonical, source="constructed", expr=canonical)


# -- .gens -------------------------------------------------------------------

def parse_gens_text(text: str) -> list[GroupRecord]:
    records: list[GroupRecord] = []
    names: set[str] = set()
    block: list[tuple[int, str]] = []

    def flush():
        if block:
            rec = _parse_block(block)
            if rec.name in names:
                raise DuplicateName(f"duplicate group name {rec.name!r} at line {block[0][0]}")
            names.add(rec.name)
            records.append(rec)
            block.clear()

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            # A line holding only a comment does not end a block.
            if not raw.strip():
                flush()
            continue
        block.append((lineno, line))
    flush()
    return records


def _parse_block(lines: list[tuple[int, str]]) -> GroupRecord:
    name = degree = None
    gens: list[tuple[int, ...]] = []
    for lineno, line in lines:
        key, sep, value = line.partition(":")
        key, value = key.strip(), value.strip()
        if not sep:
            raise ParseError(f"expected 'key: value', got {line!r}", line=lineno)
        if key == "name":
            if name is not None or not value:
                raise ParseError("missing or repeated name", line=lineno)
            name = value
        elif key == "degree":
            if degree is not None or gens:
                raise ParseError("degree must appear once, before the gen lines", line=lineno)
            try:
                degree = int(value)
            except ValueError:
                raise ParseError(f"bad degree {value!r}", line=lineno) from None
            if degree < 1:
                raise ParseError("degree must be positive", line=lineno)
        elif key == "gen":
            if degree is None:
                raise ParseError("gen line before degree", line=lineno)
            try:
                images = tuple(int(t) for t in value.split())
            except ValueError:
                raise ParseError(f"non-integer image in {value!r}", line=lineno) from None
            if len(images) != degree:
                raise DegreeMismatch(f"gen has {len(images)} images, degree is {degree} (line {lineno})")
            if sorted(images) != list(range(degree)):
                raise ParseError(f"gen is not a bijection of 0..{degree - 1}", line=lineno)
            gens.append(images)
        else:
            raise ParseError(f"unknown key {key!r}", line=lineno)
    first = lines[0][0]
    if name is None:
        raise ParseError("block has no name", line=first)
    if degree is None:
        raise ParseError(f"block {name!r} has no degree", line=first)
    if not gens:
        raise ParseError(f"block {name!r} has no gen lines", line=first)
    return GroupRecord(name=name, source="generators", degree=degree, generators=gens)


def parse_gens_file(path) -> list[GroupRecord]:
    return parse_gens_text(Path(path).read_text(encoding="utf-8"))


def format_gens(records: list[GroupRecord]) -> str:
    blocks = []
    for r in records:
        lines = [f"name: {r.name}", f"degree: {r.degree}"]
        lines += ["gen: " + " ".join(map(str, g)) for g in r.generators]
        blocks.append("\n".join(lines))
    return "\n\n".join(blocks) + ("\n" if blocks else "")


def export_regular(G: GroupTable, name: str | None = None) -> GroupRecord:
    """The regular representation restricted to the table's generators."""
    perms = regular_representation(G)
    gens = [p.images for p in perms] or [tuple(range(G.order))]
    return GroupRecord(name=name or G.name, source="generators", degree=G.order, generators=gens)


def write_gens(records: list[GroupRecord], path) -> None:
    Path(path).write_text(format_gens(records), encoding="utf-8")


# -- Cayley CSV ----------------------------------------------------------------

def parse_cayley_text(text: str, name: str = "cayley") -> GroupRecord:
    lines = [ln.strip() for ln in text.splitlines()]
    while lines and not lines[-1]:
        lines.pop()
    if not lines:
        raise ParseError("empty Cayley file", line=1)
    head = lines[0].replace(" ", "").split(",")
    if len(head) != 2 or head[0] != "order" or not head[1].isdigit() or int(head[1]) < 1:
        raise ParseError("first line must be 'order,<n>'", line=1)
    n = int(head[1])
    if len(lines) - 1 != n:
        raise ParseError(f"expected {n} rows, found {len(lines) - 1}", line=len(lines))
    table = []
    for i, ln in enumerate(lines[1:], start=2):
        cells = ln.split(",")
        if len(cells) != n:
            raise ParseError(f"row has {len(cells)} entries, expected {n}", line=i)
        try:
            row = [int(c) for c in cells]
        except ValueError:
            raise ParseError("non-integer entry", line=i) from None
        if any(not 0 <= v < n for v in row):
            raise ParseError(f"entry outside 0..{n - 1}", line=i)
        table.append(row)
    rec = GroupRecord(name=name, source="cayley", table=table)
    group_from_cayley(table, name=name)  # validates the axioms
    return rec


def parse_cayley_file(path) -> GroupRecord:
    p = Path(path)
    return parse_cayley_text(p.read_text(encoding="utf-8"), name=p.stem)


# -- JSON lines and expression lists -----------------------------------------------

def parse_jsonl_text(text: str) -> list[GroupRecord]:
    records, names = [], set()
    for lineno, line in enumerate(text.splitlines(), start=1):
        if not line.strip():
            continue
        try:
            obj = json.loads(line)
            name = obj["name"]
            src = obj["source"]
            kind = src["kind"]
        except (ValueError, KeyError, TypeError) as exc:
            raise ParseError(f"bad record ({exc})", line=lineno) from None
        if kind == "constructed":
            rec = GroupRecord(name=name, source="constructed", expr=str(parse_group_expr(src["expr"])))
        elif kind == "generators":
            gens = [tuple(g) for g in src["gens"]]
            if any(len(g) != src["degree"] for g in gens):
                raise DegreeMismatch(f"record {name!r}: generator length differs from degree (line {lineno})")
            rec = GroupRecord(name=name, source="generators", degree=src["degree"], generators=gens)
        elif kind == "cayley":
            rec = GroupRecord(name=name, source="cayley", table=src["table"])
        else:
            raise ParseError(f"unknown source kind {kind!r}", line=lineno)
        rec.results = obj.get("results")
        if name in names:
            raise DuplicateName(f"duplicate group name {name!r} at line {lineno}")
        names.add(name)
        records.append(rec)
    return records


def parse_expr_list_text(text: str) -> list[GroupRecord]:
    records, names = [], set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        try:
            rec = constructed(line)
        except ParseError as exc:
            raise ParseError(f"{exc}", line=lineno) from None
        if rec.name in names:
            raise DuplicateName(f"duplicate group {rec.name!r} at line {lineno}")
        names.add(rec.name)
        records.append(rec)
    return records


def load_catalog(path) -> list[GroupRecord]:
    """Dispatch on the file suffix: .gens, .csv, .jsonl, anything else is an expression list."""
    p = Path(path)
    try:
        text = p.read_text(encoding="utf-8")
    except OSError as exc:
        raise ParseError(f"cannot read {p}: {exc.strerror}") from None
    suffix = p.suffix.lower()
    if suffix == ".gens":
        return parse_gens_text(text)
    if suffix == ".csv":
        return [parse_cayley_text(text, name=p.stem)]
    if suffix in (".jsonl", ".json"):
        return parse_jsonl_text(text)
    return parse_expr_list_text(text)


def load_catalogs(paths) -> list[GroupRecord]:
    out, names = [], set()
    for path in paths:
        for rec in load_catalog(path):
            if rec.name in names:
                raise DuplicateName(f"group name {rec.name!r} appears in more than one catalog")
            names.add(rec.name)
            out.append(rec)
    return out


def resolve_group(construct: str | None, paths, name: str | None = None, max_order: int | None = None) -> tuple[str, GroupTable]:
    """The single group named on a command line."""
    if construct is not None:
        rec = constructed(construct)
    else:
        records = load_catalogs(paths)
        if name is not None:
            records = [r for r in records if r.name == name]
        if len(records) != 1:
            raise InputError(f"expected exactly one group, found {len(records)}; use --name to select one")
        rec = records[0]
    return rec.name, rec.build(max_order=max_order)
