"""Command-line interface: ``grpcover <subcommand> ...``.

Exit codes: 0 success, 1 failed check, 2 input error, 3 budget exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from multiprocessing import Pool

from . import config
from .analysis import GroupAnalysis, result_row
from .catalog import GroupRecord, constructed, load_catalogs, resolve_group
from .checks import CHECK_IDS, Population, run_checks, traceability_table
from .covering import cover_members
from .errors import BudgetError, GroupError, InputError
from .sweep import SWEEP_MAX_ORDER, sweep


def _common(p: argparse.ArgumentParser):
    p.add_argument("--max-order", type=int, default=None, help="order budget (default: $GRPCOVER_MAX_ORDER or %d)" % config.DEFAULT_MAX_ORDER)
    p.add_argument("--node-cap", type=int, default=None, help="branch-and-bound node cap (default %d)" % config.DEFAULT_NODE_CAP)
    p.add_argument("--seedless", action="store_true", help="accepted for compatibility; computations never use randomness")


def _single(p: argparse.ArgumentParser):
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--construct", metavar="EXPR", help="group expression, e.g. 'symmetric(4)'")
    src.add_argument("--in", dest="inputs", metavar="PATH", action="append", help="catalog file holding the group")
    p.add_argument("--name", help="select one record of a multi-group catalog")
    p.add_argument("--out", metavar="PATH", help="also write the result record as one JSON line")
    _common(p)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="grpcover", description="Covering numbers of finite groups.")
    sub = parser.add_subparsers(dest="command", required=True)

    for cmd, what in (("sigma-n", "normalizer covering number"), ("sigma", "covering number by proper subgroups"),
                      ("sigma-c", "covering number by element centralizers")):
        _single(sub.add_parser(cmd, help=what))

    p = sub.add_parser("lattice-dump", help="list the subgroups of a group")
    _single(p)
    p.add_argument("--json", action="store_true", help="one JSON object per subgroup")

    p = sub.add_parser("batch", help="compute result records for every group in catalogs")
    p.add_argument("--in", dest="inputs", metavar="PATH", action="append", required=True)
    p.add_argument("--out", metavar="PATH", help="results file (default: standard output)")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--timing", action="store_true", help="fill elapsed_ms (makes output run-dependent)")
    _common(p)

    p = sub.add_parser("verify-paper", help="run every structural check over the sweep and catalogs")
    p.add_argument("--in", dest="inputs", metavar="PATH", action="append", default=[])
    p.add_argument("--out", metavar="PATH", help="write the check reports as JSON lines")
    p.add_argument("--check", action="append", choices=CHECK_IDS, help="run only these checks")
    p.add_argument("--no-sweep", action="store_true", help="use only the ingested catalogs")
    p.add_argument("--jobs", type=int, default=1, help="accepted; checks run sequentially")
    _common(p)

    p = sub.add_parser("search", help="list groups attaining a given sigma_n")
    p.add_argument("--value", type=int, required=True)
    p.add_argument("--in", dest="inputs", metavar="PATH", action="append", default=[])
    p.add_argument("--jobs", type=int, default=1)
    _common(p)
    return parser


# -- single-group commands -----------------------------------------------------

def _gens(gens) -> str:
    return "<" + ", ".join(map(str, gens)) + ">"


def _cmd_single(args) -> int:
    start = time.perf_counter()
    name, G = resolve_group(args.construct, args.inputs, args.name, max_order=args.max_order)
    A = GroupAnalysis(G, name=name, node_cap=args.node_cap)
    L = A.lattice
    print(f"group {name}, order {G.order}")
    if args.command == "sigma-n":
        out, label = A.sigma_n, "sigma_n"
    elif args.command == "sigma":
        from .covering import sigma

        out, label = sigma(G, L, node_cap=args.node_cap), "sigma"
    else:
        out, label = A.sigma_c, "sigma_c"
    if out.is_finite:
        print(f"{label} = {out.value}")
        if label == "sigma_n":
            print("witness normalizers N_G(H), listed by generators of H:")
            for i, s in zip(out.witness_cover, cover_members(L, out)):
                print(f"  H{i} = {_gens(L[i].generators)}  |N_G(H)| = {len(s)}")
        else:
            print("witness subgroups, listed by generators:")
            for i in out.witness_cover:
                print(f"  H{i} = {_gens(L[i].generators)}  order {L[i].order}")
    else:
        w = out.witness_element
        print(f"{label} = infinity, witness element of order {G.element_order[w]}")
        print(f"witness element: {w}")
    print(f"elapsed: {(time.perf_counter() - start) * 1000:.1f} ms")
    if args.out:
        row = result_row(name, lambda: G, node_cap=args.node_cap)
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(json.dumps(row) + "\n")
    return 0


def _cmd_lattice(args) -> int:
    name, G = resolve_group(args.construct, args.inputs, args.name, max_order=args.max_order)
    A = GroupAnalysis(G, name=name)
    L = A.lattice
    if not args.json:
        print(f"group {name}, order {G.order}, {len(L)} subgroups")
    for H in L.subgroups:
        norm = L.normalizer_mask(H).bit_count()
        if args.json:
            print(json.dumps({"id": H.id, "order": H.order, "normal": H.is_normal,
                              "generators": list(H.generators), "normalizer_order": norm}))
        else:
            flag = "normal" if H.is_normal else f"|N_G(H)| = {norm}"
            print(f"H{H.id}  order {H.order}  {_gens(H.generators)}  {flag}")
    return 0


# -- batch ---------------------------------------------------------------------

def _batch_row(job: tuple[GroupRecord, int | None, int | None, bool]) -> str:
    rec, max_order, node_cap, timing = job
    row = result_row(rec.name, lambda: rec.build(max_order=max_order), node_cap=node_cap, timing=timing)
    return json.dumps(row)


def _map(fn, jobs: list, n: int):
    """Results in input order, produced lazily so callers can flush as they go."""
    if n <= 1 or len(jobs) <= 1:
        yield from map(fn, jobs)
        return
    with Pool(min(n, len(jobs))) as pool:
        yield from pool.imap(fn, jobs)


def _cmd_batch(args) -> int:
    records = sorted(load_catalogs(args.inputs), key=lambda r: r.name)
    jobs = [(r, args.max_order, args.node_cap, args.timing) for r in records]
    fh = open(args.out, "w", encoding="utf-8") if args.out else sys.stdout
    try:
        for line in _map(_batch_row, jobs, args.jobs):
            fh.write(line + "\n")
            fh.flush()
    finally:
        if fh is not sys.stdout:
            fh.close()
    return 0


# -- verify-paper and search ----------------------------------------------------------

def _cmd_verify(args) -> int:
    records = load_catalogs(args.inputs)
    max_order = args.max_order or SWEEP_MAX_ORDER
    pop = Population(max_order=max_order, records=records, node_cap=args.node_cap, include_sweep=not args.no_sweep)
    reports = run_checks(pop, args.check)
    print(traceability_table(reports))
    failed = [r for r in reports if r.status == "fail"]
    for r in reports:
        if r.status == "fail":
            print(f"\nFAIL {r.check_id}: {r.claim}")
            for cx in r.counterexamples:
                print(f"  {cx['group']}: {cx['detail']}")
        elif r.status == "skipped":
            print(f"\nskipped {r.check_id}: {'; '.join(r.reasons)}")
    print(f"\n{len(reports) - len(failed)} of {len(reports)} checks passed or skipped, {len(failed)} failed")
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            for r in reports:
                fh.write(json.dumps(r.to_dict()) + "\n")
    return 1 if failed else 0


def _search_one(job: tuple[GroupRecord, int | None]) -> tuple[str, int, str | None, str | None]:
    rec, node_cap = job
    try:
        G = rec.build()
        A = GroupAnalysis(G, name=rec.name, node_cap=node_cap)
        return rec.name, G.order, str(A.sigma_n), None
    except GroupError as exc:
        return rec.name, 0, None, f"{type(exc).__name__}: {exc}"


def _cmd_search(args) -> int:
    if args.value < 3:
        raise InputError("sigma_n is never smaller than 3; --value must be at least 3")
    max_order = args.max_order or SWEEP_MAX_ORDER
    records = [constructed(e) for e in sweep(max_order)]
    for rec in load_catalogs(args.inputs):
        records.append(rec)
    jobs = [(r, args.node_cap) for r in records]
    hits, size = [], 0
    for name, order, value, err in _map(_search_one, jobs, args.jobs):
        if err is not None:
            print(f"skipped {name}: {err}")
            continue
        if order > max_order:
            continue
        size += 1
        if value == str(args.value):
            hits.append((name, order))
    if hits:
        print(f"found {len(hits)} group(s) with sigma_n = {args.value} in population of size {size}:")
        for name, order in hits:
            print(f"  {name}  (order {order})")
    else:
        print(f"none found in population of size {size}")
    return 0


COMMANDS = {
    "sigma-n": _cmd_single,
    "sigma": _cmd_single,
    "sigma-c": _cmd_single,
    "lattice-dump": _cmd_lattice,
    "batch": _cmd_batch,
    "verify-paper": _cmd_verify,
    "search": _cmd_search,
}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except BudgetError as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
