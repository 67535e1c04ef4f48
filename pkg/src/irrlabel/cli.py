"""Command-line front end.

Exit status: 0 success, 2 input error or failed verification, 3 the requested
object provably does not exist, 4 search budget exhausted, 5 internal defect.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from . import __version__
from .blocks import skolem_partition, zeng_partition
from .errors import InfeasibleError, InputError, IrrlabelError
from .groups import GroupSpec
from .labeler import Digraph, Labeling, label_digraph, verify_labeling
from .oracle import SearchBudget, oracle_partition
from .partition import general_partition
from .results import PartitionResult, SizeDemand, check_parts, verify_partition

EXIT_OK, EXIT_INPUT, EXIT_INFEASIBLE, EXIT_BUDGET, EXIT_DEFECT = 0, 2, 3, 4, 5

log = logging.getLogger("irrlabel")


def _emit(data: dict, out: str | None) -> None:
    text = json.dumps(data, indent=2, ensure_ascii=False) + "\n"
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _budget(args) -> SearchBudget:
    ms = getattr(args, "budget_ms", None)
    return SearchBudget.from_env(
        time_limit=ms / 1000 if ms else None, node_limit=getattr(args, "node_limit", None)
    )


def _blocks_json(G: GroupSpec, parts, excluded) -> dict:
    cert = check_parts(G, parts, excluded, None, exact=True)
    out_parts = []
    for p in parts:
        entry = {"kind": p.kind, "elements": p.to_strings()}
        if p.witnesses:
            entry["witnesses"] = [str(w) for w in p.witnesses]
        out_parts.append(entry)
    return {"group": str(G), "excluded": [str(x) for x in excluded], "parts": out_parts, "certificate": cert}


def cmd_partition(args) -> int:
    G = GroupSpec.parse(args.group)
    res = general_partition(G, SizeDemand.parse(args.sizes), not args.no_oracle, budget=_budget(args))
    _emit(res.to_json(), args.output)
    return EXIT_OK if res.certificate["ok"] else EXIT_DEFECT


def cmd_skolem(args) -> int:
    H = GroupSpec.parse(args.group)
    data = _blocks_json(H, skolem_partition(H), (H.zero,))
    _emit(data, args.output)
    return EXIT_OK if data["certificate"]["ok"] else EXIT_DEFECT


def cmd_zeng(args) -> int:
    parts = zeng_partition(args.n, args.m, args.l)
    G = GroupSpec.cyclic(args.n)
    data = _blocks_json(G, parts, (G.zero, G.element(args.n // 2)))
    _emit(data, args.output)
    return EXIT_OK if data["certificate"]["ok"] else EXIT_DEFECT


def cmd_label(args) -> int:
    G = GroupSpec.parse(args.group)
    D = Digraph.read(args.input)
    lab = label_digraph(D, G, not args.no_oracle, budget=_budget(args))
    _emit(lab.to_json(), args.output)
    return EXIT_OK


def _read_json(path: str) -> dict:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise InputError(f"{path}: {exc.strerror}") from None
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}:{exc.lineno}:{exc.colno}: invalid JSON: {exc.msg}") from None
    if not isinstance(data, dict):
        raise InputError(f"{path}: expected a JSON object")
    return data


def cmd_verify(args) -> int:
    data = _read_json(args.input)
    if "arcs" in data:
        lab = Labeling.from_json(data)
        cert = verify_labeling(lab.digraph, lab.group, lab)
        kind = "labeling"
    elif "parts" in data:
        res = PartitionResult.from_json(data)
        cert = verify_partition(res.group, res)
        kind = "partition"
    else:
        raise InputError(f"{args.input}: neither a labeling (no 'arcs') nor a partition (no 'parts')")
    _emit({"kind": kind, "certificate": cert}, args.output)
    return EXIT_OK if cert["ok"] else EXIT_INPUT


def cmd_oracle(args) -> int:
    G = GroupSpec.parse(args.group)
    forbidden = [G.parse_element(t) for t in args.forbid]
    rep = oracle_partition(G, SizeDemand.parse(args.sizes), forbidden, _budget(args))
    _emit(rep.to_json(), args.output)
    return {"feasible": EXIT_OK, "infeasible": EXIT_INFEASIBLE}.get(rep.verdict, EXIT_BUDGET)


def cmd_sweep(args) -> int:
    from .report import write_report
    from .sweep import cross_validation_sweep, labeling_sweep, summarize

    rows = cross_validation_sweep(
        args.max_order,
        min_order=args.min_order,
        applicable_only=args.applicable_only,
        budget=_budget(args),
        jobs=args.jobs,
    )
    runs = labeling_sweep(args.labelings, args.seed) if args.labelings else []
    summary = summarize(rows)
    data = {
        "max_order": args.max_order,
        "min_order": args.min_order,
        "seed": args.seed,
        "summary": summary,
        "cross_validation": [r.to_json() for r in rows],
    }
    if runs:
        data["labelings"] = {
            "runs": [r.to_json(timing=False) for r in runs],
            "verified": sum(r.ok for r in runs),
            "failed": sum(not r.ok for r in runs),
        }
    if args.report_dir:
        data["files"] = [p.name for p in write_report(args.report_dir, rows, runs)]
    _emit(data, args.output)
    if summary["disagree"] or any(not r.ok for r in runs):
        return EXIT_DEFECT
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="irrlabel", description="Zero-sum partitions and irregular digraph labelings over finite Abelian groups.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    p.add_argument("-v", "--verbose", action="store_true", help="log construction details to stderr")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, budget=True):
        sp.add_argument("-o", "--output", help="write JSON here instead of stdout")
        if budget:
            sp.add_argument("--budget-ms", type=int, help="oracle time limit (default 10000, env IRR_BUDGET_MS)")
            sp.add_argument("--node-limit", type=int, help="oracle node limit (env IRR_NODE_LIMIT)")

    sp = sub.add_parser("partition", help="zero-sum parts of given sizes")
    sp.add_argument("-g", "--group", required=True, help="e.g. Z2xZ9")
    sp.add_argument("-r", "--sizes", required=True, help="comma-separated part sizes, e.g. 4,4,4,4")
    sp.add_argument("--no-oracle", action="store_true", help="fail instead of falling back to exhaustive search")
    common(sp)
    sp.set_defaults(func=cmd_partition)

    sp = sub.add_parser("skolem", help="Skolem partition of an odd-order group")
    sp.add_argument("-g", "--group", required=True)
    common(sp, budget=False)
    sp.set_defaults(func=cmd_skolem)

    sp = sub.add_parser("zeng", help="triples and pairs partitioning Z_n minus {0, n/2}")
    sp.add_argument("-n", type=int, required=True)
    sp.add_argument("-m", type=int, required=True, help="number of triples")
    sp.add_argument("-l", type=int, required=True, help="number of pairs")
    common(sp, budget=False)
    sp.set_defaults(func=cmd_zeng)

    sp = sub.add_parser("label", help="irregular labeling of a digraph file")
    sp.add_argument("-g", "--group", required=True)
    sp.add_argument("-i", "--input", required=True, help="digraph file ('v <id>' and '<tail> <head>' lines)")
    sp.add_argument("--no-oracle", action="store_true")
    common(sp)
    sp.set_defaults(func=cmd_label)

    sp = sub.add_parser("verify", help="recheck a labeling or partition JSON file")
    sp.add_argument("-i", "--input", required=True)
    common(sp, budget=False)
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("oracle", help="exhaustive search for disjoint zero-sum subsets")
    sp.add_argument("-g", "--group", required=True)
    sp.add_argument("-r", "--sizes", required=True)
    sp.add_argument("--forbid", action="append", default=[], metavar="ELEM", help="element to exclude, e.g. '(1,0)'; repeatable")
    common(sp)
    sp.set_defaults(func=cmd_oracle)

    sp = sub.add_parser("sweep", help="cross-validate construction and oracle over small groups")
    sp.add_argument("--max-order", type=int, default=24)
    sp.add_argument("--min-order", type=int, default=4)
    sp.add_argument("--applicable-only", action="store_true", help="only demands the construction covers")
    sp.add_argument("--labelings", type=int, default=0, help="also label this many random digraphs")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--jobs", type=int, default=1)
    sp.add_argument("--report-dir", help="write CSV tables and PNG figures here")
    common(sp)
    sp.set_defaults(func=cmd_sweep)
    return p


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s: %(message)s")
    try:
        return args.func(args)
    except InfeasibleError as exc:
        print(f"infeasible: {exc}", file=sys.stderr)
        if exc.report is not None:
            _emit(exc.report.to_json(), getattr(args, "output", None))
        return EXIT_INFEASIBLE
    except IrrlabelError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.exit_code
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
