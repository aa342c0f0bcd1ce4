"""Command line: ``zc1 verify <group.json>`` and ``zc1 classes <group.json>``."""
from __future__ import annotations

import argparse
import json
import logging
import sys

from . import groups
from .characters import CharacterTableError, ingest_character_table
from .constraints import ALL_GATES
from .groups import GroupInputError
from .solver import SearchBudgetExceeded
from .verifier import Config, emit, verify

EXIT = {"verified": 0, "open": 1, "bounded-search-only": 2}
EXIT_INPUT, EXIT_BUDGET = 3, 4

# config-file keys and the Config fields they set
_CONFIG_KEYS = ("gates", "aggressive_ppart", "engine", "box_bound", "max_order",
                "all_witnesses", "node_budget", "naive_budget", "jobs", "order_filter")


def _parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="zc1", description="Partial-augmentation checks for ZC1.")
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", help="run the recursive verification")
    v.add_argument("group")
    v.add_argument("--chartable", help="JSON irreducible character table for the group")
    v.add_argument("--config", help="JSON config file; flags override it")
    v.add_argument("--gates", help=f"comma list from {','.join(sorted(ALL_GATES))}")
    v.add_argument("--no-bh", action="store_true", help="drop the Berman-Higman gate")
    v.add_argument("--aggressive-ppart", action="store_true", default=None)
    v.add_argument("--engine", choices=("bnb", "naive", "both"))
    v.add_argument("--box-bound", type=int)
    v.add_argument("--max-order", type=int)
    v.add_argument("--jobs", type=int)
    v.add_argument("--all-witnesses", action="store_true", default=None)
    v.add_argument("--keep-order-defects", action="store_true",
                   help="do not drop order-defect indicators with non-negative powers")
    v.add_argument("--emit", choices=("json", "text"), default="json")
    v.add_argument("--out", help="write the report here instead of stdout")

    c = sub.add_parser("classes", help="print the conjugacy class layout")
    c.add_argument("group")
    c.add_argument("--max-order", type=int, default=groups.DEFAULT_MAX_ORDER)
    return p


def _read_json(path: str):
    try:
        with open(path) as fh:
            return json.load(fh)
    except OSError as exc:
        raise GroupInputError(f"cannot read {path}: {exc.strerror}")
    except json.JSONDecodeError as exc:
        raise GroupInputError(f"{path} is not valid JSON: {exc}")


def build_config(args) -> Config:
    settings: dict = {}
    if args.config:
        doc = _read_json(args.config)
        if not isinstance(doc, dict):
            raise GroupInputError("config file must hold a JSON object")
        unknown = set(doc) - set(_CONFIG_KEYS)
        if unknown:
            raise GroupInputError(f"unknown config keys: {sorted(unknown)}")
        settings.update(doc)
    flags = {"gates": args.gates, "aggressive_ppart": args.aggressive_ppart,
             "engine": args.engine, "box_bound": args.box_bound, "max_order": args.max_order,
             "all_witnesses": args.all_witnesses, "jobs": args.jobs}
    settings.update({k: v for k, v in flags.items() if v is not None})
    if args.keep_order_defects:
        settings["order_filter"] = False
    gates = settings.get("gates", sorted(ALL_GATES))
    if isinstance(gates, str):
        gates = [g.strip() for g in gates.split(",") if g.strip()]
    gates = set(gates)
    if args.no_bh:
        gates.discard("bh")
    settings["gates"] = frozenset(gates)
    try:
        return Config(**settings)
    except (TypeError, ValueError) as exc:
        raise GroupInputError(str(exc))


def _error(kind: str, msg: str, code: int, fmt: str = "json") -> int:
    if fmt == "json":
        print(json.dumps({"error": msg, "kind": kind, "exit_code": code}, indent=2))
    else:
        print(f"error ({kind}): {msg}", file=sys.stderr)
    return code


def _write(text: str, out: str | None) -> None:
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def cmd_verify(args) -> int:
    try:
        config = build_config(args)
        G = groups.load_group(_read_json(args.group), max_order=config.max_order)
        table = ()
        if args.chartable:
            table = ingest_character_table(G, _read_json(args.chartable))
    except (GroupInputError, CharacterTableError) as exc:
        return _error("input", str(exc), EXIT_INPUT, args.emit)
    try:
        report = verify(G, config, table)
    except (SearchBudgetExceeded, OverflowError) as exc:
        return _error("budget", str(exc), EXIT_BUDGET, args.emit)
    _write(emit(report, args.emit), args.out)
    return EXIT[report.verdict]


def cmd_classes(args) -> int:
    try:
        G = groups.load_group(_read_json(args.group), max_order=args.max_order)
    except GroupInputError as exc:
        return _error("input", str(exc), EXIT_INPUT)
    cd = groups.conjugacy_data(G)
    doc = {"name": G.name, "order": G.order,
           "classes": [{"label": cd.labels[C], "rep_order": cd.rep_order[C], "size": cd.sizes[C],
                        "representative": cd.rep[C]} for C in range(len(cd))]}
    print(json.dumps(doc, indent=2))
    return 0


def main(argv=None) -> int:
    args = _parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    if args.command == "verify":
        return cmd_verify(args)
    return cmd_classes(args)


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
