"""Command-line interface.

Exit codes: 0 success, 1 verification failure, 2 input error, 3 size budget
exceeded.
"""

from __future__ import annotations

import argparse
import sys
from typing import Optional, Sequence

from .cohomology import DEFAULT_BUDGET
from .errors import InputError, SevenTermError, SizeBudgetExceeded
from .report import (
    TOOL_NAME,
    TOOL_VERSION,
    dumps,
    extension_from_document,
    group_from_document,
    loads,
    render_text,
)

EXIT_OK = 0
EXIT_VERIFICATION_FAILED = 1
EXIT_INPUT_ERROR = 2
EXIT_BUDGET = 3


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog=TOOL_NAME,
        description=(
            "Low-degree cohomology of finite groups and the seven-term exact "
            "sequence of a group extension, over exact integer arithmetic."
        ),
    )
    parser.add_argument("--version", action="version", version=f"{TOOL_NAME} {TOOL_VERSION}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("cohomology", help="H^n of the middle group of a preset extension")
    p.add_argument("--preset", required=True, help="e.g. cyclic:2,2 or heisenberg_mod:2")
    p.add_argument("--module", required=True, help="e.g. Z, Z2, Z3^2, sign, or file:PATH")
    p.add_argument("--degree", required=True, type=int, choices=(1, 2, 3))
    p.add_argument("--report", choices=("json", "text"), default="json")
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET)

    p = sub.add_parser("seven-term", help="the full seven-term report for a preset")
    p.add_argument("--preset", required=True)
    p.add_argument("--module", required=True)
    p.add_argument("--report", choices=("json", "text"), default="json")
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    p.add_argument("--route", choices=("eta", "normalizer", "omega"), default="eta")

    p = sub.add_parser("verify", help="run the exactness and property battery")
    p.add_argument("--battery", default="default", help="battery name (default only)")
    p.add_argument("--trials", type=int, default=20)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    p.add_argument("--report", choices=("json", "text"), default="text")
    p.add_argument("--quiet", action="store_true")

    p = sub.add_parser("inspect", help="validate a document file and summarize it")
    p.add_argument("--input", required=True)
    return parser


def _cmd_cohomology(args) -> int:
    from .workbench import RunConfig, run_and_emit

    doc = run_and_emit(
        RunConfig(
            computation="cohomology",
            preset=args.preset,
            module=args.module,
            degree=args.degree,
            budget=args.budget,
        )
    )
    sys.stdout.write(render_text(doc) if args.report == "text" else dumps(doc))
    return EXIT_OK


def _cmd_seven_term(args) -> int:
    from .workbench import RunConfig, run_and_emit

    doc = run_and_emit(
        RunConfig(
            computation="seven-term",
            preset=args.preset,
            module=args.module,
            budget=args.budget,
            transgression_route=args.route,
        )
    )
    sys.stdout.write(render_text(doc) if args.report == "text" else dumps(doc))
    return EXIT_OK if doc["ok"] else EXIT_VERIFICATION_FAILED


def _cmd_verify(args) -> int:
    from .battery import run_battery

    if args.battery != "default":
        raise InputError(f"unknown battery {args.battery!r}")
    progress = None if args.quiet or args.report == "json" else (
        lambda msg: print(f"... {msg}", file=sys.stderr)
    )
    doc = run_battery(trials=args.trials, seed=args.seed, budget=args.budget, progress=progress)
    if args.report == "json":
        sys.stdout.write(dumps(doc))
    else:
        for key, entry in sorted(doc["cases"].items()):
            if "error" in entry:
                print(f"{key:36s} ERROR {entry['error']['code']}")
                continue
            bits = ["exact" if entry["exactness"]["exact"] else "NOT-EXACT"]
            for check in (
                "cross_route_transgression",
                "evens_pushforward",
                "split_degeneracy",
                "twist_representative_invariance",
                "obstruction_section_invariance",
            ):
                if check in entry:
                    tally = entry[check]
                    short = "".join(w[0] for w in check.split("_"))
                    status = "ok" if tally["failures"] == 0 else "FAIL"
                    bits.append(f"{short}:{status}")
            print(f"{key:36s} {' '.join(bits)}")
        for name, v in sorted(doc["naturality"].items()):
            print(f"naturality {name:25s} {'ok' if v else 'FAIL'}")
        lin = doc["checks"]["linear_algebra"]
        print(f"linear algebra {lin['passes']} passed, {lin['failures']} failed")
        print(f"overall: {'pass' if doc['ok'] else 'FAIL'}")
    return EXIT_OK if doc["ok"] else EXIT_VERIFICATION_FAILED


def _cmd_inspect(args) -> int:
    with open(args.input, "r", encoding="utf-8") as fh:
        doc = loads(fh.read())
    kind = doc.get("kind")
    if kind == "group":
        group = group_from_document(doc)
        print(f"group {group.name!r}: order {group.order}, abelian={group.is_abelian}")
    elif kind == "extension":
        ext = extension_from_document(doc)
        print(
            f"extension: |G|={ext.group.order} |N|={ext.nsub.order} "
            f"|Q|={ext.quotient.order}, split transversal={ext.is_split}"
        )
    elif kind == "module":
        raise InputError("module documents need a group; inspect the enclosing run instead")
    elif kind in ("seven_term_report", "cohomology", "verification_report"):
        sys.stdout.write(render_text(doc))
    else:
        raise InputError(f"unknown document kind {kind!r}")
    return EXIT_OK


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    handlers = {
        "cohomology": _cmd_cohomology,
        "seven-term": _cmd_seven_term,
        "verify": _cmd_verify,
        "inspect": _cmd_inspect,
    }
    try:
        return handlers[args.command](args)
    except SizeBudgetExceeded as exc:
        print(f"error[{exc.code}]: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (SevenTermError, OSError, ValueError, KeyError) as exc:
        code = getattr(exc, "code", "input")
        print(f"error[{code}]: {exc}", file=sys.stderr)
        return EXIT_INPUT_ERROR


if __name__ == "__main__":
    sys.exit(main())
