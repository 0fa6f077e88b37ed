"""Command-line driver.

Subcommands: catalog, table, identities, verify, check.  Exit status 0
when every selected check passes or is not applicable, 1 when any check
fails, 2 on input or validation errors.
"""

from __future__ import annotations

import argparse
import os
import sys
from typing import List, Optional, Sequence

from .charts import (
    CHART_BUILDERS,
    ChartError,
    DEFAULT_SEED,
    MetricChart,
    catalog_chart,
    load_chart,
)
from .complexes import complex_for
from .identities import IDENTITY_CATALOG, IDENTITY_IDS
from .models import CATALOG, LieModel, ModelError, catalog_model, load_model
from .report import harmonic_table, rows_to_csv, rows_to_text, table_rows
from .theorems import NOT_APPLICABLE, PASS, THEOREM_ORDER, run_theorems

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_INPUT = 2


def _resolve_model(spec: str) -> LieModel:
    if spec in CATALOG:
        return catalog_model(spec)
    if os.path.exists(spec):
        return load_model(spec)
    raise ModelError(
        "E-SCHEMA",
        f"{spec!r} is neither a catalog model ({', '.join(CATALOG)}) nor a file",
    )


def _resolve_chart(spec: str) -> MetricChart:
    if spec in CHART_BUILDERS:
        return catalog_chart(spec)
    if os.path.exists(spec):
        return load_chart(spec)
    raise ChartError(
        f"{spec!r} is neither a catalog chart ({', '.join(CHART_BUILDERS)}) nor a file"
    )


def cmd_catalog(args) -> int:
    if args.action == "list":
        print(", ".join(CATALOG))
        return EXIT_OK
    raise ModelError("E-SCHEMA", f"unknown catalog action {args.action!r}")


def cmd_table(args) -> int:
    model = _resolve_model(args.model)
    table = harmonic_table(model)
    rows = table_rows(table)
    if args.format == "csv":
        sys.stdout.write(rows_to_csv(rows))
    else:
        sys.stdout.write(rows_to_text(table, rows))
    if table.betti_matches_expected is False:
        print("FAIL: computed betti numbers differ from the stored expectation")
        return EXIT_FAIL
    return EXIT_OK


def cmd_identities(args) -> int:
    failures = 0
    if args.chart is not None:
        chart = _resolve_chart(args.chart)
        print(f"identity suite on chart {chart.name!r} "
              f"(spanning monomials + {args.trials} seeded jets, seed {args.seed})")
        forms = chart.spanning_forms() + chart.random_jet_forms(args.trials, args.seed)
        for identity_id in IDENTITY_IDS:
            residual = chart.identity_residual(identity_id, forms)
            status = "ok" if residual.is_zero else f"FAIL (max residual {residual.max_abs})"
            print(f"  {identity_id:5s} {IDENTITY_CATALOG[identity_id].text:32s} {status}")
            failures += 0 if residual.is_zero else 1
    else:
        model = _resolve_model(args.model)
        ic = complex_for(model)
        print(f"identity suite on the invariant complex of {model.name!r}")
        for identity_id in IDENTITY_IDS:
            residual = ic.identity_residual(identity_id)
            status = "ok" if residual == 0 else f"FAIL (max residual {residual})"
            print(f"  {identity_id:5s} {IDENTITY_CATALOG[identity_id].text:32s} {status}")
            failures += 0 if residual == 0 else 1
    return EXIT_FAIL if failures else EXIT_OK


def _print_verdicts(verdicts, explain: bool) -> int:
    failures = 0
    for v in verdicts:
        print(f"  {v.theorem_id:4s} {v.status}")
        if v.status == NOT_APPLICABLE:
            print(f"        hypothesis: {v.details.get('violated_hypothesis')}")
        elif explain:
            print(f"        {v.explanation}")
            for key, value in v.details.items():
                print(f"        {key} = {value}")
        if not v.ok:
            failures += 1
    return failures


def cmd_verify(args) -> int:
    model = _resolve_model(args.model)
    ids = args.theorem or None
    verdicts = run_theorems(model, ids)
    print(f"theorem checks for {model.name!r}")
    failures = _print_verdicts(verdicts, args.explain)
    return EXIT_FAIL if failures else EXIT_OK


def cmd_check(args) -> int:
    model = _resolve_model(args.model)
    status = EXIT_OK
    if args.suite in ("identities", "all"):
        rc = cmd_identities(
            argparse.Namespace(model=args.model, chart=None, seed=args.seed, trials=32)
        )
        status = max(status, rc)
        if args.suite == "all":
            for chart_name in CHART_BUILDERS:
                rc = cmd_identities(
                    argparse.Namespace(
                        model=args.model, chart=chart_name, seed=args.seed, trials=32
                    )
                )
                status = max(status, rc)
    if args.suite in ("tables", "all"):
        rc = cmd_table(argparse.Namespace(model=args.model, format=args.format))
        status = max(status, rc)
    if args.suite in ("theorems", "all"):
        rc = cmd_verify(
            argparse.Namespace(model=args.model, theorem=None, explain=args.explain)
        )
        status = max(status, rc)
    return status


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="lckcalc",
        description=(
            "Exact operator calculus and harmonic-form verification on "
            "Hermitian, LCK and Vaisman model geometries"
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_catalog = sub.add_parser("catalog", help="catalog operations")
    p_catalog.add_argument("action", choices=["list"])
    p_catalog.set_defaults(fn=cmd_catalog)

    p_table = sub.add_parser("table", help="harmonic dimension table")
    p_table.add_argument("--model", required=True)
    p_table.add_argument("--format", choices=["text", "csv"], default="text")
    p_table.set_defaults(fn=cmd_table)

    p_id = sub.add_parser("identities", help="run the 20-identity suite")
    p_id.add_argument("--model", default="torus4")
    p_id.add_argument("--chart", default=None,
                      help="jet chart (catalog name or file) instead of a model")
    p_id.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p_id.add_argument("--trials", type=int, default=32)
    p_id.set_defaults(fn=cmd_identities)

    p_verify = sub.add_parser("verify", help="run theorem checks")
    p_verify.add_argument("--model", required=True)
    p_verify.add_argument(
        "--theorem", action="append", metavar="ID",
        help=f"theorem id filter; known ids: {', '.join(THEOREM_ORDER)}",
    )
    p_verify.add_argument("--explain", action="store_true",
                          help="print compared quantities per theorem")
    p_verify.set_defaults(fn=cmd_verify)

    p_check = sub.add_parser("check", help="combined suites")
    p_check.add_argument("--model", required=True)
    p_check.add_argument(
        "--suite", choices=["identities", "tables", "theorems", "all"], default="all"
    )
    p_check.add_argument("--format", choices=["text", "csv"], default="text")
    p_check.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p_check.add_argument("--explain", action="store_true")
    p_check.set_defaults(fn=cmd_check)

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except (ModelError, ChartError, KeyError) as exc:
        message = exc.args[0] if exc.args else exc
        print(f"error: {message}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
