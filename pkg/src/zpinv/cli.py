"""Command-line front end.

Subcommands:

* ``beta``          Noether number with the per-degree dimension table.
* ``invariants``    Echelonized invariant basis in one (multi)degree.
* ``coinvariants``  Hilbert function of the coinvariant algebra.
* ``certify``       Lead-term certificate run.
* ``verify``        Batch verification against the closed-form values.

Exit codes: 0 success, 1 theorem violation or expected/computed
mismatch, 2 invalid input, 3 size budget exceeded.
"""

from __future__ import annotations

import argparse
import csv
import json
import platform
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

from . import __version__
from .action import lower_bound_witness, sigma
from .coinv import coinvariant_profile, leadterm_certificate
from .engine import (
    DEFAULT_COLUMN_CAP,
    invariant_basis,
    is_indecomposable,
    noether_number,
    search_bound,
)
from .errors import (
    BlockTooLargeError,
    ModuleSpecSyntaxError,
    PreconditionError,
    SizeBudgetError,
    TheoremViolationError,
    ZpinvError,
)
from .expected import (
    BUILTIN_CATALOG,
    MODE_FULL,
    MODE_WITNESS,
    CatalogEntry,
    expected_beta,
)
from .modspec import parse_module_spec

EXIT_OK = 0
EXIT_MISMATCH = 1
EXIT_INVALID = 2
EXIT_SIZE = 3


# -- suite ------------------------------------------------------------------------


@dataclass
class SuiteReport:
    entries: list[dict]
    overall_pass: bool
    counts: dict
    environment: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "entries": [dict(e) for e in self.entries],
            "overall_pass": self.overall_pass,
            "counts": dict(self.counts),
            "environment": dict(self.environment),
        }

    @classmethod
    def from_dict(cls, d: dict) -> "SuiteReport":
        return cls(
            entries=[dict(e) for e in d["entries"]],
            overall_pass=d["overall_pass"],
            counts=dict(d["counts"]),
            environment=dict(d.get("environment", {})),
        )


def _witness_check(spec, column_cap) -> dict | None:
    found = lower_bound_witness(spec)
    if found is None:
        return None
    witness, info = found
    invariant = bool(witness) and sigma(witness) == witness
    indec = invariant and is_indecomposable(spec, witness, column_cap)
    return {
        "family": info["family"],
        "k": info["k"],
        "degree": info["degree"],
        "source_monomial": info["source_monomial"],
        "nonzero": bool(witness),
        "invariant": invariant,
        "indecomposable": indec,
    }


def run_entry(entry: CatalogEntry, column_cap: int = DEFAULT_COLUMN_CAP) -> dict:
    """Run one catalog entry and return its JSON-ready report."""
    base = {
        "spec": entry.module,
        "p": entry.p,
        "blocks": None,
        "mode": entry.mode,
        "expected": None,
        "beta": None,
        "match": None,
        "bound": None,
        "table": None,
        "coinvariants": None,
        "certificates": None,
        "status": None,
        "timings": {},
    }
    t0 = time.perf_counter()
    try:
        spec = parse_module_spec(entry.module, entry.p)
    except ZpinvError as exc:
        base["status"] = "invalid"
        base["error"] = str(exc)
        return base
    base["blocks"] = list(spec.blocks)
    exp = expected_beta(spec)
    base["expected"] = exp.to_dict()
    try:
        if entry.mode == MODE_WITNESS:
            bound, _ = search_bound(spec)
            base["bound"] = bound
            witness = _witness_check(spec, column_cap)
            if witness is None:
                base["status"] = "invalid"
                base["error"] = "witness mode needs a (k-1)V2+Vn module, n in {3, 4}"
                return base
            base["certificates"] = {"witness": witness}
            ok = (
                witness["indecomposable"]
                and witness["degree"] == bound == exp.value
            )
            # indecomposable at the bound degree pins beta to the bound
            base["beta"] = exp.value if ok else None
            base["match"] = ok
            base["status"] = "ok" if ok else "mismatch"
        else:
            report = noether_number(spec, column_cap)
            base["beta"] = report.beta
            base["bound"] = report.search_bound
            base["table"] = report.table
            coin = coinvariant_profile(spec, column_cap)
            base["coinvariants"] = {
                "hilbert_function": coin.hilbert_function,
                "top_degree": coin.top_degree,
                "bound": coin.bound,
            }
            cert = leadterm_certificate(spec, column_cap)
            certs = {"leadterm": cert.to_dict()}
            witness = _witness_check(spec, column_cap)
            if witness is not None:
                certs["witness"] = witness
            base["certificates"] = certs
            witness_ok = witness is None or witness["indecomposable"]
            no_late_generators = all(
                row["dim_indec"] == 0
                for row in report.table
                if row["degree"] > report.beta
            )
            base["match"] = (
                report.beta == exp.value
                and cert.ok
                and witness_ok
                and no_late_generators
                and coin.top_degree <= coin.bound
            )
            base["status"] = "ok" if base["match"] else "mismatch"
    except SizeBudgetError as exc:
        base["status"] = "skipped"
        base["error"] = str(exc)
    except TheoremViolationError as exc:
        base["status"] = "violation"
        base["error"] = str(exc)
    base["timings"] = {"total_seconds": round(time.perf_counter() - t0, 6)}
    return base


def run_suite(
    entries=None,
    max_p: int | None = None,
    column_cap: int = DEFAULT_COLUMN_CAP,
    workers: int = 1,
    out_path: str | None = None,
) -> SuiteReport:
    """Run the catalog (builtin unless given) and collect a suite report."""
    if entries is None:
        entries = BUILTIN_CATALOG
    entries = [e for e in entries if max_p is None or e.p <= max_p]
    if workers > 1 and entries:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(lambda e: run_entry(e, column_cap), entries))
    else:
        results = [run_entry(e, column_cap) for e in entries]
    counts = {"ok": 0, "mismatch": 0, "invalid": 0, "skipped": 0, "violation": 0}
    for r in results:
        counts[r["status"]] += 1
    overall = counts["mismatch"] == 0 and counts["invalid"] == 0 and counts["violation"] == 0
    env = {
        "package_version": __version__,
        "python": platform.python_version(),
        "platform": platform.platform(),
    }
    report = SuiteReport(results, overall, counts, env)
    if out_path:
        _write_json(out_path, report.to_dict())
    return report


def load_catalog(path: str) -> list[CatalogEntry]:
    with open(path, "r", encoding="utf-8") as fh:
        data = json.load(fh)
    entries = data["entries"] if isinstance(data, dict) else data
    out = []
    for e in entries:
        out.append(
            CatalogEntry(int(e["p"]), str(e["module"]), e.get("mode", MODE_FULL))
        )
    return out


def _suite_exit_code(report: SuiteReport) -> int:
    if report.counts["invalid"]:
        return EXIT_INVALID
    if report.counts["mismatch"] or report.counts["violation"]:
        return EXIT_MISMATCH
    return EXIT_OK


# -- commands ----------------------------------------------------------------------


def _write_json(path: str, payload: dict):
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(payload, fh, indent=2)
        fh.write("\n")


def _cmd_beta(args) -> int:
    spec = parse_module_spec(args.module, args.p)
    report = noether_number(spec, args.column_cap)
    exp = expected_beta(spec)
    report.expected = exp.value
    print(f"module {spec}  blocks {list(spec.blocks)}")
    if report.note:
        print(f"note: {report.note}")
    print(f"beta = {report.beta}   expected {exp.value} (rule {exp.rule})   "
          f"search bound {report.search_bound}")
    print("degree  dim_poly  dim_inv  dim_dec  dim_indec")
    for row in report.table:
        print(
            f"{row['degree']:>6}  {row['dim_poly']:>8}  {row['dim_inv']:>7}  "
            f"{row['dim_dec']:>7}  {row['dim_indec']:>9}"
        )
    if args.json:
        _write_json(args.json, report.to_dict())
    if args.csv:
        with open(args.csv, "w", newline="", encoding="utf-8") as fh:
            writer = csv.writer(fh)
            writer.writerow(["degree", "dim_poly", "dim_inv", "dim_dec", "dim_indec"])
            for row in report.table:
                writer.writerow(
                    [row["degree"], row["dim_poly"], row["dim_inv"],
                     row["dim_dec"], row["dim_indec"]]
                )
    return EXIT_OK if report.beta == exp.value else EXIT_MISMATCH


def _cmd_invariants(args) -> int:
    spec = parse_module_spec(args.module, args.p)
    multidegree = None
    if args.multidegree:
        multidegree = tuple(int(x) for x in args.multidegree.split(","))
        basis = invariant_basis(spec, multidegree=multidegree, column_cap=args.column_cap)
        print(f"invariants of {spec} in multidegree {multidegree}: "
              f"dimension {basis.dimension}")
    else:
        if args.degree is None:
            raise PreconditionError("give --degree or --multidegree")
        basis = invariant_basis(spec, degree=args.degree, column_cap=args.column_cap)
        print(f"invariants of {spec} in degree {args.degree}: "
              f"dimension {basis.dimension}")
    for f in basis.basis:
        print(f"  {f}")
    if args.emit:
        payload = {
            "spec": spec.to_text(),
            "p": spec.p,
            "degree": args.degree,
            "multidegree": list(multidegree) if multidegree else None,
            "dimension": basis.dimension,
            "basis": [str(f) for f in basis.basis],
        }
        _write_json(args.emit, payload)
    return EXIT_OK


def _cmd_coinvariants(args) -> int:
    spec = parse_module_spec(args.module, args.p)
    report = coinvariant_profile(spec, args.column_cap)
    print(f"coinvariants of {spec}")
    print(f"hilbert function: {report.hilbert_function}")
    print(f"top degree {report.top_degree} <= bound {report.bound}")
    if args.json:
        _write_json(args.json, report.to_dict())
    return EXIT_OK


def _cmd_certify(args) -> int:
    spec = parse_module_spec(args.module, args.p)
    cert = leadterm_certificate(spec, args.column_cap)
    print(f"lead-term certificate for {spec}")
    print(
        f"checked {cert.a_monomials_checked}/{cert.a_monomials_total} "
        f"degree-{spec.p - 1} monomials"
        + (" (sampled)" if cert.sampled else "")
    )
    print(f"orbit products certified: {cert.orbit_products_ok}")
    print(
        f"staircase bound {cert.staircase_bound}, observed top degree "
        f"{cert.dimension_top_degree}, agree: {cert.agree}"
    )
    print(f"certificate ok: {cert.ok}")
    if args.json:
        _write_json(args.json, cert.to_dict())
    return EXIT_OK if cert.ok else EXIT_MISMATCH


def _cmd_verify(args) -> int:
    entries = load_catalog(args.catalog) if args.catalog else None
    report = run_suite(
        entries=entries,
        max_p=args.max_p,
        column_cap=args.column_cap,
        workers=args.workers,
        out_path=args.out,
    )
    for e in report.entries:
        beta = e["beta"]
        expected = e["expected"]["value"] if e["expected"] else None
        line = (
            f"p={e['p']:<2} {e['spec']:<10} [{e['mode']:<7}] "
            f"beta={beta!s:<4} expected={expected!s:<4} status={e['status']}"
        )
        print(line)
    print(
        f"overall: {'PASS' if report.overall_pass else 'FAIL'}  "
        + " ".join(f"{k}={v}" for k, v in report.counts.items())
    )
    return _suite_exit_code(report)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="zpinv",
        description=(
            "Exact invariant theory of cyclic prime-order group "
            "representations over F_p"
        ),
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(sp, module=True):
        sp.add_argument("--p", type=int, required=True, help="the prime p")
        if module:
            sp.add_argument(
                "--module", required=True,
                help="module spec, e.g. V2, 2V2+V4, 3V1+V2",
            )
        sp.add_argument(
            "--column-cap", type=int, default=DEFAULT_COLUMN_CAP,
            help="max columns per multidegree block",
        )

    sp = sub.add_parser("beta", help="Noether number with per-degree table")
    add_common(sp)
    sp.add_argument("--json", help="write the report as JSON")
    sp.add_argument("--csv", help="write the per-degree table as CSV")
    sp.set_defaults(func=_cmd_beta)

    sp = sub.add_parser("invariants", help="invariant basis in one (multi)degree")
    add_common(sp)
    sp.add_argument("--degree", type=int, help="total degree")
    sp.add_argument("--multidegree", help="comma-separated per-summand degrees")
    sp.add_argument("--emit", help="write the basis as JSON")
    sp.set_defaults(func=_cmd_invariants)

    sp = sub.add_parser("coinvariants", help="coinvariant Hilbert function")
    add_common(sp)
    sp.add_argument("--json", help="write the report as JSON")
    sp.set_defaults(func=_cmd_coinvariants)

    sp = sub.add_parser("certify", help="lead-term certificate")
    add_common(sp)
    sp.add_argument("--json", help="write the report as JSON")
    sp.set_defaults(func=_cmd_certify)

    sp = sub.add_parser("verify", help="run the verification catalog")
    sp.add_argument("--max-p", type=int, help="only run entries with p <= this")
    sp.add_argument("--catalog", help="JSON catalog file (default: builtin)")
    sp.add_argument("--out", help="write the suite report as JSON")
    sp.add_argument(
        "--column-cap", type=int, default=DEFAULT_COLUMN_CAP,
        help="max columns per multidegree block",
    )
    sp.add_argument("--workers", type=int, default=1, help="parallel entries")
    sp.set_defaults(func=_cmd_verify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (BlockTooLargeError, ModuleSpecSyntaxError, PreconditionError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except SizeBudgetError as exc:
        print(f"size budget exceeded: {exc}", file=sys.stderr)
        return EXIT_SIZE
    except TheoremViolationError as exc:
        print(f"theorem violation: {exc}", file=sys.stderr)
        return EXIT_MISMATCH


if __name__ == "__main__":
    sys.exit(main())
