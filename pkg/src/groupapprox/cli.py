"""Command-line interface.

One command per process; every command emits a single JSON document
(stdout, or ``--out`` file) while ``table`` prints a fixed-width text view
to stdout and reserves JSON for ``--out``.  Exit status: 0 success,
2 usage error, 3 capacity or budget exhausted (bounds-only document),
4 verification found violations (document carries the evidence).
"""

from __future__ import annotations

import argparse
import math
import sys
import time

from .bounds import agreement_bounds, worst_case_upper_bounds
from .errors import (
    CapacityError,
    FormatError,
    GroupAxiomError,
    ParameterError,
    ScopeError,
)
from .groups import build_group, canonical_spec, catalog_up_to
from .jk import (
    DEFAULT_SAMPLES,
    SigmaMap,
    jk_group,
    singer_sigma,
    verify_affapp_one,
    verify_enapp_zero,
)
from .reporting import (
    bounds_document,
    cache_get,
    cache_put,
    compute_document,
    document_bytes,
    metric_label,
    parse_metric_label,
    partition_document,
    table_document,
    table_row,
    table_text,
    verify_document,
    witness_document,
    write_document,
)
from .search import (
    DEFAULT_BUDGET,
    ApproxCertificate,
    SearchStats,
    approximability,
    lower_bound_certificates,
    worst_case_value,
)
from .witnesses import (
    build_avoiding_permutation,
    cyclic_enapp_witness,
    prime_square_witness,
    rem_quot_witness,
    small_group_witnesses,
)

__all__ = ["main"]

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_CAPACITY = 3
EXIT_VIOLATION = 4


def _build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="groupapprox",
        description="Worst-case approximability of functions on finite "
        "groups by endomorphisms and affine maps.",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("compute", help="worst-case value for one group")
    p.add_argument("--group", required=True, metavar="SPEC",
                   help="e.g. cyclic(6), product(cyclic(2),cyclic(3)), "
                        "sym(3), jk(3,0,1), file(PATH)")
    p.add_argument("--metric", required=True, choices=("enapp", "affapp"))
    mode = p.add_mutually_exclusive_group()
    mode.add_argument("--exact", dest="bounds_only", action="store_false",
                      help="search for the exact value (default)")
    mode.add_argument("--bounds-only", dest="bounds_only", action="store_true",
                      help="emit certificate bounds without searching")
    p.set_defaults(bounds_only=False)
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET,
                   help="search node budget (default %(default)s)")
    p.add_argument("--no-cache", action="store_true")
    p.add_argument("--out", metavar="PATH")

    p = sub.add_parser("table", help="catalog table of worst-case values")
    p.add_argument("--max-order", type=int, required=True)
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    p.add_argument("--out", metavar="PATH")

    p = sub.add_parser("verify-jk", help="scan the order-p^8 constructions")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--lambda", dest="lam", required=True, metavar="L1,L2")
    p.add_argument("--mode", choices=("full", "sampled"), default="full")
    p.add_argument("--check", choices=("affine", "endo"), default="affine",
                   help="affine: no affine map agrees twice; endo: the "
                        "dodging witness meets no endomorphism")
    p.add_argument("--sigma", default="singer", metavar="singer|FILE",
                   help="fixed-point-free twist: 'singer' or a file of 16 "
                        "matrix entries")
    p.add_argument("--samples", type=int, default=DEFAULT_SAMPLES)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--allow-large", action="store_true",
                   help="permit primes beyond 3 (sampled checks only)")
    p.add_argument("--out", metavar="PATH")

    p = sub.add_parser("bounds", help="two-sided agreement bounds")
    p.add_argument("--m1", type=int, required=True)
    p.add_argument("--m2", type=int, required=True)
    p.add_argument("--f", required=True, metavar="log2|NUM|FILE",
                   help="family-size exponent: 'log2' for log2(m1), a "
                        "number, or a file containing one")
    p.add_argument("--out", metavar="PATH")

    p = sub.add_parser("partition-avoid",
                       help="permutation avoiding every partition class")
    p.add_argument("--classes", required=True, metavar="a,b,c,...",
                   help="comma-separated class sizes")
    p.add_argument("--out", metavar="PATH")

    p = sub.add_parser("witness", help="emit a named witness function")
    p.add_argument("--name", required=True,
                   metavar="cyclic-enapp:N|prime-square:P|rem-quot:P,K|"
                           "z6-swap|klein|sym3")
    p.add_argument("--out", metavar="PATH")
    return ap


def _emit(doc: dict, out: str | None, *, stdout: bool = True) -> None:
    if out:
        write_document(doc, out)
    elif stdout:
        sys.stdout.write(document_bytes(doc).decode("utf-8"))


def _bounds_only_cert(g, metric: str) -> ApproxCertificate:
    t0 = time.perf_counter()
    lb = lower_bound_certificates(g)[metric]
    n = g.order
    formula_upper = n
    if n >= 2:
        endo_bound, affine_bound = worst_case_upper_bounds(n)
        bound = endo_bound if metric == "endo" else affine_bound
        formula_upper = min(n, math.floor(bound + 1e-9))
    stats = SearchStats(nodes=0, elapsed=time.perf_counter() - t0, thresholds=())
    return ApproxCertificate(
        g, metric, False, lb.value, max(lb.value, formula_upper), None, lb, stats
    )


def _cmd_compute(args) -> int:
    spec = canonical_spec(args.group)
    metric = parse_metric_label(args.metric)
    if not args.no_cache:
        doc = cache_get(spec, metric)
        if doc is not None:
            doc["cached"] = True
            _emit(doc, args.out)
            return EXIT_OK
    g = build_group(spec)
    status = EXIT_OK
    if args.bounds_only:
        cert = _bounds_only_cert(g, metric)
    else:
        try:
            cert = worst_case_value(g, metric, budget=args.budget)
        except CapacityError as exc:
            print(f"warning: {exc}; reporting bounds only", file=sys.stderr)
            cert = _bounds_only_cert(g, metric)
            status = EXIT_CAPACITY
        else:
            if not cert.exact:
                status = EXIT_CAPACITY
    doc = compute_document(spec, cert)
    if status == EXIT_OK and not args.bounds_only and not args.no_cache:
        cache_put(spec, metric, doc)
    _emit(doc, args.out)
    return status


def _cmd_table(args) -> int:
    groups = catalog_up_to(args.max_order)
    rows = []
    status = EXIT_OK
    for g in groups:
        certs = {}
        for metric in ("endo", "affine"):
            cert = worst_case_value(g, metric, budget=args.budget)
            if not cert.exact:
                status = EXIT_CAPACITY
            certs[metric] = cert
        rows.append(table_row(g.name, g.name, g.order, certs["endo"], certs["affine"]))
    doc = table_document(args.max_order, rows)
    sys.stdout.write(table_text(doc))
    _emit(doc, args.out, stdout=False)
    return status


def _parse_lambda(text: str) -> tuple[int, int]:
    parts = text.split(",")
    if len(parts) != 2:
        raise ParameterError(f"--lambda needs two entries, got {text!r}")
    try:
        return int(parts[0]), int(parts[1])
    except ValueError:
        raise ParameterError(f"--lambda needs integers, got {text!r}") from None


def _load_sigma(arg: str, p: int):
    if arg == "singer":
        return singer_sigma(p)
    try:
        with open(arg, "r", encoding="utf-8") as fh:
            entries = [int(tok) for tok in fh.read().split()]
    except OSError as exc:
        raise ParameterError(f"cannot read sigma file {arg!r}: {exc}") from None
    except ValueError:
        raise ParameterError(f"sigma file {arg!r} must hold integers") from None
    if len(entries) != 16:
        raise ParameterError(
            f"sigma file {arg!r} must hold 16 entries, got {len(entries)}"
        )
    rows = tuple(
        tuple(v % p for v in entries[i * 4:(i + 1) * 4]) for i in range(4)
    )
    # built without the fixed-point-free gate on purpose: a degenerate
    # sigma should surface as scan violations (exit 4), not a usage error
    return SigmaMap(p, rows)


def _cmd_verify_jk(args) -> int:
    lam1, lam2 = _parse_lambda(args.lam)
    g = jk_group(args.p, lam1, lam2, allow_large=args.allow_large)
    if args.check == "endo":
        report = verify_enapp_zero(g)
    else:
        sigma = _load_sigma(args.sigma, g.p)
        report = verify_affapp_one(
            g, sigma, mode=args.mode, samples=args.samples, seed=args.seed
        )
    doc = verify_document(report)
    _emit(doc, args.out)
    return EXIT_OK if report.passed else EXIT_VIOLATION


def _parse_fval(arg: str, m1: int) -> float:
    if arg == "log2":
        return math.log2(m1)
    try:
        return float(arg)
    except ValueError:
        pass
    try:
        with open(arg, "r", encoding="utf-8") as fh:
            return float(fh.read().split()[0])
    except (OSError, ValueError, IndexError) as exc:
        raise ParameterError(
            f"--f must be 'log2', a number, or a file containing one; "
            f"got {arg!r} ({exc})"
        ) from None


def _cmd_bounds(args) -> int:
    fval = _parse_fval(args.f, args.m1)
    report = agreement_bounds(args.m1, args.m2, fval)
    _emit(bounds_document(report), args.out)
    return EXIT_OK


def _cmd_partition_avoid(args) -> int:
    try:
        sizes = [int(tok) for tok in args.classes.split(",") if tok]
    except ValueError:
        raise ParameterError(
            f"--classes needs comma-separated sizes, got {args.classes!r}"
        ) from None
    if not sizes or any(s < 1 for s in sizes):
        raise ParameterError("class sizes must be positive")
    classes = []
    start = 0
    for s in sizes:
        classes.append(list(range(start, start + s)))
        start += s
    perm = build_avoiding_permutation(classes)
    _emit(partition_document(classes, perm), args.out)
    return EXIT_OK


def _cmd_witness(args) -> int:
    name = args.name
    if name.startswith("cyclic-enapp:"):
        fn = cyclic_enapp_witness(int(name.split(":", 1)[1]))
        metric = "endo"
    elif name.startswith("prime-square:"):
        fn = prime_square_witness(int(name.split(":", 1)[1]))
        metric = "affine"
    elif name.startswith("rem-quot:"):
        parts = name.split(":", 1)[1].split(",")
        if len(parts) != 2:
            raise ParameterError(f"rem-quot takes P,K; got {name!r}")
        fn = rem_quot_witness(int(parts[0]), int(parts[1]))
        metric = "affine"
    elif name in ("z6-swap", "klein", "sym3"):
        fn = small_group_witnesses()[name]
        # the klein table dodges endomorphisms; the other two dodge affine maps
        metric = "endo" if name == "klein" else "affine"
    else:
        raise ParameterError(f"unknown witness name {name!r}")
    agreement, _ = approximability(fn, metric)
    doc = witness_document(name, fn.group.name, fn, metric, agreement)
    _emit(doc, args.out)
    return EXIT_OK


_COMMANDS = {
    "compute": _cmd_compute,
    "table": _cmd_table,
    "verify-jk": _cmd_verify_jk,
    "bounds": _cmd_bounds,
    "partition-avoid": _cmd_partition_avoid,
    "witness": _cmd_witness,
}


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse exits 2 on usage errors
        return int(exc.code or 0)
    try:
        return _COMMANDS[args.command](args)
    except (ParameterError, FormatError, GroupAxiomError, ScopeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except CapacityError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CAPACITY


if __name__ == "__main__":
    sys.exit(main())
