"""Command-line front end.

Exit codes: 0 when every hard invariant holds, 1 on an invariant failure or
invalid input file, 2 on usage errors.  Reports go to ``--out`` (``-`` for
standard output), logs to standard error.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from . import ingest
from .complex import continuation_counts, validate
from .enumeration import enumerate_gallery_loops, enumerate_geodesic_loops
from .errors import AxiomViolation, BoundExceeded, NotPrimePower, ParseError, PreconditionFailed, SearchExhausted
from .operators import build_A_direct, build_L, build_pi, build_T, hecke_relations, trace_comparison
from .projgeom import build_plane, count_common_neighbors, right_inverse_check
from .zeta import trace_powers, zeta_report

log = logging.getLogger("pgl3zeta")

MAX_ORDER = 12


class UsageError(Exception):
    pass


def _emit(text, out):
    if out in (None, "-"):
        sys.stdout.write(text)
        sys.stdout.flush()
    else:
        Path(out).write_text(text)
        log.info("wrote %s", out)


def _dump(obj):
    return json.dumps(obj, indent=2) + "\n"


def _load(path):
    p = Path(path)
    if not p.is_file():
        raise UsageError(f"input file not found: {path}")
    return ingest.load(p)


def _check_out(path):
    if path not in (None, "-") and not Path(path).resolve().parent.is_dir():
        raise UsageError(f"output directory does not exist: {Path(path).parent}")


# -- subcommands --------------------------------------------------------------


def cmd_local_check(args):
    plane = build_plane(args.q)
    inv = right_inverse_check(plane)
    ok = inv.corrected_is_identity
    report = {"q": args.q, "points": plane.size, "right_inverse": inv.to_json()}
    try:
        report["star"] = count_common_neighbors(plane).to_json()
    except AxiomViolation as exc:
        report["star"] = {"error": str(exc), "failures": exc.failures}
        ok = False
    discrepancies = []
    if not inv.claimed_is_identity:
        discrepancies.append("claimed right inverse T' does not satisfy T T' = I")
    if not report["star"].get("triple_bound_holds", True):
        discrepancies.append("three vertices can share more than one common neighbour")
    report["discrepancies"] = discrepancies
    report["ok"] = ok
    for d in discrepancies:
        log.warning("%s", d)
    _emit(_dump(report), args.out)
    return 0 if ok else 1


def cmd_generate(args):
    pres = ingest.search_presentation(args.q, seed=args.seed, node_budget=args.node_budget)
    c = ingest.build_quotient(pres)
    report = validate(c)
    if args.presentation_out:
        ingest.save_presentation(pres, args.presentation_out)
    _emit(ingest.dumps_complex(c), args.out)
    log.info("q=%d: %d vertices, %d edges, %d chambers", c.q, len(c.vertices), len(c.edges), len(c.chambers))
    if not report.ok:
        for v in report.violations:
            log.error("%s", v)
        return 1
    return 0


def cmd_validate(args):
    try:
        c = _load(args.input)
    except ParseError as exc:
        _emit(_dump({"ok": False, "violations": [str(exc)]}), args.out)
        log.error("%s", exc)
        return 1
    report = validate(c)
    out = report.to_json()
    if report.ok:
        try:
            out["continuations"] = continuation_counts(c).to_json()
        except (AxiomViolation, PreconditionFailed) as exc:
            out["ok"] = False
            out["violations"].append(str(exc))
    _emit(_dump(out), args.out)
    for v in out["violations"]:
        log.error("%s", v)
    return 0 if out["ok"] else 1


def _valid_complex(path):
    c = _load(path)
    report = validate(c)
    if not report.ok:
        raise PreconditionFailed(f"complex fails validation: {report.violations[:3]}")
    return c


def cmd_operators(args):
    c = _valid_complex(args.input)
    q = c.q
    T = build_T(c)
    gal = build_L(c)
    pi1, pi2 = build_pi(c, 1), build_pi(c, 2)
    rel = hecke_relations(c, max(args.n_max, 4))
    traces = trace_comparison(c, args.n_max)
    checks = {
        "T_column_sums_q2": set(T.col_sums()) <= {q * q},
        "pi1_row_sums": set(pi1.row_sums()) <= {q * q + q + 1},
        "pi2_row_sums": set(pi2.row_sums()) <= {q * q + q + 1},
        "hecke_relations": rel.to_json(),
        "hecke_hard_ok": rel.hard_ok,
        "trace_T_vs_trace_A": traces.to_json(),
    }
    report = {
        "q": q,
        "bases": {
            "vertices": [v.id for v in c.vertices],
            "edges": [e.id for e in c.edges],
            "chambers": [ch.id for ch in c.chambers],
        },
        "T": T.to_json(),
        "L1": gal.L1.to_json(),
        "L2": gal.L2.to_json(),
        "L3": gal.L3.to_json(),
        "L": gal.L.to_json(),
        "pi1": pi1.to_json(),
        "pi2": pi2.to_json(),
        "A": {str(n): build_A_direct(c, n).to_json() for n in range(1, args.n_max + 1)},
        "checks": checks,
    }
    _emit(_dump(report), args.out)
    if not traces.equal:
        log.warning("tr T^n differs from tr A_n for some n <= %d", args.n_max)
    ok = checks["T_column_sums_q2"] and checks["pi1_row_sums"] and checks["pi2_row_sums"] and rel.hard_ok
    return 0 if ok else 1


def cmd_zeta(args):
    c = _valid_complex(args.input)
    report = zeta_report(c, order=args.order, m_max=args.m_max, timing=args.timing)
    for d in report.discrepancies:
        log.warning("%s", d)
    for f in report.hard_failures:
        log.error("%s", f)
    _emit(_dump(report.to_json()), args.out)
    return 1 if report.hard_failures else 0


def cmd_enumerate(args):
    c = _valid_complex(args.input)
    T = build_T(c)
    geo = enumerate_geodesic_loops(c, args.n_max, trace_T=trace_powers(T, args.n_max))
    table = geo.table
    if args.gallery_n_max:
        L = build_L(c).L
        gal = enumerate_gallery_loops(c, args.gallery_n_max, trace_L=trace_powers(L, args.gallery_n_max))
        table.gallery_sum, table.trace_L = gal.gallery_sum, gal.trace_L
    _emit(table.to_csv(), args.out)
    ok = all(table.geodesic_sum[n] == table.trace_T[n] for n in table.geodesic_sum)
    if not ok:
        log.error("geodesic enumeration disagrees with tr T^n")
    if any(table.gallery_sum[n] != table.trace_L[n] for n in table.gallery_sum):
        log.warning("gallery enumeration differs from tr L^n")
    return 0 if ok else 1


# -- parser -------------------------------------------------------------------


def _bounded(lo, hi):
    def parse(s):
        try:
            v = int(s)
        except ValueError:
            raise argparse.ArgumentTypeError(f"expected an integer, got {s!r}") from None
        if not lo <= v <= hi:
            raise argparse.ArgumentTypeError(f"must lie in {lo}..{hi}")
        return v

    return parse


def build_parser():
    p = argparse.ArgumentParser(prog="pgl3zeta", description="Zeta functions of finite quotients of the A2 building.")
    p.add_argument("-v", "--verbose", action="count", default=0, help="more logging on stderr")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("local-check", help="projective-plane checks of the local edge operator")
    s.add_argument("--q", type=int, required=True)
    s.add_argument("--out", default="-")
    s.set_defaults(func=cmd_local_check)

    s = sub.add_parser("generate", help="search a triangle presentation and write its quotient")
    s.add_argument("--q", type=int, required=True)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--node-budget", type=int, default=2_000_000)
    s.add_argument("--out", default="-")
    s.add_argument("--presentation-out", default=None)
    s.set_defaults(func=cmd_generate)

    s = sub.add_parser("validate", help="check the counting axioms of a complex file")
    s.add_argument("--in", dest="input", required=True)
    s.add_argument("--out", default="-")
    s.set_defaults(func=cmd_validate)

    s = sub.add_parser("operators", help="export T, L, pi1, pi2 and A_n")
    s.add_argument("--in", dest="input", required=True)
    s.add_argument("--out", default="-")
    s.add_argument("--n-max", type=_bounded(1, MAX_ORDER), default=8)
    s.set_defaults(func=cmd_operators)

    s = sub.add_parser("zeta", help="zeta polynomials, series checks and certificates")
    s.add_argument("--in", dest="input", required=True)
    s.add_argument("--out", default="-")
    s.add_argument("--order", type=_bounded(0, MAX_ORDER), default=8)
    s.add_argument("--m-max", type=_bounded(1, 10_000), default=64)
    s.add_argument("--timing", action="store_true", help="include wall-clock timings (breaks byte-identical output)")
    s.set_defaults(func=cmd_zeta)

    s = sub.add_parser("enumerate", help="trace table of enumerated loops as CSV")
    s.add_argument("--in", dest="input", required=True)
    s.add_argument("--out", default="-")
    s.add_argument("--n-max", type=_bounded(1, 10), default=8)
    s.add_argument("--gallery-n-max", type=_bounded(0, 3), default=0)
    s.set_defaults(func=cmd_enumerate)
    return p


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    level = logging.WARNING - 10 * min(args.verbose, 2)
    logging.basicConfig(level=level, stream=sys.stderr, format="%(levelname)s %(name)s: %(message)s")
    try:
        _check_out(getattr(args, "out", None))
        return args.func(args)
    except (UsageError, NotPrimePower, BoundExceeded) as exc:
        print(f"pgl3zeta: error: {exc}", file=sys.stderr)
        return 2
    except (ParseError, PreconditionFailed, AxiomViolation, SearchExhausted) as exc:
        print(f"pgl3zeta: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
