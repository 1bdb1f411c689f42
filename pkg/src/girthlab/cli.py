"""``girthlab`` command line tool.

Exit codes: 0 success, 1 semantic failure (failed certificate, strict
audit violation, unmet hypothesis), 2 usage or parse error. ``-`` reads a
graph from stdin. Tables are tab separated unless ``--json`` is given.
"""
from __future__ import annotations

import argparse
import os
import sys

from . import __version__, constants, cycles, edgestats, fas, formats
from .errors import GirthlabError, GraphError, GridTooCoarse, OutOfRange
from .graph import GenSpec, gamma
from .reports import Report, clean_float, sha256_text

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def parse_m_range(text: str) -> tuple[int, int]:
    """``"5"`` or ``"3..8"``; both ends must be at least 3."""
    lo_s, sep, hi_s = text.partition("..")
    try:
        lo = int(lo_s)
        hi = int(hi_s) if sep else lo
    except ValueError:
        raise UsageError(f"bad m range {text!r}; expected M or M..N") from None
    if lo < 3 or hi < 3:
        raise UsageError("m must be ≥ 3")
    if hi < lo:
        raise UsageError(f"empty m range {text!r}")
    return lo, hi


def _single_m(text: str) -> int:
    lo, hi = parse_m_range(text)
    if lo != hi:
        raise UsageError("this command takes a single m")
    return lo


def _fmt(x) -> str:
    if x is None:
        return "-"
    if isinstance(x, bool):
        return "true" if x else "false"
    if isinstance(x, float):
        return f"{x:.10g}"
    if isinstance(x, (list, tuple)):
        return " ".join(_fmt(y) for y in x)
    return str(x)


def _kv(out, pairs) -> None:
    for k, v in pairs:
        out.write(f"{k}\t{_fmt(v)}\n")


def _read_graph(path: str):
    if path == "-":
        text = sys.stdin.read()
    else:
        try:
            with open(path, encoding="utf-8") as fh:
                text = fh.read()
        except OSError as exc:
            raise UsageError(f"cannot read {path}: {exc.strerror}") from None
    return formats.parse_any(text), {"path": path, "sha256": sha256_text(text)}


def _emit(args, report: Report, tsv) -> None:
    if args.json:
        sys.stdout.write(report.dumps())
    else:
        tsv(sys.stdout)


# --------------------------------------------------------------------------
# commands


def cmd_constants(args) -> int:
    lo, hi = parse_m_range(args.m)
    rows = constants.bound_table(lo, hi) if args.tol is None else _table_with_tol(lo, hi, args.tol)
    payload = [r.to_dict() for r in rows]
    # a single m gives a single object rather than a one-row list
    report = Report("constants", {"m": [lo, hi], "tol": args.tol}, payload[0] if lo == hi else payload)
    cols = list(payload[0])

    def tsv(out):
        out.write("\t".join(cols) + "\n")
        for row in payload:
            out.write("\t".join(_fmt(row[c]) for c in cols) + "\n")

    _emit(args, report, tsv)
    return EXIT_OK


def _table_with_tol(lo: int, hi: int, tol: float):
    rows = []
    for m in range(lo, hi + 1):
        row = constants.bound_row(m)
        row.alpha = constants.alpha(m, tol)
        row.alpha_residual = constants.alpha_equation(row.alpha, m)
        rows.append(row)
    return rows


def cmd_certify(args) -> int:
    m = _single_m(args.m)
    if args.theorem == 1:
        cert = constants.certify_theorem1(m, args.alpha)
    else:
        if m not in constants.BETA_TABLE:
            raise UsageError("theorem 2 is calibrated for 3 <= m <= 8")
        try:
            cert = constants.certify_theorem2(m, args.alpha, args.grid)
        except GridTooCoarse as exc:
            print(f"error: {exc}; rerun with a larger --grid", file=sys.stderr)
            return EXIT_FAIL
    inputs = {"theorem": args.theorem, "m": m, "alpha": args.alpha, "grid": args.grid}
    report = Report("certify", inputs, cert.to_dict())

    def tsv(out):
        _kv(out, [("theorem", cert.theorem), ("m", cert.m), ("alpha_used", cert.alpha_used), ("verdict", cert.verdict)])
        _kv(out, sorted(cert.evidence.items()))

    _emit(args, report, tsv)
    return EXIT_OK if cert.certified else EXIT_FAIL


def cmd_gen(args) -> int:
    params: dict = {}
    if args.kind == "circulant":
        if not args.offsets:
            raise UsageError("circulant needs --offsets")
        params["offsets"] = [int(s) for s in args.offsets.split(",")]
    elif args.kind == "outregular-random":
        params.update(r=args.r, seed=args.seed)
    elif args.kind == "mfree-random":
        if args.m is None:
            raise UsageError("mfree-random needs --m")
        params.update(m=_single_m(args.m), density=args.density, seed=args.seed)
    d = GenSpec(args.kind, args.n, params).build()
    sys.stdout.write(formats.format_json(d) + "\n" if args.json else formats.format_edge_list(d))
    return EXIT_OK


def cmd_girth(args) -> int:
    d, src = _read_graph(args.file)
    w = cycles.shortest_cycle(d, args.threads)
    g = None if w is None else w.length
    report = Report("girth", {"file": src}, {"girth": g, "witness": None if w is None else w.to_dict()})

    def tsv(out):
        out.write(("acyclic" if g is None else str(g)) + "\n")
        if args.witness and w is not None:
            out.write(_fmt(w.vertices) + "\n")

    _emit(args, report, tsv)
    return EXIT_OK


def cmd_find_cycle(args) -> int:
    d, src = _read_graph(args.file)
    m = _single_m(args.m)
    alpha = constants.alpha(m) if args.alpha is None else args.alpha
    res = cycles.find_short_cycle_detailed(d, m, alpha)
    oracle = cycles.girth(d, args.threads)
    if oracle is None or oracle > res.witness.length:
        raise AssertionError("constructive witness shorter than the BFS girth")
    payload = {
        "m": m,
        "alpha": alpha,
        "witness": res.witness.to_dict(),
        "depth": res.depth,
        "edges_expanded": res.edges_expanded,
        "bfs_girth": oracle,
    }
    report = Report("find-cycle", {"file": src, "m": m, "alpha": alpha}, payload)

    def tsv(out):
        w = res.witness
        _kv(out, [("length", w.length), ("vertices", w.vertices), ("provenance", w.provenance),
                  ("depth", res.depth), ("edges_expanded", res.edges_expanded), ("bfs_girth", oracle)])

    _emit(args, report, tsv)
    return EXIT_OK


def cmd_stats(args) -> int:
    d, src = _read_graph(args.file)
    es, gs = edgestats.compute_edge_stats(d)
    summary = gs.summary()
    payload = {"global": summary}
    if args.edges:
        payload["edges"] = [list(row) for row in es.rows()]
    report = Report("stats", {"file": src}, payload)

    def tsv(out):
        _kv(out, summary.items())
        if args.edges:
            out.write("u\tv\tp\tq\tt\tf\n")
            for row in es.rows():
                out.write("\t".join(map(str, row)) + "\n")

    _emit(args, report, tsv)
    return EXIT_OK


def cmd_audit(args) -> int:
    d, src = _read_graph(args.file)
    m = _single_m(args.m)
    alpha = args.alpha
    if alpha is None:
        alpha = constants.theorem2_alpha(m) if args.which in ("lemma3", "lemma6", "tau") else constants.alpha(m)
    if args.which == "lemma1":
        rep = edgestats.audit_lemma1(d, alpha, m)
    elif args.which == "lemma3":
        rep = edgestats.audit_lemma3(d, alpha, m)
    elif args.which == "lemma45":
        rep = edgestats.audit_lemma45(d, m, args.b)
    elif args.which == "lemma6":
        rep = edgestats.audit_lemma6(d, alpha, m, args.c)
    else:
        rep = edgestats.audit_tau(d, alpha, m, args.b, args.c)
    if args.tol is not None:
        rep.tolerance = args.tol
    inputs = {"file": src, "which": args.which, "m": m, "alpha": alpha, "b": args.b, "c": args.c}
    report = Report("audit", inputs, rep.to_dict())

    def tsv(out):
        out.write(f"# {rep.inequality} verdict={rep.verdict} min_slack={_fmt(rep.min_slack)}\n")
        out.write("key\tvalue\tbound\tslack\n")
        for it in rep.items:
            out.write(f"{_fmt(it.key)}\t{_fmt(it.value)}\t{_fmt(it.bound)}\t{_fmt(it.slack)}\n")

    _emit(args, report, tsv)
    return EXIT_FAIL if args.strict and rep.verdict == "violated" else EXIT_OK


def cmd_fas(args) -> int:
    d, src = _read_graph(args.file)
    res = fas.beta_heuristic(d) if args.heuristic else fas.beta(d)
    payload: dict = {"fas": res.to_dict(), "gamma": gamma(d)}
    m = None
    if args.m is not None:
        m = _single_m(args.m)
        payload["fact1"] = fas.check_fact1(d, m)
        payload["lemma2"] = fas.check_lemma2(d, m)
        payload["fact1"]["threshold"] = clean_float(payload["fact1"]["threshold"])
    report = Report("fas", {"file": src, "m": m, "heuristic": args.heuristic}, payload)

    def tsv(out):
        _kv(out, [("beta", res.beta), ("exact", res.exact), ("gamma", payload["gamma"]),
                  ("order", res.order), ("removed", [f"{u}>{v}" for u, v in res.removed])])
        for section in ("fact1", "lemma2"):
            if section in payload:
                _kv(out, [(f"{section}.{k}", v) for k, v in payload[section].items()])

    _emit(args, report, tsv)
    fact_ok = payload.get("fact1", {}).get("holds", True) is not False
    lemma_ok = payload.get("lemma2", {}).get("holds", True) is not False
    return EXIT_OK if fact_ok and lemma_ok else EXIT_FAIL


# --------------------------------------------------------------------------
# parser


def _default_threads() -> int | None:
    raw = os.environ.get("GIRTHLAB_THREADS")
    return int(raw) if raw else None


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit a versioned JSON report")
    common.add_argument("--threads", type=int, default=_default_threads(),
                        help="worker threads for BFS (default: $GIRTHLAB_THREADS or 1)")

    parser = argparse.ArgumentParser(prog="girthlab", description="Short directed cycles under outdegree bounds.")
    parser.add_argument("--version", action="version", version=f"girthlab {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("constants", parents=[common], help="table of thresholds and comparison bounds")
    p.add_argument("--m", default="3..8", help="M or M..N (default 3..8)")
    p.add_argument("--tol", type=float, default=None, help="bisection bracket width for alpha")
    p.set_defaults(func=cmd_constants)

    p = sub.add_parser("certify", parents=[common], help="certify a threshold")
    p.add_argument("--theorem", type=int, choices=(1, 2), default=1)
    p.add_argument("--m", required=True)
    p.add_argument("--alpha", type=float, default=None)
    p.add_argument("--grid", type=int, default=constants.DEFAULT_GRID)
    p.set_defaults(func=cmd_certify)

    p = sub.add_parser("gen", parents=[common], help="write a generated digraph")
    p.add_argument("kind", choices=GenSpec.KINDS)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--offsets", help="comma separated circulant offsets")
    p.add_argument("--r", type=int, default=1)
    p.add_argument("--m")
    p.add_argument("--density", type=float, default=1.0)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("girth", parents=[common], help="exact girth by BFS")
    p.add_argument("file")
    p.add_argument("--witness", action="store_true", help="also print a shortest cycle")
    p.set_defaults(func=cmd_girth)

    p = sub.add_parser("find-cycle", parents=[common], help="constructive short-cycle finder")
    p.add_argument("file")
    p.add_argument("--m", required=True)
    p.add_argument("--alpha", type=float, default=None, help="default: alpha(m)")
    p.set_defaults(func=cmd_find_cycle)

    p = sub.add_parser("stats", parents=[common], help="edge and triangle statistics")
    p.add_argument("file")
    p.add_argument("--edges", action="store_true", help="include the per-edge table")
    p.set_defaults(func=cmd_stats)

    p = sub.add_parser("audit", parents=[common], help="evaluate one family of inequalities")
    p.add_argument("which", choices=("lemma1", "lemma3", "lemma45", "lemma6", "tau"))
    p.add_argument("file")
    p.add_argument("--m", required=True)
    p.add_argument("--alpha", type=float, default=None)
    p.add_argument("--b", type=float, default=None)
    p.add_argument("--c", type=float, default=None)
    p.add_argument("--tol", type=float, default=None, help="slack tolerance for the verdict")
    p.add_argument("--strict", action="store_true", help="exit 1 when any item is violated")
    p.set_defaults(func=cmd_audit)

    p = sub.add_parser("fas", parents=[common], help="feedback arc set and missing-edge bounds")
    p.add_argument("file")
    p.add_argument("--m", default=None, help="also run the m-free bound checks")
    p.add_argument("--heuristic", action="store_true", help="skip the exact solver")
    p.set_defaults(func=cmd_fas)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        parser.exit(EXIT_USAGE, f"girthlab {args.command}: error: {exc}\n")
    except (GraphError, OutOfRange) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except GirthlabError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
