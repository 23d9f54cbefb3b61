"""Command-line surface: construct H_2n, analyze spectra, run descent
batches, certify the extremal theorems at small sizes, and tabulate the
asymptotic sandwich. Graphs stream as graph6 or JSON edge lists so the tool
composes in shell pipelines."""

from __future__ import annotations

import argparse
import json
import math
import random
import sys
from concurrent.futures import ProcessPoolExecutor

import numpy as np

from .descent import DECREASE_RTOL, STRICT_TAU, descend, random_cubic_bipartite
from .enumeration import (
    TIE_TOL,
    build_records,
    certify_equivalence,
    certify_minimizer,
    records_to_csv,
    records_to_json,
    structural_spot_checks,
)
from .graph6 import decode_graph6, encode_graph6
from .graphs import (
    BipartiteGraph,
    GraphError,
    bipartite_from_json,
    bipartite_to_json,
    build_h2n,
    is_connected,
)
from .spectral import (
    GAP_IDENTITY_TOL,
    algebraic_connectivity,
    path_fiedler_closed_form,
    spectral_gap,
)


def _config_line(args, keys) -> str:
    parts = [f"{k.replace('_', '-')}={getattr(args, k)}" for k in keys]
    return "# config: " + " ".join(parts)


def _open_out(path):
    if path is None or path == "-":
        return sys.stdout, False
    return open(path, "w"), True


def _emit(args, text: str, keys):
    """Write payload to --out (or stdout); raw formats get the config echo on
    stderr so the payload stays machine-readable."""
    out, close = _open_out(getattr(args, "out", None))
    try:
        out.write(text)
        if not text.endswith("\n"):
            out.write("\n")
    finally:
        if close:
            out.close()
    print(_config_line(args, keys), file=sys.stderr)


def cmd_construct(args) -> int:
    g = build_h2n(args.n)
    if args.format == "graph6":
        payload = encode_graph6(g)
    else:
        payload = bipartite_to_json(g)
    _emit(args, payload, ["n", "format", "out"])
    return 0


def _read_graph(args):
    """graph6 line or JSON edge list, from --input or stdin."""
    if args.input and args.input != "-":
        with open(args.input) as fh:
            text = fh.read()
    else:
        text = sys.stdin.read()
    text = text.strip()
    if not text:
        raise GraphError("empty input")
    if text.startswith("{"):
        bip = bipartite_from_json(text)
        return bip, bip.to_graph()
    graph = decode_graph6(text.splitlines()[0])
    return None, graph


def _h2n_size_of(graph):
    """n when the input is exactly the constructed H_2n, else None."""
    if graph.n % 2 or graph.n < 12:
        return None
    n = graph.n // 2
    try:
        return n if build_h2n(n).to_graph().edges == graph.edges else None
    except GraphError:
        return None


def cmd_spectrum(args) -> int:
    bip, graph = _read_graph(args)
    result = algebraic_connectivity(graph)
    connected = is_connected(graph)
    report = {
        "vertices": graph.n,
        "edges": len(graph.edges),
        "connected": connected,
        "algebraic_connectivity": result.value,
        "multiplicity": result.multiplicity,
        "residual": result.residual,
        "fiedler_vector": [float(v) for v in result.vector],
        "tolerance": args.tolerance,
    }
    status = 0
    degs = set(graph.degrees())
    if len(degs) == 1 and graph.n >= 2:
        gap = spectral_gap(graph)
        report["spectral_gap"] = gap
        report["gap_minus_a"] = gap - result.value
        if abs(report["gap_minus_a"]) > args.tolerance:
            status = 1
    h2n_n = _h2n_size_of(graph)
    if h2n_n is not None:
        lo = path_fiedler_closed_form(h2n_n)
        hi = path_fiedler_closed_form(h2n_n - 4)
        report["sandwich"] = {
            "n": h2n_n,
            "a_path_n": lo,
            "a_path_n_minus_4": hi,
            "holds": lo - 1e-9 <= result.value <= hi + 1e-9,
        }
    if args.format == "json":
        report["config"] = {"tolerance": args.tolerance, "format": args.format}
        payload = json.dumps(report, indent=2)
    else:
        lines = [_config_line(args, ["format", "tolerance"])]
        lines.append(f"vertices          {report['vertices']}")
        lines.append(f"edges             {report['edges']}")
        lines.append(f"connected         {str(connected).lower()}")
        lines.append(f"a(G)              {result.value:.12f}")
        lines.append(f"multiplicity      {result.multiplicity}")
        lines.append(f"residual          {result.residual:.3e}")
        if "spectral_gap" in report:
            lines.append(f"spectral gap      {report['spectral_gap']:.12f}")
            lines.append(f"gap - a           {report['gap_minus_a']:.3e}")
        if "sandwich" in report:
            s = report["sandwich"]
            lines.append(
                f"sandwich          a(P_{s['n']}) <= a <= a(P_{s['n'] - 4}): "
                f"{'holds' if s['holds'] else 'VIOLATED'}")
        vec = " ".join(f"{v:+.6f}" for v in result.vector)
        lines.append(f"fiedler vector    {vec}")
        payload = "\n".join(lines)
    out, close = _open_out(args.out)
    try:
        out.write(payload + "\n")
    finally:
        if close:
            out.close()
    return status


def _run_descent_seed(task):
    n, seed, max_iter = task
    rng = random.Random(seed)
    g = random_cubic_bipartite(n, rng)
    trace = descend(g, max_iter=max_iter)
    return trace


def cmd_descend(args) -> int:
    if args.n > 12 and not args.allow_slow:
        print(f"error: --n {args.n} above the default budget; pass --allow-slow",
              file=sys.stderr)
        return 2
    tasks = [(args.n, args.seed + i, args.max_iter) for i in range(args.seeds)]
    if args.workers > 1:
        with ProcessPoolExecutor(max_workers=args.workers) as pool:
            traces = list(pool.map(_run_descent_seed, tasks))
    else:
        traces = [_run_descent_seed(t) for t in tasks]
    a_ref = algebraic_connectivity(build_h2n(args.n)).value
    out, close = _open_out(args.out)
    try:
        for trace in traces:
            out.write(trace.jsonl())
    finally:
        if close:
            out.close()
    terminals = [t.steps[-1].a_value for t in traces]
    hist = {}
    for a in terminals:
        hist[round(a, 9)] = hist.get(round(a, 9), 0) + 1
    print(_config_line(args, ["n", "seeds", "seed", "max_iter", "workers"]))
    print(f"# strictness tau={STRICT_TAU} decrease rtol={DECREASE_RTOL}")
    print(f"a(H_{2*args.n}) = {a_ref:.12f}")
    reached = sum(1 for a in terminals if abs(a - a_ref) <= 1e-9)
    print(f"seeds={args.seeds} reached_h2n={reached} "
          f"min_terminal={min(terminals):.12f} max_terminal={max(terminals):.12f}")
    print("terminal a histogram:")
    for a in sorted(hist):
        print(f"  {a:.9f}  {hist[a]}")
    return 0


def cmd_certify(args) -> int:
    if args.n == 8 and not args.allow_slow:
        print("error: n=8 certification needs --allow-slow", file=sys.stderr)
        return 2
    records = build_records(args.n, workers=args.workers)
    minimizer = certify_minimizer(args.n, records=records, tie_tol=args.tolerance)
    equivalence = certify_equivalence(args.n, records=records,
                                      tie_tol=args.tolerance)
    argmin = min(records, key=lambda r: (r.a_value, r.canonical))
    spot = structural_spot_checks(argmin.graph)
    print(_config_line(args, ["n", "workers", "tolerance", "out"]))
    print(f"classes           {len(records)}")
    print(f"argmin a          {minimizer.argmin_a:.12f}  {minimizer.argmin_graph6}")
    if minimizer.runner_up_gap is not None:
        print(f"runner-up gap     {minimizer.runner_up_gap:.12f}")
    assertive = args.n >= 6
    if assertive:
        print(f"minimizer unique & = H_{2*args.n}:  "
              f"{'PASS' if minimizer.passed else 'FAIL'}")
        print(f"max-matchings = min-a & unique:  "
              f"{'PASS' if equivalence.passed else 'FAIL'}"
              f"  (argmax pm={equivalence.argmax_pm} {equivalence.argmax_graph6})")
    else:
        print(f"argmin class (reported, not asserted): {minimizer.argmin_graph6}")
        print(f"argmax matchings (reported): pm={equivalence.argmax_pm} "
              f"{equivalence.argmax_graph6}")
    print(f"spot checks       no_cut_edge={spot.no_cut_edge} "
          f"p2_pairs={spot.p2_pairs_checked} p2_all_cuts={spot.p2_all_cuts} "
          f"(multiplicity={spot.multiplicity})")
    if args.out:
        import os
        os.makedirs(args.out, exist_ok=True)
        base = f"{args.out.rstrip('/')}/certify_n{args.n}"
        with open(base + ".csv", "w") as fh:
            fh.write(_config_line(args, ["n", "workers", "tolerance"]) + "\n")
            fh.write(records_to_csv(records))
        with open(base + ".json", "w") as fh:
            fh.write(records_to_json(records))
        print(f"records written   {base}.csv {base}.json")
    if not assertive:
        return 0
    return 0 if (minimizer.passed and equivalence.passed) else 1


def cmd_asymptotics(args) -> int:
    if args.n_max > 500:
        print("error: --n-max capped at 500 (dense solver budget)", file=sys.stderr)
        return 2
    rows = ["n,a_h2n,a_path_n,a_path_n_minus_4,normalized_ratio"]
    for n in range(6, args.n_max + 1):
        a_h = algebraic_connectivity(build_h2n(n)).value
        lo = path_fiedler_closed_form(n)
        hi = path_fiedler_closed_form(n - 4)
        ratio = n * n * a_h / math.pi ** 2
        rows.append(f"{n},{a_h:.12e},{lo:.12e},{hi:.12e},{ratio:.9f}")
    payload = _config_line(args, ["n_max", "out"]) + "\n" + "\n".join(rows)
    out, close = _open_out(args.out)
    try:
        out.write(payload + "\n")
    finally:
        if close:
            out.close()
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="spectral-lab",
        description=__doc__,
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("construct", help="emit H_2n as graph6 or JSON")
    p.add_argument("--n", type=int, required=True, help="half the vertex count (>= 6)")
    p.add_argument("--format", choices=["graph6", "json"], default="graph6")
    p.add_argument("--out", default=None, help="output path (default stdout)")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("spectrum", help="algebraic connectivity report for a graph")
    p.add_argument("--input", "--in", dest="input", default=None,
                   help="graph6 line or JSON edge list (default stdin)")
    p.add_argument("--format", choices=["text", "json"], default="text")
    p.add_argument("--tolerance", type=float, default=GAP_IDENTITY_TOL,
                   help="allowed |spectral gap - a(G)| for regular inputs")
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_spectrum)

    p = sub.add_parser("descend", help="random-seed descent batch")
    p.add_argument("--n", type=int, default=6)
    p.add_argument("--seeds", type=int, default=10, help="number of random starts")
    p.add_argument("--seed", type=int, default=0, help="base RNG seed")
    p.add_argument("--max-iter", type=int, default=100)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--allow-slow", action="store_true")
    p.add_argument("--out", default=None, help="JSONL trace path (default stdout)")
    p.set_defaults(func=cmd_descend)

    p = sub.add_parser("certify", help="exhaustive certification at one size")
    p.add_argument("--n", type=int, required=True, help="3..7, or 8 with --allow-slow")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--tolerance", type=float, default=TIE_TOL,
                   help="tie tolerance between classes")
    p.add_argument("--allow-slow", action="store_true")
    p.add_argument("--out", default=None, help="directory for CSV/JSON records")
    p.set_defaults(func=cmd_certify)

    p = sub.add_parser("asymptotics", help="sandwich table a(P_n) <= a(H_2n) <= a(P_{n-4})")
    p.add_argument("--n-max", type=int, default=200)
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_asymptotics)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (GraphError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
