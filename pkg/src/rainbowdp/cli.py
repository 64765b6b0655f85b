"""Command-line interface.

Subcommands: line-table, solve, verify, oracle, gen-votes, sample.
Exit codes: 0 success, 1 verification failure, 2 input error, 3 infeasible.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import formats
from .errors import InfeasibleError, ParseError, RainbowDPError
from .line import LineBoundary, line_values
from .mechanism import sample_counts, solve_graph, verify_dp
from .model import Epsilon, UNBOUNDED
from .votes import vote_graph


def _emit(text: str, out: str) -> None:
    if out == "-":
        sys.stdout.write(text)
    else:
        Path(out).write_text(text)


def _fmt_tau(tau) -> str:
    return "inf" if tau == UNBOUNDED else str(int(tau))


def cmd_line_table(args) -> int:
    sol = line_values(
        LineBoundary(args.b0, args.r0, args.g0, Epsilon(args.eps), args.n)
    )
    th = sol.thresholds
    footer = f"tau_R={_fmt_tau(th.tau_r)} tau_B={_fmt_tau(th.tau_b)}"
    lines = []
    if args.format == "csv":
        lines.append("i,B,R,G")
        for i in range(args.n):
            lines.append(
                f"{i},{sol.b[i]:.17g},{sol.r[i]:.17g},{sol.g[i]:.17g}"
            )
        lines.append(f"# {footer}")
    else:
        lines.append(f"{'i':>4} {'B':>10} {'R':>10} {'G':>10}")
        for i in range(args.n):
            lines.append(f"{i:>4} {sol.b[i]:>10.6f} {sol.r[i]:>10.6f} {sol.g[i]:>10.6f}")
        lines.append(footer)
    _emit("\n".join(lines) + "\n", args.out)
    return 0


def cmd_solve(args) -> int:
    g = formats.read_graph(args.graph)
    eps, spec, palette = formats.read_spec(args.spec)
    if palette != g.palette:
        raise ParseError(
            f"spec palette {palette.colors} does not match graph palette "
            f"{g.palette.colors}",
            str(args.spec),
        )
    m = solve_graph(g, spec, eps, backend=args.backend)
    _emit(formats.dump_mechanism(m, g), args.out)
    return 0


def cmd_verify(args) -> int:
    g = formats.read_graph(args.graph)
    m = formats.read_mechanism(args.mechanism)
    report = verify_dp(m, g, Epsilon(args.eps))
    if report.ok:
        print(f"ok: {len(g.edges)} edges, {g.palette.size} colors, eps={args.eps:g}")
        return 0
    for v in report.violations:
        print(f"violation: {v}")
    print(f"{len(report.violations)} violation(s)")
    return 1


def cmd_oracle(args) -> int:
    from . import oracle

    g = formats.read_graph(args.graph)
    eps, spec, palette = formats.read_spec(args.spec)
    if palette != g.palette:
        raise ParseError(
            f"spec palette {palette.colors} does not match graph palette "
            f"{g.palette.colors}",
            str(args.spec),
        )
    m = oracle.solve_lexicographic(g, spec, eps, sweep_order=args.sweep_order)
    _emit(formats.dump_mechanism(m, g), args.out)
    if g.palette.size in (2, 3):
        closed = solve_graph(g, spec, eps, backend="closed")
        dev = max(
            abs(a - b)
            for v in g.vertices
            for a, b in zip(m[v].p, closed[v].p)
        )
        print(f"max closed-form deviation: {dev:.3g}", file=sys.stderr)
    return 0


def cmd_gen_votes(args) -> int:
    g = vote_graph(args.num_voters, args.options)
    _emit(formats.dump_graph(g), args.out)
    return 0


def cmd_sample(args) -> int:
    m = formats.read_mechanism(args.mechanism)
    counts = sample_counts(m, args.vertex, args.count, args.seed)
    for color, n in counts.items():
        if n:
            print(f"{color} {n}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="rainbowdp",
        description="Optimal boundary-homogeneous private mechanisms on "
        "preference-ordered dataset graphs.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("line-table", help="closed-form table for one line")
    p.add_argument("--b0", type=float, required=True, help="rank-0 boundary probability")
    p.add_argument("--r0", type=float, required=True, help="rank-1 boundary probability")
    p.add_argument("--g0", type=float, required=True, help="rank-2 boundary probability")
    p.add_argument("--eps", type=float, required=True)
    p.add_argument("--n", type=int, required=True, help="number of indices")
    p.add_argument("--format", choices=("table", "csv"), default="table")
    p.add_argument("--out", default="-")
    p.set_defaults(func=cmd_line_table)

    p = sub.add_parser("solve", help="solve a graph against a boundary spec")
    p.add_argument("graph")
    p.add_argument("spec")
    p.add_argument("--backend", choices=("auto", "closed", "oracle"), default="auto")
    p.add_argument("--out", default="-")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("verify", help="check a mechanism file against a graph")
    p.add_argument("graph")
    p.add_argument("mechanism")
    p.add_argument("--eps", type=float, required=True)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("oracle", help="numerical solver; compares to the closed form")
    p.add_argument("graph")
    p.add_argument("spec")
    p.add_argument("--sweep-order", choices=("distance", "reverse"), default="distance")
    p.add_argument("--out", default="-")
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("gen-votes", help="generate a vote-tally graph")
    p.add_argument("--num-voters", type=int, required=True)
    p.add_argument("--options", type=int, default=3)
    p.add_argument("--out", default="-")
    p.set_defaults(func=cmd_gen_votes)

    p = sub.add_parser("sample", help="draw outputs at one vertex")
    p.add_argument("mechanism")
    p.add_argument("--vertex", required=True)
    p.add_argument("--count", type=int, default=1)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_sample)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except InfeasibleError as err:
        print(f"infeasible: {err}", file=sys.stderr)
        for v in err.violations:
            print(f"  {v}", file=sys.stderr)
        return 3
    except (RainbowDPError, ValueError, OSError) as err:
        print(f"error: {err}", file=sys.stderr)
        return 2


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
