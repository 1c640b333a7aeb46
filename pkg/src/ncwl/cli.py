"""Command-line front end.

Exit codes: 0 success (for ``compare``: not distinguished), 1 the graphs
were distinguished (``compare``) or a suite check failed, 2 usage or input
errors. All commands are deterministic given identical flags, inputs, and
seed. Setting WL_NO_PARALLEL=1 forces sequential execution; the engines are
sequential by construction, so this is always honored.
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction
from itertools import combinations_with_replacement
from pathlib import Path

from . import codec
from .corpus import CorpusError
from .graph import (
    GraphFormatError,
    disjoint_union,
    parse_edge_list,
    serialize_edge_list,
    stats,
)
from .harness import seeded_rng
from .nn import embed_graph, stack_layers
from .refine import METHODS, compare, refine
from .suite import named_stream, run_suite


def _read_graph(path: str):
    return parse_edge_list(Path(path).read_text(encoding="utf-8"))


def _fmt_hist(hist) -> str:
    return ",".join(f"{c}:{k}" for c, k in hist) if hist else "-"


def _fmt_number(x) -> str:
    # fixed, locale-independent formatting (Fraction str or repr float)
    return str(x)


def _emit(fields: list[str], fmt: str) -> None:
    print("\t".join(fields) if fmt == "tsv" else " ".join(fields))


def cmd_refine(args) -> int:
    g = _read_graph(args.graph)
    colorings = refine(g, args.method, args.k_cap)
    for it, coloring in enumerate(colorings):
        if args.format == "tsv":
            print(f"{it}\t{coloring.num_classes}\t{_fmt_hist(coloring.histogram)}")
        else:
            print(
                f"iteration {it}: classes={coloring.num_classes} "
                f"histogram={_fmt_hist(coloring.histogram)}"
            )
    if args.format != "tsv":
        print(f"converged after {len(colorings) - 1} iterations")
    return 0


def cmd_compare(args) -> int:
    g1 = _read_graph(args.graph1)
    g2 = _read_graph(args.graph2)
    report = compare(g1, g2, args.method, args.k_cap)
    if report.distinguished:
        _emit(["DISTINGUISHED", f"iter={report.distinguishing_iteration}"], args.format)
        return 1
    _emit(["NOT-DISTINGUISHED", f"iters={report.iterations_run}"], args.format)
    return 0


def cmd_stats(args) -> int:
    s = stats(_read_graph(args.graph))
    fields = [
        f"nodes={s.node_count}",
        f"edges={s.edge_count}",
        f"T={s.triangle_count}",
        f"sum_nc={sum(s.messages_nc_per_node)}",
        f"avg_nc={_fmt_number(s.avg_messages_nc)}",
        f"max_nc={s.max_messages_nc}",
        f"max_degree={s.max_degree}",
        f"membound={s.memory_bound}",
    ]
    _emit(fields, args.format)
    return 0


def cmd_union(args) -> int:
    g1 = _read_graph(args.graph1)
    g2 = _read_graph(args.graph2)
    union, offset = disjoint_union(g1, g2)
    print(f"# offset={offset}")
    sys.stdout.write(serialize_edge_list(union))
    return 0


def cmd_suite(args) -> int:
    root = Path(args.corpus) if args.corpus else None
    results = run_suite(seed=args.seed, random_pairs=args.random_pairs, corpus_root=root)
    failed = 0
    for r in results:
        status = "PASS" if r.passed else "FAIL"
        if not r.passed:
            failed += 1
        _emit([status, r.name, f"({r.detail})"], args.format)
    _emit([f"{len(results) - failed}/{len(results)}", "checks passed"], args.format)
    return 0 if failed == 0 else 1


def cmd_gnn_embed(args) -> int:
    g = _read_graph(args.graph)
    num_labels = max(g.labels, default=0) + 1
    layers = stack_layers(seeded_rng(args.seed, "gnn-embed"), num_labels, args.dim, args.layers)
    vec = embed_graph(g, layers, num_labels, variant=args.variant)
    values = [f"{x:.17g}" for x in vec]
    _emit(values, args.format)
    return 0


def cmd_codec_check(args) -> int:
    required = max(2 * args.max_card, 2)
    base = args.base if args.base is not None else 2 * required + 3
    if base <= required:
        print(
            f"error: base {base} too small: need base > {required} "
            f"for multisets of cardinality up to {args.max_card}",
            file=sys.stderr,
        )
        return 2

    # fixed decoding fixture: 1/1 + 1/16 + 1/16 under base 4
    fixture_ctx = codec.CodecContext(base=4)
    value = codec.encode_multiset(fixture_ctx, [0, 2, 2])
    assert value == Fraction(9, 8), value
    assert codec.decode_multiset(value, 4) == (0, 2, 2)
    print("fixture: encode {{0,2,2}} base 4 == 9/8 and decodes back: ok")

    rng = named_stream(args.seed, "codec-roundtrip")
    roundtrip_ctx = codec.CodecContext(base=64)
    for _ in range(500):
        xs = sorted(rng.randrange(20) for _ in range(rng.randint(0, 12)))
        if codec.decode_multiset(codec.encode_multiset(roundtrip_ctx, xs), 64) != tuple(xs):
            print("error: round-trip mismatch", file=sys.stderr)
            return 1
    print("round-trip: 500 random multisets: ok")

    symbols = [f"x{i}" for i in range(args.alphabet)]
    pair_universe = list(combinations_with_replacement(symbols, 2))
    multisets = [
        list(c)
        for size in range(args.max_card + 1)
        for c in combinations_with_replacement(symbols, size)
    ]
    pair_multisets = [
        list(c)
        for size in range(args.max_card + 1)
        for c in combinations_with_replacement(pair_universe, size)
    ]
    ctx = codec.CodecContext(base=base)
    ctx.seed_elements(symbols)
    pairwise = {}
    for xs in multisets:
        for ws in pair_multisets:
            encoded = codec.encode_pairwise(ctx, xs, ws)
            if encoded in pairwise:
                print(f"error: pairwise collision {pairwise[encoded]} vs {(xs, ws)}", file=sys.stderr)
                return 1
            pairwise[encoded] = (xs, ws)
    centered = set()
    for c in symbols:
        for xs in multisets:
            for ws in pair_multisets:
                centered.add(codec.encode_centered(ctx, c, xs, ws))
    expected = len(symbols) * len(pairwise)
    if len(centered) != expected:
        print("error: centered encodings collided", file=sys.stderr)
        return 1
    print(f"injectivity: {len(pairwise)} pairwise and {len(centered)} centered encodings, all distinct")
    return 0


def _add_format(p: argparse.ArgumentParser) -> None:
    p.add_argument(
        "--format",
        choices=("human", "tsv"),
        default="human",
        help="human-readable or tab-separated records (default: human)",
    )


def _seed_type(text: str) -> int:
    value = int(text)
    if not 0 <= value < 2**64:
        raise argparse.ArgumentTypeError("seed must fit in 64 unsigned bits")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ncwl",
        description=(
            "Color refinement (plain, neighbor-communication, and k-tuple variants), "
            "graph statistics, exact multiset codecs, and small graph neural layers."
        ),
        epilog=(
            "exit codes: 0 success / not distinguished; 1 distinguished (compare) "
            "or failed checks (suite); 2 errors"
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("refine", help="print per-iteration color histograms of one graph")
    p.add_argument("graph")
    p.add_argument("--method", choices=METHODS, default="1wl")
    p.add_argument("--k-cap", type=int, default=None, help="node cap for the 2wl/3wl methods")
    _add_format(p)
    p.set_defaults(func=cmd_refine)

    p = sub.add_parser("compare", help="joint refinement verdict for a graph pair")
    p.add_argument("graph1")
    p.add_argument("graph2")
    p.add_argument("--method", choices=METHODS, default="nc1wl")
    p.add_argument("--k-cap", type=int, default=None)
    _add_format(p)
    p.set_defaults(func=cmd_compare)

    p = sub.add_parser("stats", help="triangle and neighbor-edge statistics of one graph")
    p.add_argument("graph")
    _add_format(p)
    p.set_defaults(func=cmd_stats)

    p = sub.add_parser("union", help="print the disjoint union of two graphs")
    p.add_argument("graph1")
    p.add_argument("graph2")
    p.set_defaults(func=cmd_union)

    p = sub.add_parser("suite", help="run the corpus and random property checks")
    p.add_argument("--seed", type=_seed_type, default=0)
    p.add_argument("--random-pairs", type=int, default=200)
    p.add_argument("--corpus", default=None, help="directory overriding the packaged corpus")
    _add_format(p)
    p.set_defaults(func=cmd_suite)

    p = sub.add_parser("gnn-embed", help="print a graph embedding from seeded random layers")
    p.add_argument("graph")
    p.add_argument("--layers", type=int, default=2)
    p.add_argument("--dim", type=int, default=8)
    p.add_argument("--seed", type=_seed_type, default=0)
    p.add_argument("--variant", choices=("nc", "gin"), default="nc")
    _add_format(p)
    p.set_defaults(func=cmd_gnn_embed)

    p = sub.add_parser("codec-check", help="run the exact-codec fixtures and injectivity sweep")
    p.add_argument("--alphabet", type=int, default=3, help="number of distinct symbols")
    p.add_argument("--max-card", type=int, default=2, help="max cardinality of each multiset")
    p.add_argument("--base", type=int, default=None, help="override the encoding base")
    p.add_argument("--seed", type=_seed_type, default=0)
    p.set_defaults(func=cmd_codec_check)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (GraphFormatError, CorpusError, codec.CodecError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
