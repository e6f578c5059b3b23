"""Command-line driver: ``schemadet <command> ...``.

Exit codes: 0 success or accept, 1 reject or failed check or unmet
precondition, 2 usage or parse error.
"""
from __future__ import annotations

import argparse
import sys
from typing import Optional

from . import bench, checks, hedges, words
from .automata import AutomatonError, Nfa, Sha, accepts, relabel
from .formats import ParseError, parse_automaton, parse_nested_word, parse_word, serialize_automaton, to_dot
from .kernels import BACKENDS
from .oracle import EnumerationBound
from .queries import one_x_like, select_nodes, select_word

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _read_text(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None


def load_automaton(path: str) -> Nfa:
    return parse_automaton(_read_text(path))


def load_schema(source: Optional[str], a: Nfa) -> Nfa:
    if source is None:
        raise UsageError("this command needs --schema FILE or --schema onex")
    if source == "onex":
        return one_x_like(a)
    return load_automaton(source)


def _check_kinds(a: Nfa, s: Nfa):
    if isinstance(a, Sha) != isinstance(s, Sha):
        raise AutomatonError("automaton and schema must both be NFAs or both be SHAs")


def _emit(result: Nfa, args, stats=None):
    text = serialize_automaton(result)
    if args.output and args.output != "-":
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    if args.dot:
        with open(args.dot, "w", encoding="utf-8") as fh:
            fh.write(to_dot(result))
    line = f"size {result.size} #states {result.num_states}"
    if args.stats and stats is not None:
        line += (f" pushes {stats.agenda_pushes} pops {stats.agenda_pops}"
                 f" rules-emitted {stats.rules_emitted}")
    print(line, file=sys.stderr)
    return EXIT_OK


def cmd_det(args) -> int:
    a = load_automaton(args.automaton)
    op = hedges.determinize_sha if isinstance(a, Sha) else words.determinize
    res = op(a, backend=args.backend)
    return _emit(words.canonical(res.automaton, res.subsets, a.names), args, res.stats)


def cmd_sdet(args) -> int:
    a = load_automaton(args.automaton)
    s = load_schema(args.schema, a)
    _check_kinds(a, s)
    op = hedges.schema_determinize_sha if isinstance(a, Sha) else words.schema_determinize
    res = op(a, s, backend=args.backend)
    out = words.canonical(res.automaton, res.alignments.subsets, a.names)
    return _emit(out, args, res.stats)


def cmd_product(args) -> int:
    a = load_automaton(args.automaton)
    s = load_schema(args.schema, a)
    _check_kinds(a, s)
    op = hedges.product_sha if isinstance(a, Sha) else words.product
    res = op(a, s)
    names = tuple(f"({a.state_name(q)},{s.state_name(t)})" for q, t in res.pairs)
    out = relabel(res.automaton.with_names(names), res.pairs)
    return _emit(out, args, res.stats)


def cmd_clean(args) -> int:
    a = load_automaton(args.automaton)
    s = load_schema(args.schema, a)
    _check_kinds(a, s)
    op = hedges.schema_clean_sha if isinstance(a, Sha) else words.schema_clean
    res = op(a, s)
    return _emit(res.automaton, args, res.stats)


def _parse_input(a: Nfa, text: str):
    h = parse_nested_word(text) if isinstance(a, Sha) else parse_word(text)
    if not isinstance(a, Sha) and any(tok in ("<", ">") for tok in h):
        raise ParseError("nested input given to a word automaton")
    for sym in (hedges.hedge_letters(h) if isinstance(a, Sha) else h):
        if sym not in a.alphabet:
            raise ParseError(f"unknown symbol {sym!r} in input")
    return h


def cmd_accepts(args) -> int:
    a = load_automaton(args.automaton)
    h = _parse_input(a, args.input)
    ok = hedges.accepts_nested(a, h) if isinstance(a, Sha) else accepts(a, h)
    print("yes" if ok else "no")
    return EXIT_OK if ok else EXIT_FAIL


def cmd_select(args) -> int:
    a = load_automaton(args.automaton)
    h = _parse_input(a, args.subject)
    picked = select_nodes(a, h) if isinstance(a, Sha) else select_word(a, h)
    print(" ".join(str(p) for p in sorted(picked)))
    return EXIT_OK


def cmd_check(args) -> int:
    bound = EnumerationBound(args.word_length, args.hedge_items, args.depth)
    domains = ("words", "hedges") if args.domain == "both" else (args.domain,)
    report = checks.run_checks(args.seed, args.count, bound, domains, max_states=args.max_states)
    print(report.format())
    return EXIT_OK if report.ok else EXIT_FAIL


def _n_range(text: str):
    lo, sep, hi = text.partition("..")
    try:
        values = range(int(lo), int(hi if sep else lo) + 1)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected N or LO..HI, got {text!r}") from None
    if not values or values.start < 1:
        raise argparse.ArgumentTypeError("n values must be positive and ascending")
    return values


def cmd_bench(args) -> int:
    rows = bench.run_bench(args.n, args.timeout, args.backend)
    sys.stdout.write(bench.format_table(rows, stats=args.stats))
    if not bench.ordering_holds(rows):
        print("ordering violated: det_S(A) larger than det(A)", file=sys.stderr)
        return EXIT_FAIL
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="schemadet",
                                     description="Schema-based determinization of word and hedge automata.")
    sub = parser.add_subparsers(dest="command", required=True)

    def construction(name, func, helptext, schema):
        p = sub.add_parser(name, help=helptext)
        p.add_argument("automaton", help="automaton file, '-' for stdin")
        if schema:
            p.add_argument("--schema", help="deterministic schema file, or 'onex'")
        p.add_argument("-o", "--output", help="write the result here instead of stdout")
        p.add_argument("--dot", metavar="FILE", help="also write a Graphviz rendering")
        p.add_argument("--stats", action="store_true", help="add agenda counters to the stats line")
        p.add_argument("--backend", choices=sorted(BACKENDS), default=None)
        p.set_defaults(func=func)

    construction("det", cmd_det, "accessible determinization", schema=False)
    construction("sdet", cmd_sdet, "schema-based determinization", schema=True)
    construction("product", cmd_product, "accessible product with the schema", schema=True)
    construction("clean", cmd_clean, "schema-based cleaning", schema=True)

    p = sub.add_parser("accepts", help="membership test (exit 0 accept, 1 reject)")
    p.add_argument("automaton")
    p.add_argument("input", help="space-separated letters; '<' and '>' delimit trees")
    p.set_defaults(func=cmd_accepts)

    p = sub.add_parser("select", help="positions or nodes selected by a query automaton")
    p.add_argument("automaton")
    p.add_argument("subject")
    p.set_defaults(func=cmd_select)

    p = sub.add_parser("check", help="randomized invariant suite")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--count", type=int, default=100, help="instances per domain")
    p.add_argument("--domain", choices=("words", "hedges", "both"), default="both")
    p.add_argument("--max-states", type=int, default=None)
    p.add_argument("--word-length", type=int, default=8)
    p.add_argument("--hedge-items", type=int, default=8)
    p.add_argument("--depth", type=int, default=3)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("bench", help="size table for det(A), det(AxS), det_S(A)")
    p.add_argument("--n", type=_n_range, default=range(1, 7), help="N or LO..HI (default 1..6)")
    p.add_argument("--timeout", type=float, default=100.0, help="seconds per cell")
    p.add_argument("--stats", action="store_true", help="add agenda push counts")
    p.add_argument("--backend", choices=sorted(BACKENDS), default=None)
    p.set_defaults(func=cmd_bench)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        return args.func(args)
    except (ParseError, UsageError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except AutomatonError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
