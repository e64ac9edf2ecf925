"""Command-line interface: comp, proc, expand, eval, stats."""

from __future__ import annotations

import argparse
import io
import sys

from .binary import TransducerFormatError, read_transducer, write_transducer
from .dix import ParseError, read_dix
from .evaluation import CleaningConfig, EvaluationError, dict_stats, format_stats, load_gold, run_evaluation
from .expand import iter_expand
from .model import DictionaryError, check_valid
from .stream import Analyzer, Generator, MalformedUnit
from .transducer import Direction, compile_dictionary

EXIT_DATA = 1
EXIT_IO = 2
EXIT_USAGE = 64


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        sys.stderr.write(f"{self.prog}: error: {message}\n")
        raise UsageError(message)


def _stdin():
    return io.TextIOWrapper(sys.stdin.buffer, encoding="utf-8", newline="")


def _stdout():
    return io.TextIOWrapper(sys.stdout.buffer, encoding="utf-8", newline="", write_through=True)


def cmd_comp(args) -> int:
    d = check_valid(read_dix(args.dix))
    t = compile_dictionary(d, Direction(args.direction), minimize=not args.no_minimize)
    write_transducer(t, args.bin)
    sections = ",".join(f"{s.id}@{len(s.entries)}" for s in d.sections)
    print(f"{sections} states:{t.n_states} transitions:{t.n_transitions}")
    return 0


def cmd_proc(args) -> int:
    t = read_transducer(args.bin)
    src = open(args.input, encoding="utf-8", newline="") if args.input else _stdin()
    dst = open(args.output, "w", encoding="utf-8", newline="") if args.output else _stdout()
    try:
        if args.generation:
            chunks = Generator(t).iter_generate(src)
        else:
            chunks = Analyzer(t).iter_analyze(src)
        for chunk in chunks:
            dst.write(chunk)
        dst.flush()
    finally:
        if args.input:
            src.close()
        if args.output:
            dst.close()
    return 0


def cmd_expand(args) -> int:
    d = check_valid(read_dix(args.dix))
    out = _stdout()
    for pair in iter_expand(d):
        out.write(pair.format() + "\n")
    out.flush()
    return 0


def cmd_eval(args) -> int:
    t = read_transducer(args.fst)
    with open(args.corpus, encoding="utf-8") as fh:
        corpus = fh.read()
    gold = load_gold(args.gold)
    config = CleaningConfig.from_file(args.stopwords)
    report = run_evaluation(corpus, gold, t, config)
    _stdout().write(report.format())
    return 0


def cmd_stats(args) -> int:
    d = check_valid(read_dix(args.dix))
    _stdout().write(format_stats(dict_stats(d)))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="lexfst", description="Compile and run paradigm-based letter transducers.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("comp", help="compile a dix dictionary into a binary transducer")
    p.add_argument("direction", choices=[d.value for d in Direction], help="lr: analyzer, rl: generator")
    p.add_argument("dix")
    p.add_argument("bin")
    p.add_argument("--no-minimize", action="store_true", help="keep the unminimized trie")
    p.set_defaults(func=cmd_comp)

    p = sub.add_parser("proc", help="analyze (default) or generate a text stream")
    p.add_argument("-g", "--generation", action="store_true")
    p.add_argument("bin")
    p.add_argument("input", nargs="?")
    p.add_argument("output", nargs="?")
    p.set_defaults(func=cmd_proc)

    p = sub.add_parser("expand", help="list every surface:lexical pair")
    p.add_argument("dix")
    p.set_defaults(func=cmd_expand)

    p = sub.add_parser("eval", help="score an analyzer against a gold standard")
    p.add_argument("--corpus", required=True)
    p.add_argument("--gold", required=True)
    p.add_argument("--fst", required=True)
    p.add_argument("--stopwords")
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("stats", help="count section entries per main category")
    p.add_argument("dix")
    p.set_defaults(func=cmd_stats)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError:
        return EXIT_USAGE
    try:
        return args.func(args)
    except (ParseError, DictionaryError, TransducerFormatError, MalformedUnit, EvaluationError, ValueError) as exc:
        print(f"lexfst {args.command}: {exc}", file=sys.stderr)
        return EXIT_DATA
    except OSError as exc:
        print(f"lexfst {args.command}: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
