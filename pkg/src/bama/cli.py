"""Command-line front end: ``bama {gen,encode,decode,bench,sweep}``.

Exit codes: 0 success, 2 corrupt or unsupported stream, 3 configuration error.
"""
import argparse
import sys
from pathlib import Path

from .bitio import BitVector
from .core import Mode, TreatmentParams
from .entropy import CodecSelector
from .errors import BamaError, ConfigError, CorruptStreamError, UnsupportedFormatError
from .harness import (DEFAULT_LENGTH_BITS, DEFAULT_P_ONE, CorpusSpec, ap_rich_spec, bench,
                      generate, render_bench, render_sweep, sweep_probability_frequency)
from .pipeline import DEFAULT_BLOCK_SIZE, compress, decompress

EXIT_CORRUPT = 2
EXIT_CONFIG = 3
CODER_CHOICES = ["rle", "lzw", "huffman", "arith", "none"]


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_CONFIG, f"{self.prog}: error: {message}\n")


def _add_treatment_flags(p):
    p.add_argument("--block-size", type=int, default=DEFAULT_BLOCK_SIZE)
    p.add_argument("--min-run", type=int, default=3)
    p.add_argument("--guard", choices=["on", "off"], default="on")
    p.add_argument("--allow-small-blocks", action="store_true",
                   help="permit block sizes under 1024 bits (testing only)")


def _add_corpus_flags(p):
    p.add_argument("--kind", choices=["bernoulli", "ap_rich"], default="bernoulli")
    p.add_argument("--input", help="use the bits of this file as the corpus")
    p.add_argument("--p-one", type=float, default=None,
                   help=f"P(1) for bernoulli (default {DEFAULT_P_ONE}) or noise rate for ap_rich (default 0.005)")
    p.add_argument("--length-bits", type=int, default=DEFAULT_LENGTH_BITS)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--components", type=int, default=8, help="progressions in an ap_rich corpus")


def build_parser():
    parser = _Parser(prog="bama", description="BAMA compression catalyst toolkit")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("gen", help="generate a test bit sequence")
    _add_corpus_flags(p)
    p.add_argument("--out", required=True)

    p = sub.add_parser("encode", help="compress a file into a BAMA container")
    p.add_argument("input")
    p.add_argument("--out", required=True)
    p.add_argument("--mode", type=int, choices=[1, 2], default=1)
    p.add_argument("--coder", choices=CODER_CHOICES, default="huffman")
    p.add_argument("--length-bits", type=int, default=None,
                   help="use only the first N bits of the input")
    _add_treatment_flags(p)

    p = sub.add_parser("decode", help="restore a file from a BAMA container")
    p.add_argument("input")
    p.add_argument("--out", required=True)

    p = sub.add_parser("bench", help="coder alone vs Mode 1/Mode 2 + coder")
    _add_corpus_flags(p)
    _add_treatment_flags(p)
    p.add_argument("--coder", choices=CODER_CHOICES, action="append",
                   help="repeat for several tables (default: huffman and arith)")
    p.add_argument("--format", choices=["csv", "tsv"], default="csv")
    p.add_argument("--cg-form", choices=["log", "linear"], default="log")
    p.add_argument("--no-timing", action="store_true", help="leave ns_per_byte empty")
    p.add_argument("--out")

    p = sub.add_parser("sweep", help="anchor acceptance as min_run tightens")
    _add_corpus_flags(p)
    p.add_argument("--block-size", type=int, default=DEFAULT_BLOCK_SIZE)
    p.add_argument("--allow-small-blocks", action="store_true")
    p.add_argument("--min-runs", default="3,4,5,6,8")
    p.add_argument("--format", choices=["csv", "tsv"], default="csv")
    p.add_argument("--out")
    return parser


def _corpus(args):
    if args.input:
        return CorpusSpec(kind="file", path=args.input)
    if args.kind == "ap_rich":
        p_one = 0.005 if args.p_one is None else args.p_one
        return ap_rich_spec(args.seed, args.length_bits, args.components, p_one=p_one)
    p_one = DEFAULT_P_ONE if args.p_one is None else args.p_one
    return CorpusSpec(kind="bernoulli", length_bits=args.length_bits, p_one=p_one, seed=args.seed)


def _params(args):
    return TreatmentParams(min_run=args.min_run, guard=args.guard == "on")


def _emit(text, out):
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _run(args):
    if args.command == "gen":
        Path(args.out).write_bytes(generate(_corpus(args)).to_bytes())
    elif args.command == "encode":
        stream = BitVector.from_bytes(Path(args.input).read_bytes(), args.length_bits)
        blob = compress(stream, Mode(args.mode), CodecSelector.parse(args.coder), _params(args),
                        args.block_size, args.allow_small_blocks)
        Path(args.out).write_bytes(blob)
    elif args.command == "decode":
        Path(args.out).write_bytes(decompress(Path(args.input).read_bytes()).to_bytes())
    elif args.command == "bench":
        tables = bench(_corpus(args), args.coder or ["huffman", "arith"], _params(args),
                       args.block_size, args.cg_form, args.allow_small_blocks)
        _emit(render_bench(tables, args.format, timing=not args.no_timing), args.out)
        for t in tables:
            red = t.cr_reduction()
            print(f"{t.codec.cli_name}: relative CR reduction vs coder alone: "
                  f"mode1 {red['mode1']:.2f}%, mode2 {red['mode2']:.2f}%", file=sys.stderr)
    elif args.command == "sweep":
        try:
            min_runs = [int(v) for v in args.min_runs.split(",") if v.strip()]
        except ValueError:
            raise ConfigError(f"bad --min-runs value {args.min_runs!r}") from None
        points = sweep_probability_frequency(_corpus(args), min_runs, args.block_size,
                                             args.allow_small_blocks)
        _emit(render_sweep(points, args.format), args.out)


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        _run(args)
    except (CorruptStreamError, UnsupportedFormatError) as exc:
        print(f"bama: corrupt stream: {exc}", file=sys.stderr)
        return EXIT_CORRUPT
    except (ConfigError, ValueError, OSError) as exc:
        print(f"bama: configuration error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except BamaError as exc:  # pragma: no cover
        print(f"bama: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
