"""Command-line surface: encode, decode, train-bpe, eval, lexicon validate.

Exit codes: 0 success, 1 usage, 2 data error, 3 I/O error. Encode and decode
stream line by line with bounded memory; --jobs enables parallel line
processing with output order equal to input order.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from collections import Counter
from concurrent.futures import ThreadPoolExecutor
from contextlib import nullcontext
from pathlib import Path

from . import BUNDLED_BPE, BUNDLED_LEXICON, Tokenizer
from .bpe import BpeError, train_bpe
from .decoder import DecodeError
from .lexicon import LexiconError, load_lexicon
from .metrics import (
    MetricsError,
    TokenDump,
    compare,
    format_table,
    load_dumps,
    reports_to_json,
    strip_markers,
)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_DATA = 2
EXIT_IO = 3


class _Parser(argparse.ArgumentParser):
    # argparse exits 2 on usage errors; the contract reserves 2 for data errors
    def error(self, message):
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _open_input(path: str):
    if path == "-":
        return nullcontext(sys.stdin)
    return open(path, "r", encoding="utf-8")


def _open_output(path: str):
    if path == "-":
        return nullcontext(sys.stdout)
    return open(path, "w", encoding="utf-8")


def _load_tokenizer(args) -> Tokenizer:
    return Tokenizer.load(args.lexicon, args.bpe)


def _format_encoded(tok: Tokenizer, encoded, fmt: str) -> str:
    if fmt == "ids":
        return " ".join(str(i) for i in encoded.ids)
    surfaces = tok.surfaces(encoded)
    if fmt == "jsonl":
        return json.dumps(
            {
                "ids": list(encoded.ids),
                "surfaces": surfaces,
                "kinds": [k.value for k in encoded.provenance],
            },
            ensure_ascii=False,
        )
    return " ".join(surfaces)


def cmd_encode(args) -> int:
    tok = _load_tokenizer(args)
    fmt = args.format

    def one(line: str) -> str:
        return _format_encoded(tok, tok.encode(line.rstrip("\n")), fmt)

    with _open_input(args.input) as src, _open_output(args.output) as dst:
        if args.jobs > 1:
            with ThreadPoolExecutor(max_workers=args.jobs) as pool:
                for out in pool.map(one, src, chunksize=64):
                    dst.write(out + "\n")
        else:
            for line in src:
                dst.write(one(line) + "\n")
    return EXIT_OK


def cmd_decode(args) -> int:
    tok = _load_tokenizer(args)
    with _open_input(args.input) as src, _open_output(args.output) as dst:
        for line in src:
            tokens = line.split()
            if args.format == "ids":
                try:
                    ids = [int(t) for t in tokens]
                except ValueError as exc:
                    raise DecodeError(f"not a token id: {exc}", 0)
            else:
                ids = tok.surfaces_to_ids(tokens)
            dst.write(tok.decode(ids) + "\n")
    return EXIT_OK


def cmd_train_bpe(args) -> int:
    counts: Counter = Counter()
    from .encoder import preprocess

    with _open_input(args.corpus) as src:
        for line in src:
            for seg in preprocess(line.rstrip("\n")):
                if seg.kind == "word":
                    counts[seg.payload] += 1
    model = train_bpe(counts.items(), args.size)
    model.save(args.output)
    print(f"vocab {len(model)} ({len(model.alphabet)} chars, {len(model.merges)} merges) -> {args.output}")
    return EXIT_OK


def cmd_eval(args) -> int:
    tok = _load_tokenizer(args)
    dumps: list[TokenDump] = []
    if args.self_corpus:
        with _open_input(args.self_corpus) as src:
            lines = src.read().splitlines()
        total_tokens: list[str] = []
        t0 = time.perf_counter()
        encoded_lines = [tok.encode(line) for line in lines]
        elapsed = time.perf_counter() - t0
        for enc in encoded_lines:
            total_tokens.extend(tok.surfaces(enc))
        dump = TokenDump(args.name, total_tokens, tok.vocab_size, elapsed)
        dumps.append(dump)
    for path in args.dumps:
        with _open_input(path) as src:
            for dump in load_dumps(src, name_hint=Path(path).stem):
                if not args.keep_markers:
                    dump.tokens = strip_markers(dump.tokens)
                dumps.append(dump)
    if not dumps:
        raise MetricsError("nothing to evaluate: pass dump files or --self CORPUS")
    reports = compare(dumps, tok.lexicon)
    if args.json:
        print(reports_to_json(reports))
    else:
        print(format_table(reports))
        for r in reports:
            if r.tokens_per_second:
                print(
                    f"{r.tokenizer_name}: {r.total} tokens in {r.elapsed_seconds:.4f}s "
                    f"({r.tokens_per_second:,.0f} tokens/s)"
                )
    return EXIT_OK


def cmd_lexicon_validate(args) -> int:
    lex = load_lexicon(args.path)
    layout = lex.id_layout
    print(f"{args.path}: OK")
    print(
        f"specials={len(lex.specials)} roots={len(lex.roots)} "
        f"affixes={len(lex.affixes)} chars={len(lex.chars)} "
        f"bpe_block={lex.bpe_block} total_ids={layout.total}"
    )
    return EXIT_OK


def build_parser() -> _Parser:
    parser = _Parser(prog="morphotok", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    def add_model_args(p, bpe_default=str(BUNDLED_BPE)):
        p.add_argument("--lexicon", default=str(BUNDLED_LEXICON), help="lexicon document path")
        p.add_argument("--bpe", default=bpe_default, help="BPE model path")

    p = sub.add_parser("encode", help="text lines -> token lines")
    add_model_args(p)
    p.add_argument("input", nargs="?", default="-", help="input file or - for stdin")
    p.add_argument("-o", "--output", default="-")
    fmt = p.add_mutually_exclusive_group()
    fmt.add_argument("--ids", dest="format", action="store_const", const="ids")
    fmt.add_argument("--surfaces", dest="format", action="store_const", const="surfaces")
    fmt.add_argument("--jsonl", dest="format", action="store_const", const="jsonl")
    p.set_defaults(format="surfaces", func=cmd_encode)
    p.add_argument("--jobs", type=int, default=1, help="parallel line processing")

    p = sub.add_parser("decode", help="token lines -> text lines")
    add_model_args(p)
    p.add_argument("input", nargs="?", default="-")
    p.add_argument("-o", "--output", default="-")
    fmt = p.add_mutually_exclusive_group()
    fmt.add_argument("--ids", dest="format", action="store_const", const="ids")
    fmt.add_argument("--surfaces", dest="format", action="store_const", const="surfaces")
    p.set_defaults(format="surfaces", func=cmd_decode)

    p = sub.add_parser("train-bpe", help="train a BPE model from a text corpus")
    p.add_argument("corpus", help="text file or - for stdin")
    p.add_argument("--size", type=int, required=True, help="target vocabulary size")
    p.add_argument("-o", "--output", required=True, help="model file to write")
    p.set_defaults(func=cmd_train_bpe)

    p = sub.add_parser("eval", help="token-quality metrics over dumps")
    add_model_args(p)
    p.add_argument("dumps", nargs="*", help="JSONL token dump files")
    p.add_argument("--self", dest="self_corpus", help="tokenize this corpus in-process and time it")
    p.add_argument("--name", default="morphotok", help="row name for --self")
    p.add_argument("--json", action="store_true", help="machine-readable output")
    p.add_argument("--keep-markers", action="store_true", help="skip the external-dump marker adapter")
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("lexicon", help="lexicon utilities")
    lex_sub = p.add_subparsers(dest="subcommand", required=True)
    v = lex_sub.add_parser("validate", help="load and validate a lexicon document")
    v.add_argument("path")
    v.set_defaults(func=cmd_lexicon_validate)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (LexiconError, BpeError, DecodeError, MetricsError, json.JSONDecodeError) as exc:
        print(f"morphotok: {exc}", file=sys.stderr)
        return EXIT_DATA
    except OSError as exc:
        print(f"morphotok: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
