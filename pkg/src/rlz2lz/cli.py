"""``rlz2lz`` command line.

Machine-readable ``key=value`` lines go to stdout, diagnostics to stderr.
Exit codes: 0 ok, 1 I/O error, 2 malformed input, 3 verification failure,
4 no reference occurrence or reference longer than the text.
"""

from __future__ import annotations

import argparse
import os
import secrets
import sys
from typing import Optional, Sequence

from . import _backend
from .codec import decode_file, encode_file, sniff
from .converter import build_engine
from .model import (
    FormatError, Lz77Parse, MalformedPhrase, MalformedTriple, NoReferenceOccurrence,
    RlzArchive, expand_lz77, expand_rlz,
)
from .oracle import naive_lz77
from .parse import parse_text

EXIT_IO, EXIT_FORMAT, EXIT_VERIFY, EXIT_REFERENCE = 1, 2, 3, 4


class CliError(Exception):
    def __init__(self, code: int, message: str):
        super().__init__(message)
        self.code = code


def _emit(**values) -> None:
    for key, value in values.items():
        print(f"{key}={value}")


def _read(path: str) -> bytes:
    with open(path, "rb") as fh:
        return fh.read()


def _write(path: str, data: bytes) -> None:
    with open(path, "wb") as fh:
        fh.write(data)


def _load(path: str, kind: Optional[str] = None):
    data = _read(path)
    if kind is not None and sniff(data) != kind:
        raise FormatError(f"{path}: expected a {kind} file")
    return decode_file(data), len(data)


def resolve_seed(seed: Optional[int]) -> int:
    """Explicit seed, else ``RLZ2LZ_SEED``, else fresh entropy."""
    if seed is not None:
        return seed
    env = os.environ.get("RLZ2LZ_SEED")
    if env:
        try:
            return int(env, 0)
        except ValueError:
            raise CliError(EXIT_FORMAT, f"RLZ2LZ_SEED is not an integer: {env!r}") from None
    return secrets.randbits(64)


def verify_parse(engine, parse: Lz77Parse) -> Optional[str]:
    """Check every triple against the text held by ``engine``; first problem or None."""
    if parse.n != engine.n:
        return f"parse covers {parse.n} bytes, text has {engine.n}"
    i = 0
    for k, (c, src, last) in enumerate(parse.triples):
        if c:
            if src is None or not 1 <= src <= i:
                return f"triple {k}: source {src} does not precede position {i + 1}"
            if engine.extract(src, src + c - 1) != engine.extract(i + 1, i + c):
                return f"triple {k}: copy from {src} differs from text at {i + 1}"
        if engine.char_at(i + c + 1) != last:
            return f"triple {k}: explicit character differs at {i + c + 1}"
        i += c + 1
    return None


def cmd_parse(args) -> None:
    text = _read(args.input)
    if args.ref_len > len(text):
        raise CliError(EXIT_REFERENCE, f"reference length {args.ref_len} exceeds text length {len(text)}")
    archive = parse_text(text, args.ref_len)
    out = args.out or args.input + ".rlzp"
    _write(out, encode_file(archive))
    _emit(**{"ℓ": archive.ell, "z'": len(archive.phrases), "n": len(text)})


def cmd_convert(args) -> None:
    archive, _ = _load(args.input, "RLZP")
    archive.validate()
    seed = resolve_seed(args.seed)
    engine = build_engine(archive, seed, args.backend)
    if hasattr(engine, "convert_all"):
        parse = engine.convert_all()
    else:
        from .converter import convert_with
        parse = convert_with(engine)
    if args.verify:
        problem = verify_parse(engine, parse)
        if problem:
            raise CliError(EXIT_VERIFY, f"verification failed: {problem}")
    out = args.out or args.input + ".lz77"
    _write(out, encode_file(parse))
    _emit(n=parse.n, z=len(parse.triples), seed=seed)
    if args.verify:
        _emit(verified="yes")


def cmd_decode(args) -> None:
    value, _ = _load(args.input)
    text = expand_rlz(value) if isinstance(value, RlzArchive) else expand_lz77(value)
    out = args.out or args.input + ".dec"
    _write(out, text)
    _emit(n=len(text))


def cmd_naive(args) -> None:
    text = _read(args.input)
    if not text:
        raise CliError(EXIT_FORMAT, "input is empty")
    parse = naive_lz77(text)
    out = args.out or args.input + ".lz77"
    _write(out, encode_file(parse))
    _emit(n=parse.n, z=len(parse.triples))


def cmd_stats(args) -> None:
    value, size = _load(args.input)
    if isinstance(value, RlzArchive):
        fields = {"n": value.n, "ℓ": value.ell, "z'": len(value.phrases)}
    else:
        fields = {"n": value.n, "z": len(value.triples)}
    fields["bytes"] = size
    fields["ratio"] = f"{value.n / size:.4f}"
    _emit(**fields)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="rlz2lz", description="Relative Lempel-Ziv archives and their exact LZ77 parse.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("parse", help="RLZ-parse a text against its own prefix")
    p.add_argument("input")
    p.add_argument("--ref-len", type=int, required=True, help="reference prefix length")
    p.add_argument("--out")
    p.set_defaults(func=cmd_parse)

    p = sub.add_parser("convert", help="turn an RLZP archive into its LZ77 parse")
    p.add_argument("input")
    p.add_argument("--out")
    p.add_argument("--seed", type=lambda s: int(s, 0),
                   help="hash seed (default: $RLZ2LZ_SEED, else random)")
    p.add_argument("--verify", action="store_true", help="check every triple against the text")
    p.add_argument("--backend", choices=sorted(_backend.BACKENDS))
    p.set_defaults(func=cmd_convert)

    p = sub.add_parser("decode", help="expand an RLZP or LZ77 file")
    p.add_argument("input")
    p.add_argument("--out")
    p.set_defaults(func=cmd_decode)

    p = sub.add_parser("naive-lz77", help="brute-force LZ77 parse of a raw text")
    p.add_argument("input")
    p.add_argument("--out")
    p.set_defaults(func=cmd_naive)

    p = sub.add_parser("stats", help="report sizes of an RLZP or LZ77 file")
    p.add_argument("input")
    p.set_defaults(func=cmd_stats)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    if getattr(args, "ref_len", 1) < 1:
        print("rlz2lz: --ref-len must be at least 1", file=sys.stderr)
        return EXIT_FORMAT
    try:
        args.func(args)
    except CliError as exc:
        print(f"rlz2lz: {exc}", file=sys.stderr)
        return exc.code
    except OSError as exc:
        print(f"rlz2lz: {exc}", file=sys.stderr)
        return EXIT_IO
    except NoReferenceOccurrence as exc:
        print(f"rlz2lz: {exc}", file=sys.stderr)
        return EXIT_REFERENCE
    except (FormatError, MalformedPhrase, MalformedTriple) as exc:
        print(f"rlz2lz: {exc}", file=sys.stderr)
        return EXIT_FORMAT
    return 0


if __name__ == "__main__":
    sys.exit(main())
