"""Exact LZ77 parsing of reference-prefixed texts from their relative Lempel-Ziv parse."""

from .codec import decode_file, encode_file
from .converter import convert, largest_kj, last_phrase_fallback, next_phrase
from .index import BoundaryIndex, build_index
from .model import (
    CombinedParse, FormatError, Lz77Parse, Lz77Triple, MalformedPhrase, MalformedTriple,
    NoReferenceOccurrence, OutOfRange, RlzArchive, RlzPhrase, Rlz2LzError, expand_lz77,
    expand_rlz,
)
from .parse import combined_parse, parse_text

__all__ = [
    "BoundaryIndex", "CombinedParse", "FormatError", "Lz77Parse", "Lz77Triple",
    "MalformedPhrase", "MalformedTriple", "NoReferenceOccurrence", "OutOfRange",
    "RlzArchive", "RlzPhrase", "Rlz2LzError", "build_index", "combined_parse", "convert",
    "decode_file", "encode_file", "expand_lz77", "expand_rlz", "largest_kj",
    "last_phrase_fallback", "next_phrase", "parse_text",
]
