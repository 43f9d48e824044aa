"""Parse value types and their expansion semantics.

Positions are 1-based throughout, both in memory and on disk. A text
``T[1..n]`` starts with a reference ``R = T[1..ell]``; the remainder is
described either by relative Lempel-Ziv pairs against ``R`` or, after
conversion, by LZ77 triples over ``T`` itself.

Final-phrase convention: LZ77 parsers here never assume a terminator
symbol. When the greedy copy of the last phrase would run to the end of
the text, the phrase still ends at ``n`` and ``T[n]`` is stored as the
explicit character, the copy part shrinking by one. Every parser in the
package (reference parser, converter, oracle) applies this rule.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple, Optional, Sequence


class Rlz2LzError(Exception):
    """Base class for library errors."""


class MalformedPhrase(Rlz2LzError, ValueError):
    pass


class MalformedTriple(Rlz2LzError, ValueError):
    pass


class FormatError(Rlz2LzError, ValueError):
    """Raised for undecodable archive streams (magic, version, truncation)."""


class OutOfRange(Rlz2LzError, IndexError):
    pass


class NoReferenceOccurrence(Rlz2LzError, ValueError):
    """A tail byte does not occur anywhere in the reference."""

    def __init__(self, position: int):
        super().__init__(f"byte at text position {position} does not occur in the reference")
        self.position = position


class RlzPhrase(NamedTuple):
    src: int
    length: int


class Lz77Triple(NamedTuple):
    copy_len: int
    src: Optional[int]  # None when copy_len == 0
    last: int


@dataclass(frozen=True)
class RlzArchive:
    reference: bytes
    phrases: tuple[RlzPhrase, ...]

    def __post_init__(self):
        object.__setattr__(self, "reference", bytes(self.reference))
        object.__setattr__(self, "phrases", tuple(RlzPhrase(*p) for p in self.phrases))

    @property
    def ell(self) -> int:
        return len(self.reference)

    @property
    def n(self) -> int:
        return self.ell + sum(p.length for p in self.phrases)

    def validate(self) -> None:
        ell = self.ell
        if ell < 1:
            raise MalformedPhrase("reference must be non-empty")
        for k, (src, length) in enumerate(self.phrases):
            if length < 1 or src < 1 or src + length - 1 > ell:
                raise MalformedPhrase(
                    f"phrase {k} (src={src}, len={length}) exceeds reference of length {ell}"
                )


@dataclass(frozen=True)
class Lz77Parse:
    triples: tuple[Lz77Triple, ...]
    n: int

    def __post_init__(self):
        object.__setattr__(self, "triples", tuple(Lz77Triple(*t) for t in self.triples))

    @classmethod
    def from_triples(cls, triples: Sequence[Sequence]) -> "Lz77Parse":
        triples = tuple(Lz77Triple(*t) for t in triples)
        return cls(triples, sum(t.copy_len + 1 for t in triples))

    def __len__(self) -> int:
        return len(self.triples)


@dataclass(frozen=True)
class CombinedParse:
    """Phrase ends of LZ77(R) followed by the RLZ phrase ends.

    ``sources[k]`` is the reference source of the ``k``-th RLZ phrase, i.e.
    of phrase index ``ref_phrases + k``.
    """

    ends: tuple[int, ...]
    ell: int
    ref_phrases: int
    sources: tuple[int, ...]

    @property
    def n(self) -> int:
        return self.ends[-1]

    def __len__(self) -> int:
        return len(self.ends)

    def start(self, idx: int) -> int:
        return self.ends[idx - 1] + 1 if idx else 1


def expand_rlz(archive: RlzArchive) -> bytes:
    archive.validate()
    ref = archive.reference
    out = bytearray(ref)
    for src, length in archive.phrases:
        out += ref[src - 1:src - 1 + length]
    return bytes(out)


def expand_lz77(parse: Lz77Parse) -> bytes:
    """Expand triples left to right; copies may overlap their own output."""
    out = bytearray()
    for k, (copy_len, src, last) in enumerate(parse.triples):
        start = len(out) + 1
        if copy_len < 0:
            raise MalformedTriple(f"triple {k}: negative copy length")
        if copy_len:
            if src is None or src < 1 or src >= start:
                raise MalformedTriple(f"triple {k}: source {src} not before phrase start {start}")
            lo = src - 1
            if lo + copy_len <= len(out):
                out += out[lo:lo + copy_len]
            else:
                # overlapping copy repeats the period start - src
                period = out[lo:]
                reps, rem = divmod(copy_len, len(period))
                out += period * reps + period[:rem]
        out.append(last)
    if len(out) != parse.n:
        raise MalformedTriple(f"expansion has length {len(out)}, parse declares n={parse.n}")
    return bytes(out)
