"""Brute-force ground truth. Deterministic and hash-free; desk-scale inputs only."""

from __future__ import annotations

from typing import Iterable, Optional

from .model import Lz77Parse, Lz77Triple, NoReferenceOccurrence, RlzArchive, RlzPhrase


def naive_lz77(text: bytes) -> Lz77Parse:
    """Greedy LZ77 straight from the definition, same final-phrase rule as the parsers."""
    T = bytes(text)
    n = len(T)
    if n < 1:
        raise ValueError("text must be non-empty")
    triples = []
    p = 0
    while p < n:
        # grow d while T[p:p+d+1] occurs starting before p
        d = 0
        while p + d < n and T.find(T[p:p + d + 1], 0, p + d) != -1:
            d += 1
        if p + d == n:
            d -= 1
        src = T.find(T[p:p + d], 0, p + d - 1) + 1 if d else None
        triples.append(Lz77Triple(d, src, T[p + d]))
        p += d + 1
    return Lz77Parse(tuple(triples), n)


def naive_rlz(text: bytes, ell: int) -> RlzArchive:
    T = bytes(text)
    R = T[:ell]
    phrases = []
    q = ell
    while q < len(T):
        d = 0
        while q + d < len(T) and R.find(T[q:q + d + 1]) != -1:
            d += 1
        if d == 0:
            raise NoReferenceOccurrence(q + 1)
        phrases.append(RlzPhrase(R.find(T[q:q + d]) + 1, d))
        q += d
    return RlzArchive(R, tuple(phrases))


def naive_split_leftmost(text: bytes, boundaries: Iterable[int], first: tuple[int, int],
                         second: Optional[tuple[int, int]] = None) -> Optional[int]:
    """Scan every phrase end ``w``: does ``first`` end at ``w`` and ``second`` start at ``w + 1``?

    ``first`` must lie inside the phrase ending at ``w`` (no earlier boundary
    falls within it), which is the shape of occurrence the index reports.
    """
    T = bytes(text)
    P1 = T[first[0] - 1:first[1]]
    P2 = T[second[0] - 1:second[1]] if second else b""
    prev = 0
    for w in sorted(boundaries):
        s = w - len(P1)
        if (s >= prev and T[s:w] == P1 and w + len(P2) <= len(T)
                and T[w:w + len(P2)] == P2):
            return s + 1
        prev = w
    return None


def naive_lcp(text: bytes, a: int, b: int) -> int:
    T = bytes(text)
    d = 0
    while a - 1 + d < len(T) and b - 1 + d < len(T) and T[a - 1 + d] == T[b - 1 + d]:
        d += 1
    return d


def naive_lcs(text: bytes, e1: int, e2: int) -> int:
    T = bytes(text)
    d = 0
    while e1 - d >= 1 and e2 - d >= 1 and T[e1 - 1 - d] == T[e2 - 1 - d]:
        d += 1
    return d


def naive_leftmost(text: bytes, s: int, e: int) -> int:
    """1-based leftmost start of ``T[s..e]`` in ``T``."""
    return bytes(text).find(text[s - 1:e]) + 1
