"""Exact LZ77 parse of ``T`` from its reference and RLZ parse.

The next phrase starting at ``i + 1`` is found by trying every split point
``j``: the longest extension ``k_j`` of ``T[i+1..j] | T[j+1..k_j]`` that
occurs split at a phrase boundary and starts at or before ``i`` (so it
lies inside ``T[1..k_j - 1]``). The running maximum ``kmax`` and its
leftmost start ``smax`` are kept; the loop stops once ``kmax == j - 1``.

Any object exposing ``n``, ``char_at`` and ``split_leftmost`` works as the
index here, so these functions drive both backends. The compiled backend
additionally runs the same loop natively (``Engine.convert_all``).
"""

from __future__ import annotations

from typing import Optional

from . import _backend
from .model import Lz77Parse, Lz77Triple, RlzArchive


def _probe(index, i: int, j: int, k: int) -> Optional[int]:
    s = index.split_leftmost(i + 1, j, j + 1, k)
    return s if s is not None and s <= i else None


def largest_kj(i: int, j: int, index) -> Optional[tuple[int, int]]:
    """``(k_j, s_j)`` by binary search over ``k in [j, n]``, or None.

    The predicate "leftmost split start <= i" is monotone in ``k``: the
    suffix range only shrinks as the second part grows.
    """
    s = _probe(index, i, j, j)
    if s is None:
        return None
    lo, hi = j, index.n
    while lo < hi:
        mid = (lo + hi + 1) // 2
        sm = _probe(index, i, j, mid)
        if sm is None:
            hi = mid - 1
        else:
            lo, s = mid, sm
    return lo, s


def _extend_from(i: int, j: int, kmax: int, index) -> Optional[tuple[int, int]]:
    """Like :func:`largest_kj` but returns None whenever ``k_j < kmax``.

    Such answers never change ``(kmax, smax)``, so one probe at
    ``max(j, kmax)`` rules them out; otherwise gallop upwards.
    """
    lo = max(j, kmax)
    s = _probe(index, i, j, lo)
    if s is None:
        return None
    n, step = index.n, 1
    while True:
        k = lo + step
        if k > n:
            hi = n
            break
        sk = _probe(index, i, j, k)
        if sk is None:
            hi = k - 1
            break
        lo, s = k, sk
        step *= 2
    while lo < hi:
        mid = (lo + hi + 1) // 2
        sm = _probe(index, i, j, mid)
        if sm is None:
            hi = mid - 1
        else:
            lo, s = mid, sm
    return lo, s


def last_phrase_fallback(i: int, index) -> Lz77Triple:
    """Final phrase when ``T[i+1..n]`` already occurs before: copy ``T[i+1..n-1]``."""
    n = index.n
    if i == n - 1:
        return Lz77Triple(0, None, index.char_at(n))
    best = None
    for j in range(i + 1, n):
        s = _probe(index, i, j, n - 1)
        if s is not None and (best is None or s < best):
            best = s
    assert best is not None, "leftmost occurrence must be split at some boundary"
    return Lz77Triple(n - 1 - i, best, index.char_at(n))


def next_phrase(i: int, index, literal: bool = False, trace: Optional[dict] = None) -> Lz77Triple:
    """Triple of the LZ77 phrase starting at ``T[i + 1]``.

    ``literal=True`` calls :func:`largest_kj` for every split point exactly
    as written; the default prunes split points that cannot raise ``kmax``.
    Both produce identical triples.
    """
    n = index.n
    kmax, smax = i, n + 1
    for j in range(i + 1, n + 1):
        r = largest_kj(i, j, index) if literal else _extend_from(i, j, kmax, index)
        if r is not None:
            kj, sj = r
            if kj > kmax:
                kmax, smax = kj, sj
            if kj == kmax and smax > sj:
                if trace is not None:
                    trace["tie_updates"] = trace.get("tie_updates", 0) + 1
                smax = sj
        if kmax == j - 1:
            break
    else:
        return last_phrase_fallback(i, index)
    return Lz77Triple(kmax - i, smax if kmax > i else None, index.char_at(kmax + 1))


def convert_with(index, literal: bool = False) -> Lz77Parse:
    """Run the phrase loop in Python over any index object."""
    triples = []
    i, n = 0, index.n
    while i < n:
        t = next_phrase(i, index, literal=literal)
        triples.append(t)
        i += t.copy_len + 1
    return Lz77Parse(tuple(triples), n)


def build_engine(archive: RlzArchive, seed: Optional[int] = None, backend: Optional[str] = None):
    """Index over ``archive`` from the selected backend (``"compiled"`` or ``"python"``)."""
    return _backend.get(backend).build(archive, seed)


def convert(archive: RlzArchive, seed: Optional[int] = None, backend: Optional[str] = None,
            literal: bool = False) -> Lz77Parse:
    archive.validate()
    engine = build_engine(archive, seed, backend)
    if hasattr(engine, "convert_all"):
        return engine.convert_all(literal=literal)
    return convert_with(engine, literal=literal)
