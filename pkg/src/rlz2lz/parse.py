"""Parsers over the reference: LZ77(R), greedy RLZ of the tail, combined parse.

Both parsers run on a suffix array of ``R`` (prefix doubling with numpy)
with range-minimum tables for leftmost-occurrence lookups.
"""

from __future__ import annotations

from array import array
from bisect import bisect_left, bisect_right
from itertools import accumulate

import numpy as np

from .model import (
    CombinedParse, Lz77Parse, Lz77Triple, NoReferenceOccurrence, RlzArchive, RlzPhrase,
)


def suffix_array(data: bytes) -> np.ndarray:
    """0-based suffix array by prefix doubling, O(n log^2 n)."""
    n = len(data)
    if n == 0:
        return np.zeros(0, dtype=np.int64)
    rank = np.frombuffer(data, dtype=np.uint8).astype(np.int64)
    sa = np.argsort(rank, kind="stable")
    k = 1
    while True:
        second = np.full(n, -1, dtype=np.int64)
        second[:n - k] = rank[k:]
        sa = np.lexsort((second, rank))
        r1, r2 = rank[sa], second[sa]
        diff = (r1[1:] != r1[:-1]) | (r2[1:] != r2[:-1])
        new = np.empty(n, dtype=np.int64)
        new[sa] = np.concatenate(([0], np.cumsum(diff)))
        rank = new
        if rank[sa[-1]] == n - 1 or k >= n:
            return sa.astype(np.int64)
        k *= 2


def _int_array(values) -> array:
    """Compact int32 array (``array('i')``) from a numpy array or iterable."""
    if isinstance(values, np.ndarray):
        out = array("i")
        out.frombytes(values.astype(np.int32).tobytes())
        return out
    return array("i", values)


def lcp_array(data: bytes, sa) -> array:
    """Kasai: ``lcp[r] = LCP(sa[r-1], sa[r])``, ``lcp[0] = 0``."""
    n = len(data)
    sa = _int_array(sa)
    rank = array("i", bytes(4 * n))
    for r, s in enumerate(sa):
        rank[s] = r
    lcp = array("i", bytes(4 * n))
    h = 0
    for i in range(n):
        r = rank[i]
        if r == 0:
            h = 0
            continue
        j = sa[r - 1]
        while i + h < n and j + h < n and data[i + h] == data[j + h]:
            h += 1
        lcp[r] = h
        if h:
            h -= 1
    return lcp


class SparseMin:
    """Static range minimum; ``query(lo, hi)`` is inclusive.

    Sparse table over minima of 32-entry blocks, direct scans at the ends,
    so it takes about ``n / 32 * log n`` extra words.
    """

    BLOCK = 32

    def __init__(self, values):
        self.values = _int_array(values)
        v = np.frombuffer(self.values, dtype=np.int32) if len(self.values) else np.zeros(0, np.int32)
        nb = -(-len(v) // self.BLOCK)
        padded = np.full(nb * self.BLOCK, np.iinfo(np.int32).max, dtype=np.int32)
        padded[:len(v)] = v
        table = [padded.reshape(nb, self.BLOCK).min(axis=1)] if nb else []
        width = 1
        while table and 2 * width <= len(table[0]):
            prev = table[-1]
            table.append(np.minimum(prev[:-width], prev[width:]))
            width *= 2
        self.table = [_int_array(t) for t in table]

    def query(self, lo: int, hi: int) -> int:
        B, values = self.BLOCK, self.values
        bl, bh = lo // B + 1, hi // B
        if bl >= bh:
            return min(values[lo:hi + 1])
        best = min(min(values[lo:bl * B]), min(values[bh * B:hi + 1]))
        k = (bh - bl).bit_length() - 1
        row = self.table[k]
        return min(best, row[bl], row[bh - (1 << k)])


class ReferenceIndex:
    """Suffix array of ``R`` with leftmost-occurrence support."""

    def __init__(self, reference: bytes):
        self.reference = bytes(reference)
        self.ell = len(self.reference)
        self.sa = _int_array(suffix_array(self.reference))
        self.rank = array("i", bytes(4 * self.ell))
        for r, s in enumerate(self.sa):
            self.rank[s] = r
        self.min_sa = SparseMin(self.sa)
        self._lcp = None

    @property
    def lcp(self) -> SparseMin:
        if self._lcp is None:
            self._lcp = SparseMin(lcp_array(self.reference, self.sa))
        return self._lcp

    def interval(self, r: int, d: int) -> tuple[int, int]:
        """Maximal rank interval around rank ``r`` sharing a prefix of length ``d``."""
        if d == 0:
            return 0, self.ell - 1
        lcp = self.lcp
        lo_lo, lo_hi = 0, r          # smallest lo with min(lcp[lo+1..r]) >= d
        while lo_lo < lo_hi:
            mid = (lo_lo + lo_hi) // 2
            if lcp.query(mid + 1, r) >= d:
                lo_hi = mid
            else:
                lo_lo = mid + 1
        hi_lo, hi_hi = r, self.ell - 1   # largest hi with min(lcp[r+1..hi]) >= d
        while hi_lo < hi_hi:
            mid = (hi_lo + hi_hi + 1) // 2
            if lcp.query(r + 1, mid) >= d:
                hi_lo = mid
            else:
                hi_hi = mid - 1
        return lo_lo, hi_lo

    def leftmost(self, pos: int, d: int) -> int:
        """Leftmost 0-based start of ``R[pos:pos+d]`` in ``R``."""
        lo, hi = self.interval(self.rank[pos], d)
        return self.min_sa.query(lo, hi)


def _nearest_smaller(sa: array, order) -> array:
    """For each rank in ``order``, the last rank seen earlier with a smaller SA value (-1 if none)."""
    out = array("i", bytes(4 * len(sa)))
    stack: list[int] = []
    for r in order:
        while stack and sa[stack[-1]] > sa[r]:
            stack.pop()
        out[r] = stack[-1] if stack else -1
        stack.append(r)
    return out


def _longest_previous_factor(index: ReferenceIndex) -> array:
    """LPF via nearest smaller suffix-array values on either side."""
    sa, n = index.sa, index.ell
    lcp = index.lcp
    psv = _nearest_smaller(sa, range(n))
    nsv = _nearest_smaller(sa, range(n - 1, -1, -1))
    lpf = array("i", bytes(4 * n))
    for r in range(n):
        best = 0
        if psv[r] >= 0:
            best = lcp.query(psv[r] + 1, r)
        if nsv[r] >= 0:
            best = max(best, lcp.query(r + 1, nsv[r]))
        lpf[sa[r]] = best
    return lpf


def lz77_parse_reference(reference: bytes, index: ReferenceIndex | None = None) -> Lz77Parse:
    """Greedy LZ77 parse of ``R`` with leftmost sources (overlap allowed)."""
    R = bytes(reference)
    ell = len(R)
    if ell < 1:
        raise ValueError("reference must be non-empty")
    index = index or ReferenceIndex(R)
    lpf = _longest_previous_factor(index)
    triples = []
    p = 0
    while p < ell:
        d = lpf[p]
        if p + d >= ell:
            d = ell - p - 1
        src = index.leftmost(p, d) + 1 if d else None
        triples.append(Lz77Triple(d, src, R[p + d]))
        p += d + 1
    return Lz77Parse(tuple(triples), ell)


def _common_prefix(a: bytes, i: int, b: bytes, j: int) -> int:
    limit = min(len(a) - i, len(b) - j)
    k, step = 0, 32
    while k < limit:
        s = min(step, limit - k)
        if a[i + k:i + k + s] == b[j + k:j + k + s]:
            k += s
            step = min(step * 2, 1 << 16)
        elif s == 1:
            break
        else:
            step = s // 2
    return k


def rlz_parse(tail: bytes, index: ReferenceIndex, offset: int = 0) -> list[RlzPhrase]:
    """Greedy RLZ phrases of ``tail``: longest match in ``R``, leftmost source.

    A byte missing from ``R`` raises :class:`NoReferenceOccurrence` with its
    1-based position in ``tail`` plus ``offset``.
    """
    R, ell, sa = index.reference, index.ell, index.sa
    phrases = []
    q, m = 0, len(tail)
    while q < m:
        lo, hi, d = 0, ell, 0
        while q + d < m:
            if hi - lo == 1:
                d += _common_prefix(R, sa[lo] + d, tail, q + d)
                break
            c = tail[q + d]
            key = lambda s, d=d: R[s + d] if s + d < ell else -1  # noqa: E731
            nlo = bisect_left(sa, c, lo, hi, key=key)
            nhi = bisect_right(sa, c, nlo, hi, key=key)
            if nlo == nhi:
                break
            lo, hi, d = nlo, nhi, d + 1
        if d == 0:
            raise NoReferenceOccurrence(offset + q + 1)
        phrases.append(RlzPhrase(index.min_sa.query(lo, hi - 1) + 1, d))
        q += d
    return phrases


def build_combined(lz_r: Lz77Parse, rlz: list[RlzPhrase], ell: int) -> CombinedParse:
    lengths = [t.copy_len + 1 for t in lz_r.triples] + [p.length for p in rlz]
    ends = tuple(accumulate(lengths))
    return CombinedParse(ends, ell, len(lz_r.triples), tuple(p.src for p in rlz))


def parse_text(text: bytes, ell: int) -> RlzArchive:
    """Split ``text`` into reference ``text[:ell]`` and its greedy RLZ tail."""
    if not 1 <= ell <= len(text):
        raise ValueError(f"reference length {ell} outside [1, {len(text)}]")
    index = ReferenceIndex(text[:ell])
    return RlzArchive(text[:ell], tuple(rlz_parse(text[ell:], index, offset=ell)))


def combined_parse(archive: RlzArchive) -> CombinedParse:
    archive.validate()
    return build_combined(lz77_parse_reference(archive.reference), list(archive.phrases),
                          archive.ell)
