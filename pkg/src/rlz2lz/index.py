"""Leftmost split-occurrence index over combined-parse phrase boundaries.

Each phrase contributes one grid point: x is the co-lex rank of the phrase
string, y the lex rank of the suffix that follows it, and the weight is the
phrase's end position. A pattern ``P = P1 P2`` occurs split at a boundary
iff some point lies in (phrases ending with ``P1``) x (suffixes starting
with ``P2``); the minimum weight in that rectangle gives the leftmost such
occurrence. Ranks are 1-based in the public methods, phrase indices 0-based.
"""

from __future__ import annotations

from bisect import bisect_left, bisect_right
from functools import cmp_to_key
from heapq import merge
from typing import Optional

from .access import build_directory
from .kr_hash import FingerprintTables, TextFingerprints, build_tables
from .model import CombinedParse, RlzArchive
from .parse import combined_parse


class RangeMinGrid:
    """2-D range minimum over one weighted point per x column.

    Segment tree over x; every node keeps its points sorted by y together
    with a bottom-up min-segment-tree over their weights. O(p log p) words,
    O(log^2 p) per query.
    """

    def __init__(self, ys: list[int], ws: list[int]):
        p = len(ys)
        self.p = p
        size = 1
        while size < p:
            size *= 2
        self.size = size
        node_ys: list[list[int]] = [[] for _ in range(2 * size)]
        node_ws: list[list[int]] = [[] for _ in range(2 * size)]
        for x in range(p):
            node_ys[size + x] = [ys[x]]
            node_ws[size + x] = [ws[x]]
        for v in range(size - 1, 0, -1):
            pairs = list(merge(zip(node_ys[2 * v], node_ws[2 * v]),
                               zip(node_ys[2 * v + 1], node_ws[2 * v + 1])))
            node_ys[v] = [y for y, _ in pairs]
            node_ws[v] = [w for _, w in pairs]
        self.node_ys = node_ys
        self.node_min = [self._min_tree(ws_v) for ws_v in node_ws]

    @staticmethod
    def _min_tree(ws: list[int]) -> list[int]:
        m = len(ws)
        tree = [0] * m + ws
        for k in range(m - 1, 0, -1):
            tree[k] = min(tree[2 * k], tree[2 * k + 1])
        return tree

    @staticmethod
    def _tree_min(tree: list[int], lo: int, hi: int) -> Optional[int]:
        m = len(tree) // 2
        best = None
        lo += m
        hi += m
        while lo < hi:
            if lo & 1:
                if best is None or tree[lo] < best:
                    best = tree[lo]
                lo += 1
            if hi & 1:
                hi -= 1
                if best is None or tree[hi] < best:
                    best = tree[hi]
            lo >>= 1
            hi >>= 1
        return best

    def query(self, x1: int, x2: int, y1: int, y2: int) -> Optional[int]:
        """Minimum weight with ``x1 <= x <= x2`` and ``y1 <= y <= y2`` (0-based)."""
        best = None
        lo, hi = x1 + self.size, x2 + self.size + 1
        while lo < hi:
            if lo & 1:
                best = self._node(lo, y1, y2, best)
                lo += 1
            if hi & 1:
                hi -= 1
                best = self._node(hi, y1, y2, best)
            lo >>= 1
            hi >>= 1
        return best

    def _node(self, v: int, y1: int, y2: int, best: Optional[int]) -> Optional[int]:
        ys = self.node_ys[v]
        a, b = bisect_left(ys, y1), bisect_right(ys, y2)
        if a < b:
            w = self._tree_min(self.node_min[v], a, b)
            if best is None or w < best:
                return w
        return best

    def memory_words(self) -> int:
        return sum(map(len, self.node_ys)) + sum(map(len, self.node_min))


class BoundaryIndex:
    """Co-lex phrase order, lex boundary-suffix order and the weighted grid."""

    def __init__(self, fingerprints: TextFingerprints, combined: CombinedParse):
        self.fp = fingerprints
        self.tables: FingerprintTables = fingerprints.tables
        self.directory = fingerprints.directory
        self.combined = combined
        self.n = combined.n
        self.ell = combined.ell
        self.ends = list(combined.ends)
        self.starts = [1] + [e + 1 for e in self.ends[:-1]]
        self.p = len(self.ends)
        self.split_calls = 0

        fp, ends, starts = self.fp, self.ends, self.starts

        def by_colex(u: int, v: int) -> int:
            return fp.compare_colex(starts[u], ends[u], starts[v], ends[v]) or (ends[u] - ends[v])

        def by_suffix(u: int, v: int) -> int:
            return fp.compare_suffixes(ends[u] + 1, ends[v] + 1)

        self.colex = sorted(range(self.p), key=cmp_to_key(by_colex))
        self.lex = sorted(range(self.p), key=cmp_to_key(by_suffix))
        self.lex_rank = [0] * self.p
        for y, u in enumerate(self.lex):
            self.lex_rank[u] = y
        self.grid = RangeMinGrid([self.lex_rank[u] for u in self.colex],
                                 [ends[u] for u in self.colex])

    # text access and fingerprint queries, shared surface with the compiled engine
    def char_at(self, k: int) -> int:
        return self.directory.char_at(k)

    def extract(self, a: int, b: int) -> bytes:
        return self.directory.extract(a, b)

    def substring_hash(self, a: int, b: int) -> int:
        return self.tables.substring_hash(a, b)

    def lcp_suffixes(self, a: int, b: int) -> int:
        return self.fp.lcp_suffixes(a, b)

    def lcs_prefix_ends(self, e1: int, e2: int) -> int:
        return self.fp.lcs_prefix_ends(e1, e2)

    def compare_suffixes(self, a: int, b: int) -> int:
        return self.fp.compare_suffixes(a, b)

    def compare_colex(self, s1: int, e1: int, s2: int, e2: int) -> int:
        return self.fp.compare_colex(s1, e1, s2, e2)

    def colex_order(self) -> list[int]:
        return list(self.colex)

    def suffix_order(self) -> list[int]:
        return list(self.lex)

    def _colex_vs_pattern(self, u: int, a: int, b: int) -> int:
        s, e = self.starts[u], self.ends[u]
        lp, m = e - s + 1, b - a + 1
        d = self.fp.lcs_prefix_ends(e, b, cap=min(lp, m))
        if d == m:
            return 0
        if d == lp:
            return -1
        return -1 if self.char_at(e - d) < self.char_at(b - d) else 1

    def _suffix_vs_pattern(self, u: int, a: int, b: int) -> int:
        e = self.ends[u]
        ls, m = self.n - e, b - a + 1
        d = self.fp.lcp_suffixes(e + 1, a, cap=min(ls, m))
        if d == m:
            return 0
        if d == ls:
            return -1
        return -1 if self.char_at(e + 1 + d) < self.char_at(a + d) else 1

    @staticmethod
    def _equal_range(order: list[int], cmp) -> Optional[tuple[int, int]]:
        lo, hi = 0, len(order)
        while lo < hi:
            mid = (lo + hi) // 2
            if cmp(order[mid]) < 0:
                lo = mid + 1
            else:
                hi = mid
        first = lo
        hi = len(order)
        while lo < hi:
            mid = (lo + hi) // 2
            if cmp(order[mid]) <= 0:
                lo = mid + 1
            else:
                hi = mid
        return (first + 1, lo) if first < lo else None

    def colex_range(self, a: int, b: int) -> Optional[tuple[int, int]]:
        """Ranks of phrases whose string ends with ``T[a..b]`` (non-empty)."""
        return self._equal_range(self.colex, lambda u: self._colex_vs_pattern(u, a, b))

    def lex_range(self, a: int, b: int) -> Optional[tuple[int, int]]:
        """Ranks of boundary suffixes starting with ``T[a..b]``; ``b < a`` is the empty pattern."""
        if b < a:
            return (1, self.p)
        return self._equal_range(self.lex, lambda u: self._suffix_vs_pattern(u, a, b))

    def range_min(self, x1: int, x2: int, y1: int, y2: int) -> Optional[int]:
        if x1 > x2 or y1 > y2:
            return None
        return self.grid.query(x1 - 1, x2 - 1, y1 - 1, y2 - 1)

    def split_leftmost(self, a1: int, b1: int, a2: int, b2: int) -> Optional[int]:
        """Leftmost start of ``T[a1..b1] T[a2..b2]`` split at a phrase end after the first part."""
        self.split_calls += 1
        xr = self.colex_range(a1, b1)
        if xr is None:
            return None
        yr = self.lex_range(a2, b2)
        if yr is None:
            return None
        w = self.range_min(xr[0], xr[1], yr[0], yr[1])
        return None if w is None else w - (b1 - a1)

    def memory_words(self) -> int:
        return (self.tables.memory_words() + self.directory.memory_words()
                + 3 * self.p + self.grid.memory_words())


def build_index(archive: RlzArchive, seed: Optional[int] = None,
                combined: Optional[CombinedParse] = None) -> BoundaryIndex:
    combined = combined or combined_parse(archive)
    directory = build_directory(archive, combined)
    tables = build_tables(directory, combined, seed)
    return BoundaryIndex(TextFingerprints(tables), combined)
