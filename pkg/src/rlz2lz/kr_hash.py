"""Karp-Rabin fingerprints of substrings of ``T`` in compressed space.

Hash of a byte string ``s``: ``sum((s[t] + 1) * base**(len(s) - 1 - t)) mod 2**61 - 1``,
so ``h(uv) = h(u) * base**len(v) + h(v)``. Tables hold the hash of every
prefix of ``R`` and of every prefix of ``T`` ending at a combined-parse
phrase end; any other prefix hash is one predecessor search plus one
reference-prefix difference away.

Equality answers are Monte-Carlo: two distinct equal-length substrings
collide with probability at most ``n / 2**61`` for a uniformly drawn base.
"""

from __future__ import annotations

import random
from bisect import bisect_left
from dataclasses import dataclass
from typing import Optional, Union

from .access import PhraseDirectory, build_directory
from .model import CombinedParse, OutOfRange, RlzArchive

MERSENNE61 = (1 << 61) - 1


@dataclass(frozen=True)
class HashConfig:
    base: int
    modulus: int = MERSENNE61

    @classmethod
    def from_seed(cls, seed: Optional[int]) -> "HashConfig":
        rng = random.Random(seed)
        return cls(rng.randint(2, MERSENNE61 - 2))


def hash_bytes(data: bytes, base: int, modulus: int = MERSENNE61) -> int:
    """Direct fingerprint of raw bytes (reference computation)."""
    h = 0
    for c in data:
        h = (h * base + c + 1) % modulus
    return h


def concat_hash(h_left: int, h_right: int, right_len: int, base: int,
                modulus: int = MERSENNE61) -> int:
    return (h_left * pow(base, right_len, modulus) + h_right) % modulus


class FingerprintTables:
    """Prefix fingerprints of ``R`` and of ``T`` at combined-parse phrase ends."""

    def __init__(self, directory: PhraseDirectory, combined: CombinedParse, config: HashConfig):
        self.directory = directory
        self.combined = combined
        self.config = config
        self.base = config.base
        self.n = directory.n
        self.ell = directory.ell
        M, B = config.modulus, config.base

        r_prefix = [0] * (self.ell + 1)
        h = 0
        for k, c in enumerate(directory.reference, 1):
            h = (h * B + c + 1) % M
            r_prefix[k] = h
        self.r_prefix = r_prefix

        ends = combined.ends
        boundary = []
        for idx, e in enumerate(ends):
            if e <= self.ell:
                boundary.append(r_prefix[e])
            else:
                src = combined.sources[idx - combined.ref_phrases]
                length = e - ends[idx - 1]
                boundary.append((boundary[-1] * pow(B, length, M)
                                 + self._ref_hash(src, src + length - 1)) % M)
        self.boundary_prefix = boundary
        self.ends = list(ends)

    def _ref_hash(self, a: int, b: int) -> int:
        M = self.config.modulus
        return (self.r_prefix[b] - self.r_prefix[a - 1]
                * pow(self.base, b - a + 1, M)) % M

    def prefix_hash(self, x: int) -> int:
        """Fingerprint of ``T[1..x]`` for ``0 <= x <= n``."""
        if x <= self.ell:
            return self.r_prefix[x]
        idx = bisect_left(self.ends, x)
        if self.ends[idx] == x:
            return self.boundary_prefix[idx]
        start = self.ends[idx - 1] + 1
        src = self.combined.sources[idx - self.combined.ref_phrases]
        length = x - start + 1
        M = self.config.modulus
        return (self.boundary_prefix[idx - 1] * pow(self.base, length, M)
                + self._ref_hash(src, src + length - 1)) % M

    def substring_hash(self, a: int, b: int) -> int:
        if b == a - 1 and 1 <= a <= self.n + 1:
            return 0
        if not 1 <= a <= b <= self.n:
            raise OutOfRange(f"range [{a}, {b}] outside [1, {self.n}]")
        M = self.config.modulus
        return (self.prefix_hash(b) - self.prefix_hash(a - 1)
                * pow(self.base, b - a + 1, M)) % M

    def memory_words(self) -> int:
        return len(self.r_prefix) + len(self.boundary_prefix)


def build_tables(source: Union[RlzArchive, PhraseDirectory], combined: CombinedParse,
                 seed: Optional[int] = None) -> FingerprintTables:
    """Tables for an archive (or a directory already built over it)."""
    directory = build_directory(source, combined) if isinstance(source, RlzArchive) else source
    return FingerprintTables(directory, combined, HashConfig.from_seed(seed))


class TextFingerprints:
    """LCP, longest common suffix and (co-)lexicographic comparison via fingerprints."""

    def __init__(self, tables: FingerprintTables):
        self.tables = tables
        self.directory = tables.directory
        self.n = tables.n
        self.char_at = tables.directory.char_at
        self.substring_hash = tables.substring_hash

    def _equal_forward(self, a: int, b: int, d: int) -> bool:
        h = self.substring_hash
        return h(a, a + d - 1) == h(b, b + d - 1)

    def _equal_backward(self, e1: int, e2: int, d: int) -> bool:
        h = self.substring_hash
        return h(e1 - d + 1, e1) == h(e2 - d + 1, e2)

    @staticmethod
    def _gallop(equal, limit: int) -> int:
        # largest d in [0, limit] with equal(d); equal is monotone
        if limit == 0 or not equal(1):
            return 0
        lo, step = 1, 2
        while lo < limit:
            probe = min(lo + step, limit)
            if not equal(probe):
                hi = probe - 1
                break
            lo = probe
            step *= 2
        else:
            return lo
        while lo < hi:
            mid = (lo + hi + 1) // 2
            if equal(mid):
                lo = mid
            else:
                hi = mid - 1
        return lo

    def lcp_suffixes(self, a: int, b: int, cap: Optional[int] = None) -> int:
        """Longest common prefix of ``T[a..n]`` and ``T[b..n]`` (``n + 1`` is the empty suffix)."""
        limit = self.n - max(a, b) + 1
        if cap is not None:
            limit = min(limit, cap)
        if a == b:
            return limit
        return self._gallop(lambda d: self._equal_forward(a, b, d), limit)

    def lcs_prefix_ends(self, e1: int, e2: int, cap: Optional[int] = None) -> int:
        """Longest common suffix of ``T[1..e1]`` and ``T[1..e2]``."""
        limit = min(e1, e2)
        if cap is not None:
            limit = min(limit, cap)
        if e1 == e2:
            return limit
        return self._gallop(lambda d: self._equal_backward(e1, e2, d), limit)

    def compare_suffixes(self, a: int, b: int) -> int:
        d = self.lcp_suffixes(a, b)
        la, lb = self.n - a + 1, self.n - b + 1
        if d == la or d == lb:
            return (la > lb) - (la < lb)
        ca, cb = self.char_at(a + d), self.char_at(b + d)
        return -1 if ca < cb else 1

    def compare_colex(self, s1: int, e1: int, s2: int, e2: int) -> int:
        """Compare ``T[s1..e1]`` and ``T[s2..e2]`` read right to left."""
        l1, l2 = e1 - s1 + 1, e2 - s2 + 1
        d = self.lcs_prefix_ends(e1, e2, cap=min(l1, l2))
        if d == l1 or d == l2:
            return (l1 > l2) - (l1 < l2)
        c1, c2 = self.char_at(e1 - d), self.char_at(e2 - d)
        return -1 if c1 < c2 else 1

    def compare(self, mode: str, x, y) -> int:
        """``mode="lex"``: suffix starts ``x, y``; ``mode="colex"``: extents ``(s, e)``."""
        if mode == "lex":
            return self.compare_suffixes(x, y)
        if mode == "colex":
            return self.compare_colex(x[0], x[1], y[0], y[1])
        raise ValueError(f"unknown comparison mode {mode!r}")
