# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled conversion engine.

Same algorithms and answers as the pure-Python modules (``kr_hash``,
``access``, ``index``, ``converter``); all state lives in numpy arrays so
``memory_words`` is an exact account of the index workspace.

Grid layout: x is split into buckets of ``BUCKET`` columns. Level ``lv >= 1``
stores, for every aligned run of ``2**lv`` buckets, its points sorted by y
(``gy``/``gw`` rows) plus a min-segment-tree over blocks of ``BLOCK``
weights. Single buckets and ragged ends are scanned directly.
"""

import numpy as np

from libc.stdint cimport int32_t, int64_t, uint8_t, uint64_t

from .model import Lz77Triple, OutOfRange

cdef extern from *:
    """
    #include <stdint.h>
    #define RLZ_M61 0x1FFFFFFFFFFFFFFFULL
    static inline uint64_t rlz_mulmod(uint64_t a, uint64_t b) {
        unsigned __int128 r = (unsigned __int128)a * b;
        uint64_t s = (uint64_t)(r & RLZ_M61) + (uint64_t)(r >> 61);
        return s >= RLZ_M61 ? s - RLZ_M61 : s;
    }
    static inline uint64_t rlz_submod(uint64_t a, uint64_t b) {
        return a >= b ? a - b : a + RLZ_M61 - b;
    }
    static inline uint64_t rlz_addmod(uint64_t a, uint64_t b) {
        uint64_t s = a + b;
        return s >= RLZ_M61 ? s - RLZ_M61 : s;
    }
    """
    uint64_t M61 "RLZ_M61"
    uint64_t mulmod "rlz_mulmod"(uint64_t a, uint64_t b) noexcept nogil
    uint64_t submod "rlz_submod"(uint64_t a, uint64_t b) noexcept nogil
    uint64_t addmod "rlz_addmod"(uint64_t a, uint64_t b) noexcept nogil

cdef enum:
    BUCKET_SHIFT = 5
    BUCKET = 32
    BLOCK = 16
    FAST = 48
    CACHE = 1024

cdef int32_t NO_W = 0x7FFFFFFF


cdef inline int64_t imin(int64_t a, int64_t b) noexcept nogil:
    return a if a < b else b


cdef inline int64_t imax(int64_t a, int64_t b) noexcept nogil:
    return a if a > b else b


cdef int64_t* ptr64(object a) except NULL:
    cdef int64_t[::1] v = a
    return &v[0]


cdef uint64_t* ptru64(object a) except NULL:
    cdef uint64_t[::1] v = a
    return &v[0]


cdef int32_t* ptr32(object a) except NULL:
    cdef int32_t[::1] v = a.reshape(-1)
    return &v[0]


cdef class Engine:
    cdef readonly int64_t n, ell, p, ref_phrases
    cdef readonly uint64_t base
    cdef public int64_t split_calls

    cdef bytes _ref
    cdef const uint8_t* R
    cdef object _keep
    cdef int64_t* ends
    cdef int64_t* src
    cdef uint64_t* rpre
    cdef uint64_t* bpre
    cdef uint64_t sq[64]
    cdef uint64_t* powt
    cdef int32_t* jump
    cdef int jshift
    cdef int64_t cmask
    cdef int32_t* colex
    cdef int32_t* lexo
    cdef int64_t maxlen

    cdef int nlev, nbm
    cdef int32_t* gy0
    cdef int32_t* gw0
    cdef int32_t* gy
    cdef int32_t* gw
    cdef int32_t* gtree

    cdef int64_t ck_u[CACHE]
    cdef int64_t ck_a[CACHE]
    cdef int64_t ck_val[CACHE]
    cdef int64_t ck_cap[CACHE]

    def __init__(self, bytes reference, ends, sources, int64_t ref_phrases, uint64_t base):
        cdef int64_t k, idx, e, length, s
        cdef uint64_t h
        self._ref = reference
        self.R = <const uint8_t*> self._ref
        self.ell = len(reference)
        self.ref_phrases = ref_phrases
        self.base = base
        self.split_calls = 0
        ends_a = np.ascontiguousarray(ends, dtype=np.int64)
        src_a = np.ascontiguousarray(sources, dtype=np.int64)
        if ends_a.shape[0] == 0 or src_a.shape[0] != ends_a.shape[0] - ref_phrases:
            raise ValueError("inconsistent combined parse")
        self.p = ends_a.shape[0]
        self.n = ends_a[self.p - 1]
        if self.n >= NO_W:
            raise ValueError("texts of 2**31 bytes or more are not supported")
        keep = {"ends": ends_a, "src": src_a}
        self._keep = keep
        self.ends = ptr64(ends_a)
        self.src = ptr64(src_a) if src_a.shape[0] else NULL

        self.sq[0] = base
        for k in range(1, 64):
            self.sq[k] = mulmod(self.sq[k - 1], self.sq[k - 1])
        powt_a = np.empty(self.ell + 1, dtype=np.uint64)
        keep["pow"] = powt_a
        self.powt = ptru64(powt_a)
        self.powt[0] = 1
        for k in range(1, self.ell + 1):
            self.powt[k] = mulmod(self.powt[k - 1], base)
        self._build_jump(ends_a)

        rpre_a = np.zeros(self.ell + 1, dtype=np.uint64)
        keep["rpre"] = rpre_a
        self.rpre = ptru64(rpre_a)
        h = 0
        for k in range(self.ell):
            h = addmod(mulmod(h, base), <uint64_t> self.R[k] + 1)
            self.rpre[k + 1] = h

        bpre_a = np.zeros(self.p, dtype=np.uint64)
        keep["bpre"] = bpre_a
        self.bpre = ptru64(bpre_a)
        self.maxlen = 0
        for idx in range(self.p):
            e = self.ends[idx]
            length = e - (self.ends[idx - 1] if idx else 0)
            self.maxlen = imax(self.maxlen, length)
            if e <= self.ell:
                self.bpre[idx] = self.rpre[e]
            else:
                s = self.src[idx - ref_phrases]
                self.bpre[idx] = addmod(mulmod(self.bpre[idx - 1], self._pow(length)),
                                        self._ref_hash(s, s + length - 1))
        # lex-LCP cache sized to the phrase count, capped at CACHE slots
        self.cmask = 1
        while self.cmask < imin(self.p, CACHE):
            self.cmask <<= 1
        self.cmask -= 1
        for k in range(self.cmask + 1):
            self.ck_u[k] = -1
        self._build_orders()
        self._build_grid()

    # ------------------------------------------------------------------ hashing

    def _build_jump(self, ends_a):
        # jump[t]: first phrase ending at or after tail block t (blocks of 2**jshift)
        cdef int64_t tail = self.n - self.ell, z = self.p - self.ref_phrases
        shift = 0
        if z:
            while (tail >> (shift + 1)) >= z:
                shift += 1
        nblocks = ((tail - 1) >> shift) + 1 if tail else 0
        firsts = self.ell + 1 + (np.arange(nblocks, dtype=np.int64) << shift)
        jump_a = np.empty(nblocks + 1, dtype=np.int32)
        jump_a[:nblocks] = np.searchsorted(ends_a, firsts, side="left")
        jump_a[nblocks] = self.p - 1
        self._keep["jump"] = jump_a
        self.jump = ptr32(jump_a)
        self.jshift = shift

    cdef inline uint64_t _pow(self, int64_t d) noexcept nogil:
        cdef uint64_t r = 1
        cdef int k = 0
        if d <= self.ell:
            return self.powt[d]
        while d:
            if d & 1:
                r = mulmod(r, self.sq[k])
            d >>= 1
            k += 1
        return r

    cdef inline uint64_t _ref_hash(self, int64_t a, int64_t b) noexcept nogil:
        return submod(self.rpre[b], mulmod(self.rpre[a - 1], self._pow(b - a + 1)))

    cdef inline int64_t _phrase_of(self, int64_t k) noexcept nogil:
        # first phrase index with end >= k, for ell < k <= n
        cdef int64_t t = (k - self.ell - 1) >> self.jshift
        cdef int64_t lo = self.jump[t], hi = self.jump[t + 1], mid
        while lo < hi:
            mid = (lo + hi) >> 1
            if self.ends[mid] >= k:
                hi = mid
            else:
                lo = mid + 1
        return lo

    cdef inline uint64_t _H(self, int64_t x) noexcept nogil:
        cdef int64_t idx, st, s, length
        cdef uint64_t pw
        if x <= self.ell:
            return self.rpre[x]
        idx = self._phrase_of(x)
        if self.ends[idx] == x:
            return self.bpre[idx]
        st = self.ends[idx - 1] + 1
        s = self.src[idx - self.ref_phrases]
        length = x - st + 1
        pw = self._pow(length)
        return addmod(mulmod(self.bpre[idx - 1], pw),
                      submod(self.rpre[s + length - 1], mulmod(self.rpre[s - 1], pw)))

    cdef inline uint64_t _sub_hash(self, int64_t a, int64_t b) noexcept nogil:
        if b < a:
            return 0
        return submod(self._H(b), mulmod(self._H(a - 1), self._pow(b - a + 1)))

    # ------------------------------------------------------------------ access

    cdef inline int64_t _fwd_run(self, int64_t k, int64_t* rp) noexcept nogil:
        # T[k..k+run-1] == R[rp..rp+run-1] (0-based rp)
        cdef int64_t idx, st
        if k <= self.ell:
            rp[0] = k - 1
            return self.ell - k + 1
        idx = self._phrase_of(k)
        st = self.ends[idx - 1] + 1
        rp[0] = self.src[idx - self.ref_phrases] + k - st - 1
        return self.ends[idx] - k + 1

    cdef inline int64_t _bwd_run(self, int64_t k, int64_t* rp) noexcept nogil:
        # T[k-run+1..k] == R[rp-run+1..rp] (0-based rp)
        cdef int64_t idx, st
        if k <= self.ell:
            rp[0] = k - 1
            return k
        idx = self._phrase_of(k)
        st = self.ends[idx - 1] + 1
        rp[0] = self.src[idx - self.ref_phrases] + k - st - 1
        return k - st + 1

    cdef inline uint8_t _char(self, int64_t k) noexcept nogil:
        cdef int64_t rp
        self._fwd_run(k, &rp)
        return self.R[rp]

    # ------------------------------------------------------------------ lcp / lcs

    cdef int64_t _lcp(self, int64_t a, int64_t b, int64_t limit) noexcept nogil:
        """LCP of T[a..] and T[b..], at most ``limit`` (caller bounds by text end)."""
        cdef int64_t d = 0, la, lb, m, t, pa, pb, fast, lo, hi, step, probe, mid
        cdef uint64_t ha, hb, pw
        if limit <= 0:
            return 0
        if a == b:
            return limit
        fast = imin(limit, FAST)
        while d < fast:
            la = self._fwd_run(a + d, &pa)
            lb = self._fwd_run(b + d, &pb)
            m = imin(imin(la, lb), fast - d)
            for t in range(m):
                if self.R[pa + t] != self.R[pb + t]:
                    return d + t
            d += m
        if d >= limit:
            return limit
        ha = self._H(a - 1)
        hb = self._H(b - 1)
        lo = d
        step = d
        while True:
            probe = imin(lo + step, limit)
            pw = self._pow(probe)
            if submod(self._H(a + probe - 1), mulmod(ha, pw)) != submod(self._H(b + probe - 1), mulmod(hb, pw)):
                hi = probe - 1
                break
            lo = probe
            if lo == limit:
                return lo
            step *= 2
        while lo < hi:
            mid = (lo + hi + 1) >> 1
            pw = self._pow(mid)
            if submod(self._H(a + mid - 1), mulmod(ha, pw)) == submod(self._H(b + mid - 1), mulmod(hb, pw)):
                lo = mid
            else:
                hi = mid - 1
        return lo

    cdef int64_t _lcs(self, int64_t e1, int64_t e2, int64_t limit) noexcept nogil:
        """Longest common suffix of T[..e1] and T[..e2], at most ``limit``."""
        cdef int64_t d = 0, l1, l2, m, t, p1, p2, fast, lo, hi, step, probe, mid
        cdef uint64_t h1, h2, pw
        if limit <= 0:
            return 0
        if e1 == e2:
            return limit
        fast = imin(limit, FAST)
        while d < fast:
            l1 = self._bwd_run(e1 - d, &p1)
            l2 = self._bwd_run(e2 - d, &p2)
            m = imin(imin(l1, l2), fast - d)
            for t in range(m):
                if self.R[p1 - t] != self.R[p2 - t]:
                    return d + t
            d += m
        if d >= limit:
            return limit
        h1 = self._H(e1)
        h2 = self._H(e2)
        lo = d
        step = d
        while True:
            probe = imin(lo + step, limit)
            pw = self._pow(probe)
            if submod(h1, mulmod(self._H(e1 - probe), pw)) != submod(h2, mulmod(self._H(e2 - probe), pw)):
                hi = probe - 1
                break
            lo = probe
            if lo == limit:
                return lo
            step *= 2
        while lo < hi:
            mid = (lo + hi + 1) >> 1
            pw = self._pow(mid)
            if submod(h1, mulmod(self._H(e1 - mid), pw)) == submod(h2, mulmod(self._H(e2 - mid), pw)):
                lo = mid
            else:
                hi = mid - 1
        return lo

    cdef int _cmp_suffixes(self, int64_t a, int64_t b) noexcept nogil:
        cdef int64_t la = self.n - a + 1, lb = self.n - b + 1
        cdef int64_t d = self._lcp(a, b, imin(la, lb))
        if d == la or d == lb:
            return (la > lb) - (la < lb)
        return -1 if self._char(a + d) < self._char(b + d) else 1

    cdef int _cmp_colex(self, int64_t s1, int64_t e1, int64_t s2, int64_t e2) noexcept nogil:
        cdef int64_t l1 = e1 - s1 + 1, l2 = e2 - s2 + 1
        cdef int64_t d = self._lcs(e1, e2, imin(l1, l2))
        if d == l1 or d == l2:
            return (l1 > l2) - (l1 < l2)
        return -1 if self._char(e1 - d) < self._char(e2 - d) else 1

    # ------------------------------------------------------------------ orders

    cdef inline int64_t _start(self, int64_t u) noexcept nogil:
        return self.ends[u - 1] + 1 if u else 1

    cdef int _cmp_phrase(self, int mode, int32_t u, int32_t v) noexcept nogil:
        cdef int c
        if mode == 0:
            c = self._cmp_colex(self._start(u), self.ends[u], self._start(v), self.ends[v])
            if c == 0:
                c = (u > v) - (u < v)
            return c
        return self._cmp_suffixes(self.ends[u] + 1, self.ends[v] + 1)

    cdef void _merge_sort(self, int mode, int32_t* a, int32_t* tmp, int64_t m) noexcept nogil:
        cdef int64_t width = 1, lo, mid, hi, i, j, k
        cdef int32_t* src = a
        cdef int32_t* dst = tmp
        cdef int32_t* sw
        while width < m:
            lo = 0
            while lo < m:
                mid = imin(lo + width, m)
                hi = imin(lo + 2 * width, m)
                i, j, k = lo, mid, lo
                while i < mid and j < hi:
                    if self._cmp_phrase(mode, src[j], src[i]) < 0:
                        dst[k] = src[j]
                        j += 1
                    else:
                        dst[k] = src[i]
                        i += 1
                    k += 1
                while i < mid:
                    dst[k] = src[i]
                    i += 1
                    k += 1
                while j < hi:
                    dst[k] = src[j]
                    j += 1
                    k += 1
                lo = hi
            sw = src
            src = dst
            dst = sw
            width *= 2
        if src != a:
            for k in range(m):
                a[k] = src[k]

    def _build_orders(self):
        colex_a = np.arange(self.p, dtype=np.int32)
        lexo_a = np.arange(self.p, dtype=np.int32)
        tmp = np.empty(self.p, dtype=np.int32)
        self._keep["colex"] = colex_a
        self._keep["lexo"] = lexo_a
        self.colex = ptr32(colex_a)
        self.lexo = ptr32(lexo_a)
        cdef int32_t* t = ptr32(tmp)
        with nogil:
            self._merge_sort(0, self.colex, t, self.p)
            self._merge_sort(1, self.lexo, t, self.p)

    # ------------------------------------------------------------------ grid

    def _build_grid(self):
        cdef int64_t p = self.p
        lexrank = np.empty(p, dtype=np.int32)
        lexrank[self._keep["lexo"]] = np.arange(p, dtype=np.int32)
        colex = self._keep["colex"]
        ends = self._keep["ends"]
        gy0 = np.ascontiguousarray(lexrank[colex], dtype=np.int32)
        gw0 = np.ascontiguousarray(ends[colex], dtype=np.int32)
        nb = (p + BUCKET - 1) >> BUCKET_SHIFT
        nlev = max(nb.bit_length() - 1, 0)
        nbm = (p + BLOCK - 1) // BLOCK
        gy = np.empty((max(nlev, 1), p), dtype=np.int32)
        gw = np.empty((max(nlev, 1), p), dtype=np.int32)
        gtree = np.empty((max(nlev, 1), 2 * nbm), dtype=np.int32)
        xs = np.arange(p, dtype=np.int64)
        for lv in range(1, nlev + 1):
            order = np.lexsort((gy0, xs >> (BUCKET_SHIFT + lv)))
            gy[lv - 1] = gy0[order]
            gw[lv - 1] = gw0[order]
            padded = np.full(nbm * BLOCK, NO_W, dtype=np.int32)
            padded[:p] = gw[lv - 1]
            tree = gtree[lv - 1]
            tree[nbm:] = padded.reshape(nbm, BLOCK).min(axis=1)
            for k in range(nbm - 1, 0, -1):
                tree[k] = min(tree[2 * k], tree[2 * k + 1])
            tree[0] = NO_W
        self._keep.update(gy0=gy0, gw0=gw0, gy=gy, gw=gw, gtree=gtree)
        self.nlev = nlev
        self.nbm = nbm
        self.gy0 = ptr32(gy0)
        self.gw0 = ptr32(gw0)
        self.gy = ptr32(gy)
        self.gw = ptr32(gw)
        self.gtree = ptr32(gtree)

    cdef inline int32_t _scan(self, int64_t xa, int64_t xb, int32_t y1, int32_t y2, int32_t best) noexcept nogil:
        cdef int64_t x
        cdef int32_t y
        for x in range(xa, xb + 1):
            y = self.gy0[x]
            if y1 <= y <= y2 and self.gw0[x] < best:
                best = self.gw0[x]
        return best

    cdef int32_t _level_node(self, int lv, int64_t t, int32_t y1, int32_t y2, int32_t best) noexcept nogil:
        cdef int64_t span = (<int64_t> BUCKET) << lv
        cdef int64_t lo = t * span, hi = imin(self.p, lo + span), a, b, mid
        cdef int32_t* ys = self.gy + (lv - 1) * self.p
        cdef int32_t* ws = self.gw + (lv - 1) * self.p
        cdef int32_t* tree = self.gtree + (lv - 1) * 2 * self.nbm
        cdef int64_t ba, bb, k, l, r
        a, b = lo, hi
        while a < b:
            mid = (a + b) >> 1
            if ys[mid] < y1:
                a = mid + 1
            else:
                b = mid
        lo = a
        b = hi
        while a < b:
            mid = (a + b) >> 1
            if ys[mid] <= y2:
                a = mid + 1
            else:
                b = mid
        hi = a
        if lo >= hi:
            return best
        ba = lo // BLOCK
        bb = (hi - 1) // BLOCK
        if bb - ba <= 1:
            for k in range(lo, hi):
                if ws[k] < best:
                    best = ws[k]
            return best
        for k in range(lo, (ba + 1) * BLOCK):
            if ws[k] < best:
                best = ws[k]
        for k in range(bb * BLOCK, hi):
            if ws[k] < best:
                best = ws[k]
        l = ba + 1 + self.nbm
        r = bb + self.nbm
        while l < r:
            if l & 1:
                if tree[l] < best:
                    best = tree[l]
                l += 1
            if r & 1:
                r -= 1
                if tree[r] < best:
                    best = tree[r]
            l >>= 1
            r >>= 1
        return best

    cdef int32_t _range_min(self, int64_t x1, int64_t x2, int32_t y1, int32_t y2) noexcept nogil:
        """0-based inclusive rectangle; NO_W when empty."""
        cdef int32_t best = NO_W
        cdef int64_t b1, b2, l, r
        cdef int lv
        if x1 > x2 or y1 > y2:
            return best
        b1 = x1 >> BUCKET_SHIFT
        b2 = x2 >> BUCKET_SHIFT
        if b1 == b2:
            return self._scan(x1, x2, y1, y2, best)
        if x1 & (BUCKET - 1):
            best = self._scan(x1, ((b1 + 1) << BUCKET_SHIFT) - 1, y1, y2, best)
            b1 += 1
        if (x2 & (BUCKET - 1)) != BUCKET - 1 and x2 != self.p - 1:
            best = self._scan(b2 << BUCKET_SHIFT, x2, y1, y2, best)
            b2 -= 1
        l, r, lv = b1, b2 + 1, 0
        while l < r:
            if l & 1:
                best = self._node(lv, l, y1, y2, best)
                l += 1
            if r & 1:
                r -= 1
                best = self._node(lv, r, y1, y2, best)
            l >>= 1
            r >>= 1
            lv += 1
        return best

    cdef inline int32_t _node(self, int lv, int64_t t, int32_t y1, int32_t y2, int32_t best) noexcept nogil:
        cdef int64_t lo
        if lv == 0:
            lo = t << BUCKET_SHIFT
            return self._scan(lo, imin(self.p, lo + BUCKET) - 1, y1, y2, best)
        return self._level_node(lv, t, y1, y2, best)

    # ------------------------------------------------------------------ ranges

    cdef int _colex_vs(self, int32_t u, int64_t a, int64_t b) noexcept nogil:
        cdef int64_t e = self.ends[u], lp = e - self._start(u) + 1, m = b - a + 1
        cdef int64_t d = self._lcs(e, b, imin(lp, m))
        if d == m:
            return 0
        if d == lp:
            return -1
        return -1 if self._char(e - d) < self._char(b - d) else 1

    cdef int _suffix_vs(self, int32_t u, int64_t a, int64_t b) noexcept nogil:
        cdef int64_t e = self.ends[u], ls = self.n - e, m = b - a + 1, d, cap, slot
        cap = imin(ls, m)
        slot = (u * 40503 + a * 9973) & self.cmask
        if self.ck_u[slot] == u and self.ck_a[slot] == a and (
                self.ck_val[slot] < self.ck_cap[slot] or cap <= self.ck_cap[slot]):
            d = imin(self.ck_val[slot], cap)
        else:
            d = self._lcp(e + 1, a, cap)
            self.ck_u[slot] = u
            self.ck_a[slot] = a
            self.ck_val[slot] = d
            self.ck_cap[slot] = cap
        if d == m:
            return 0
        if d == ls:
            return -1
        return -1 if self._char(e + 1 + d) < self._char(a + d) else 1

    cdef bint _colex_range(self, int64_t a, int64_t b, int64_t* out_lo, int64_t* out_hi) noexcept nogil:
        cdef int64_t lo = 0, hi = self.p, mid, first
        if b - a + 1 > self.maxlen:
            return False
        while lo < hi:
            mid = (lo + hi) >> 1
            if self._colex_vs(self.colex[mid], a, b) < 0:
                lo = mid + 1
            else:
                hi = mid
        first = lo
        hi = self.p
        while lo < hi:
            mid = (lo + hi) >> 1
            if self._colex_vs(self.colex[mid], a, b) <= 0:
                lo = mid + 1
            else:
                hi = mid
        out_lo[0] = first
        out_hi[0] = lo
        return first < lo

    cdef bint _lex_range(self, int64_t a, int64_t b, int64_t* out_lo, int64_t* out_hi) noexcept nogil:
        cdef int64_t lo = 0, hi = self.p, mid, first
        if b < a:
            out_lo[0] = 0
            out_hi[0] = self.p
            return True
        while lo < hi:
            mid = (lo + hi) >> 1
            if self._suffix_vs(self.lexo[mid], a, b) < 0:
                lo = mid + 1
            else:
                hi = mid
        first = lo
        hi = self.p
        while lo < hi:
            mid = (lo + hi) >> 1
            if self._suffix_vs(self.lexo[mid], a, b) <= 0:
                lo = mid + 1
            else:
                hi = mid
        out_lo[0] = first
        out_hi[0] = lo
        return first < lo

    cdef int64_t _split(self, int64_t a1, int64_t b1, int64_t a2, int64_t b2) noexcept nogil:
        cdef int64_t xlo, xhi, ylo, yhi
        cdef int32_t w
        self.split_calls += 1
        if not self._colex_range(a1, b1, &xlo, &xhi):
            return -1
        if not self._lex_range(a2, b2, &ylo, &yhi):
            return -1
        w = self._range_min(xlo, xhi - 1, <int32_t> ylo, <int32_t> (yhi - 1))
        if w == NO_W:
            return -1
        return w - (b1 - a1)

    # ------------------------------------------------------------------ conversion

    cdef inline int64_t _probe(self, int64_t i, int64_t j, int64_t k) noexcept nogil:
        cdef int64_t s = self._split(i + 1, j, j + 1, k)
        return s if 0 < s <= i else -1

    cdef bint _largest_kj(self, int64_t i, int64_t j, int64_t* kj, int64_t* sj) noexcept nogil:
        cdef int64_t s = self._probe(i, j, j), lo = j, hi = self.n, mid, sm
        if s < 0:
            return False
        while lo < hi:
            mid = (lo + hi + 1) >> 1
            sm = self._probe(i, j, mid)
            if sm < 0:
                hi = mid - 1
            else:
                lo = mid
                s = sm
        kj[0] = lo
        sj[0] = s
        return True

    cdef bint _extend_from(self, int64_t i, int64_t j, int64_t kmax, int64_t* kj, int64_t* sj) noexcept nogil:
        cdef int64_t lo = imax(j, kmax), hi, step = 1, k, sk, mid
        cdef int64_t s = self._probe(i, j, lo)
        if s < 0:
            return False
        while True:
            k = lo + step
            if k > self.n:
                hi = self.n
                break
            sk = self._probe(i, j, k)
            if sk < 0:
                hi = k - 1
                break
            lo = k
            s = sk
            step *= 2
        while lo < hi:
            mid = (lo + hi + 1) >> 1
            sk = self._probe(i, j, mid)
            if sk < 0:
                hi = mid - 1
            else:
                lo = mid
                s = sk
        kj[0] = lo
        sj[0] = s
        return True

    cdef void _fallback(self, int64_t i, int64_t* copy_len, int64_t* src) noexcept nogil:
        cdef int64_t best = -1, j, s
        if i == self.n - 1:
            copy_len[0] = 0
            src[0] = 0
            return
        for j in range(i + 1, self.n):
            s = self._probe(i, j, self.n - 1)
            if s > 0 and (best < 0 or s < best):
                best = s
        copy_len[0] = self.n - 1 - i
        src[0] = best

    cdef void _next(self, int64_t i, bint literal, int64_t* copy_len, int64_t* src) noexcept nogil:
        cdef int64_t kmax = i, smax = self.n + 1, j, kj = 0, sj = 0
        cdef bint found
        j = i + 1
        while j <= self.n:
            if literal:
                found = self._largest_kj(i, j, &kj, &sj)
            else:
                found = self._extend_from(i, j, kmax, &kj, &sj)
            if found:
                if kj > kmax:
                    kmax = kj
                    smax = sj
                if kj == kmax and smax > sj:
                    smax = sj
            if kmax == j - 1:
                copy_len[0] = kmax - i
                src[0] = smax if kmax > i else 0
                return
            j += 1
        self._fallback(i, copy_len, src)

    # ------------------------------------------------------------------ Python surface

    def _check(self, int64_t k):
        if not 1 <= k <= self.n:
            raise OutOfRange(f"position {k} outside [1, {self.n}]")

    def char_at(self, int64_t k):
        self._check(k)
        return self._char(k)

    def extract(self, int64_t a, int64_t b):
        cdef int64_t rp, run, m
        if b == a - 1 and 1 <= a <= self.n + 1:
            return b""
        if not 1 <= a <= b <= self.n:
            raise OutOfRange(f"range [{a}, {b}] outside [1, {self.n}]")
        out = bytearray()
        while a <= b:
            run = self._fwd_run(a, &rp)
            m = imin(run, b - a + 1)
            out += self._ref[rp:rp + m]
            a += m
        return bytes(out)

    def prefix_hash(self, int64_t x):
        if not 0 <= x <= self.n:
            raise OutOfRange(f"prefix length {x} outside [0, {self.n}]")
        return self._H(x)

    def substring_hash(self, int64_t a, int64_t b):
        if b == a - 1 and 1 <= a <= self.n + 1:
            return 0
        if not 1 <= a <= b <= self.n:
            raise OutOfRange(f"range [{a}, {b}] outside [1, {self.n}]")
        return self._sub_hash(a, b)

    def lcp_suffixes(self, int64_t a, int64_t b):
        return self._lcp(a, b, self.n - imax(a, b) + 1)

    def lcs_prefix_ends(self, int64_t e1, int64_t e2):
        return self._lcs(e1, e2, imin(e1, e2))

    def compare_suffixes(self, int64_t a, int64_t b):
        return self._cmp_suffixes(a, b)

    def compare_colex(self, int64_t s1, int64_t e1, int64_t s2, int64_t e2):
        return self._cmp_colex(s1, e1, s2, e2)

    def colex_order(self):
        return self._keep["colex"].tolist()

    def suffix_order(self):
        return self._keep["lexo"].tolist()

    def colex_range(self, int64_t a, int64_t b):
        cdef int64_t lo, hi
        if self._colex_range(a, b, &lo, &hi):
            return (lo + 1, hi)
        return None

    def lex_range(self, int64_t a, int64_t b):
        cdef int64_t lo, hi
        if self._lex_range(a, b, &lo, &hi):
            return (lo + 1, hi)
        return None

    def range_min(self, int64_t x1, int64_t x2, int64_t y1, int64_t y2):
        x1, y1 = imax(x1, 1), imax(y1, 1)
        x2, y2 = imin(x2, self.p), imin(y2, self.p)
        cdef int32_t w = self._range_min(x1 - 1, x2 - 1, <int32_t> (y1 - 1), <int32_t> (y2 - 1))
        return None if w == NO_W else w

    def split_leftmost(self, int64_t a1, int64_t b1, int64_t a2, int64_t b2):
        cdef int64_t s = self._split(a1, b1, a2, b2)
        return None if s < 0 else s

    def largest_kj(self, int64_t i, int64_t j):
        cdef int64_t kj, sj
        if self._largest_kj(i, j, &kj, &sj):
            return kj, sj
        return None

    def last_phrase_fallback(self, int64_t i):
        cdef int64_t c, s
        self._fallback(i, &c, &s)
        return Lz77Triple(c, s if c else None, self._char(self.n))

    def next_phrase(self, int64_t i, bint literal=False):
        cdef int64_t c, s
        self._next(i, literal, &c, &s)
        return Lz77Triple(c, s if c else None, self._char(i + c + 1))

    def convert_arrays(self, bint literal=False):
        """Run the whole phrase loop natively: ``(copy_len, src, last)`` arrays."""
        cdef int64_t cap = 1024, z = 0, i = 0, c, s
        copy_a = np.empty(cap, dtype=np.int64)
        src_a = np.empty(cap, dtype=np.int64)
        last_a = np.empty(cap, dtype=np.uint8)
        cdef int64_t[::1] cv = copy_a
        cdef int64_t[::1] sv = src_a
        cdef uint8_t[::1] lv = last_a
        while i < self.n:
            if z == cap:
                cap *= 2
                copy_a = np.resize(copy_a, cap)
                src_a = np.resize(src_a, cap)
                last_a = np.resize(last_a, cap)
                cv = copy_a
                sv = src_a
                lv = last_a
            with nogil:
                self._next(i, literal, &c, &s)
            cv[z] = c
            sv[z] = s
            lv[z] = self._char(i + c + 1)
            z += 1
            i += c + 1
        return copy_a[:z].copy(), src_a[:z].copy(), last_a[:z].tobytes()

    @property
    def ends_list(self):
        return self._keep["ends"].tolist()

    @property
    def r_prefix(self):
        return self._keep["rpre"].tolist()

    @property
    def boundary_prefix(self):
        return self._keep["bpre"].tolist()

    def memory_breakdown(self):
        """Bytes held by each workspace array (reference bytes excluded)."""
        return {k: int(v.nbytes) for k, v in self._keep.items()}

    def memory_words(self):
        return (sum(self.memory_breakdown().values()) + 4 * (self.cmask + 1) * 8) // 8
