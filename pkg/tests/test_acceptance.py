"""Acceptance criteria; each test records one PASS/FAIL line (listed again at the end of the run).

    pytest tests/test_acceptance.py -v
"""

import math
import random
import subprocess
import sys
import time
import tracemalloc
from functools import lru_cache

import numpy as np
import pytest

from rlz2lz import (
    _backend, combined_parse, convert, decode_file, encode_file, expand_lz77, expand_rlz,
    parse_text,
)
from rlz2lz.converter import build_engine
from rlz2lz.oracle import naive_lz77, naive_lcp, naive_lcs, naive_split_leftmost
from rlz2lz.synth import alphabet, mutated_copies, random_case, uniform_text

BACKEND = _backend.default_name()
MEMORY_C = 16                   # words <= C * (l + z') * log2(l + z')
CORPUS_REF, CORPUS_COPIES = 10_000, 100


@lru_cache(maxsize=None)
def conversion_cases():
    """The 500 randomized equivalence instances (alphabets 2/4/26, n <= 2000, both text models)."""
    rng = random.Random(1_000_003)
    cases = []
    for k in range(500):
        sigma = (2, 4, 26)[k % 3]
        cases.append(random_case(rng, max_n=2000, sigmas=(sigma,)))
    return tuple(cases)


@lru_cache(maxsize=None)
def corpus():
    return mutated_copies(CORPUS_REF, CORPUS_COPIES, random.Random(2024))


def engine_for(text, ell, seed=11):
    return build_engine(parse_text(text, ell), seed, BACKEND)


def run_conversion(engine):
    if hasattr(engine, "convert_all"):
        return engine.convert_all()
    from rlz2lz.converter import convert_with
    return convert_with(engine)


def sign(x):
    return (x > 0) - (x < 0)


# ---------------------------------------------------------------- 1


def test_c1_exact_conversion(criterion):
    t0 = time.perf_counter()
    mismatches = retries = 0
    for k, (text, ell) in enumerate(conversion_cases()):
        archive = parse_text(text, ell)
        expected = naive_lz77(text)
        if convert(archive, seed=k, backend=BACKEND) != expected:
            retries += 1
            if convert(archive, seed=k + 10**9, backend=BACKEND) != expected:
                mismatches += 1
    elapsed = time.perf_counter() - t0
    n_cases = len(conversion_cases())
    criterion("C1 exact conversion", mismatches == 0 and n_cases >= 500 and elapsed < 60,
              f"{n_cases} cases, {mismatches} mismatches, {retries} reseeded retries, "
              f"{elapsed:.1f}s (limit 60s), backend={BACKEND}")


# ---------------------------------------------------------------- 2


def split_queries(rng, text, ends, count):
    n = len(text)
    for _ in range(count):
        if rng.random() < 0.5:
            a1 = rng.randint(1, n)
            b1 = rng.randint(a1, n)
            a2 = rng.randint(1, n)
            yield a1, b1, a2, rng.randint(a2 - 1, n)
        else:
            k = rng.randrange(len(ends))
            w, prev = ends[k], ends[k - 1] if k else 0
            yield rng.randint(prev + 1, w), w, w + 1, rng.randint(w, n)


def test_c2_split_query_equivalence(criterion):
    rng = random.Random(2)
    total = hits = mismatches = retries = 0
    for t in range(50):
        text, ell = random_case(rng, max_n=512)
        archive = parse_text(text, ell)
        ends = combined_parse(archive).ends
        engine = build_engine(archive, t, BACKEND)
        backup = None
        for a1, b1, a2, b2 in split_queries(rng, text, ends, 220):
            second = (a2, b2) if b2 >= a2 else None
            want = naive_split_leftmost(text, ends, (a1, b1), second)
            got = engine.split_leftmost(a1, b1, a2, b2)
            if got != want:
                retries += 1
                backup = backup or build_engine(archive, t + 10**9, BACKEND)
                mismatches += backup.split_leftmost(a1, b1, a2, b2) != want
            total += 1
            hits += want is not None
    criterion("C2 split-query equivalence", mismatches == 0 and total >= 10**4,
              f"{total} queries ({hits} with an occurrence), {mismatches} mismatches, "
              f"{retries} reseeded retries")


# ---------------------------------------------------------------- 3


def phrase_table(text, ell):
    ends = combined_parse(parse_text(text, ell)).ends
    starts = [1] + [e + 1 for e in ends[:-1]]
    return starts, ends


def naive_structures(text, ell):
    starts, ends = phrase_table(text, ell)
    p = len(ends)
    colex = sorted(range(p), key=lambda u: (text[starts[u] - 1:ends[u]][::-1], ends[u]))
    lex = sorted(range(p), key=lambda u: text[ends[u]:])
    colex_keys = [text[starts[u] - 1:ends[u]] for u in colex]
    lex_keys = [text[ends[u]:] for u in lex]
    yrank = {u: y + 1 for y, u in enumerate(lex)}
    points = [(x + 1, yrank[u], ends[u]) for x, u in enumerate(colex)]
    return colex, lex, colex_keys, lex_keys, points


def interval(keys, pred):
    hits = [r + 1 for r, key in enumerate(keys) if pred(key)]
    return (hits[0], hits[-1]) if hits else None


def all_rectangle_minima(points, p):
    """Yield (x1, x2, y1, y2, min) for every rectangle, incrementally."""
    big = float("inf")
    col = {x: (y, w) for x, y, w in points}
    for x1 in range(1, p + 1):
        row = [big] * (p + 2)
        for x2 in range(x1, p + 1):
            y, w = col[x2]
            row[y] = min(row[y], w)
            for y1 in range(1, p + 1):
                best = big
                for y2 in range(y1, p + 1):
                    best = min(best, row[y2])
                    yield x1, x2, y1, y2, None if best == big else best


class Tally:
    def __init__(self):
        self.checks = {}
        self.failures = {}

    def check(self, kind, ok):
        self.checks[kind] = self.checks.get(kind, 0) + 1
        if not ok:
            self.failures[kind] = self.failures.get(kind, 0) + 1


def check_structures(engine, text, ell, tally, rng, exhaustive):
    colex, lex, colex_keys, lex_keys, points = naive_structures(text, ell)
    n, p = len(text), len(points)
    tally.check("orders", list(engine.colex_order()) == colex and list(engine.suffix_order()) == lex)
    if exhaustive:
        patterns = [(a, b) for a in range(1, n + 1) for b in range(a, n + 1)]
        pairs = [(a, b) for a in range(1, n + 1) for b in range(1, n + 1)]
    else:
        patterns = []
        for _ in range(2000):
            a = rng.randint(1, n)
            patterns.append((a, min(n, a + rng.choice([0, 1, 2, 5, 20, 100, n]))))
        pairs = [(rng.randint(1, n), rng.randint(1, n)) for _ in range(2000)]
    for a, b in patterns:
        pat = text[a - 1:b]
        tally.check("colex_range", engine.colex_range(a, b) == interval(colex_keys, lambda k: k.endswith(pat)))
        tally.check("lex_range", engine.lex_range(a, b) == interval(lex_keys, lambda k: k.startswith(pat)))
    for a, b in pairs:
        tally.check("lcp", engine.lcp_suffixes(a, b) == naive_lcp(text, a, b))
        tally.check("lcs", engine.lcs_prefix_ends(a, b) == naive_lcs(text, a, b))
        sa, sb = text[a - 1:], text[b - 1:]
        tally.check("compare_lex", sign(engine.compare_suffixes(a, b)) == (sa > sb) - (sa < sb))
        s1, s2 = rng.randint(1, a), rng.randint(1, b)
        u, v = text[s1 - 1:a][::-1], text[s2 - 1:b][::-1]
        tally.check("compare_colex", sign(engine.compare_colex(s1, a, s2, b)) == (u > v) - (u < v))
    if exhaustive:
        for x1, x2, y1, y2, want in all_rectangle_minima(points, p):
            tally.check("range_min", engine.range_min(x1, x2, y1, y2) == want)
    else:
        for _ in range(2000):
            x1, x2 = sorted(rng.randint(1, p) for _ in range(2))
            y1, y2 = sorted(rng.randint(1, p) for _ in range(2))
            inside = [w for x, y, w in points if x1 <= x <= x2 and y1 <= y <= y2]
            tally.check("range_min", engine.range_min(x1, x2, y1, y2) == (min(inside) if inside else None))


def test_c3_structure_oracles(criterion):
    rng = random.Random(3)
    small, large = Tally(), Tally()
    # exhaustive: every pattern, pair and rectangle on texts with n <= 128
    for k in range(12):
        sigma = alphabet((2, 4, 26)[k % 3])
        n = (32, 64, 128)[k % 3] if sigma != alphabet(26) else 40
        if k % 2:
            text = uniform_text(n, sigma, rng)
        else:
            text = mutated_copies(max(4, n // 5), 0, rng, rate_range=(0.02, 0.1), sigma=sigma, n=n)
        ell = rng.randint(max(1, n // 4), n)
        present = set(text[:ell])
        text = text[:ell] + bytes(c if c in present else text[0] for c in text[ell:])
        check_structures(engine_for(text, ell, seed=k), text, ell, small, rng, exhaustive=True)
    # sampled: texts up to 4096
    for k in range(6):
        text, ell = random_case(rng, max_n=4096)
        if len(text) < 1024:
            text, ell = mutated_copies(512, 0, rng, n=4096), 512
        check_structures(engine_for(text, ell, seed=k), text, ell, large, rng, exhaustive=False)
    failures = sum(small.failures.values()) + sum(large.failures.values())
    enough = all(large.checks.get(kind, 0) >= 10**4 for kind in
                 ("colex_range", "lex_range", "lcp", "lcs", "compare_lex", "compare_colex"))
    enough = enough and large.checks["range_min"] >= 10**4
    summary = ", ".join(f"{kind} {small.checks[kind]}+{large.checks.get(kind, 0)}" for kind in small.checks)
    criterion("C3 structure oracles", failures == 0 and enough,
              f"{failures} failures; exhaustive+sampled checks: {summary}")


# ---------------------------------------------------------------- 4


def test_c4_round_trips(criterion, tmp_path):
    failures = 0
    cases = conversion_cases()[:250]
    for k, (text, ell) in enumerate(cases):
        archive = parse_text(text, ell)
        blob = encode_file(archive)
        lz = convert(archive, seed=k, backend=BACKEND)
        lz_blob = encode_file(lz)
        ok = (expand_rlz(archive) == text and decode_file(blob) == archive
              and encode_file(decode_file(blob)) == blob and expand_lz77(lz) == text
              and decode_file(lz_blob) == lz and encode_file(decode_file(lz_blob)) == lz_blob)
        failures += not ok

    text = corpus()
    raw = tmp_path / "genome.txt"
    raw.write_bytes(text)
    t0 = time.perf_counter()
    steps = [["parse", raw, "--ref-len", CORPUS_REF, "--out", tmp_path / "g.rlzp"],
             ["convert", tmp_path / "g.rlzp", "--out", tmp_path / "g.lz77", "--verify", "--seed", 5],
             ["decode", tmp_path / "g.lz77", "--out", tmp_path / "g.out"]]
    codes = []
    for argv in steps:
        proc = subprocess.run([sys.executable, "-m", "rlz2lz", *map(str, argv)],
                              capture_output=True, text=True)
        codes.append(proc.returncode)
    identical = all(c == 0 for c in codes) and (tmp_path / "g.out").read_bytes() == text
    elapsed = time.perf_counter() - t0
    criterion("C4 round trips", failures == 0 and identical,
              f"{len(cases)} instances with {failures} failures; CLI parse/convert --verify/decode on "
              f"{len(text)} bytes: exit codes {codes}, byte-identical={identical}, {elapsed:.1f}s")


# ---------------------------------------------------------------- 5


def timed_conversion(archive, seed=1):
    t0 = time.perf_counter()
    engine = build_engine(archive, seed, BACKEND)
    parse = run_conversion(engine)
    return time.perf_counter() - t0, engine, parse


@pytest.mark.slow
def test_c5_work_bound_and_scaling(criterion):
    worst = 0.0
    over = 0
    instances = list(conversion_cases())
    for text, ell in instances:
        engine = engine_for(text, ell)
        parse = run_conversion(engine)
        n, z = len(text), len(parse.triples)
        bound = (n + z) * (math.ceil(math.log2(n)) + 2)
        worst = max(worst, engine.split_calls / bound)
        over += engine.split_calls > bound

    sizes, times = [], []
    for e in range(16, 21):
        n = 2 ** e
        text = mutated_copies(CORPUS_REF, 0, random.Random(e), n=n)
        archive = parse_text(text, CORPUS_REF)
        runs = [timed_conversion(archive) for _ in range(2 if e < 20 else 1)]
        dt, engine, parse = min(runs, key=lambda r: r[0])
        bound = (n + len(parse.triples)) * (math.ceil(math.log2(n)) + 2)
        worst = max(worst, engine.split_calls / bound)
        over += engine.split_calls > bound
        sizes.append(n)
        times.append(dt)
    exponent = float(np.polyfit(np.log(sizes), np.log(times), 1)[0])
    timing = ", ".join(f"2^{int(math.log2(n))}:{t:.2f}s" for n, t in zip(sizes, times))
    criterion("C5 work bound and scaling", over == 0 and exponent <= 1.3,
              f"split calls within bound on {len(instances) + len(sizes)} instances "
              f"(max calls/bound {worst:.3f}); doubling l={CORPUS_REF} [{timing}] "
              f"fitted exponent {exponent:.2f} (limit 1.3)")


# ---------------------------------------------------------------- 6


def test_c6_space(criterion):
    worst = 0.0
    for text, ell in conversion_cases():
        archive = parse_text(text, ell)
        engine = build_engine(archive, 1, BACKEND)
        m = ell + len(archive.phrases)
        worst = max(worst, engine.memory_words() / (m * max(1.0, math.log2(m))))

    text = corpus()
    n = len(text)
    archive = parse_text(text, CORPUS_REF)
    tracemalloc.start()
    engine = build_engine(archive, 1, BACKEND)
    if hasattr(engine, "convert_arrays"):
        engine.convert_arrays(False)
    else:
        run_conversion(engine)
    peak_words = tracemalloc.get_traced_memory()[1] // 8
    tracemalloc.stop()
    words = engine.memory_words()
    m = CORPUS_REF + len(archive.phrases)
    ratio = words / (m * math.log2(m))
    worst = max(worst, ratio)
    ok = worst <= MEMORY_C and words < n / 4 and peak_words < n / 4
    criterion("C6 space", ok,
              f"max words/((l+z')log2(l+z')) = {worst:.2f} (C = {MEMORY_C}); 1 MB corpus n={n}, "
              f"l+z'={m}: index {words} words, traced peak {peak_words} words, n/4 = {n // 4}")


# ---------------------------------------------------------------- 7


def test_c7_leftmost_occurrences_cross_a_boundary(criterion):
    rng = random.Random(7)
    checked = failures = 0
    for k in range(60):
        text, ell = random_case(rng, max_n=64, sigmas=((2, 4, 26)[k % 3],))
        engine = engine_for(text, ell, seed=k)
        ends = combined_parse(parse_text(text, ell)).ends
        n = len(text)
        for s in range(1, n + 1):
            for e in range(s, n + 1):
                lo = text.find(text[s - 1:e]) + 1
                hi = lo + e - s
                w = next((w for w in ends if lo <= w <= hi), None)
                ok = w is not None and engine.split_leftmost(lo, w, w + 1, hi) == lo
                checked += 1
                failures += not ok
    criterion("C7 leftmost occurrences recoverable at a boundary", failures == 0,
              f"{checked} substrings over 60 texts (n <= 64), {failures} failures")


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-v", "-s"]))
