import random

import pytest
from hypothesis import given, settings, strategies as st

from rlz2lz import NoReferenceOccurrence, RlzPhrase, combined_parse, parse_text
from rlz2lz.oracle import naive_lz77, naive_rlz
from rlz2lz.parse import (
    ReferenceIndex, build_combined, lcp_array, lz77_parse_reference, rlz_parse, suffix_array,
)
from rlz2lz.synth import random_case


def triples(parse):
    return [(t.copy_len, t.src, chr(t.last)) for t in parse.triples]


def test_lz77_reference_examples():
    assert triples(lz77_parse_reference(b"ab")) == [(0, None, "a"), (0, None, "b")]
    assert triples(lz77_parse_reference(b"aaa")) == [(0, None, "a"), (1, 1, "a")]
    assert triples(lz77_parse_reference(b"z")) == [(0, None, "z")]


def test_rlz_parse_examples():
    assert rlz_parse(b"abab", ReferenceIndex(b"ab")) == [RlzPhrase(1, 2), RlzPhrase(1, 2)]
    assert rlz_parse(b"aaa", ReferenceIndex(b"a")) == [RlzPhrase(1, 1)] * 3
    with pytest.raises(NoReferenceOccurrence) as err:
        rlz_parse(b"abc", ReferenceIndex(b"ab"))
    assert err.value.position == 3


def test_combined_examples():
    assert combined_parse(parse_text(b"abab", 2)).ends == (1, 2, 4)
    assert combined_parse(parse_text(b"aaaa", 1)).ends == (1, 2, 3, 4)
    full = combined_parse(parse_text(b"abcab", 5))
    assert full.ends == (1, 2, 3, 5) and full.ref_phrases == 4


def test_build_combined_attaches_sources():
    lz_r = lz77_parse_reference(b"ab")
    c = build_combined(lz_r, [RlzPhrase(2, 1), RlzPhrase(1, 2)], 2)
    assert c.ends == (1, 2, 3, 5) and c.sources == (2, 1) and c.ref_phrases == 2


def test_leftmost_source_is_chosen():
    # "ab" occurs at 1 and 3 in the reference; the leftmost one must be reported
    assert rlz_parse(b"ab", ReferenceIndex(b"abab")) == [RlzPhrase(1, 2)]


@given(st.binary(min_size=1, max_size=300))
def test_suffix_array_matches_sort(data):
    sa = suffix_array(data).tolist()
    assert sa == sorted(range(len(data)), key=lambda i: data[i:])
    lcp = lcp_array(data, suffix_array(data))
    for r in range(1, len(data)):
        a, b = data[sa[r - 1]:], data[sa[r]:]
        k = 0
        while k < min(len(a), len(b)) and a[k] == b[k]:
            k += 1
        assert lcp[r] == k


@settings(max_examples=200)
@given(st.text(alphabet="ab", min_size=1, max_size=80))
def test_lz77_reference_matches_oracle(text):
    raw = text.encode()
    assert lz77_parse_reference(raw) == naive_lz77(raw)


def test_rlz_matches_oracle_and_is_maximal():
    rng = random.Random(3)
    for _ in range(300):
        text, ell = random_case(rng, max_n=400)
        archive = parse_text(text, ell)
        assert archive == naive_rlz(text, ell)
        ref, q = text[:ell], ell
        for src, length in archive.phrases:
            assert ref[src - 1:src - 1 + length] == text[q:q + length]
            assert ref.find(text[q:q + length]) == src - 1
            if q + length < len(text):
                assert text[q:q + length + 1] not in ref
            q += length


def test_combined_boundary_count():
    rng = random.Random(4)
    for _ in range(100):
        text, ell = random_case(rng, max_n=300)
        archive = parse_text(text, ell)
        c = combined_parse(archive)
        assert len(c) == len(naive_lz77(text[:ell]).triples) + len(archive.phrases)
        assert c.ends[c.ref_phrases - 1] == ell and c.ends[-1] == len(text)
        assert all(a < b for a, b in zip(c.ends, c.ends[1:]))
