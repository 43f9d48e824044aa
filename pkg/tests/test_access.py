import random

import pytest

from rlz2lz import OutOfRange, combined_parse, expand_rlz, parse_text
from rlz2lz.access import build_directory
from rlz2lz.synth import random_case


def directory(text, ell):
    archive = parse_text(text, ell)
    return build_directory(archive, combined_parse(archive))


def test_build_directory_examples():
    d = directory(b"abab", 2)
    assert (d.starts, d.sources) == ([3], [1])
    assert len(directory(b"abc", 3)) == 0
    assert directory(b"aaaa", 1).starts == [2, 3, 4]


def test_char_at_and_extract_examples():
    d = directory(b"abab", 2)
    assert d.char_at(2) == ord("b")
    assert d.char_at(3) == ord("a")
    with pytest.raises(OutOfRange):
        d.char_at(5)
    with pytest.raises(OutOfRange):
        d.char_at(0)
    assert d.extract(2, 4) == b"bab"
    assert d.extract(3, 3) == bytes([d.char_at(3)])
    with pytest.raises(OutOfRange):
        d.extract(3, 5)


def test_engine_access_examples(make_engine):
    e = make_engine(b"abab", 2)
    assert e.char_at(2) == ord("b") and e.char_at(3) == ord("a")
    assert e.extract(2, 4) == b"bab"
    with pytest.raises(OutOfRange):
        e.char_at(5)


def test_access_matches_expansion(make_engine):
    rng = random.Random(11)
    for _ in range(60):
        text, ell = random_case(rng, max_n=256)
        archive = parse_text(text, ell)
        d = build_directory(archive, combined_parse(archive))
        e = make_engine(text, ell)
        n = len(text)
        assert d.extract(1, n) == expand_rlz(archive) == e.extract(1, n)
        for k in range(1, n + 1):
            assert d.char_at(k) == text[k - 1] == e.char_at(k)
        for _ in range(50):
            a = rng.randint(1, n)
            b = rng.randint(a, n)
            assert d.extract(a, b) == text[a - 1:b] == e.extract(a, b)
