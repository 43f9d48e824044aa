"""Synthetic texts for tests and benchmarks: uniform random and mutated copies of a reference."""

from __future__ import annotations

import random
from typing import Optional

DNA = b"ACGT"


def alphabet(size: int) -> bytes:
    """``size`` distinct printable symbols (``ACGT`` for 4, lowercase letters otherwise)."""
    if size == 4:
        return DNA
    if not 1 <= size <= 26:
        raise ValueError("alphabet size must be in [1, 26]")
    return bytes(range(ord("a"), ord("a") + size))


def uniform_text(n: int, sigma: bytes, rng: random.Random) -> bytes:
    return bytes(rng.choices(sigma, k=n))


def mutate(source: bytes, rate: float, sigma: bytes, rng: random.Random) -> bytes:
    """Copy ``source`` applying substitutions, insertions and deletions, each with rate/3."""
    out = bytearray()
    for ch in source:
        if rng.random() >= rate:
            out.append(ch)
            continue
        kind = rng.randrange(3)
        if kind == 0:
            out.append(rng.choice(sigma))
        elif kind == 1:
            out.append(ch)
            out.append(rng.choice(sigma))
    return bytes(out)


def mutated_copies(ref_len: int, copies: int, rng: random.Random,
                   rate_range: tuple[float, float] = (0.001, 0.01),
                   sigma: bytes = DNA, n: Optional[int] = None) -> bytes:
    """Random reference followed by mutated copies of it, each with its own rate.

    Rates are drawn uniformly from ``rate_range``. With ``n`` given, copies
    are appended until the text reaches that length and then truncated.
    """
    ref = uniform_text(ref_len, sigma, rng)
    out = bytearray(ref)
    made = 0
    while (n is None and made < copies) or (n is not None and len(out) < n):
        out += mutate(ref, rng.uniform(*rate_range), sigma, rng)
        made += 1
    if n is not None:
        del out[n:]
    return bytes(out)


def random_case(rng: random.Random, max_n: int = 2000, sigmas=(2, 4, 26)):
    """``(text, ell)`` for one randomized equivalence case.

    Half the cases are uniform, half mutate a prefix repeatedly. The
    reference always holds every symbol of the tail, so the RLZ parse exists.
    """
    sigma = alphabet(rng.choice(sigmas))
    n = rng.randint(1, max_n)
    ell = rng.randint(1, n)
    if rng.random() < 0.5:
        body = uniform_text(n, sigma, rng)
    else:
        block = uniform_text(max(1, min(ell, rng.randint(1, 200))), sigma, rng)
        out = bytearray(block)
        while len(out) < n:
            out += mutate(block, rng.uniform(0.0, 0.1), sigma, rng)
        body = bytes(out[:n])
    present = set(body[:ell])
    tail = bytes(c if c in present else body[0] for c in body[ell:])
    return body[:ell] + tail, ell
