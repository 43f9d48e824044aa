"""Backend selection: compiled ``_core`` extension if importable, else pure Python.

``RLZ2LZ_BACKEND=python`` forces the fallback.
"""

from __future__ import annotations

import os
from typing import Optional

import numpy as np

from .index import build_index
from .kr_hash import HashConfig
from .model import Lz77Parse, Lz77Triple, RlzArchive
from .parse import combined_parse

try:
    from . import _core
except ImportError:  # extension not built
    _core = None

COMPILED = _core is not None


class PythonBackend:
    name = "python"

    @staticmethod
    def build(archive: RlzArchive, seed: Optional[int] = None):
        return build_index(archive, seed)


if COMPILED:
    class CompiledEngine(_core.Engine):
        def convert_all(self, literal: bool = False) -> Lz77Parse:
            copy_len, src, last = self.convert_arrays(literal)
            triples = tuple(
                Lz77Triple(c, s if c else None, b)
                for c, s, b in zip(copy_len.tolist(), src.tolist(), last)
            )
            return Lz77Parse(triples, self.n)


class CompiledBackend:
    name = "compiled"

    @staticmethod
    def build(archive: RlzArchive, seed: Optional[int] = None):
        if not COMPILED:
            raise RuntimeError("compiled backend unavailable; build the _core extension")
        combined = combined_parse(archive)
        ends = np.fromiter(combined.ends, dtype=np.int64, count=len(combined.ends))
        sources = np.fromiter(combined.sources, dtype=np.int64, count=len(combined.sources))
        ref_phrases = combined.ref_phrases
        del combined  # the engine keeps its own compact copies
        base = HashConfig.from_seed(seed).base
        return CompiledEngine(archive.reference, ends, sources, ref_phrases, base)


BACKENDS = {"python": PythonBackend, "compiled": CompiledBackend}


def default_name() -> str:
    forced = os.environ.get("RLZ2LZ_BACKEND")
    if forced:
        return forced
    return "compiled" if COMPILED else "python"


def available() -> list[str]:
    return ["compiled", "python"] if COMPILED else ["python"]


def get(name: Optional[str] = None):
    name = name or default_name()
    try:
        return BACKENDS[name]
    except KeyError:
        raise ValueError(f"unknown backend {name!r}") from None
