"""Time index build and conversion for each available backend on mutated-copy texts.

    python3 benchmarks/bench_backends.py --sizes 4096 16384 65536 --ref-len 2048
"""

from __future__ import annotations

import argparse
import random
import time

from rlz2lz import _backend, parse_text
from rlz2lz.converter import build_engine, convert_with
from rlz2lz.synth import mutated_copies


def run(archive, backend: str, seed: int) -> tuple[float, float, int, int]:
    t0 = time.perf_counter()
    engine = build_engine(archive, seed, backend)
    t1 = time.perf_counter()
    parse = engine.convert_all() if hasattr(engine, "convert_all") else convert_with(engine)
    t2 = time.perf_counter()
    return t1 - t0, t2 - t1, len(parse.triples), engine.memory_words()


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--sizes", type=int, nargs="+", default=[4096, 16384])
    ap.add_argument("--ref-len", type=int, default=2048)
    ap.add_argument("--seed", type=int, default=1)
    ap.add_argument("--backends", nargs="+", default=_backend.available())
    args = ap.parse_args()

    print(f"{'n':>9} {'z_rlz':>7} {'backend':>9} {'build_s':>9} {'convert_s':>10} {'z':>7} {'words':>9}")
    for n in args.sizes:
        text = mutated_copies(args.ref_len, 0, random.Random(n), n=n)
        archive = parse_text(text, min(args.ref_len, n))
        results = {}
        for name in args.backends:
            build_s, conv_s, z, words = run(archive, name, args.seed)
            results[name] = conv_s
            print(f"{n:>9} {len(archive.phrases):>7} {name:>9} {build_s:>9.3f} {conv_s:>10.3f} {z:>7} {words:>9}")
        if "compiled" in results and "python" in results:
            print(f"{'':>9} speedup {results['python'] / results['compiled']:.1f}x")


if __name__ == "__main__":
    main()
