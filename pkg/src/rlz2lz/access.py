"""Random access to ``T`` stored as reference plus RLZ phrases."""

from __future__ import annotations

from bisect import bisect_right

from .model import CombinedParse, OutOfRange, RlzArchive


class PhraseDirectory:
    """Predecessor directory over RLZ phrase starts (sorted array + bisect).

    Positions ``k <= ell`` bypass the directory and read the reference.
    """

    def __init__(self, reference: bytes, n: int, starts: list[int], sources: list[int]):
        self.reference = reference
        self.ell = len(reference)
        self.n = n
        self.starts = starts
        self.sources = sources

    def __len__(self) -> int:
        return len(self.starts)

    def locate(self, k: int) -> int:
        """Map a tail position ``k > ell`` to its position in the reference."""
        t = bisect_right(self.starts, k) - 1
        return self.sources[t] + k - self.starts[t]

    def char_at(self, k: int) -> int:
        if not 1 <= k <= self.n:
            raise OutOfRange(f"position {k} outside [1, {self.n}]")
        if k <= self.ell:
            return self.reference[k - 1]
        return self.reference[self.locate(k) - 1]

    def extract(self, a: int, b: int) -> bytes:
        """Return ``T[a..b]``; one predecessor search per phrase crossed."""
        if b == a - 1 and 1 <= a <= self.n + 1:
            return b""
        if not 1 <= a <= b <= self.n:
            raise OutOfRange(f"range [{a}, {b}] outside [1, {self.n}]")
        ref = self.reference
        out = bytearray()
        if a <= self.ell:
            stop = min(b, self.ell)
            out += ref[a - 1:stop]
            a = stop + 1
        if a <= b:
            t = bisect_right(self.starts, a) - 1
            while a <= b:
                end = self.starts[t + 1] - 1 if t + 1 < len(self.starts) else self.n
                stop = min(b, end)
                src = self.sources[t] + a - self.starts[t]
                out += ref[src - 1:src - 1 + stop - a + 1]
                a = stop + 1
                t += 1
        return bytes(out)

    def memory_words(self) -> int:
        return 2 * len(self.starts)


def build_directory(archive: RlzArchive, combined: CombinedParse) -> PhraseDirectory:
    k0 = combined.ref_phrases
    starts = [combined.ends[k - 1] + 1 for k in range(k0, len(combined.ends))]
    return PhraseDirectory(archive.reference, combined.n, starts, list(combined.sources))
