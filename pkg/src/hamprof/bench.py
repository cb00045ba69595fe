"""Hit-count and throughput sweeps over pattern sizes.

The number of counter increments a scan performs is fixed by the byte
histograms alone, ``sum_c occ_T(c) * occ_P(c)``; every point checks the
instrumented count against that closed form.
"""

from __future__ import annotations

import csv
import logging
import time
import warnings
from dataclasses import asdict, dataclass, fields
from typing import Iterable, Sequence, TextIO

import numpy as np

from .core import ALPHABET_SIZE, StreamState, build_shift_table, byte_histogram, total_hits

log = logging.getLogger(__name__)

__all__ = [
    "CSV_HEADER",
    "BenchPoint",
    "MemoryReport",
    "sample_patterns",
    "scan_counting",
    "run_sweep",
    "write_csv",
    "run_memory_check",
    "time_trend_ok",
    "uniform_corpus",
    "english_like_corpus",
    "single_letter_corpus",
]

CSV_HEADER = ("corpus", "N", "M", "sigma", "total_hits", "hits_per_char",
              "wall_ms", "throughput_bps", "state_bytes")

# relative letter frequencies of English prose, space included
_ENGLISH_FREQ = {
    " ": 18.3, "e": 10.2, "t": 7.5, "a": 6.5, "o": 6.2, "n": 5.7, "i": 5.7,
    "s": 5.3, "r": 5.0, "h": 5.0, "l": 3.3, "d": 3.3, "u": 2.3, "c": 2.2,
    "m": 2.0, "f": 2.0, "w": 1.7, "g": 1.6, "p": 1.5, "y": 1.4, "b": 1.3,
    ",": 1.0, ".": 0.9, "v": 0.8, "k": 0.6, "\n": 0.5, "I": 0.4, "T": 0.3,
    "x": 0.15, "j": 0.1, "q": 0.1, "z": 0.07,
}


def uniform_corpus(n: int, sigma: int = 256, seed: int = 0) -> bytes:
    rng = np.random.default_rng(seed)
    return rng.integers(0, sigma, size=n, dtype=np.uint8).tobytes()


def english_like_corpus(n: int, seed: int = 0) -> bytes:
    """i.i.d. bytes drawn from English character frequencies."""
    rng = np.random.default_rng(seed)
    symbols = np.frombuffer("".join(_ENGLISH_FREQ).encode(), dtype=np.uint8)
    p = np.array(list(_ENGLISH_FREQ.values()))
    return rng.choice(symbols, size=n, p=p / p.sum()).tobytes()


def single_letter_corpus(n: int, letter: bytes = b"a") -> bytes:
    return letter * n


@dataclass
class BenchPoint:
    corpus: str
    N: int
    M: int
    sigma: int
    total_hits: int
    hits_per_char: float
    wall_ms: float
    throughput_bps: float
    state_bytes: int


def sample_patterns(corpus: bytes, sizes: Sequence[int], seed: int = 0) -> list[bytes]:
    """One pattern per size, cut from the corpus at a seeded random offset."""
    rng = np.random.default_rng(seed)
    out = []
    for m in sizes:
        if m > len(corpus):
            raise ValueError(f"pattern size {m} exceeds corpus length {len(corpus)}")
        start = int(rng.integers(0, len(corpus) - m + 1))
        out.append(corpus[start:start + m])
    return out


def scan_counting(pattern: bytes, corpus: bytes, chunk_size: int = 1 << 16) -> StreamState:
    """Scan the corpus with a fresh state, discarding output; return the finished state."""
    state = StreamState(build_shift_table(pattern))
    out = np.empty(chunk_size, dtype=np.int32)
    view = memoryview(corpus)
    for pos in range(0, len(corpus), chunk_size):
        state.feed_block(view[pos:pos + chunk_size], out=out)
    state.finish_counts()
    return state


def run_sweep(corpus: bytes, pattern_sizes: Sequence[int] | None = None, *,
              patterns: Sequence[bytes] | None = None, seed: int = 0,
              corpus_id: str = "corpus", repeats: int = 3) -> list[BenchPoint]:
    """Time one scan per pattern and record its hit count.

    Patterns are either given or sampled from the corpus.  Each point keeps
    the best of ``repeats`` wall-clock runs.  Sizes larger than the corpus
    are skipped with a warning.
    """
    n = len(corpus)
    if patterns is None:
        if pattern_sizes is None:
            raise ValueError("need pattern_sizes or patterns")
        usable = [m for m in pattern_sizes if m <= n]
        for m in pattern_sizes:
            if m > n:
                warnings.warn(f"skipping M={m}: larger than corpus N={n}")
        patterns = sample_patterns(corpus, usable, seed)
    else:
        kept = []
        for p in patterns:
            if len(p) > n:
                warnings.warn(f"skipping M={len(p)}: larger than corpus N={n}")
            else:
                kept.append(p)
        patterns = kept

    hist = byte_histogram(corpus)
    sigma = int(np.count_nonzero(hist))
    points = []
    for pat in patterns:
        best = float("inf")
        state = None
        for _ in range(max(1, repeats)):
            t0 = time.perf_counter()
            state = scan_counting(pat, corpus)
            best = min(best, time.perf_counter() - t0)
        expected = total_hits(pat, hist)
        if state.hits != expected:
            raise AssertionError(
                f"M={len(pat)}: scanner made {state.hits} increments, histograms give {expected}"
            )
        point = BenchPoint(
            corpus=corpus_id, N=n, M=len(pat), sigma=sigma,
            total_hits=expected,
            hits_per_char=expected / n if n else 0.0,
            wall_ms=best * 1e3,
            throughput_bps=n / best if best > 0 else float("inf"),
            state_bytes=state.state_bytes,
        )
        log.info("%s", point)
        points.append(point)
    return points


def write_csv(points: Iterable[BenchPoint], sink: TextIO):
    writer = csv.writer(sink, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    for p in points:
        row = asdict(p)
        writer.writerow([row[f.name] for f in fields(BenchPoint)])


@dataclass
class MemoryReport:
    m: int
    sizes: list[int]
    state_bytes: list[int]
    ring_bytes: int
    table_fixed_bytes: int

    @property
    def constant(self) -> bool:
        return len(set(self.state_bytes)) == 1


def run_memory_check(corpus_sizes: Sequence[int], m: int, seed: int = 0,
                     block: int = 1 << 16) -> MemoryReport:
    """Scan uniform random text of each size and record the structural state size.

    Text is generated one reusable block at a time so the check itself
    never holds more than ``block`` bytes of input.
    """
    rng = np.random.default_rng(seed)
    pattern = rng.integers(0, ALPHABET_SIZE, size=m, dtype=np.uint8).tobytes()
    table = build_shift_table(pattern)
    chunk = rng.integers(0, ALPHABET_SIZE, size=block, dtype=np.uint8).tobytes()
    out = np.empty(block, dtype=np.int32)
    sizes = list(corpus_sizes)
    recorded = []
    for n in sizes:
        state = StreamState(table)
        before = state.state_bytes
        remaining = n
        while remaining:
            take = min(block, remaining)
            state.feed_block(chunk[:take], out=out)
            remaining -= take
        after = state.state_bytes
        if after != before:
            raise AssertionError(f"state grew from {before} to {after} bytes at N={n}")
        recorded.append(after)
        state.finish_counts()
    return MemoryReport(m, sizes, recorded, 2 * m * np.dtype(np.int32).itemsize,
                        table.offsets.nbytes)


def time_trend_ok(points: Sequence[BenchPoint], noise: float = 0.2) -> bool:
    """True when wall time never drops by more than ``noise`` as hits grow."""
    ordered = sorted(points, key=lambda p: p.total_hits)
    worst = 0.0
    for p in ordered:
        if p.wall_ms < (1 - noise) * worst:
            return False
        worst = max(worst, p.wall_ms)
    return True
