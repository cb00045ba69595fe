"""Match-count profiles of a fixed pattern against a byte stream.

The scanner keeps one counter per pending alignment in a ring of ``2M``
slots.  Every incoming text byte looks up the pattern positions holding
that byte and bumps one counter per position; the counter for the
alignment that can no longer receive hits is emitted and cleared.  Memory
is ``O(M + 256)`` regardless of how much text passes through.

Alignments use the extended range: alignment ``a`` compares ``P[j]`` with
``T[a + j]`` and positions outside the text never match, so a text of
length ``N`` has alignments ``1 - M`` through ``N - 1``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence, Union

import numpy as np
from numba import njit

__all__ = [
    "MAX_PATTERN_LENGTH",
    "ALPHABET_SIZE",
    "PatternError",
    "StreamClosedError",
    "Pattern",
    "ShiftTable",
    "AlignmentRecord",
    "MatchProfile",
    "StreamState",
    "as_pattern",
    "build_shift_table",
    "stream_init",
    "stream_feed",
    "stream_finish",
    "profile",
    "hamming_profile",
    "k_mismatch_positions",
    "merge_concat",
    "byte_histogram",
    "total_hits",
]

MAX_PATTERN_LENGTH = 1 << 20
ALPHABET_SIZE = 256

COUNTER_DTYPE = np.int32
SHIFT_DTYPE = np.int32
OFFSET_DTYPE = np.int32

BytesLike = Union[bytes, bytearray, memoryview, str]


class PatternError(ValueError):
    """Raised for an empty or oversized pattern."""


class StreamClosedError(RuntimeError):
    """Raised when a finished stream is fed or finished again."""


def _to_bytes(data: BytesLike) -> bytes:
    if isinstance(data, str):
        return data.encode("utf-8")
    return bytes(data)


@dataclass(frozen=True)
class Pattern:
    data: bytes

    def __post_init__(self):
        if not isinstance(self.data, bytes):
            object.__setattr__(self, "data", _to_bytes(self.data))
        if len(self.data) == 0:
            raise PatternError("empty pattern")
        if len(self.data) > MAX_PATTERN_LENGTH:
            raise PatternError(
                f"pattern length {len(self.data)} exceeds {MAX_PATTERN_LENGTH}"
            )

    @property
    def m(self) -> int:
        return len(self.data)

    def __len__(self) -> int:
        return len(self.data)

    def reversed(self) -> "Pattern":
        return Pattern(self.data[::-1])


def as_pattern(pattern: Union[Pattern, BytesLike]) -> Pattern:
    """Coerce bytes or str (UTF-8 encoded) to a :class:`Pattern`."""
    if isinstance(pattern, Pattern):
        return pattern
    return Pattern(_to_bytes(pattern))


class ShiftTable:
    """Per-byte lists of pattern positions, stored flat.

    Entry ``c`` is ``shifts[offsets[c]:offsets[c + 1]]``.  The table is
    immutable once built and may be shared by any number of scanners.
    """

    __slots__ = ("m", "offsets", "shifts")

    def __init__(self, m: int, offsets: np.ndarray, shifts: np.ndarray):
        offsets = np.ascontiguousarray(offsets, dtype=OFFSET_DTYPE)
        shifts = np.ascontiguousarray(shifts, dtype=SHIFT_DTYPE)
        if offsets.shape != (ALPHABET_SIZE + 1,):
            raise ValueError("offsets must have 257 entries")
        if shifts.shape != (m,) or offsets[0] != 0 or offsets[-1] != m:
            raise ValueError("table must hold exactly m shifts")
        if np.any(np.diff(offsets) < 0):
            raise ValueError("offsets must be non-decreasing")
        if m and (shifts.min() < 0 or shifts.max() >= m):
            raise ValueError("shift out of range [0, m)")
        offsets.flags.writeable = False
        shifts.flags.writeable = False
        self.m = m
        self.offsets = offsets
        self.shifts = shifts

    @classmethod
    def from_lists(cls, lists: Sequence[Sequence[int]]) -> "ShiftTable":
        """Build from 256 explicit shift lists, kept in the given order."""
        if len(lists) != ALPHABET_SIZE:
            raise ValueError("need one list per byte value")
        sizes = np.fromiter((len(entry) for entry in lists), dtype=np.int64, count=ALPHABET_SIZE)
        offsets = np.zeros(ALPHABET_SIZE + 1, dtype=OFFSET_DTYPE)
        np.cumsum(sizes, out=offsets[1:])
        flat = [s for entry in lists for s in entry]
        m = len(flat)
        if sorted(flat) != list(range(m)):
            raise ValueError("shift lists must partition 0..m-1")
        return cls(m, offsets, np.array(flat, dtype=SHIFT_DTYPE))

    def entry(self, byte: int) -> tuple[int, ...]:
        return tuple(int(s) for s in self.shifts[self.offsets[byte]:self.offsets[byte + 1]])

    def occurrences(self) -> np.ndarray:
        """Number of pattern positions holding each byte value."""
        return np.diff(self.offsets).astype(np.int64)

    @property
    def nbytes(self) -> int:
        return self.offsets.nbytes + self.shifts.nbytes

    def __iter__(self) -> Iterator[tuple[int, ...]]:
        return (self.entry(c) for c in range(ALPHABET_SIZE))

    def __repr__(self) -> str:
        used = {chr(c) if 32 <= c < 127 else c: list(self.entry(c))
                for c in range(ALPHABET_SIZE) if self.offsets[c + 1] > self.offsets[c]}
        return f"ShiftTable(m={self.m}, {used})"


def build_shift_table(pattern: Union[Pattern, BytesLike]) -> ShiftTable:
    """Group the pattern positions by byte value, ascending within a byte.

    >>> build_shift_table(b"ABBA").entry(ord("B"))
    (1, 2)
    """
    pattern = as_pattern(pattern)
    codes = np.frombuffer(pattern.data, dtype=np.uint8)
    counts = np.bincount(codes, minlength=ALPHABET_SIZE)
    offsets = np.zeros(ALPHABET_SIZE + 1, dtype=OFFSET_DTYPE)
    np.cumsum(counts, out=offsets[1:])
    # stable sort keeps positions ascending inside each byte's run
    shifts = np.argsort(codes, kind="stable").astype(SHIFT_DTYPE)
    return ShiftTable(pattern.m, offsets, shifts)


@dataclass(frozen=True)
class AlignmentRecord:
    alignment: int
    matches: int
    hamming: int

    def __iter__(self):
        return iter((self.alignment, self.matches, self.hamming))


@njit(cache=True, nogil=True)
def _scan_block(ring, offsets, shifts, m, d, data, out):
    # (d - s) stays in [1, 3m - 1]; the emitted slot d - m never gets a hit
    two_m = 2 * m
    three_m = 3 * m
    hits = 0
    for k in range(data.shape[0]):
        c = int(data[k])
        for p in range(offsets[c], offsets[c + 1]):
            ring[(d - shifts[p]) % two_m] += 1
            hits += 1
        slot = d - m
        out[k] = ring[slot]
        ring[slot] = 0
        d += 1
        if d == three_m:
            d = m
    return d, hits


class StreamState:
    """Live scanner over one text stream.

    ``feed``/``feed_block`` emit the final match count of alignment
    ``bytes_consumed - M`` for every byte consumed; ``finish`` flushes the
    last ``M`` alignments and closes the stream.
    """

    __slots__ = ("table", "m", "ring", "d", "i", "bytes_consumed", "hits", "closed")

    def __init__(self, table: ShiftTable):
        self.table = table
        self.m = table.m
        self.ring = np.zeros(2 * table.m, dtype=COUNTER_DTYPE)
        self.d = table.m
        self.i = -table.m
        self.bytes_consumed = 0
        self.hits = 0
        self.closed = False

    def _check_open(self):
        if self.closed:
            raise StreamClosedError("stream already finished")

    def feed(self, byte: int) -> AlignmentRecord:
        self._check_open()
        byte = int(byte)
        m, d, ring = self.m, self.d, self.ring
        offsets, shifts = self.table.offsets, self.table.shifts
        for p in range(offsets[byte], offsets[byte + 1]):
            ring[(d - shifts[p]) % (2 * m)] += 1
        self.hits += int(offsets[byte + 1] - offsets[byte])
        matches = int(ring[d - m])
        ring[d - m] = 0
        record = AlignmentRecord(self.i, matches, m - matches)
        self._advance(1)
        return record

    def feed_block(self, data: BytesLike, out: np.ndarray | None = None) -> np.ndarray:
        """Consume ``data``; return match counts for the next ``len(data)`` alignments.

        The first returned count belongs to alignment ``self.i`` as it was
        before the call.
        """
        self._check_open()
        buf = np.frombuffer(_to_bytes(data) if isinstance(data, str) else data, dtype=np.uint8)
        if out is None:
            out = np.empty(buf.shape[0], dtype=COUNTER_DTYPE)
        elif out.shape[0] < buf.shape[0]:
            raise ValueError("output buffer too small")
        d, hits = _scan_block(self.ring, self.table.offsets, self.table.shifts,
                              self.m, self.d, buf, out)
        self.d = int(d)
        self.hits += int(hits)
        self.i += buf.shape[0]
        self.bytes_consumed += buf.shape[0]
        return out[:buf.shape[0]]

    def _advance(self, n: int):
        self.i += n
        self.bytes_consumed += n
        self.d += n
        if self.d >= 3 * self.m:
            self.d = self.m + (self.d - self.m) % (2 * self.m)

    def finish_counts(self) -> np.ndarray:
        """Close the stream; return counts for the last ``M`` alignments."""
        self._check_open()
        self.closed = True
        m = self.m
        slots = (self.d - m + np.arange(m)) % (2 * m)
        return self.ring[slots].copy()

    def finish(self) -> list[AlignmentRecord]:
        start = self.i
        counts = self.finish_counts()
        return [AlignmentRecord(start + k, int(c), self.m - int(c))
                for k, c in enumerate(counts)]

    @property
    def state_bytes(self) -> int:
        """Structural footprint: ring, shift table and the scalar cursors."""
        cursors = 4 * np.dtype(np.int64).itemsize  # d, i, bytes_consumed, hits
        return self.ring.nbytes + self.table.nbytes + cursors

    def __repr__(self) -> str:
        return (f"StreamState(m={self.m}, d={self.d}, i={self.i}, "
                f"bytes_consumed={self.bytes_consumed}, closed={self.closed})")


def stream_init(table: ShiftTable) -> StreamState:
    return StreamState(table)


def stream_feed(state: StreamState, byte: int) -> AlignmentRecord:
    return state.feed(byte)


def stream_finish(state: StreamState) -> list[AlignmentRecord]:
    return state.finish()


@dataclass(eq=False)
class MatchProfile:
    """Dense match counts for alignments ``1 - m`` .. ``n - 1``."""

    m: int
    n: int
    counts: np.ndarray = field(repr=False)

    def __post_init__(self):
        self.counts = np.asarray(self.counts, dtype=COUNTER_DTYPE)
        if self.counts.shape != (self.n + self.m - 1,):
            raise ValueError(
                f"expected {self.n + self.m - 1} counts, got {self.counts.shape[0]}"
            )

    @property
    def start(self) -> int:
        return 1 - self.m

    @property
    def stop(self) -> int:
        """One past the last alignment."""
        return self.n

    def alignments(self) -> np.ndarray:
        return np.arange(self.start, self.stop)

    def count(self, alignment: int) -> int:
        """Match count at ``alignment``; zero outside the profile range."""
        if self.start <= alignment < self.stop:
            return int(self.counts[alignment - self.start])
        return 0

    def __getitem__(self, alignment: int) -> int:
        if not self.start <= alignment < self.stop:
            raise IndexError(f"alignment {alignment} outside [{self.start}, {self.stop})")
        return int(self.counts[alignment - self.start])

    def __len__(self) -> int:
        return self.counts.shape[0]

    def __eq__(self, other) -> bool:
        if not isinstance(other, MatchProfile):
            return NotImplemented
        return (self.m == other.m and self.n == other.n
                and np.array_equal(self.counts, other.counts))

    def records(self) -> Iterator[AlignmentRecord]:
        m = self.m
        for a, c in zip(range(self.start, self.stop), self.counts.tolist()):
            yield AlignmentRecord(a, c, m - c)

    def hamming(self) -> np.ndarray:
        return self.m - self.counts


def profile(pattern: Union[Pattern, BytesLike, ShiftTable], text: BytesLike) -> MatchProfile:
    """Match counts of ``pattern`` at every alignment of ``text``.

    >>> profile(b"ABAB", b"CABABABCBA")[3]
    4
    """
    table = pattern if isinstance(pattern, ShiftTable) else build_shift_table(pattern)
    state = StreamState(table)
    head = state.feed_block(text)
    tail = state.finish_counts()
    # drop alignment -M: no overlap with the text, always zero
    counts = np.concatenate((head, tail))[1:]
    return MatchProfile(table.m, state.bytes_consumed, counts)


def hamming_profile(prof: MatchProfile) -> list[tuple[int, int]]:
    return list(zip(range(prof.start, prof.stop), prof.hamming().tolist()))


def k_mismatch_positions(prof: MatchProfile, k: int, range_mode: str = "core") -> list[int]:
    """Alignments with at most ``k`` mismatches, ascending.

    ``core`` keeps alignments where the pattern lies fully inside the text
    (``0 <= a <= n - m``); ``extended`` searches the whole profile.
    """
    if not 0 <= k <= prof.m:
        raise ValueError(f"k must lie in [0, {prof.m}], got {k}")
    if range_mode not in ("core", "extended"):
        raise ValueError(f"unknown range mode {range_mode!r}")
    hits = np.flatnonzero(prof.counts >= prof.m - k) + prof.start
    if range_mode == "core":
        hits = hits[(hits >= 0) & (hits <= prof.n - prof.m)]
    return hits.tolist()


def merge_concat(left: MatchProfile, right: MatchProfile) -> MatchProfile:
    """Profile of ``T1 + T2`` from the profiles of ``T1`` and ``T2``.

    Every hit belongs to exactly one text byte, so the profiles add once
    ``right`` is shifted by ``len(T1)``.
    """
    if left.m != right.m:
        raise ValueError(f"pattern lengths differ: {left.m} != {right.m}")
    m, n1, n2 = left.m, left.n, right.n
    counts = np.zeros(n1 + n2 + m - 1, dtype=COUNTER_DTYPE)
    counts[: left.counts.shape[0]] += left.counts
    counts[n1:] += right.counts
    return MatchProfile(m, n1 + n2, counts)


def byte_histogram(data: BytesLike) -> np.ndarray:
    buf = np.frombuffer(_to_bytes(data), dtype=np.uint8)
    return np.bincount(buf, minlength=ALPHABET_SIZE).astype(np.int64)


def total_hits(pattern: Union[Pattern, BytesLike, ShiftTable], text_histogram: Iterable[int]) -> int:
    """Number of counter increments a scan of a text with this histogram makes."""
    table = pattern if isinstance(pattern, ShiftTable) else build_shift_table(pattern)
    hist = np.asarray(text_histogram, dtype=np.int64)
    if hist.shape != (ALPHABET_SIZE,):
        raise ValueError("histogram needs 256 counts")
    return int(np.dot(hist, table.occurrences()))
