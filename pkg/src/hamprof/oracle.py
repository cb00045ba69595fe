"""Slow, direct reference implementations used to check the scanner.

Nothing here is optimized: each function follows the definition it
implements so it can serve as an independent oracle.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Mapping, Sequence, Union

from .core import BytesLike, MatchProfile, Pattern, _to_bytes, as_pattern

__all__ = [
    "ShiftSetFamily",
    "MatchEvidence",
    "SetDiscrepancy",
    "brute_force_profile",
    "build_sets",
    "analyze",
    "compare_sets",
]


def brute_force_profile(pattern: Union[Pattern, BytesLike], text: BytesLike) -> MatchProfile:
    """Count matching positions at every alignment with a plain double loop."""
    p = as_pattern(pattern).data
    t = _to_bytes(text)
    m, n = len(p), len(t)
    counts = []
    for a in range(1 - m, n):
        matches = 0
        for j in range(m):
            i = a + j
            # positions outside the text are null and never match
            if 0 <= i < n and t[i] == p[j]:
                matches += 1
        counts.append(matches)
    return MatchProfile(m, n, counts)


@dataclass(frozen=True)
class ShiftSetFamily:
    """The sets ``R_j = {i - j : T[i] == P[j]}``, one per pattern position."""

    sets: tuple[frozenset[int], ...]
    m: int
    n: int


@dataclass(frozen=True)
class MatchEvidence:
    exact_shifts: frozenset[int]
    frequencies: dict[int, int]


def build_sets(pattern: Union[Pattern, BytesLike], text: BytesLike) -> ShiftSetFamily:
    p = as_pattern(pattern).data
    t = _to_bytes(text)
    sets = tuple(frozenset(i - j for i in range(len(t)) if t[i] == p[j]) for j in range(len(p)))
    return ShiftSetFamily(sets, len(p), len(t))


def analyze(family: ShiftSetFamily) -> MatchEvidence:
    """Frequency of each alignment across the sets, and their intersection.

    An alignment's frequency is its match count; alignments present in
    every set are exact occurrences.
    """
    freq = Counter()
    for r in family.sets:
        freq.update(r)
    if family.sets:
        exact = frozenset.intersection(*family.sets)
    else:
        exact = frozenset()
    return MatchEvidence(exact, dict(freq))


@dataclass(frozen=True)
class SetDiscrepancy:
    j: int
    extra: tuple[int, ...]
    missing: tuple[int, ...]


def compare_sets(family: ShiftSetFamily,
                 expected: Mapping[int, Sequence[int]]) -> list[SetDiscrepancy]:
    """Check claimed ``R_j`` rows against the family built from the text.

    ``extra`` lists claimed members the text does not produce, ``missing``
    lists members the claim leaves out.
    """
    out = []
    for j in sorted(expected):
        if not 0 <= j < family.m:
            raise ValueError(f"set index {j} outside [0, {family.m})")
        claimed = set(expected[j])
        actual = family.sets[j]
        extra = tuple(sorted(claimed - actual))
        missing = tuple(sorted(actual - claimed))
        if extra or missing:
            out.append(SetDiscrepancy(j, extra, missing))
    return out
