"""Streaming match-count and Hamming-distance profiles of a pattern against a text."""

from .core import (
    ALPHABET_SIZE,
    MAX_PATTERN_LENGTH,
    AlignmentRecord,
    MatchProfile,
    Pattern,
    PatternError,
    ShiftTable,
    StreamClosedError,
    StreamState,
    as_pattern,
    build_shift_table,
    byte_histogram,
    hamming_profile,
    k_mismatch_positions,
    merge_concat,
    profile,
    stream_feed,
    stream_finish,
    stream_init,
    total_hits,
)

__version__ = "0.1.0"
