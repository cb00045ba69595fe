"""``hamprof`` command-line tool.

Exit codes: 0 success, 1 ``kmatch`` found nothing, 2 usage error,
3 I/O error, 4 verification failure.
"""

from __future__ import annotations

import argparse
import io
import json
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from functools import lru_cache, reduce
from typing import BinaryIO, Sequence, TextIO

import numpy as np

from . import bench
from .core import (AlignmentRecord, Pattern, PatternError, ShiftTable, StreamState,
                   build_shift_table, merge_concat, profile, total_hits)
from .corpus import DEFAULT_CHUNK_SIZE, ChunkedReader, ReadError, load_pattern, write_records
from .oracle import analyze, brute_force_profile, build_sets, compare_sets

EXIT_OK = 0
EXIT_NONE_FOUND = 1
EXIT_USAGE = 2
EXIT_IO = 3
EXIT_DIVERGED = 4

VERIFY_MAX_N = 10**6


class UsageError(Exception):
    pass


@dataclass
class CliConfig:
    subcommand: str
    pattern: bytes | None
    pattern_file: str | None
    raw_pattern: bool
    text: str
    k: int | None = None
    range_mode: str = "extended"
    fmt: str = "tsv"
    paper_trace: bool = False
    stats: bool = False
    chunk_size: int = DEFAULT_CHUNK_SIZE
    jobs: int = 1

    @classmethod
    def from_args(cls, args: argparse.Namespace) -> "CliConfig":
        range_mode = args.range or ("core" if args.command == "kmatch" else "extended")
        return cls(
            subcommand=args.command,
            pattern=args.pattern,
            pattern_file=args.pattern_file,
            raw_pattern=args.raw_pattern,
            text=args.text,
            k=getattr(args, "k", None),
            range_mode=range_mode,
            fmt=args.format,
            paper_trace=getattr(args, "paper_trace", False),
            stats=args.stats,
            chunk_size=args.chunk_size,
            jobs=args.jobs,
        )

    def load_pattern(self) -> Pattern:
        if (self.pattern is None) == (self.pattern_file is None):
            raise UsageError("give exactly one of --pattern or --pattern-file")
        mode = "raw" if self.raw_pattern else None
        if self.pattern_file is not None:
            return load_pattern(self.pattern_file, from_file=True, mode=mode)
        return load_pattern(self.pattern, mode=mode)


def _positive_int(value: str) -> int:
    n = int(value)
    if n < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {value}")
    return n


def _pattern_arg(value: str) -> bytes:
    return value.encode(sys.getfilesystemencoding(), "surrogateescape")


@lru_cache(maxsize=None)
def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("-p", "--pattern", type=_pattern_arg, help="pattern given inline")
    common.add_argument("--pattern-file", help="read the pattern from a file")
    common.add_argument("--raw-pattern", action="store_true",
                        help="keep a pattern file's trailing newline")
    common.add_argument("--range", choices=("core", "extended"),
                        help="alignment range (profile default: extended, kmatch default: core)")
    common.add_argument("--format", choices=("tsv", "jsonl"), default="tsv")
    common.add_argument("--stats", action="store_true", help="print a summary line to stderr")
    common.add_argument("--chunk-size", type=_positive_int, default=DEFAULT_CHUNK_SIZE)
    common.add_argument("--jobs", type=_positive_int, default=1,
                        help="scan the text in this many parts and merge")
    common.add_argument("text", nargs="?", default="-", help='text file, or "-" for stdin')

    parser = argparse.ArgumentParser(
        prog="hamprof",
        description="Per-alignment match counts and Hamming distances of a pattern against a text.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("profile", parents=[common], help="match count at every alignment")
    p.add_argument("--paper-trace", action="store_true",
                   help='emit "i, count" pairs including the leading alignment -M')

    k = sub.add_parser("kmatch", parents=[common], help="alignments with at most k mismatches")
    k.add_argument("--k", type=int, required=True)

    v = sub.add_parser("verify", parents=[common], help="cross-check scanner against oracle")
    v.add_argument("--max-n", type=int, default=VERIFY_MAX_N,
                   help="refuse texts longer than this (oracle is quadratic)")
    v.add_argument("--expect-sets", metavar="JSON",
                   help='claimed shift sets as {"j": [alignments...]} to check')

    b = sub.add_parser("bench", parents=[common], help="hit-count/timing sweep as CSV")
    b.add_argument("--sizes", default="10,20,30,40,50,60,70,80,90,100",
                   help="comma-separated pattern sizes")
    b.add_argument("--synthetic", choices=("uniform", "english", "single"),
                   help="generate the corpus instead of reading TEXT")
    b.add_argument("--n", type=_positive_int, default=10**6, help="synthetic corpus size")
    b.add_argument("--seed", type=int, default=0)
    b.add_argument("--repeats", type=_positive_int, default=3)
    b.add_argument("--corpus-id")
    return parser


class _Emitter:
    """Filters and serializes blocks of counts as the scan produces them."""

    def __init__(self, cfg: CliConfig, m: int, sink: BinaryIO):
        self.cfg = cfg
        self.m = m
        self.sink = sink
        self.lo = -m if cfg.paper_trace else 1 - m
        if cfg.range_mode == "core":
            self.lo = max(self.lo, 0)
        self.max_matches_needed = m - cfg.k if cfg.k is not None else 0
        self.fmt = "trace" if cfg.paper_trace else cfg.fmt
        self.reported = 0

    def __call__(self, start: int, counts: np.ndarray, hi: int | None = None):
        alignments = np.arange(start, start + counts.shape[0])
        keep = alignments >= self.lo
        if hi is not None:
            keep &= alignments <= hi
        if self.max_matches_needed:
            keep &= counts >= self.max_matches_needed
        if not keep.all():
            alignments, counts = alignments[keep], counts[keep]
        if not counts.shape[0]:
            return
        m = self.m
        records = (AlignmentRecord(a, c, m - c)
                   for a, c in zip(alignments.tolist(), counts.tolist()))
        write_records(records, self.fmt, self.sink)
        self.sink.flush()
        self.reported += counts.shape[0]


def _scan_streaming(cfg: CliConfig, table: ShiftTable, reader: ChunkedReader,
                    emit: _Emitter) -> tuple[int, int, int]:
    state = StreamState(table)
    out = np.empty(cfg.chunk_size, dtype=np.int32)
    peak = state.state_bytes
    for block in reader:
        start = state.i
        emit(start, state.feed_block(block, out=out))
        peak = max(peak, state.state_bytes)
    n = state.bytes_consumed
    start = state.i
    hi = n - table.m if cfg.range_mode == "core" else None
    emit(start, state.finish_counts(), hi)
    return n, state.hits, peak


def _scan_parallel(cfg: CliConfig, table: ShiftTable, reader: ChunkedReader,
                   emit: _Emitter) -> tuple[int, int, int]:
    text = b"".join(reader)
    n = len(text)
    bounds = np.linspace(0, n, cfg.jobs + 1).astype(int)
    parts = [text[lo:hi] for lo, hi in zip(bounds[:-1], bounds[1:])]
    with ThreadPoolExecutor(max_workers=cfg.jobs) as pool:
        profiles = list(pool.map(lambda part: profile(table, part), parts))
    merged = reduce(merge_concat, profiles)
    counts = np.concatenate(([0], merged.counts)).astype(np.int32)
    hi = n - table.m if cfg.range_mode == "core" else None
    emit(-table.m, counts, hi)
    peak = StreamState(table).state_bytes * cfg.jobs
    return n, total_hits(table, reader.histogram.counts), peak


def run_scan(cfg: CliConfig, stdin: BinaryIO, stdout: BinaryIO, stderr: TextIO) -> int:
    table = build_shift_table(cfg.load_pattern())
    if cfg.k is not None and not 0 <= cfg.k <= table.m:
        raise UsageError(f"--k must lie in [0, {table.m}], got {cfg.k}")
    reader = ChunkedReader(stdin if cfg.text == "-" else cfg.text, cfg.chunk_size)
    emit = _Emitter(cfg, table.m, stdout)
    t0 = time.perf_counter()
    scan = _scan_parallel if cfg.jobs > 1 else _scan_streaming
    n, hits, peak = scan(cfg, table, reader, emit)
    wall = time.perf_counter() - t0
    if cfg.stats:
        print(f"N={n} M={table.m} total_hits={hits} wall_ms={wall * 1e3:.3f} "
              f"state_bytes={peak}", file=stderr)
    if cfg.subcommand == "kmatch" and emit.reported == 0:
        return EXIT_NONE_FOUND
    return EXIT_OK


def run_profile(cfg: CliConfig, stdin: BinaryIO, stdout: BinaryIO, stderr: TextIO) -> int:
    return run_scan(cfg, stdin, stdout, stderr)


def run_kmatch(cfg: CliConfig, stdin: BinaryIO, stdout: BinaryIO, stderr: TextIO) -> int:
    if cfg.k is None:
        raise UsageError("kmatch needs --k")
    return run_scan(cfg, stdin, stdout, stderr)


def _read_all(path: str, stdin: BinaryIO, chunk_size: int) -> bytes:
    return b"".join(ChunkedReader(stdin if path == "-" else path, chunk_size))


def run_verify(cfg: CliConfig, args: argparse.Namespace, stdin: BinaryIO,
               stdout: BinaryIO, stderr: TextIO) -> int:
    pat = cfg.load_pattern()
    text = _read_all(cfg.text, stdin, cfg.chunk_size)
    if len(text) > args.max_n:
        raise UsageError(f"text has {len(text)} bytes; oracle limit is {args.max_n} (raise --max-n)")
    fast = profile(pat, text)
    slow = brute_force_profile(pat, text)
    family = build_sets(pat, text)
    evidence = analyze(family)

    def say(line: str):
        stdout.write((line + "\n").encode())

    diff = np.flatnonzero(fast.counts != slow.counts)
    if diff.size:
        a = int(diff[0]) + fast.start
        say(f"DIVERGENCE at alignment {a}: streamer={fast[a]} oracle={slow[a]}")
        return EXIT_DIVERGED
    for a, c in zip(fast.alignments().tolist(), fast.counts.tolist()):
        if evidence.frequencies.get(a, 0) != c:
            say(f"DIVERGENCE at alignment {a}: streamer={c} "
                f"set-frequency={evidence.frequencies.get(a, 0)}")
            return EXIT_DIVERGED
    exact = sorted(evidence.exact_shifts)
    if exact != (np.flatnonzero(fast.counts == fast.m) + fast.start).tolist():
        say(f"DIVERGENCE in exact-match set: sets give {exact}")
        return EXIT_DIVERGED

    status = EXIT_OK
    if args.expect_sets:
        with open(args.expect_sets) as fh:
            claimed = {int(j): v for j, v in json.load(fh).items()}
        for d in compare_sets(family, claimed):
            say(f"SET MISMATCH R_{d.j}: claimed but absent {list(d.extra)}, "
                f"present but unclaimed {list(d.missing)}")
            status = EXIT_DIVERGED
    if status == EXIT_OK:
        say(f"OK: {len(fast)} alignments, {len(exact)} exact matches {exact}")
    return status


def run_bench(cfg: CliConfig, args: argparse.Namespace, stdin: BinaryIO,
              stdout: BinaryIO, stderr: TextIO) -> int:
    sizes = [int(s) for s in args.sizes.split(",") if s.strip()]
    if args.synthetic == "uniform":
        corpus = bench.uniform_corpus(args.n, seed=args.seed)
    elif args.synthetic == "english":
        corpus = bench.english_like_corpus(args.n, seed=args.seed)
    elif args.synthetic == "single":
        corpus = bench.single_letter_corpus(args.n)
    else:
        corpus = _read_all(cfg.text, stdin, cfg.chunk_size)
    corpus_id = args.corpus_id or args.synthetic or cfg.text
    patterns = None
    if cfg.pattern is not None or cfg.pattern_file is not None:
        patterns = [cfg.load_pattern().data]
    points = bench.run_sweep(corpus, sizes, patterns=patterns, seed=args.seed,
                             corpus_id=corpus_id, repeats=args.repeats)
    buf = io.StringIO()
    bench.write_csv(points, buf)
    stdout.write(buf.getvalue().encode())
    return EXIT_OK


def main(argv: Sequence[str] | None = None, *, stdin: BinaryIO | None = None,
         stdout: BinaryIO | None = None, stderr: TextIO | None = None) -> int:
    stdin = stdin if stdin is not None else sys.stdin.buffer
    stdout = stdout if stdout is not None else sys.stdout.buffer
    stderr = stderr if stderr is not None else sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    cfg = CliConfig.from_args(args)
    try:
        if args.command == "profile":
            return run_profile(cfg, stdin, stdout, stderr)
        if args.command == "kmatch":
            return run_kmatch(cfg, stdin, stdout, stderr)
        if args.command == "verify":
            return run_verify(cfg, args, stdin, stdout, stderr)
        return run_bench(cfg, args, stdin, stdout, stderr)
    except (UsageError, PatternError, ValueError) as exc:
        print(f"hamprof: {exc}", file=stderr)
        return EXIT_USAGE
    except BrokenPipeError:
        return EXIT_IO
    except (ReadError, OSError) as exc:
        print(f"hamprof: {exc}", file=stderr)
        return EXIT_IO


def main_entry():
    sys.exit(main())


if __name__ == "__main__":
    main_entry()
