"""Text ingestion, pattern loading and record serialization."""

from __future__ import annotations

import json
import os
import sys
from typing import BinaryIO, Iterable, Iterator, Union

import numpy as np

from .core import ALPHABET_SIZE, AlignmentRecord, Pattern, PatternError

__all__ = [
    "DEFAULT_CHUNK_SIZE",
    "ReadError",
    "ByteHistogram",
    "ChunkedReader",
    "load_pattern",
    "read_chunks",
    "format_records",
    "write_records",
]

DEFAULT_CHUNK_SIZE = 64 * 1024
FORMATS = ("tsv", "jsonl", "trace")


class ReadError(OSError):
    """I/O failure while streaming; ``bytes_delivered`` counts bytes handed out before it."""

    def __init__(self, message: str, bytes_delivered: int):
        super().__init__(message)
        self.bytes_delivered = bytes_delivered


class ByteHistogram:
    __slots__ = ("counts",)

    def __init__(self):
        self.counts = np.zeros(ALPHABET_SIZE, dtype=np.int64)

    def update(self, block: bytes):
        if block:
            self.counts += np.bincount(np.frombuffer(block, dtype=np.uint8),
                                       minlength=ALPHABET_SIZE)

    @property
    def total(self) -> int:
        return int(self.counts.sum())

    @property
    def sigma(self) -> int:
        """Number of distinct byte values seen."""
        return int(np.count_nonzero(self.counts))

    def __array__(self, dtype=None, copy=None):
        return self.counts if dtype is None else self.counts.astype(dtype)


def load_pattern(source: Union[str, bytes, os.PathLike], *, from_file: bool = False,
                 mode: str | None = None) -> Pattern:
    """Resolve a pattern given inline or as a file path.

    ``mode`` is ``"raw"`` or ``"strip"``; files default to ``"strip"``,
    which drops one trailing LF or CRLF.  Inline patterns default to raw.
    """
    if mode is None:
        mode = "strip" if from_file else "raw"
    if mode not in ("raw", "strip"):
        raise ValueError(f"unknown pattern mode {mode!r}")
    if from_file:
        try:
            with open(source, "rb") as fh:
                data = fh.read()
        except OSError as exc:
            raise OSError(f"cannot read pattern file {os.fspath(source)!r}: {exc.strerror}") from exc
    else:
        data = source.encode("utf-8") if isinstance(source, str) else bytes(source)
    if mode == "strip":
        if data.endswith(b"\r\n"):
            data = data[:-2]
        elif data.endswith(b"\n"):
            data = data[:-1]
    if not data:
        raise PatternError("empty pattern")
    return Pattern(data)


class ChunkedReader:
    """Deliver a source's bytes in blocks of at most ``chunk_size``.

    ``source`` is a path, ``"-"`` for standard input, or a binary file
    object.  Reads use ``read1`` where available so a pipe's bytes are
    handed out as soon as they arrive instead of waiting for a full block.
    """

    def __init__(self, source: Union[str, os.PathLike, BinaryIO] = "-",
                 chunk_size: int = DEFAULT_CHUNK_SIZE, histogram: ByteHistogram | None = None):
        if chunk_size < 1:
            raise ValueError("chunk_size must be positive")
        self.source = source
        self.chunk_size = chunk_size
        self.bytes_delivered = 0
        self.histogram = histogram if histogram is not None else ByteHistogram()

    def _open(self):
        if self.source == "-":
            return sys.stdin.buffer, False
        if hasattr(self.source, "read"):
            return self.source, False
        return open(self.source, "rb"), True

    def __iter__(self) -> Iterator[bytes]:
        try:
            fh, owned = self._open()
        except OSError as exc:
            raise ReadError(f"cannot open {os.fspath(self.source)!r}: {exc.strerror}", 0) from exc
        read = getattr(fh, "read1", fh.read)
        try:
            while True:
                try:
                    block = read(self.chunk_size)
                except OSError as exc:
                    raise ReadError(f"read failed after {self.bytes_delivered} bytes: {exc}",
                                    self.bytes_delivered) from exc
                if not block:
                    return
                self.histogram.update(block)
                self.bytes_delivered += len(block)
                yield block
        finally:
            if owned:
                fh.close()


def read_chunks(reader: ChunkedReader) -> Iterator[bytes]:
    return iter(reader)


def format_records(records: Iterable[AlignmentRecord], fmt: str = "tsv") -> str:
    if fmt == "tsv":
        return "".join(f"{a}\t{c}\t{h}\n" for a, c, h in records)
    if fmt == "jsonl":
        return "".join(json.dumps({"alignment": a, "matches": c, "hamming": h}) + "\n"
                       for a, c, h in records)
    if fmt == "trace":
        return "".join(f"{a}, {c}\n" for a, c, _ in records)
    raise ValueError(f"unknown format {fmt!r}")


def write_records(records: Iterable[AlignmentRecord], fmt: str, sink: BinaryIO) -> int:
    """Serialize records to a binary sink; return the number of bytes written.

    ``tsv`` lines are ``alignment<TAB>matches<TAB>hamming``; ``jsonl``
    objects carry the same three keys; ``trace`` writes ``alignment, matches``.
    """
    payload = format_records(records, fmt).encode("ascii")
    if payload:
        sink.write(payload)
    return len(payload)
