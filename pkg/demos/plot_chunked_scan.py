"""
Chunked and parallel scans
==========================

Each hit belongs to exactly one text byte, so profiles of consecutive
pieces add up once the right piece is shifted.  Any split gives the
same result as one pass.
"""

from concurrent.futures import ThreadPoolExecutor
from functools import reduce

import numpy as np

from hamprof import build_shift_table, merge_concat, profile
from hamprof.bench import english_like_corpus

text = english_like_corpus(300_000, seed=4)
table = build_shift_table(text[1000:1040])
whole = profile(table, text)

bounds = np.linspace(0, len(text), 5).astype(int)
parts = [text[a:b] for a, b in zip(bounds[:-1], bounds[1:])]
with ThreadPoolExecutor(4) as pool:
    pieces = list(pool.map(lambda part: profile(table, part), parts))
merged = reduce(merge_concat, pieces)
print("identical:", merged == whole)
print("best alignment:", int(np.argmax(whole.counts)) + whole.start, "with", whole.counts.max(), "matches")
