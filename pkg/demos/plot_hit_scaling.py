"""
Work versus pattern size
========================

The scan performs one counter increment per (text byte, matching pattern
position) pair.  That total depends only on the two byte histograms, so
on uniform text with 256 symbols it is about ``N * M / 256``; on English
it grows faster because a few letters dominate.
"""

import sys

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt

from hamprof import bench

sizes = [10, 20, 30, 40, 50, 60, 70, 80, 90, 100]
uniform = bench.run_sweep(bench.uniform_corpus(700_000, seed=1), sizes, corpus_id="uniform")
english = bench.run_sweep(bench.english_like_corpus(700_000, seed=1), sizes, corpus_id="english")
bench.write_csv(uniform + english, sys.stdout)

fig, (ax1, ax2) = plt.subplots(1, 2, figsize=(9, 3.5))
for pts in (uniform, english):
    ax1.plot([p.M for p in pts], [p.total_hits / 1e3 for p in pts], "o-", label=pts[0].corpus)
    ax2.plot([p.M for p in pts], [p.wall_ms for p in pts], "o-", label=pts[0].corpus)
ax1.set_xlabel("M")
ax1.set_ylabel("hits (thousands)")
ax2.set_xlabel("M")
ax2.set_ylabel("wall time (ms)")
ax1.legend()
fig.tight_layout()
fig.savefig("hit_scaling.png", dpi=100)

###############################################################################
# State size stays put however much text goes through.

print(bench.run_memory_check([10**3, 10**5, 10**7], m=100))
