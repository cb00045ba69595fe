"""
Match counts as set frequencies
===============================

For every pattern position j collect ``R_j = {i - j : T[i] == P[j]}``.
An alignment occurs in as many of these sets as it has matching
characters, so the alignments common to all sets are exact occurrences.
"""

from hamprof import profile
from hamprof.oracle import analyze, build_sets

pattern, text = b"ABAB", b"CABABABCBA"
family = build_sets(pattern, text)
for j, r in enumerate(family.sets):
    print(f"R_{j} = {sorted(r)}")

evidence = analyze(family)
print("exact occurrences:", sorted(evidence.exact_shifts))
print("frequencies:", dict(sorted(evidence.frequencies.items())))

###############################################################################
# The streaming scanner produces the same numbers without ever building
# the sets.

prof = profile(pattern, text)
for a, c in zip(prof.alignments().tolist(), prof.counts.tolist()):
    print(f"{a:3d}  matches={c}  freq={evidence.frequencies.get(a, 0)}")

###############################################################################
# The sets only need the bytes seen so far: with six bytes of text the
# first occurrence at alignment 1 is already confirmed.

print(sorted(analyze(build_sets(pattern, text[:6])).exact_shifts))
