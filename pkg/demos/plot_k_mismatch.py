"""
Approximate occurrences
=======================

The profile holds every alignment's Hamming distance, so filtering for
``k`` mismatches is a threshold.  ``core`` alignments keep the pattern
inside the text; ``extended`` also allows it to hang over either end.
"""

import numpy as np

from hamprof import hamming_profile, k_mismatch_positions, profile

rng = np.random.default_rng(0)
genome = rng.choice(list(b"ACGT"), size=2000).astype(np.uint8).tobytes()
probe = genome[700:720]
# plant a mutated copy at 1500
mutated = bytearray(genome)
mutated[1500:1520] = probe[:5] + b"T" + probe[6:15] + b"GG" + probe[17:]
genome = bytes(mutated)

prof = profile(probe, genome)
for k in (0, 2, 4):
    print(k, k_mismatch_positions(prof, k, "core"))

###############################################################################
# The overhanging alignments at the start of the text.

print(hamming_profile(prof)[:5])
print(k_mismatch_positions(profile(b"GATTACA", b"TACAGGG"), 3, "extended"))
