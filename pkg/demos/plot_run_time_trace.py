"""
Watching the hit ring work
==========================

A pattern of length M keeps 2M counters.  Each text byte bumps the
counters of every alignment it can match, then the counter of the oldest
pending alignment is printed and cleared.  Here we replay the scan of
``ABBA`` over ``BBABAABBACAAB`` one byte at a time.
"""

from hamprof import build_shift_table, stream_feed, stream_finish, stream_init

pattern, text = b"ABBA", b"BBABAABBACAAB"
table = build_shift_table(pattern)
print(table)

###############################################################################
# Feed bytes one by one.  ``d`` is the ring cursor; it cycles through
# M .. 3M-1 and the emitted slot is always ``d - M``.

state = stream_init(table)
for pos, byte in enumerate(text):
    d = state.d
    rec = stream_feed(state, byte)
    print(f"{pos:2d} {chr(byte)}  D={d:2d}  ring={state.ring.tolist()}  ->  {rec.alignment}, {rec.matches}")

###############################################################################
# Output lags M bytes behind the input, so the last M alignments come out
# when the stream closes.

for rec in stream_finish(state):
    print(f"      end             ->  {rec.alignment}, {rec.matches}")

print(f"counter increments: {state.hits}")
