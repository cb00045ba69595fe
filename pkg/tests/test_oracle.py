import json
from pathlib import Path

from hypothesis import given
from hypothesis import strategies as st

from hamprof import byte_histogram, profile, total_hits
from hamprof.oracle import analyze, brute_force_profile, build_sets, compare_sets

DATA = Path(__file__).parent / "data"
EX1_P, EX1_T = b"ABAB", b"CABABABCBA"
TABLE1_P = b"FCTHZCTZCF"
TABLE1_T = (DATA / "table1_text.txt").read_bytes()


def load_table1_rows():
    return {int(j): v for j, v in json.loads((DATA / "table1_sets.json").read_text()).items()}


def test_brute_force_example1():
    prof = brute_force_profile(EX1_P, EX1_T)
    assert [a for a in prof.alignments().tolist() if prof[a] == 4] == [1, 3]


def test_brute_force_no_matches():
    assert not brute_force_profile(b"X", b"YYY").counts.any()


def test_brute_force_table2_column():
    prof = brute_force_profile(b"ABBA", b"BBABAABBACAAB")
    assert prof.counts.tolist() == [0, 1, 3, 1, 2, 3, 0, 2, 4, 1, 1, 2, 0, 2, 2, 0]


def test_build_sets_example1():
    fam = build_sets(EX1_P, EX1_T)
    assert fam.sets == (frozenset({1, 3, 5, 9}), frozenset({1, 3, 5, 7}),
                        frozenset({-1, 1, 3, 7}), frozenset({-1, 1, 3, 5}))


def test_build_sets_stream_prefix():
    fam = build_sets(EX1_P, EX1_T[:6])
    assert fam.sets == (frozenset({1, 3, 5}), frozenset({1, 3}),
                        frozenset({-1, 1, 3}), frozenset({-1, 1}))
    ev = analyze(fam)
    assert ev.exact_shifts == {1}
    assert ev.frequencies[-1] == 2 and ev.frequencies[3] == 3


def test_build_sets_single():
    assert build_sets(b"A", b"A").sets == (frozenset({0}),)


def test_analyze_example1():
    ev = analyze(build_sets(EX1_P, EX1_T))
    assert ev.exact_shifts == {1, 3}
    assert ev.frequencies[5] == 3
    assert ev.frequencies[7] == 2
    assert ev.frequencies[-1] == 2
    assert 4 - ev.frequencies[5] == 1


def test_analyze_empty_family():
    ev = analyze(build_sets(b"AB", b"CD"))
    assert ev.exact_shifts == frozenset()
    assert ev.frequencies == {}


def test_table1_rows_for_c_t_h_z_reproduce():
    fam = build_sets(TABLE1_P, TABLE1_T)
    rows = load_table1_rows()
    for j in (1, 5, 8, 2, 6, 3, 4, 7):
        assert fam.sets[j] == frozenset(rows[j]), j


def test_table1_f_rows_disagree_only_by_position_38():
    fam = build_sets(TABLE1_P, TABLE1_T)
    diffs = compare_sets(fam, load_table1_rows())
    assert [(d.j, d.extra, d.missing) for d in diffs] == [(0, (38,), ()), (9, (29,), ())]


def test_table1_printed_family_vs_text():
    from hamprof.oracle import ShiftSetFamily
    rows = load_table1_rows()
    printed = ShiftSetFamily(tuple(frozenset(rows[j]) for j in range(10)), 10, 38)
    assert 29 in analyze(printed).exact_shifts
    rebuilt = analyze(build_sets(TABLE1_P, TABLE1_T))
    assert rebuilt.frequencies[29] == 9
    assert rebuilt.exact_shifts == {3}


@st.composite
def small_instance(draw):
    sigma = draw(st.sampled_from([1, 2, 4, 26, 256]))
    p = bytes(b % sigma for b in draw(st.binary(min_size=1, max_size=10)))
    t = bytes(b % sigma for b in draw(st.binary(max_size=40)))
    return p, t


@given(small_instance())
def test_lemma_consistency(pt):
    p, t = pt
    prof = brute_force_profile(p, t)
    freq = analyze(build_sets(p, t)).frequencies
    for a in prof.alignments().tolist():
        assert freq.get(a, 0) == prof[a]
        assert (a in freq) == (prof[a] > 0)


@given(small_instance())
def test_exact_shift_equivalence(pt):
    p, t = pt
    prof = brute_force_profile(p, t)
    ev = analyze(build_sets(p, t))
    assert ev.exact_shifts == {a for a in prof.alignments().tolist() if prof[a] == len(p)}


@given(small_instance())
def test_element_range_and_cardinality(pt):
    p, t = pt
    fam = build_sets(p, t)
    m, n = len(p), len(t)
    assert all(1 - m <= x <= n - 1 for r in fam.sets for x in r)
    assert sum(analyze(fam).frequencies.values()) == total_hits(p, byte_histogram(t))


@given(small_instance())
def test_oracle_matches_streamer(pt):
    p, t = pt
    assert brute_force_profile(p, t) == profile(p, t)
