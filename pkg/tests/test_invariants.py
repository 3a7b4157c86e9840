import json
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from knotproj.core import TRIVIAL, connect_sum, to_gauss_code
from knotproj.families import catalog, enumerate_projections, rational
from knotproj.invariants import (
    ChordDiagram,
    InconsistentInvariants,
    InvariantReport,
    TrivialProjectionError,
    canonical_genus,
    chord_diagram,
    interlacement,
    invariant_report,
    is_prime,
    max_noncrossing_bruteforce,
    max_noncrossing_chords,
    report_line,
    seifert_circle_count,
    trivializing_number,
    w_invariant,
)

from conftest import curve, random_double_occurrence

CORPUS5 = enumerate_projections(5)


def test_trefoil_report(trefoil):
    assert invariant_report(trefoil).as_tuple() == (3, 2, 1, 2, 0)
    assert str(invariant_report(trefoil)) == "c=3 s=2 g=1 tr=2 W=0"


def test_trivial_report():
    rep = invariant_report(TRIVIAL)
    assert rep.as_tuple() == (0, 1, 0, 0, 0)


def test_infinity_report(infinity):
    assert invariant_report(infinity).as_tuple() == (1, 2, 0, 0, 0)


def test_seven_four():
    rep = invariant_report(catalog("7_4"))
    assert (rep.c, rep.s, rep.tr, rep.W) == (7, 6, 4, 2)


def test_max_noncrossing_examples():
    assert max_noncrossing_chords(ChordDiagram.from_word((1, 2, 3, 1, 2, 3))) == 1
    assert max_noncrossing_chords(ChordDiagram.from_word((1, 1, 2, 2))) == 2
    assert max_noncrossing_chords(ChordDiagram(0, ())) == 0
    assert max_noncrossing_chords(chord_diagram(rational(6, 4))) == 6


def test_interlacement_trefoil(trefoil):
    g = interlacement(chord_diagram(trefoil))
    assert g.vertices == 3 and len(g.edges) == 3
    assert all(len(n) == 2 for n in g.adjacency())


@settings(max_examples=200, deadline=None)
@given(st.integers(1, 9), st.randoms(use_true_random=False))
def test_dp_matches_bruteforce(c, rnd):
    cd = ChordDiagram.from_word(random_double_occurrence(rnd, c))
    assert max_noncrossing_chords(cd) == max_noncrossing_bruteforce(cd)


@settings(max_examples=100, deadline=None)
@given(st.integers(1, 8), st.randoms(use_true_random=False))
def test_dp_is_rotation_invariant(c, rnd):
    word = random_double_occurrence(rnd, c)
    k = rnd.randrange(len(word))
    a = max_noncrossing_chords(ChordDiagram.from_word(word))
    assert a == max_noncrossing_chords(ChordDiagram.from_word(word[k:] + word[:k]))
    assert a == max_noncrossing_chords(ChordDiagram.from_word(word[::-1]))


@pytest.mark.parametrize("m", CORPUS5[1:])
def test_seifert_count_independent_of_traversal(m):
    counts = {seifert_circle_count(m, d, s) for d in range(len(m.pair)) for s in (1, -1)}
    assert len(counts) == 1


@pytest.mark.parametrize("m", CORPUS5[1:])
def test_trivializing_number_independent_of_basepoint(m):
    trs = set()
    for d in range(len(m.pair)):
        word = to_gauss_code(m, d).word
        trs.add(m.crossings - max_noncrossing_chords(ChordDiagram.from_word(word)))
    assert trs == {trivializing_number(m)}


def test_report_consistency_over_corpus(corpus6):
    for m in corpus6:
        rep = invariant_report(m)
        assert rep.W == rep.tr - 2 * rep.g
        assert rep.W == w_invariant(m)
        assert rep.g == canonical_genus(m)


def test_check_flags_inconsistency():
    with pytest.raises(InconsistentInvariants):
        InvariantReport(3, 2, 1, 2, 2).check()
    with pytest.raises(InconsistentInvariants):
        InvariantReport(3, 3, 1, 2, 1).check()


def test_report_line_is_json(trefoil):
    rec = json.loads(report_line(trefoil, "3_1"))
    assert rec == {"name": "3_1", "gauss": rec["gauss"], "c": 3, "s": 2, "g": 1, "tr": 2, "w": 0}


def test_primality(trefoil, infinity):
    assert is_prime(infinity)
    assert is_prime(trefoil)
    assert is_prime(rational(4, 4))
    assert not is_prime(connect_sum(trefoil, 0, trefoil, 0))
    assert not is_prime(curve("1 1 2 2"))
    with pytest.raises(TrivialProjectionError):
        is_prime(TRIVIAL)


def test_additivity_spot_check(trefoil):
    rng = random.Random(3)
    seven = catalog("7_4")
    for _ in range(10):
        s = connect_sum(seven, rng.choice(seven.edges()), trefoil, rng.choice(trefoil.edges()), rng.random() < 0.5)
        a, b, r = invariant_report(seven), invariant_report(trefoil), invariant_report(s)
        assert (r.tr, r.s, r.W) == (a.tr + b.tr, a.s + b.s - 1, a.W + b.W)
