"""Skeptical base construction over the ranking, and its entailment."""

import random

import pytest

from typirank import alc, rc, sc
from typirank.model import (
    And,
    Atom,
    Inclusion,
    Or,
    Plain,
    Typical,
    materialization,
)
from typirank.parse import parse_concept, parse_kb, parse_query

import genkb


def names(defaults):
    return {str(d) for d in defaults}


def test_penguin_base(penguin_kb):
    base = sc.build_base(penguin_kb, Atom("BabyPenguin"))
    assert names(base.defaults) == {
        "T(Bird) <= NiceFeather",
        "T(Penguin) <= ~Fly",
        "T(BabyPenguin) <= ~BlackFeather",
    }
    assert base.stop_rank is None
    assert [r for r, _ in base.per_rank] == [2, 1, 0]


def test_penguin_sc_recovers_drowned_properties(penguin_kb):
    assert sc.sc_entails(penguin_kb, parse_query("T(BabyPenguin) <= NiceFeather"))
    assert sc.sc_entails(penguin_kb, parse_query("T(BabyPenguin) <= ~Fly"))
    assert sc.sc_entails(penguin_kb, parse_query("T(BabyPenguin) <= ~BlackFeather"))
    assert not sc.sc_entails(penguin_kb, parse_query("T(BabyPenguin) <= Fly"))
    # rational closure drowns both inherited properties
    assert not rc.rc_entails_tbox(penguin_kb,
                                  parse_query("T(BabyPenguin) <= NiceFeather"))
    assert not rc.rc_entails_tbox(penguin_kb,
                                  parse_query("T(BabyPenguin) <= ~Fly"))


def test_oldeagle_base_is_empty(oldeagle_kb):
    base = sc.build_base(oldeagle_kb, Atom("OldEagle"))
    assert base.defaults == ()
    assert base.stop_rank == 0
    assert not sc.sc_entails(oldeagle_kb, parse_query("T(OldEagle) <= Fly"))
    assert not sc.sc_entails(oldeagle_kb,
                             parse_query("T(OldEagle) <= ~NiceFeather"))


def test_base_is_consistent_with_target(penguin_kb):
    for c in ("Bird", "Penguin", "BabyPenguin"):
        base = sc.build_base(penguin_kb, Atom(c))
        x = And(Atom(c), materialization(base.defaults))
        assert alc.is_satisfiable(x, penguin_kb.strict)


def test_individually_compatible():
    kb = parse_kb("T(A) <= B. T(A) <= ~B.")
    d1, d2 = kb.defeasible
    assert sc.individually_compatible(d1, Atom("A"), (), kb.strict)
    assert not sc.individually_compatible(d2, Atom("A"), (d1,), kb.strict)


def test_only_typicality_inclusions_are_answered(penguin_kb):
    with pytest.raises(ValueError):
        sc.sc_entails(penguin_kb, parse_query("Penguin <= Bird"))
    with pytest.raises(ValueError):
        sc.sc_entails(penguin_kb, parse_query("x : Bird"))


def test_unranked_target():
    kb = parse_kb("T(A) <= B. T(A) <= ~B.")
    with pytest.raises(sc.UnrankedTargetError):
        sc.build_base(kb, Atom("A"))
    with pytest.raises(sc.UnrankedTargetError):
        sc.sc_entails(kb, parse_query("T(A) <= B"))


def test_sc_keeps_rc_verdicts_on_the_example_queries(worker_tbox, penguin_kb,
                                                     oldeagle_kb):
    """Over the worked-example queries, rc-entailed implies sc-entailed.
    (Not true for arbitrary queries even on these KBs: defaults ranked
    above the target are outside the base by construction, e.g. rc alone
    concludes T(Worker) <= ~SmartWorker.)"""
    suites = [
        (worker_tbox, ["T(Worker) <= ReachableAtOffice",
                       "T(Worker & Slim) <= ReachableAtOffice",
                       "T(SmartWorker) <= ~ReachableAtOffice",
                       "T(SmartWorker & Slim) <= ~ReachableAtOffice"]),
        (penguin_kb, ["T(Bird) <= Fly", "T(Bird) <= NiceFeather",
                      "T(Penguin) <= ~Fly", "T(Penguin) <= BlackFeather",
                      "T(BabyPenguin) <= ~BlackFeather",
                      "T(BabyPenguin) <= ~Fly",
                      "T(BabyPenguin) <= NiceFeather"]),
        (oldeagle_kb, ["T(Eagle) <= Fly", "T(OldEagle) <= Fly",
                       "T(OldAnimal) <= ~NiceFeather"]),
    ]
    checked = 0
    for kb, queries in suites:
        for text in queries:
            q = parse_query(text)
            if rc.rc_entails_tbox(kb, q):
                checked += 1
                assert sc.sc_entails(kb, q), text
    assert checked >= 8


# -- KLM-style closure properties -------------------------------------------


def test_reflexivity():
    rng = random.Random(64)
    for _ in range(40):
        kb = genkb.plain_kb(rng, with_role=False)
        c = genkb.concept(rng, ["A", "B", "C"])
        r = rc.compute_ranking(kb)
        if r.concept_rank(c) == float("inf"):
            continue
        assert sc.sc_entails(kb, Inclusion(Typical(c), c))


def test_left_logical_equivalence():
    rng = random.Random(65)
    for _ in range(40):
        kb = genkb.plain_kb(rng, with_role=False)
        a, b = Atom("A"), Atom("B")
        c1, c2 = And(a, b), And(b, a)
        d = genkb.concept(rng, ["A", "B", "C"])
        r = rc.compute_ranking(kb)
        if r.concept_rank(c1) == float("inf"):
            continue
        assert sc.sc_entails(kb, Inclusion(Typical(c1), d)) == \
            sc.sc_entails(kb, Inclusion(Typical(c2), d))


def test_right_weakening():
    rng = random.Random(66)
    hits = 0
    for _ in range(150):
        kb = genkb.plain_kb(rng, with_role=False)
        c = genkb.concept(rng, ["A", "B"])
        d = genkb.concept(rng, ["A", "B", "C"])
        r = rc.compute_ranking(kb)
        if r.concept_rank(c) == float("inf"):
            continue
        if not sc.sc_entails(kb, Inclusion(Typical(c), d)):
            continue
        hits += 1
        weaker = Or(d, genkb.concept(rng, ["A", "B", "C"]))
        assert sc.sc_entails(kb, Inclusion(Typical(c), weaker))
    assert hits > 25


def test_and_rule():
    rng = random.Random(67)
    hits = 0
    for _ in range(200):
        kb = genkb.plain_kb(rng, with_role=False)
        c = genkb.concept(rng, ["A", "B"])
        d1 = genkb.concept(rng, ["A", "B", "C"])
        d2 = genkb.concept(rng, ["A", "B", "C"])
        r = rc.compute_ranking(kb)
        if r.concept_rank(c) == float("inf"):
            continue
        if sc.sc_entails(kb, Inclusion(Typical(c), d1)) and \
                sc.sc_entails(kb, Inclusion(Typical(c), d2)):
            hits += 1
            assert sc.sc_entails(kb, Inclusion(Typical(c), And(d1, d2)))
    assert hits > 20
