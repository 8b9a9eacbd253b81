"""Iterated-exceptionality ranking and the entailment built on it."""

from math import inf

import pytest

from typirank import alc, rc
from typirank.model import (
    And,
    Atom,
    ConceptAssertion,
    KnowledgeBase,
    Not,
    Plain,
    materialization,
)
from typirank.parse import parse_concept, parse_kb, parse_query

Bird, Penguin, Baby = Atom("Bird"), Atom("Penguin"), Atom("BabyPenguin")


def with_abox(kb, *assertions):
    extra = tuple(parse_query(a) for a in assertions)
    return KnowledgeBase(kb.dialect, kb.strict, kb.defeasible, kb.abox + extra)


def test_penguin_ranks(penguin_kb):
    r = rc.compute_ranking(penguin_kb)
    assert [len(level) for level in r.levels] == [5, 3, 1, 0]
    assert r.concept_rank(Bird) == 0
    assert r.concept_rank(Penguin) == 1
    assert r.concept_rank(Baby) == 2
    assert r.max_finite_rank == 3
    assert r.fixpoint == ()


def test_penguin_default_ranks(penguin_kb):
    r = rc.compute_ranking(penguin_kb)
    got = {str(d): r.default_rank(d) for d in penguin_kb.defeasible}
    assert got == {
        "T(Bird) <= Fly": 0,
        "T(Bird) <= NiceFeather": 0,
        "T(Penguin) <= ~Fly": 1,
        "T(Penguin) <= BlackFeather": 1,
        "T(BabyPenguin) <= ~BlackFeather": 2,
    }


def test_penguin_tbox_verdicts(penguin_kb):
    assert rc.rc_entails_tbox(penguin_kb, parse_query("T(Penguin) <= ~Fly"))
    assert rc.rc_entails_tbox(penguin_kb, parse_query("T(Bird) <= Fly"))
    assert not rc.rc_entails_tbox(penguin_kb, parse_query("T(Penguin) <= Fly"))
    # the drowning effect: baby penguins inherit nothing from penguins
    assert not rc.rc_entails_tbox(
        penguin_kb, parse_query("T(BabyPenguin) <= NiceFeather"))
    assert not rc.rc_entails_tbox(
        penguin_kb, parse_query("T(BabyPenguin) <= ~Fly"))


def test_oldeagle_ranks(oldeagle_kb):
    r = rc.compute_ranking(oldeagle_kb)
    assert all(r.default_rank(d) == 0 for d in oldeagle_kb.defeasible)
    assert r.concept_rank(Atom("OldEagle")) == 1


def test_worker_tbox_queries(worker_tbox):
    assert rc.rc_entails_tbox(
        worker_tbox, parse_query("T(Worker & Slim) <= ReachableAtOffice"))
    assert rc.rc_entails_tbox(
        worker_tbox, parse_query("T(SmartWorker & Slim) <= ~ReachableAtOffice"))
    assert not rc.rc_entails_tbox(
        worker_tbox, parse_query("T(SmartWorker) <= ReachableAtOffice"))


def test_worker_abox_verdicts(worker_tbox):
    kb1 = with_abox(worker_tbox, "paola : Worker")
    assert rc.rc_abox_entails(kb1, parse_query("paola : ReachableAtOffice"))

    kb2 = with_abox(kb1, "paola : SmartWorker")
    assert rc.rc_abox_entails(kb2, parse_query("paola : ~ReachableAtOffice"))
    assert not rc.rc_abox_entails(kb2, parse_query("paola : ReachableAtOffice"))

    # an irrelevant extra membership flips nothing
    assert rc.rc_abox_entails(with_abox(kb1, "paola : Slim"),
                              parse_query("paola : ReachableAtOffice"))
    assert rc.rc_abox_entails(with_abox(kb2, "paola : Slim"),
                              parse_query("paola : ~ReachableAtOffice"))


def test_worker_minimal_assignment(worker_kb):
    _, _, minimals = rc.minimal_assignments(worker_kb)
    assert [m.as_dict() for m in minimals] == [{"paola": 1}]


def test_fabrizio_anonymous_colleague(kbdir):
    kb = parse_kb((kbdir / "worker_fabrizio.kb").read_text())
    q = ConceptAssertion(
        Plain(parse_concept("some HasColleague. ~ReachableAtOffice")),
        "fabrizio")
    assert rc.rc_abox_entails(kb, q)
    _, _, minimals = rc.minimal_assignments(kb)
    assert [m.as_dict() for m in minimals] == [{"fabrizio": 0, "sk0": 1}]


def test_typical_assertion_query(worker_tbox):
    kb = with_abox(worker_tbox, "paola : Worker")
    assert rc.rc_abox_entails(kb, parse_query("paola : T(Worker)"))
    kb2 = with_abox(kb, "paola : ~ReachableAtOffice")
    assert not rc.rc_abox_entails(kb2, parse_query("paola : T(Worker)"))


def test_role_assertions_are_syntactic():
    kb = parse_kb("(x, y) : r.")
    assert rc.rc_abox_entails(kb, parse_query("(x, y) : r"))
    assert not rc.rc_abox_entails(kb, parse_query("(y, x) : r"))


def test_unknown_individual_rejected(worker_kb):
    with pytest.raises(ValueError):
        rc.rc_abox_entails(worker_kb, parse_query("nobody : Worker"))


def test_infinite_rank_matches_unsatisfiability():
    kb = parse_kb("T(A) <= B. T(A) <= ~B. T(C) <= ~A.")
    r = rc.compute_ranking(kb)
    assert r.concept_rank(Atom("A")) == inf
    assert len(r.fixpoint) == 2
    # strict queries follow from infinite counter-rank
    assert rc.rc_entails_tbox(kb, parse_query("A <= Bot"))
    assert rc.rc_entails_tbox(kb, parse_query("T(A) <= Bot"))
    # C is unaffected: its default avoids the impossible concept
    assert r.concept_rank(Atom("C")) == 0


def test_impossibility_propagates_through_infinite_defaults():
    # T(C) <= A with A impossible drags C down as well: every ranked
    # model empties A, then smoothness over T(C) <= A empties C
    kb = parse_kb("T(A) <= B. T(A) <= ~B. T(C) <= A.")
    r = rc.compute_ranking(kb)
    assert r.concept_rank(Atom("C")) == inf
    assert rc.rc_entails_tbox(kb, parse_query("C <= Bot"))


def test_infinity_rule_is_the_satisfiability_test():
    import random

    import genkb

    rng = random.Random(61)
    for _ in range(80):
        kb = genkb.plain_kb(rng, with_role=False)
        r = rc.compute_ranking(kb)
        mat = materialization(r.fixpoint)
        for d in kb.defeasible:
            c = d.left.concept
            sat = alc.is_satisfiable(And(c, mat), kb.strict)
            assert (r.concept_rank(c) == inf) == (not sat)


def test_inconsistent_abox_raises():
    kb = parse_kb("T(A) <= Bot. x : A.")
    with pytest.raises(rc.InconsistentKbError):
        rc.rc_abox_entails(kb, parse_query("x : A"))


def test_infinite_defaults_constrain_anonymous_elements():
    # A is empty in every ranked model, so an A-successor is impossible
    kb = parse_kb("T(A) <= Bot. x : some r. A.")
    with pytest.raises(rc.InconsistentKbError):
        rc.minimal_assignments(kb)


def test_empty_abox_has_empty_assignment():
    kb = parse_kb("T(A) <= B.")
    ranking, sk, minimals = rc.minimal_assignments(kb)
    assert minimals == [rc.IndividualRankAssignment(())]
    assert list(sk.individuals) == []


def test_exceptional_is_antitone_in_the_default_set(penguin_kb):
    r = rc.compute_ranking(penguin_kb)
    # E_{i+1} is a subset of E_i by construction
    for a, b in zip(r.levels, r.levels[1:]):
        assert set(b) <= set(a)
