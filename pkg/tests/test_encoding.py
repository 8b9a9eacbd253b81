"""Marker-atom translation of typicality into plain ALC."""

import random

from typirank import encoding, oracle
from typirank.model import (
    Atom,
    ConceptAssertion,
    Inclusion,
    KnowledgeBase,
    Plain,
    Typical,
)
from typirank.parse import parse_kb, parse_query

import genkb


def test_reflexivity_of_typicality():
    rng = random.Random(51)
    for _ in range(60):
        kb = genkb.plain_kb(rng)
        c = genkb.concept(rng, ["A", "B"], [])
        assert encoding.tr_entails(kb, Inclusion(Typical(c), c))


def test_worker_monotonic_verdicts(worker_tbox):
    kb = KnowledgeBase("plain", worker_tbox.strict, worker_tbox.defeasible,
                       (ConceptAssertion(Plain(Atom("Worker")), "paola"),))
    # defaults carry over verbatim
    assert encoding.tr_entails(kb, parse_query("T(Worker) <= ReachableAtOffice"))
    # but plain membership does not make paola typical
    assert not encoding.tr_entails(kb, parse_query("paola : ReachableAtOffice"))
    # a typicality assertion does
    kb2 = KnowledgeBase("plain", kb.strict, kb.defeasible,
                        (ConceptAssertion(Typical(Atom("Worker")), "paola"),))
    assert encoding.tr_entails(kb2, parse_query("paola : ReachableAtOffice"))


def test_role_assertions_are_syntactic():
    kb = parse_kb("(x, y) : r.")
    assert encoding.tr_entails(kb, parse_query("(x, y) : r"))
    assert not encoding.tr_entails(kb, parse_query("(y, x) : r"))
    assert not encoding.tr_entails(kb, parse_query("(x, y) : s"))


def test_encoding_structure():
    kb = parse_kb("T(A) <= B. T(A & C) <= ~B. x : T(A).")
    enc = encoding.encode(kb)
    # one box per distinct typicality concept, two frame axioms each,
    # one materialized default each
    assert len(enc.boxes) == 2
    assert len(enc.strict) == len(kb.strict) + 2 * 2 + 2
    # duplicate concepts share their box
    kb2 = parse_kb("T(A) <= B. T(A) <= C.")
    assert len(encoding.encode(kb2).boxes) == 1


def test_encoding_growth_is_linear():
    texts = ["T(A0) <= B."]
    for i in range(1, 5):
        texts.append(texts[-1] + f" T(A{i}) <= B.")
    sizes = [len(encoding.encode(parse_kb(t)).strict) for t in texts]
    diffs = [b - a for a, b in zip(sizes, sizes[1:])]
    assert diffs == [3, 3, 3, 3]  # two frame axioms + one default


def test_fresh_names_avoid_collisions():
    kb = parse_kb("T(pref) <= Box0. T(Box0) <= pref.")
    enc = encoding.encode(kb)
    atoms = {"pref", "Box0"}
    assert enc.pref not in atoms
    assert not set(enc.boxes.values()) & atoms


def test_query_concept_gets_a_box():
    kb = parse_kb("A <= B.")
    q = parse_query("T(A) <= B")
    assert not encoding.encode(kb).boxes
    enc = encoding.encode_for_query(kb, q)
    assert len(enc.boxes) == 1
    assert encoding.tr_entails(kb, q)


def test_mono_never_contradicts_the_oracle():
    """tr-entailed queries must have no ranked countermodel."""
    rng = random.Random(52)
    entailed = 0
    for _ in range(120):
        kb = genkb.plain_kb(rng)
        q = genkb.query_for(rng, kb)
        if not encoding.tr_entails(kb, q):
            continue
        entailed += 1
        r = oracle.oracle_entails(kb, q, 3)
        assert r.countermodel is None, (str(kb), str(q))
    assert entailed > 25


def test_typicality_is_strictly_weaker_than_membership():
    kb = parse_kb("T(A) <= B.")
    assert not encoding.tr_entails(kb, parse_query("A <= B"))
    assert encoding.tr_entails(kb, parse_query("T(A) <= B"))
