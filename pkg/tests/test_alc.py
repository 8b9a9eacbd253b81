"""Tableau engine, cross-checked against the enumeration oracle.

Generated inputs stay inside the caps that make the oracle exact: role-free
concepts are decided propositionally, concepts with one role and quantifier
depth one have tree models of at most three elements.
"""

import random

import pytest

from typirank import alc
from typirank.model import (
    BOT,
    TOP,
    And,
    Atom,
    ConceptAssertion,
    Exists,
    Forall,
    Inclusion,
    KnowledgeBase,
    Not,
    Or,
    Plain,
    RoleAssertion,
)
from typirank.oracle import brute_force_abox_consistent, brute_force_satisfiable

import genkb

A, B = Atom("A"), Atom("B")


def test_nnf_shapes():
    assert alc.nnf(Not(Not(A))) == A
    assert alc.nnf(Not(And(A, B))) == Or(Not(A), Not(B))
    assert alc.nnf(Not(Or(A, B))) == And(Not(A), Not(B))
    assert alc.nnf(Not(Exists("r", A))) == Forall("r", Not(A))
    assert alc.nnf(Not(Forall("r", A))) == Exists("r", Not(A))
    assert alc.nnf(Not(TOP)) == BOT
    assert alc.nnf(Not(BOT)) == TOP


def test_nnf_only_atomic_negation():
    rng = random.Random(11)
    for _ in range(200):
        c = genkb.concept(rng, ["A", "B"], ["r"])
        stack = [alc.nnf(c)]
        while stack:
            x = stack.pop()
            if isinstance(x, Not):
                assert isinstance(x.c, Atom)
            elif isinstance(x, (And, Or)):
                stack += [x.l, x.r]
            elif isinstance(x, (Exists, Forall)):
                stack.append(x.c)


def test_nnf_preserves_meaning():
    # c and nnf(c) are classically equivalent; the oracle checks both
    # difference directions
    rng = random.Random(12)
    for _ in range(80):
        c = genkb.concept(rng, ["A", "B"], ["r"])
        n = alc.nnf(c)
        assert not brute_force_satisfiable(And(c, Not(n)), (), 3)
        assert not brute_force_satisfiable(And(n, Not(c)), (), 3)


def test_satisfiable_basics():
    assert alc.is_satisfiable(A, ())
    assert not alc.is_satisfiable(And(A, Not(A)), ())
    assert alc.is_satisfiable(TOP, ())
    assert not alc.is_satisfiable(BOT, ())
    assert not alc.is_satisfiable(TOP, (Inclusion(Plain(TOP), BOT),))
    # exists forces a successor that must then satisfy the conflict
    c = And(Exists("r", A), Forall("r", Not(A)))
    assert not alc.is_satisfiable(c, ())
    assert alc.is_satisfiable(Forall("r", A), ())


def test_satisfiable_vs_oracle_role_free():
    rng = random.Random(13)
    for _ in range(250):
        c = genkb.concept(rng, ["A", "B", "C"])
        strict = tuple(Inclusion(Plain(genkb.concept(rng, ["A", "B", "C"])),
                                 genkb.concept(rng, ["A", "B", "C"]))
                       for _ in range(rng.randrange(2)))
        assert alc.is_satisfiable(c, strict) == \
            brute_force_satisfiable(c, strict, 2)


def test_satisfiable_vs_oracle_with_role():
    rng = random.Random(14)
    for _ in range(120):
        c = genkb.concept(rng, ["A", "B"], ["r"])
        strict = tuple(Inclusion(Plain(genkb.concept(rng, ["A", "B"], ["r"])),
                                 genkb.concept(rng, ["A", "B"], ["r"]))
                       for _ in range(rng.randrange(2)))
        assert alc.is_satisfiable(c, strict) == \
            brute_force_satisfiable(c, strict, 3)


def test_cache_transparency():
    alc.clear_cache()
    c = And(A, Or(Not(A), B))
    assert alc.is_satisfiable(c, (), use_cache=False) == \
        alc.is_satisfiable(c, (), use_cache=True)
    assert alc.is_satisfiable(c, ()) is True  # cached hit


def test_entails():
    assert alc.entails((), And(A, B), A)
    assert not alc.entails((), A, And(A, B))
    strict = (Inclusion(Plain(A), B),)
    assert alc.entails(strict, A, B)
    assert alc.entails(strict, Exists("r", A), Exists("r", B))


def test_abox_consistent():
    strict = (Inclusion(Plain(A), B),)
    assert alc.abox_consistent(strict, (ConceptAssertion(Plain(A), "x"),))
    bad = (ConceptAssertion(Plain(A), "x"),
           ConceptAssertion(Plain(Not(B)), "x"))
    assert not alc.abox_consistent(strict, bad)
    # the domain is never empty, so an empty ABox still sees Top <= Bot
    assert not alc.abox_consistent((Inclusion(Plain(TOP), BOT),), ())
    assert alc.abox_consistent((), ())


def test_abox_role_propagation():
    abox = (RoleAssertion("r", "x", "y"),
            ConceptAssertion(Plain(Forall("r", A)), "x"),
            ConceptAssertion(Plain(Not(A)), "y"))
    assert not alc.abox_consistent((), abox)
    assert alc.instance_of((), abox[:2], A, "y")


def test_abox_consistent_vs_oracle():
    rng = random.Random(15)
    checked = 0
    for _ in range(150):
        kb = genkb.plain_kb(rng)
        if not kb.abox:
            continue
        checked += 1
        plain = KnowledgeBase("plain", kb.strict, (), kb.abox)
        assert alc.abox_consistent(kb.strict, kb.abox) == \
            brute_force_abox_consistent(plain, 3)
    assert checked > 40


def test_instance_of():
    strict = (Inclusion(Plain(A), B),)
    abox = (ConceptAssertion(Plain(A), "x"),)
    assert alc.instance_of(strict, abox, B, "x")
    assert not alc.instance_of(strict, abox, Not(B), "x")
    assert not alc.instance_of((), abox, B, "x")
    # from an inconsistent ABox everything follows
    bad = abox + (ConceptAssertion(Plain(Not(A)), "x"),)
    assert alc.instance_of((), bad, BOT, "x")


def test_deeply_nested_input_terminates():
    c = A
    for i in range(12):
        c = Exists("r", And(c, Or(A, Not(B)))) if i % 2 else Forall("r", Or(c, B))
    assert alc.is_satisfiable(c, ()) in (True, False)


def test_strict_axioms_constrain_successors():
    # every element is an A, so the successor demanded by some r. ~A dies
    strict = (Inclusion(Plain(TOP), A),)
    assert not alc.is_satisfiable(Exists("r", Not(A)), strict)
    assert alc.is_satisfiable(Exists("r", A), strict)


@pytest.mark.parametrize("depth", [2, 3, 4])
def test_quantifier_ladders(depth):
    c, d = A, Not(A)
    for _ in range(depth):
        c, d = Exists("r", c), Forall("r", d)
    # the existential path reaches an A-witness that the universal forbids
    assert not alc.is_satisfiable(And(c, d), ())
    assert alc.is_satisfiable(c, ())
