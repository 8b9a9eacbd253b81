"""Prototype combination: scenario enumeration, block selection, revision."""

import random
from fractions import Fraction

import pytest

from typirank import tcl
from typirank.model import And, Atom, canonical_form, concept_to_str
from typirank.parse import parse_concept, parse_kb

import genkb

Fish, Pet = Atom("Fish"), Atom("Pet")


def random_tcl_kb(rng, ndefaults=4):
    atoms = ["A", "B", "C"]
    lines = ["mode tcl."]
    for _ in range(ndefaults):
        p = Fraction(rng.randrange(51, 100), 100)
        left = rng.choice(["H", "M"])
        right = concept_to_str(genkb.concept(rng, atoms))
        lines.append(f"{p.numerator}/{p.denominator} :: T({left}) <= {right}.")
    return parse_kb(" ".join(lines))


def test_scenario_count_and_order(petfish_kb):
    ws = tcl.enumerate_scenarios(petfish_kb)
    assert len(ws) == 128
    assert ws[0].choices == (1,) * 7          # all kept comes first
    assert ws[-1].choices == (0,) * 7
    assert ws[0].numbered[0] == (1, 1)
    assert sum(w.probability for w in ws) == 1


def test_scenario_probability_is_the_product(petfish_kb):
    ws = tcl.enumerate_scenarios(petfish_kb)
    w = next(w for w in ws if w.choices == (1, 0, 1, 1, 0, 0, 0))
    assert w.probability == Fraction(576, 625000)
    assert {str(d.right) for d in w.selected} == {"~Affectionate", "Scaly",
                                                  "~Warm"}


def test_petfish_selection(petfish_kb):
    chosen = tcl.select_scenarios(petfish_kb, Fish, Pet)
    assert len(chosen) == 1
    w = chosen[0]
    assert w.choices == (1, 0, 1, 1, 0, 0, 0)
    assert w.probability == Fraction(576, 625000)


def test_petfish_block_structure(petfish_kb):
    report = tcl._walk(petfish_kb, Fish, Pet, True, tcl.SCENARIO_GUARD)
    # the top block is entirely trivial, the second selects one scenario
    assert len(report.blocks) >= 2
    top, second = report.blocks[0], report.blocks[1]
    assert top.probability == Fraction(13824, 10000000)
    assert set(top.verdicts) == {"trivial"}
    assert len(top.verdicts) == 4
    assert second.probability == Fraction(9216, 10000000)
    assert second.verdicts.count("selected") == 1


def test_petfish_revision(petfish_kb):
    res = tcl.revise(petfish_kb, Fish, Pet)
    assert res.compound == canonical_form(And(Fish, Pet))
    got = {(str(a.right), a.probability) for a in res.additions}
    assert got == {("~Affectionate", Fraction(4, 5)),
                   ("Scaly", Fraction(9, 10)),
                   ("~Warm", Fraction(4, 5))}
    assert all(a.left.typical and a.left.concept == res.compound
               for a in res.additions)
    # the revision stays a well-formed tcl KB and keeps the original defaults
    assert res.revised.dialect == "tcl"
    assert res.revised.defeasible[:7] == petfish_kb.defeasible
    assert len(res.revised.defeasible) == 10


def test_role_saturation_changes_the_outcome(petfish_kb):
    """Without saturation the habitat default survives into the compound."""
    with_sat = tcl.select_scenarios(petfish_kb, Fish, Pet, role_saturation=True)
    without = tcl.select_scenarios(petfish_kb, Fish, Pet, role_saturation=False)
    assert all(w.choices[4] == 0 for w in with_sat)
    assert any(w.choices[4] == 1 for w in without)


def test_richer_consistent_scenarios_are_likelier():
    """Degrees above one half make supersets beat their subsets, so the
    most probable consistent scenario is always subset-maximal."""
    rng = random.Random(91)
    for _ in range(30):
        kb = random_tcl_kb(rng)
        ws = tcl.enumerate_scenarios(kb)
        cons = [w for w in ws
                if tcl.is_consistent_scenario(w, Atom("H"), Atom("M"), True)]
        sets = {frozenset(w.selected): w.probability for w in cons}
        best = max(cons, key=lambda w: w.probability)
        for w in cons:
            sel = frozenset(w.selected)
            supers = [v for v in cons if sel < frozenset(v.selected)]
            if supers:
                assert max(v.probability for v in supers) > w.probability
        assert not any(frozenset(best.selected) < s for s in sets)


def test_combination_error_when_compound_is_impossible():
    kb = parse_kb("mode tcl. Pet <= ~Fish. 0.8 :: T(Fish) <= Scaly.")
    with pytest.raises(tcl.CombinationError):
        tcl.select_scenarios(kb, Fish, Pet)


def test_guard():
    lines = ["mode tcl."] + [f"0.8 :: T(A{i}) <= B." for i in range(21)]
    kb = parse_kb(" ".join(lines))
    with pytest.raises(tcl.ScenarioGuardError):
        tcl.enumerate_scenarios(kb)


def test_dialect_check(student_kb):
    with pytest.raises(ValueError):
        tcl.enumerate_scenarios(student_kb)


def test_maximal_scenarios_are_trivial():
    """With one cross conflict, both one-sided scenarios are maximally
    consistent and therefore trivial; only the empty scenario remains."""
    kb = parse_kb("mode tcl. 0.9 :: T(H) <= X. 0.6 :: T(M) <= ~X.")
    rep = tcl._walk(kb, Atom("H"), Atom("M"), True, tcl.SCENARIO_GUARD)
    by_choices = {w.choices: v
                  for b in rep.blocks for w, v in zip(b.scenarios, b.verdicts)}
    assert by_choices[(1, 0)] == "trivial"
    assert by_choices[(0, 1)] == "trivial"
    chosen = tcl.select_scenarios(kb, Atom("H"), Atom("M"))
    assert [w.choices for w in chosen] == [(0, 0)]
