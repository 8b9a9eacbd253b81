"""Prototypical concept combination over probabilized typicality defaults.

Every default carries a degree of belief above one half. A selection keeps
or drops each default; its probability is the product of the kept degrees
and the complements of the dropped ones, so richer consistent scenarios are
always more probable. Combination walks equal-probability blocks downward:
trivial scenarios (set-maximal consistent ones, which inherit everything
that fits) are discarded, modifier properties lose against conflicting
head properties available in a sibling scenario, and the first block with
survivors wins. The surviving consequents are then re-asserted for the
compound concept with their source probabilities.

Universal role restrictions are only falsifiable on elements with a
successor, so consistency checks conjoin an existential for each role that
appears under a universal in the scenario or in a rigid axiom applying to
the compound. Without this the water/not-water clash of the classic pet
fish example goes unnoticed; the flag stays switchable for study.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import List, Optional, Tuple

from . import alc
from .model import (
    And,
    Concept,
    Exists,
    Forall,
    Inclusion,
    KnowledgeBase,
    TOP,
    Typical,
    canonical_form,
    conjoin,
    subconcepts,
)

SCENARIO_GUARD = 20


class ScenarioGuardError(Exception):
    """Too many defaults for exhaustive 2^n scenario enumeration."""


class CombinationError(Exception):
    """Every block lost all its scenarios: the concepts do not combine."""


@dataclass(frozen=True)
class Scenario:
    """One keep/drop string over the KB's defaults, with the rigid axioms
    carried along. choices[i] is 1 when default i is kept."""

    strict: Tuple[Inclusion, ...]
    choices: Tuple[int, ...]
    selected: Tuple[Inclusion, ...]
    probability: Fraction
    consistent: Optional[bool] = None

    @property
    def numbered(self) -> Tuple[Tuple[int, int], ...]:
        """(i, k_i) pairs with 1-based default numbering."""
        return tuple((i + 1, k) for i, k in enumerate(self.choices))


@dataclass(frozen=True)
class CombinationResult:
    head: Concept
    modifier: Concept
    compound: Concept
    scenarios: Tuple[Scenario, ...]
    additions: Tuple[Inclusion, ...]
    revised: KnowledgeBase


def enumerate_scenarios(kb: KnowledgeBase,
                        guard: int = SCENARIO_GUARD) -> List[Scenario]:
    """All 2^n scenarios in binary counting order, kept bit first."""
    if kb.dialect != "tcl":
        raise ValueError(f"concept combination needs a tcl KB, got {kb.dialect}")
    defaults = kb.defeasible
    if len(defaults) > guard:
        raise ScenarioGuardError(
            f"{len(defaults)} defaults exceed the enumeration guard {guard}")
    out = []
    for bits in product((1, 0), repeat=len(defaults)):
        p = Fraction(1)
        sel = []
        for d, b in zip(defaults, bits):
            p *= d.probability if b else 1 - d.probability
            if b:
                sel.append(d)
        out.append(Scenario(kb.strict, bits, tuple(sel), p))
    return out


def _forall_roles(c: Concept):
    return {s.role for s in subconcepts(c) if isinstance(s, Forall)}


def _saturation(strict, compound, concepts, role_saturation):
    """Existentials forcing the universally restricted roles to be
    realized: roles under a Forall in the given concepts or in a rigid
    axiom whose left side subsumes the compound."""
    if not role_saturation:
        return []
    roles = set()
    for c in concepts:
        roles |= _forall_roles(c)
    for ax in strict:
        if _forall_roles(ax.left.concept) | _forall_roles(ax.right):
            if alc.entails(strict, compound, ax.left.concept):
                roles |= _forall_roles(ax.left.concept) | _forall_roles(ax.right)
    return [Exists(r, TOP) for r in sorted(roles)]


def is_consistent_scenario(w: Scenario, c_head: Concept, c_mod: Concept,
                           role_saturation: bool = True) -> bool:
    compound = And(c_head, c_mod)
    parts = [compound] + [d.right for d in w.selected]
    parts += _saturation(w.strict, compound, [d.right for d in w.selected],
                         role_saturation)
    return alc.is_satisfiable(conjoin(parts), w.strict)


def _conflicts(strict, compound, d_mod, d_head, role_saturation) -> bool:
    parts = [compound, d_mod.right, d_head.right]
    parts += _saturation(strict, compound, [d_mod.right, d_head.right],
                         role_saturation)
    return not alc.is_satisfiable(conjoin(parts), strict)


@dataclass(frozen=True)
class BlockReport:
    probability: Fraction
    scenarios: Tuple[Scenario, ...]
    verdicts: Tuple[str, ...]  # trivial | modifier-conflict | selected


@dataclass(frozen=True)
class SelectionReport:
    consistent: Tuple[Scenario, ...]
    inconsistent: Tuple[Scenario, ...]
    blocks: Tuple[BlockReport, ...]
    selected: Tuple[Scenario, ...]


def _walk(kb, c_head, c_mod, role_saturation, guard) -> SelectionReport:
    ch, cm = canonical_form(c_head), canonical_form(c_mod)
    compound = And(c_head, c_mod)
    cons, incons = [], []
    for w in enumerate_scenarios(kb, guard):
        ok = is_consistent_scenario(w, c_head, c_mod, role_saturation)
        (cons if ok else incons).append(
            Scenario(w.strict, w.choices, w.selected, w.probability, ok))
    blocks = []
    selected = []
    for p in sorted({w.probability for w in cons}, reverse=True):
        block = [w for w in cons if w.probability == p]
        verdicts = []
        for w in block:
            if not any(frozenset(w.selected) < frozenset(v.selected)
                       for v in cons):
                verdicts.append("trivial")
                continue
            clash = False
            for d in w.selected:
                if canonical_form(d.left.concept) != cm:
                    continue
                for v in block:
                    if v.choices == w.choices:
                        continue
                    for dh in v.selected:
                        if canonical_form(dh.left.concept) == ch and \
                                _conflicts(kb.strict, compound, d, dh,
                                           role_saturation):
                            clash = True
                            break
                    if clash:
                        break
                if clash:
                    break
            verdicts.append("modifier-conflict" if clash else "selected")
        blocks.append(BlockReport(p, tuple(block), tuple(verdicts)))
        survivors = [w for w, v in zip(block, verdicts) if v == "selected"]
        if survivors:
            selected = survivors
            break
    return SelectionReport(tuple(cons), tuple(incons), tuple(blocks),
                           tuple(selected))


def select_scenarios(kb: KnowledgeBase, c_head: Concept, c_mod: Concept,
                     role_saturation: bool = True,
                     guard: int = SCENARIO_GUARD) -> List[Scenario]:
    report = _walk(kb, c_head, c_mod, role_saturation, guard)
    if not report.selected:
        raise CombinationError(
            "no scenario survives any probability block")
    return list(report.selected)


def revise(kb: KnowledgeBase, c_head: Concept, c_mod: Concept,
           role_saturation: bool = True,
           guard: int = SCENARIO_GUARD) -> CombinationResult:
    """The compound-revised KB: surviving consequents become typicality
    defaults of the compound, priced by their source inclusion (head wins
    when both sides provide the property)."""
    chosen = select_scenarios(kb, c_head, c_mod, role_saturation, guard)
    ch, cm = canonical_form(c_head), canonical_form(c_mod)
    compound = canonical_form(And(c_head, c_mod))
    additions = []
    seen = set()
    for w in chosen:
        for d in w.selected:
            key = canonical_form(d.right)
            if key in seen:
                continue
            seen.add(key)
            p = None
            for cand in kb.defeasible:
                if canonical_form(cand.right) == key and \
                        canonical_form(cand.left.concept) == ch:
                    p = cand.probability
                    break
            if p is None:
                p = d.probability
            additions.append(Inclusion(Typical(compound), d.right, p))
    revised = KnowledgeBase(
        "tcl", kb.strict, kb.defeasible + tuple(additions), kb.abox)
    return CombinationResult(c_head, c_mod, compound, tuple(chosen),
                             tuple(additions), revised)
