"""Probabilistic typicality: distributed ABox extensions over assumptions.

Each probabilistic default states how likely its exceptions are; for every
individual whose typicality in an antecedent concept already follows from
the probability-free KB, that assumption may be kept or dropped. The 2^n
keep/drop strings induce ABox extensions with exact rational probabilities
summing to one. Range entailment quantifies over the extensions whose
probability falls inside [p, q]; the query probability sums the entailing
ones.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import List, Tuple

from . import encoding, rc
from .model import (
    Concept,
    ConceptAssertion,
    Inclusion,
    KnowledgeBase,
    Typical,
    canonical_form,
    concept_to_str,
)

EXTENSION_GUARD = 20


class ExtensionGuardError(Exception):
    """Too many assumption pairs for exhaustive 2^n enumeration."""


class VacuousRangeError(Exception):
    """No extension probability falls inside the requested range."""


@dataclass(frozen=True)
class AssumptionIndex:
    """Position-aligned (individual, concept) pairs and their probabilities;
    each probability is the product over all defaults sharing the
    antecedent."""

    pairs: Tuple[Tuple[str, Concept], ...]
    probabilities: Tuple[Fraction, ...]


@dataclass(frozen=True)
class AboxExtension:
    selection: Tuple[int, ...]
    assertions: Tuple[ConceptAssertion, ...]
    probability: Fraction


def build_index(kb: KnowledgeBase) -> AssumptionIndex:
    """Assumption pairs of kb: (a, C) for each ABox individual a and each
    probabilistic antecedent C with T(C)(a) entailed by the stripped KB."""
    if kb.dialect != "alctp":
        raise ValueError(f"assumption index needs an alctp KB, got {kb.dialect}")
    stripped = kb.stripped()
    by_ante = {}
    order = []
    for d in kb.defeasible:
        if d.probability is None:
            continue
        c = canonical_form(d.left.concept)
        if c not in by_ante:
            by_ante[c] = Fraction(1)
            order.append(c)
        by_ante[c] *= d.probability
    individuals = []
    for a in kb.abox:
        if isinstance(a, ConceptAssertion) and a.individual not in individuals:
            individuals.append(a.individual)
    pairs, probs = [], []
    for ind in sorted(individuals):
        for c in sorted(order, key=concept_to_str):
            q = ConceptAssertion(Typical(c), ind)
            if rc.rc_abox_entails(stripped, q):
                pairs.append((ind, c))
                probs.append(by_ante[c])
    return AssumptionIndex(tuple(pairs), tuple(probs))


def enumerate_extensions(index: AssumptionIndex,
                         guard: int = EXTENSION_GUARD) -> List[AboxExtension]:
    """All keep/drop strings in binary counting order, kept-first."""
    n = len(index.pairs)
    if n > guard:
        raise ExtensionGuardError(
            f"{n} assumption pairs exceed the enumeration guard {guard}")
    out = []
    for bits in product((1, 0), repeat=n):
        p = Fraction(1)
        kept = []
        for (ind, c), pi, b in zip(index.pairs, index.probabilities, bits):
            if b:
                p *= pi
                kept.append(ConceptAssertion(Typical(c), ind))
            else:
                p *= 1 - pi
        out.append(AboxExtension(bits, tuple(kept), p))
    return out


def _extended_kb(kb: KnowledgeBase, ext: AboxExtension) -> KnowledgeBase:
    stripped = kb.stripped()
    return KnowledgeBase("plain", stripped.strict, stripped.defeasible,
                         stripped.abox + ext.assertions)


def prob_entails(kb: KnowledgeBase, query, p, q,
                 guard: int = EXTENSION_GUARD) -> bool:
    """Range entailment. TBox queries ignore the range and follow rational
    closure over the stripped KB; assertions must hold in every extension
    whose probability lies in [p, q]."""
    p, q = Fraction(p), Fraction(q)
    if not (0 < p <= q <= 1):
        raise ValueError(f"range [{p}, {q}] not within (0, 1]")
    if isinstance(query, Inclusion):
        return rc.rc_entails_tbox(kb.stripped(), query)
    selected = [e for e in enumerate_extensions(build_index(kb), guard)
                if p <= e.probability <= q]
    if not selected:
        raise VacuousRangeError(f"no extension probability in [{p}, {q}]")
    return all(encoding.tr_entails(_extended_kb(kb, e), query)
               for e in selected)


def query_probability(kb: KnowledgeBase, query,
                      guard: int = EXTENSION_GUARD) -> Fraction:
    """Probability mass of the extensions from which the query follows."""
    total = Fraction(0)
    for e in enumerate_extensions(build_index(kb), guard):
        if encoding.tr_entails(_extended_kb(kb, e), query):
            total += e.probability
    return total
