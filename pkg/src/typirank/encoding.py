"""Monotonic typicality entailment via translation into plain ALC.

Each concept C appearing under the typicality operator gets a fresh marker
atom box_C over a single fresh preference role, with two axioms:

    (i)  box_C <= all pref. (~C & box_C)
    (ii) ~box_C <= some pref. (C & box_C)

Axiom (i) persists the marker down the preference role while excluding C
there, so a marked element admits no more-preferred C-element; axiom (ii)
is smoothness, forcing any unmarked element to see a minimal C-element
below itself. The typical members of C are then exactly C & box_C: each
default T(C) <= D becomes (C & box_C) <= D and each assertion T(C)(a)
becomes (C & box_C)(a). Entailment reduces to classical unsatisfiability
of the translation plus the negated query.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, Tuple

from . import alc
from .model import (
    And,
    Atom,
    Concept,
    ConceptAssertion,
    Exists,
    Forall,
    Inclusion,
    KnowledgeBase,
    LeftConcept,
    Not,
    Plain,
    RoleAssertion,
    canonical_form,
    concept_to_str,
    signature,
)


@dataclass(frozen=True)
class EncodedKb:
    strict: Tuple[Inclusion, ...]
    abox: Tuple
    boxes: Dict[Concept, str]
    pref: str

    def box_concept(self, c: Concept) -> Concept:
        """C & box_C, the translation of T(C)."""
        return And(c, Atom(self.boxes[canonical_form(c)]))

    def to_kb(self) -> KnowledgeBase:
        return KnowledgeBase(dialect="plain", strict=self.strict,
                             abox=self.abox)


def _fresh(stem: str, taken: set) -> str:
    name = stem
    while name in taken:
        name = name + "_"
    return name


def encode(kb: KnowledgeBase, extra_typical=()) -> EncodedKb:
    """Translate kb (typicality only on inclusion left sides and ABox
    assertions) into plain ALC. extra_typical lists additional concepts
    that need box atoms, e.g. those of a pending query."""
    kb = kb.stripped()
    atoms, roles, _ = signature(kb)
    taken = set(atoms) | set(roles)

    tcons = []
    for inc in kb.defeasible:
        tcons.append(canonical_form(inc.left.concept))
    for a in kb.abox:
        if isinstance(a, ConceptAssertion) and a.left.typical:
            tcons.append(canonical_form(a.left.concept))
    for c in extra_typical:
        tcons.append(canonical_form(c))
    seen = []
    for c in tcons:
        if c not in seen:
            seen.append(c)
    seen.sort(key=concept_to_str)

    pref = _fresh("pref", taken)
    taken.add(pref)
    boxes = {}
    for i, c in enumerate(seen):
        name = _fresh(f"Box{i}", taken)
        taken.add(name)
        boxes[c] = name

    strict = list(kb.strict)
    for c in seen:
        b = Atom(boxes[c])
        strict.append(Inclusion(Plain(b), Forall(pref, And(Not(c), b))))
        strict.append(Inclusion(Plain(Not(b)), Exists(pref, And(c, b))))
    for inc in kb.defeasible:
        t = And(inc.left.concept, Atom(boxes[canonical_form(inc.left.concept)]))
        strict.append(Inclusion(Plain(t), inc.right))

    abox = []
    for a in kb.abox:
        if isinstance(a, ConceptAssertion) and a.left.typical:
            t = And(a.left.concept,
                    Atom(boxes[canonical_form(a.left.concept)]))
            abox.append(ConceptAssertion(Plain(t), a.individual))
        else:
            abox.append(a)

    return EncodedKb(tuple(strict), tuple(abox), boxes, pref)


def _query_extras(q):
    if isinstance(q, Inclusion) and q.left.typical:
        return (q.left.concept,)
    if isinstance(q, ConceptAssertion) and q.left.typical:
        return (q.left.concept,)
    return ()


def encode_for_query(kb: KnowledgeBase, q) -> EncodedKb:
    """The encoding tr_entails reasons over for this query: the KB's own
    typicality concepts plus any introduced by the query."""
    return encode(kb, extra_typical=_query_extras(q))


def tr_entails(kb: KnowledgeBase, q) -> bool:
    """q holds in every model of kb (inclusion, concept assertion, or role
    assertion). Decided by refutation over the translation."""
    if isinstance(q, RoleAssertion):
        # role edges between named individuals cannot be forced indirectly
        return q in kb.abox
    enc = encode(kb, extra_typical=_query_extras(q))

    def left_of(lc: LeftConcept) -> Concept:
        return enc.box_concept(lc.concept) if lc.typical else lc.concept

    if isinstance(q, Inclusion):
        wit = And(left_of(q.left), Not(q.right))
        _, _, inds = signature(kb)
        w = _fresh("w0", set(inds))
        test = enc.abox + (ConceptAssertion(Plain(wit), w),)
        return not alc.abox_consistent(enc.strict, test)
    if isinstance(q, ConceptAssertion):
        test = enc.abox + (ConceptAssertion(Plain(Not(left_of(q.left))),
                                            q.individual),)
        return not alc.abox_consistent(enc.strict, test)
    raise TypeError(f"not a query: {q!r}")
