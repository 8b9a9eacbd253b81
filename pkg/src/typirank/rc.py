"""Rational closure: iterated-exceptionality ranking and entailment.

The ranking repeatedly filters the default set: a default survives a round
when its antecedent is exceptional (unsatisfiable together with the current
materialization under the strict axioms). Concept rank is the first round
at which the concept stops being exceptional; defaults inherit the rank of
their antecedent, and whatever survives at the fixpoint has rank infinity.
Defaults of infinite rank have globally empty antecedent typicality, so
their materializations are promoted to strict axioms for all further
reasoning.

TBox queries follow the classical rank comparison. ABox queries minimize
rank assignments over the named individuals jointly, skeptically over all
minimal admissible assignments; existential assertions are skolemized first
so that implied anonymous individuals participate in the minimization (the
worked colleague example needs exactly this).
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from math import inf
from typing import Dict, Tuple

from . import alc
from .model import (
    And,
    Concept,
    ConceptAssertion,
    Exists,
    Forall,
    Inclusion,
    KnowledgeBase,
    Not,
    Or,
    Plain,
    RoleAssertion,
    TOP,
    canonical_form,
    materialization,
)


class InconsistentKbError(Exception):
    """No admissible rank assignment exists: the KB has no ranked model."""


def exceptional(c: Concept, defaults, strict) -> bool:
    """C is exceptional w.r.t. the default set: C together with the
    defaults' materialization is unsatisfiable under the strict axioms."""
    return not alc.is_satisfiable(And(c, materialization(defaults)), strict)


@dataclass(frozen=True)
class RankingResult:
    """levels: E_0 ⊇ E_1 ⊇ ... ⊇ E_k with E_k the stabilized set."""

    strict: Tuple[Inclusion, ...]
    levels: Tuple[Tuple[Inclusion, ...], ...]

    def concept_rank(self, c: Concept):
        for i, level in enumerate(self.levels):
            if not exceptional(c, level, self.strict):
                return i
        return inf

    def default_rank(self, d: Inclusion):
        return self.concept_rank(d.left.concept)

    @property
    def fixpoint(self) -> Tuple[Inclusion, ...]:
        return self.levels[-1]

    @property
    def max_finite_rank(self) -> int:
        return len(self.levels) - 1

    def strict_with_infinity(self) -> Tuple[Inclusion, ...]:
        """Strict axioms plus the global materializations of infinite-rank
        defaults (their antecedents are empty in every ranked model)."""
        extra = tuple(Inclusion(Plain(TOP), Or(Not(d.left.concept), d.right))
                      for d in self.fixpoint)
        return self.strict + extra

    def materialization_at_least(self, v) -> Concept:
        """Conjunction of materializations of all defaults of rank >= v.
        Infinite-rank defaults are always included."""
        chosen = [d for d in self.levels[0] if self.default_rank(d) >= v]
        return materialization(chosen)


def compute_ranking(kb: KnowledgeBase) -> RankingResult:
    kb = kb.stripped()
    levels = [tuple(kb.defeasible)]
    while True:
        cur = levels[-1]
        nxt = tuple(d for d in cur
                    if exceptional(d.left.concept, cur, kb.strict))
        if nxt == cur:
            break
        levels.append(nxt)
    return RankingResult(tuple(kb.strict), tuple(levels))


def rc_entails_tbox(kb: KnowledgeBase, query: Inclusion) -> bool:
    """Rank-comparison rule for T(C) <= D; a strict query C <= D holds iff
    C & ~D has infinite rank, i.e. is empty in every ranked model of kb."""
    ranking = compute_ranking(kb)
    c = query.left.concept
    counter = And(c, Not(query.right))
    if not query.left.typical:
        return ranking.concept_rank(counter) == inf
    rc_ = ranking.concept_rank(c)
    if rc_ == inf:
        return True
    return rc_ < ranking.concept_rank(counter)


# ---------------------------------------------------------------------------
# ABox reasoning


@dataclass(frozen=True)
class IndividualRankAssignment:
    ranks: Tuple[Tuple[str, int], ...]

    def as_dict(self) -> Dict[str, int]:
        return dict(self.ranks)

    def __getitem__(self, name: str) -> int:
        return dict(self.ranks)[name]


class _SkolemizedAbox:
    """ABox with top-level existentials expanded to fresh individuals,
    universal payloads propagated along explicit edges, and typicality
    assertions split into their concept part plus a rank constraint."""

    def __init__(self, abox):
        self.named = []
        for a in abox:
            for name in ((a.individual,) if isinstance(a, ConceptAssertion)
                         else (a.subject, a.object)):
                if name not in self.named:
                    self.named.append(name)
        self.assertions = []   # (individual, Concept) flattened parts
        self.edges = []        # (role, subject, object)
        self.tconstraints = [] # (individual, Concept) from T(C)(a)
        self._fresh = 0
        taken = set(self.named)
        for a in abox:
            if isinstance(a, RoleAssertion):
                self.edges.append((a.role, a.subject, a.object))
        for a in abox:
            if isinstance(a, ConceptAssertion):
                if a.left.typical:
                    self.tconstraints.append(
                        (a.individual, canonical_form(a.left.concept)))
                self._add(a.individual, alc.nnf(a.left.concept), taken)
        # universal payloads travel along known edges until nothing changes
        done = set()
        while True:
            moved = False
            for ind, c in list(self.assertions):
                if not isinstance(c, Forall):
                    continue
                for role, s, o in list(self.edges):
                    if s == ind and role == c.role and (ind, c, o) not in done:
                        done.add((ind, c, o))
                        self._add(o, c.c, taken)
                        moved = True
            if not moved:
                break
        self.individuals = list(self.named)
        for ind, _ in self.assertions:
            if ind not in self.individuals:
                self.individuals.append(ind)
        for _, s, o in self.edges:
            for name in (s, o):
                if name not in self.individuals:
                    self.individuals.append(name)

    def _add(self, ind, c, taken):
        if isinstance(c, And):
            self._add(ind, c.l, taken)
            self._add(ind, c.r, taken)
        elif isinstance(c, Exists):
            name = f"sk{self._fresh}"
            self._fresh += 1
            while name in taken:
                name = name + "_"
            taken.add(name)
            self.edges.append((c.role, ind, name))
            self._add(name, c.c, taken)
        else:
            if (ind, c) not in self.assertions:
                self.assertions.append((ind, c))

    def plain_abox(self):
        out = [ConceptAssertion(Plain(c), ind) for ind, c in self.assertions]
        out += [RoleAssertion(r, s, o) for r, s, o in self.edges]
        return tuple(out)


def _augmented_abox(sk: _SkolemizedAbox, ranking: RankingResult, mu):
    out = list(sk.plain_abox())
    for ind in sk.individuals:
        m = ranking.materialization_at_least(mu[ind])
        if m != TOP:
            out.append(ConceptAssertion(Plain(m), ind))
    return tuple(out)


def _admissible(sk, ranking, strict_inf, mu) -> bool:
    for ind, c in sk.tconstraints:
        r = ranking.concept_rank(c)
        if r == inf or mu[ind] != r:
            return False
    return alc.abox_consistent(strict_inf, _augmented_abox(sk, ranking, mu))


def minimal_assignments(kb: KnowledgeBase):
    """All pointwise-minimal admissible rank assignments over the named
    and skolemized individuals. Empty ABox gives the single empty
    assignment. Raises InconsistentKbError when none is admissible."""
    kb = kb.stripped()
    ranking = compute_ranking(kb)
    sk = _SkolemizedAbox(kb.abox)
    strict_inf = ranking.strict_with_infinity()
    inds = sk.individuals
    if not inds:
        if not alc.abox_consistent(strict_inf, ()):
            raise InconsistentKbError("strict axioms admit no ranked model")
        return ranking, sk, [IndividualRankAssignment(())]
    kmax = ranking.max_finite_rank
    admissible = []
    for vec in product(range(kmax + 1), repeat=len(inds)):
        mu = dict(zip(inds, vec))
        if _admissible(sk, ranking, strict_inf, mu):
            admissible.append(vec)
    if not admissible:
        raise InconsistentKbError("no admissible individual rank assignment")
    minimal = []
    for v in admissible:
        if not any(w != v and all(a <= b for a, b in zip(w, v))
                   for w in admissible):
            minimal.append(v)
    return ranking, sk, [
        IndividualRankAssignment(tuple(zip(inds, v))) for v in minimal]


def rc_abox_entails(kb: KnowledgeBase, query) -> bool:
    """Skeptical assertion entailment: the query must hold under every
    pointwise-minimal admissible rank assignment."""
    kb = kb.stripped()
    if isinstance(query, Inclusion):
        return rc_entails_tbox(kb, query)
    ranking, sk, minimals = minimal_assignments(kb)
    strict_inf = ranking.strict_with_infinity()
    if isinstance(query, RoleAssertion):
        return (query.role, query.subject, query.object) in sk.edges
    if not isinstance(query, ConceptAssertion):
        raise TypeError(f"not a query: {query!r}")
    a = query.individual
    if a not in sk.individuals:
        raise ValueError(f"individual {a!r} does not occur in the ABox")
    c = query.left.concept
    for mu_a in minimals:
        mu = mu_a.as_dict()
        aug = _augmented_abox(sk, ranking, mu)
        holds = alc.instance_of(strict_inf, aug, c, a)
        if holds and query.left.typical:
            holds = mu[a] == ranking.concept_rank(c)
        if not holds:
            return False
    return True
