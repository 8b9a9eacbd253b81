"""Skeptical closure: a single base per queried concept.

Construction starts from all defaults with the rank of the target concept
and walks the ranks downward. At each rank the individually compatible
defaults are gathered; if they are jointly consistent with everything
accepted so far they all join the base, otherwise the construction stops
and every lower rank is excluded. Entailment for T(B) <= D is then plain
entailment of D from B conjoined with the base's materialization.

Properties of more specific concepts survive here where plain rank-based
reasoning drowns them, yet genuinely conflicting same-rank defaults are
all discarded rather than split into alternative bases.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import inf
from typing import Optional, Tuple

from . import alc
from .model import (
    And,
    Concept,
    Inclusion,
    KnowledgeBase,
    concept_to_str,
    materialization,
)
from .rc import compute_ranking


class UnrankedTargetError(Exception):
    """Raised when the queried concept has infinite rank."""


@dataclass(frozen=True)
class Base:
    """Accepted defaults per rank, from rank(target) down to the rank after
    the stop (or to 0 when no conflict occurred)."""

    target: Concept
    per_rank: Tuple[Tuple[int, Tuple[Inclusion, ...]], ...]
    stop_rank: Optional[int] = None

    @property
    def defaults(self) -> Tuple[Inclusion, ...]:
        return tuple(d for _, ds in self.per_rank for d in ds)


def individually_compatible(d: Inclusion, b_concept: Concept,
                            accepted, strict) -> bool:
    """d fits the target on its own: B stays satisfiable when d's
    materialization joins those of the already accepted defaults."""
    return alc.is_satisfiable(
        And(b_concept, materialization(tuple(accepted) + (d,))), strict)


def build_base(kb: KnowledgeBase, b_concept: Concept) -> Base:
    kb = kb.stripped()
    ranking = compute_ranking(kb)
    rb = ranking.concept_rank(b_concept)
    if rb == inf:
        raise UnrankedTargetError(
            f"{concept_to_str(b_concept)} unsatisfiable under the ranking")
    by_rank = {}
    for d in kb.defeasible:
        r = ranking.default_rank(d)
        if r != inf:
            by_rank.setdefault(r, []).append(d)
    accepted = list(by_rank.get(rb, []))
    per_rank = [(rb, tuple(accepted))]
    stop = None
    for k in range(rb - 1, -1, -1):
        dk = [d for d in by_rank.get(k, [])
              if individually_compatible(d, b_concept, accepted, kb.strict)]
        joint = And(b_concept, materialization(tuple(accepted) + tuple(dk)))
        if not alc.is_satisfiable(joint, kb.strict):
            stop = k
            break
        accepted += dk
        per_rank.append((k, tuple(dk)))
    return Base(b_concept, tuple(per_rank), stop)


def sc_entails(kb: KnowledgeBase, query: Inclusion) -> bool:
    """T(B) <= D holds when D follows from B under the base built for B."""
    if not isinstance(query, Inclusion) or not query.left.typical:
        raise ValueError("skeptical closure answers typicality inclusions")
    kb = kb.stripped()
    b = query.left.concept
    base = build_base(kb, b)
    return alc.entails(
        kb.strict, And(b, materialization(base.defaults)), query.right)
