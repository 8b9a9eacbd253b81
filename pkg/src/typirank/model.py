"""Immutable data model for concepts, inclusions, assertions and knowledge bases.

Concept terms are plain ALC: atoms, Top, Bot, negation, conjunction,
disjunction and the two role restrictions. The typicality operator is *not* a
concept constructor; it may only appear on the left-hand side of an inclusion
or in a concept assertion, which is what LeftConcept captures.

A KnowledgeBase carries one of three dialects:

  plain  - strict inclusions plus unweighted typicality inclusions
  alctp  - typicality inclusions weighted with probabilities in (0, 1)
  tcl    - rigid axioms plus typicality inclusions weighted in (0.5, 1)

Probabilities are exact rationals throughout (0.8 parses to 4/5). Scenario
and extension probabilities must be grouped and compared exactly, which
floating point cannot guarantee.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Optional, Union


# ---------------------------------------------------------------------------
# Concepts


class Concept:
    """Base class for ALC concept terms. Instances are immutable and hashable."""

    __slots__ = ()

    def __and__(self, other: "Concept") -> "Concept":
        return And(self, other)

    def __or__(self, other: "Concept") -> "Concept":
        return Or(self, other)

    def __invert__(self) -> "Concept":
        return Not(self)

    def __str__(self) -> str:
        return concept_to_str(self)

    def __repr__(self) -> str:
        return f"<{concept_to_str(self)}>"


@dataclass(frozen=True, slots=True, repr=False)
class Atom(Concept):
    name: str


@dataclass(frozen=True, slots=True, repr=False)
class Top(Concept):
    pass


@dataclass(frozen=True, slots=True, repr=False)
class Bottom(Concept):
    pass


@dataclass(frozen=True, slots=True, repr=False)
class Not(Concept):
    c: Concept


@dataclass(frozen=True, slots=True, repr=False)
class And(Concept):
    l: Concept
    r: Concept


@dataclass(frozen=True, slots=True, repr=False)
class Or(Concept):
    l: Concept
    r: Concept


@dataclass(frozen=True, slots=True, repr=False)
class Exists(Concept):
    role: str
    c: Concept


@dataclass(frozen=True, slots=True, repr=False)
class Forall(Concept):
    role: str
    c: Concept


TOP = Top()
BOT = Bottom()


def _prec(c: Concept) -> int:
    # 3 atomic, 2 unary (~ / quantifier), 1 conjunction, 0 disjunction
    if isinstance(c, (Atom, Top, Bottom)):
        return 3
    if isinstance(c, (Not, Exists, Forall)):
        return 2
    if isinstance(c, And):
        return 1
    return 0


def concept_to_str(c: Concept) -> str:
    """Canonical concrete syntax: Top, Bot, ~C, C & D, C | D, some R. C, all R. C."""
    if isinstance(c, Atom):
        return c.name
    if isinstance(c, Top):
        return "Top"
    if isinstance(c, Bottom):
        return "Bot"
    if isinstance(c, Not):
        return "~" + _wrap(c.c, 2)
    if isinstance(c, Exists):
        return f"some {c.role}. " + _wrap(c.c, 2)
    if isinstance(c, Forall):
        return f"all {c.role}. " + _wrap(c.c, 2)
    if isinstance(c, And):
        return _wrap(c.l, 1) + " & " + _wrap(c.r, 1)
    if isinstance(c, Or):
        return _wrap(c.l, 0) + " | " + _wrap(c.r, 0)
    raise TypeError(f"not a concept: {c!r}")


def _wrap(c: Concept, minimum: int) -> str:
    s = concept_to_str(c)
    if _prec(c) < minimum:
        return "(" + s + ")"
    return s


def subconcepts(c: Concept) -> Iterable[Concept]:
    """Yield c and every subterm of c (with repetition)."""
    yield c
    if isinstance(c, Not):
        yield from subconcepts(c.c)
    elif isinstance(c, (And, Or)):
        yield from subconcepts(c.l)
        yield from subconcepts(c.r)
    elif isinstance(c, (Exists, Forall)):
        yield from subconcepts(c.c)


def conjoin(parts: Iterable[Concept]) -> Concept:
    """Left-fold conjunction; empty input gives Top."""
    out: Optional[Concept] = None
    for p in parts:
        out = p if out is None else And(out, p)
    return TOP if out is None else out


def canonical_form(c: Concept) -> Concept:
    """Normalize a concept term so that by-construction-equal inputs coincide.

    Conjunctions and disjunctions are flattened, deduplicated and sorted by
    their serialization; double negations are removed. The result is
    idempotent under re-application. This is a syntactic normal form, not a
    semantic one: A & ~A is not simplified.
    """
    if isinstance(c, (Atom, Top, Bottom)):
        return c
    if isinstance(c, Not):
        inner = canonical_form(c.c)
        if isinstance(inner, Not):
            return inner.c
        return Not(inner)
    if isinstance(c, Exists):
        return Exists(c.role, canonical_form(c.c))
    if isinstance(c, Forall):
        return Forall(c.role, canonical_form(c.c))
    if isinstance(c, (And, Or)):
        kind = And if isinstance(c, And) else Or
        ops: list[Concept] = []
        seen = set()
        for part in _flatten(c, kind):
            part = canonical_form(part)
            if part not in seen:
                seen.add(part)
                ops.append(part)
        if len(ops) == 1:
            return ops[0]
        ops.sort(key=concept_to_str)
        out = ops[0]
        for p in ops[1:]:
            out = kind(out, p)
        return out
    raise TypeError(f"not a concept: {c!r}")


def _flatten(c: Concept, kind: type) -> Iterable[Concept]:
    if isinstance(c, kind):
        yield from _flatten(c.l, kind)
        yield from _flatten(c.r, kind)
    else:
        yield c


# ---------------------------------------------------------------------------
# Left-hand sides, inclusions, assertions


@dataclass(frozen=True, slots=True)
class LeftConcept:
    """A concept as it may appear left of an inclusion or in an assertion:
    either plain or wrapped once in the typicality operator."""

    concept: Concept
    typical: bool = False

    def __str__(self) -> str:
        if self.typical:
            return f"T({concept_to_str(self.concept)})"
        return concept_to_str(self.concept)


def Plain(c: Concept) -> LeftConcept:
    return LeftConcept(c, False)


def Typical(c: Concept) -> LeftConcept:
    return LeftConcept(c, True)


@dataclass(frozen=True, slots=True)
class Inclusion:
    left: LeftConcept
    right: Concept
    probability: Optional[Fraction] = None

    def __post_init__(self):
        if self.probability is not None and not self.left.typical:
            raise ValueError("only typicality inclusions may carry a probability")

    def __str__(self) -> str:
        head = f"{self.left} <= {concept_to_str(self.right)}"
        if self.probability is None:
            return head
        return f"{format_probability(self.probability)} :: {head}"


@dataclass(frozen=True, slots=True)
class ConceptAssertion:
    left: LeftConcept
    individual: str

    def __str__(self) -> str:
        return f"{self.individual} : {self.left}"


@dataclass(frozen=True, slots=True)
class RoleAssertion:
    role: str
    subject: str
    object: str

    def __str__(self) -> str:
        return f"({self.subject}, {self.object}) : {self.role}"


Assertion = Union[ConceptAssertion, RoleAssertion]

DIALECTS = ("plain", "alctp", "tcl")


def format_probability(p: Fraction) -> str:
    """Exact decimal when the denominator divides a power of ten, else num/den."""
    den = p.denominator
    k = 0
    while den % 2 == 0:
        den //= 2
        k += 1
    while den % 5 == 0:
        den //= 5
        k += 1
    if den != 1:
        return f"{p.numerator}/{p.denominator}"
    # smallest k with denominator | 10^k
    k = 0
    while (10**k) % p.denominator != 0:
        k += 1
    if k == 0:
        return str(p.numerator)
    digits = p.numerator * (10**k) // p.denominator
    s = str(digits).rjust(k + 1, "0")
    return s[:-k] + "." + s[-k:]


# ---------------------------------------------------------------------------
# Knowledge bases


@dataclass(frozen=True)
class KnowledgeBase:
    """A knowledge base: strict inclusions, an ordered list of typicality
    inclusions, and an ABox, under one of the three dialects.

    The defeasible list keeps source order so that numbering from input files
    is stable; `strict` and `abox` are stored deduplicated in first-seen
    order. All fields are tuples, so instances hash and compare structurally.
    """

    dialect: str = "plain"
    strict: tuple = ()
    defeasible: tuple = ()
    abox: tuple = ()

    def __post_init__(self):
        if self.dialect not in DIALECTS:
            raise ValueError(f"unknown dialect {self.dialect!r}")
        object.__setattr__(self, "strict", _dedup(self.strict))
        object.__setattr__(self, "defeasible", tuple(self.defeasible))
        object.__setattr__(self, "abox", _dedup(self.abox))
        for inc in self.strict:
            if inc.left.typical:
                raise ValueError(f"strict inclusion with typical left: {inc}")
            if inc.probability is not None:
                raise ValueError(f"strict inclusion with probability: {inc}")
        for inc in self.defeasible:
            if not inc.left.typical:
                raise ValueError(f"defeasible inclusion without T: {inc}")
            p = inc.probability
            if self.dialect == "plain":
                if p is not None:
                    raise ValueError("probabilities are not allowed in plain dialect")
            elif p is not None:
                low = Fraction(1, 2) if self.dialect == "tcl" else Fraction(0)
                if not (low < p < 1):
                    raise ValueError(
                        f"probability {p} out of range for dialect {self.dialect}"
                    )
        for a in self.abox:
            if isinstance(a, ConceptAssertion) and a.left.typical:
                if self.dialect == "tcl":
                    raise ValueError("typicality assertions are not part of tcl ABoxes")

    def signature(self):
        return signature(self)

    def stripped(self) -> "KnowledgeBase":
        """The same KB in plain dialect with probabilities removed."""
        if self.dialect == "plain":
            return self
        return KnowledgeBase(
            "plain",
            self.strict,
            tuple(Inclusion(d.left, d.right) for d in self.defeasible),
            self.abox,
        )

    def __str__(self) -> str:
        from .parse import serialize_kb

        return serialize_kb(self)


def _dedup(items) -> tuple:
    seen = set()
    out = []
    for x in items:
        if x not in seen:
            seen.add(x)
            out.append(x)
    return tuple(out)


def signature(kb: KnowledgeBase):
    """The exact atom, role and individual names occurring in kb, sorted."""
    atoms, roles, inds = set(), set(), set()

    def visit(c: Concept):
        for s in subconcepts(c):
            if isinstance(s, Atom):
                atoms.add(s.name)
            elif isinstance(s, (Exists, Forall)):
                roles.add(s.role)

    for inc in tuple(kb.strict) + tuple(kb.defeasible):
        visit(inc.left.concept)
        visit(inc.right)
    for a in kb.abox:
        if isinstance(a, ConceptAssertion):
            visit(a.left.concept)
            inds.add(a.individual)
        else:
            roles.add(a.role)
            inds.add(a.subject)
            inds.add(a.object)
    return tuple(sorted(atoms)), tuple(sorted(roles)), tuple(sorted(inds))


def materialization(defaults: Iterable[Inclusion]) -> Concept:
    """Conjunction of ~C | D over the given typicality inclusions T(C) <= D.

    The empty collection gives Top. Order follows the input.
    """
    parts = []
    for d in defaults:
        if not d.left.typical:
            raise ValueError(f"materialization over a non-typicality inclusion: {d}")
        parts.append(Or(Not(d.left.concept), d.right))
    return conjoin(parts)
