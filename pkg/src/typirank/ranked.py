"""Finite ranked interpretations and model checking for typicality logic.

A ranked interpretation is a classical interpretation together with a total
rank function on the domain. The induced preference x < y iff
rank(x) < rank(y) is automatically irreflexive, transitive, modular and
well-founded, which is exactly the shape of preference relation the ranked
semantics asks for; the property-test helpers below verify those relational
facts explicitly rather than assuming them. Ranks are normalized to a
contiguous 0..k range on construction, so rank(x) equals the length of the
longest strictly descending chain below x.

Typical members of a concept are its minimal-rank members. The same
min-by-rank selector, applied to raw subsets of the domain, is the selection
function whose six postulates check_postulates evaluates.

The brute-force entailment oracles live in the oracle module; thin wrappers
are re-exported here so the ranked-model API is complete in one place.
"""

from __future__ import annotations

from dataclasses import dataclass

from .model import (
    And,
    Atom,
    Bottom,
    Concept,
    ConceptAssertion,
    Exists,
    Forall,
    Inclusion,
    KnowledgeBase,
    Not,
    Or,
    RoleAssertion,
    Top,
)


class RankedInterpretation:
    """domain: iterable of hashable elements; atom_ext: atom name -> set of
    elements; role_ext: role name -> set of (x, y) pairs; rank: element ->
    natural number; individual_map: individual name -> element."""

    def __init__(self, domain, atom_ext, role_ext, rank, individual_map=None):
        self.domain = frozenset(domain)
        self.atom_ext = {a: frozenset(v) for a, v in atom_ext.items()}
        self.role_ext = {r: frozenset(v) for r, v in role_ext.items()}
        if self.domain and set(rank) != self.domain:
            raise ValueError("rank function must cover exactly the domain")
        levels = sorted(set(rank.values()))
        squeeze = {v: i for i, v in enumerate(levels)}
        self.rank = {x: squeeze[v] for x, v in rank.items()}
        self.individual_map = dict(individual_map or {})
        for a, v in self.atom_ext.items():
            if not v <= self.domain:
                raise ValueError(f"extension of {a} leaves the domain")
        for r, pairs in self.role_ext.items():
            for x, y in pairs:
                if x not in self.domain or y not in self.domain:
                    raise ValueError(f"edge of {r} leaves the domain")
        for i, x in self.individual_map.items():
            if x not in self.domain:
                raise ValueError(f"individual {i} mapped outside the domain")

    # -- valuation ---------------------------------------------------------

    def extension(self, c: Concept) -> frozenset:
        """Standard ALC valuation of c in this interpretation."""
        if isinstance(c, Atom):
            if c.name not in self.atom_ext:
                raise KeyError(f"unknown atom {c.name!r}")
            return self.atom_ext[c.name]
        if isinstance(c, Top):
            return self.domain
        if isinstance(c, Bottom):
            return frozenset()
        if isinstance(c, Not):
            return self.domain - self.extension(c.c)
        if isinstance(c, And):
            return self.extension(c.l) & self.extension(c.r)
        if isinstance(c, Or):
            return self.extension(c.l) | self.extension(c.r)
        if isinstance(c, (Exists, Forall)):
            if c.role not in self.role_ext:
                raise KeyError(f"unknown role {c.role!r}")
            pairs = self.role_ext[c.role]
            inner = self.extension(c.c)
            if isinstance(c, Exists):
                return frozenset(x for x in self.domain
                                 if any((x, y) in pairs for y in inner))
            return frozenset(x for x in self.domain
                             if all(y in inner for z, y in pairs if z == x))
        raise TypeError(f"not a concept: {c!r}")

    def min_of(self, s) -> frozenset:
        """Minimal-rank elements of an arbitrary subset of the domain."""
        s = frozenset(s)
        if not s:
            return s
        m = min(self.rank[x] for x in s)
        return frozenset(x for x in s if self.rank[x] == m)

    def typical_set(self, c: Concept) -> frozenset:
        return self.min_of(self.extension(c))

    # -- model checking ----------------------------------------------------

    def _holds_inclusion(self, inc: Inclusion) -> bool:
        left = inc.left
        lext = (self.typical_set(left.concept) if left.typical
                else self.extension(left.concept))
        return lext <= self.extension(inc.right)

    def satisfies(self, kb: KnowledgeBase) -> bool:
        """Model check: strict and typicality inclusions plus the ABox.
        Probability annotations are ignored (the oracles work on plain KBs)."""
        for inc in kb.strict:
            if not self._holds_inclusion(inc):
                return False
        for inc in kb.defeasible:
            if not self._holds_inclusion(inc):
                return False
        for a in kb.abox:
            if not self.satisfies_query(a):
                return False
        return True

    def satisfies_query(self, q) -> bool:
        if isinstance(q, Inclusion):
            return self._holds_inclusion(q)
        if isinstance(q, ConceptAssertion):
            if q.individual not in self.individual_map:
                raise KeyError(f"unmapped individual {q.individual!r}")
            x = self.individual_map[q.individual]
            if q.left.typical:
                return x in self.typical_set(q.left.concept)
            return x in self.extension(q.left.concept)
        if isinstance(q, RoleAssertion):
            if q.subject not in self.individual_map or q.object not in self.individual_map:
                raise KeyError("unmapped individual in role assertion")
            pair = (self.individual_map[q.subject], self.individual_map[q.object])
            return pair in self.role_ext.get(q.role, frozenset())
        raise TypeError(f"not a query: {q!r}")

    # -- reporting ---------------------------------------------------------

    def table(self) -> str:
        """Text table: one row per element with rank, atoms, role edges."""
        atoms = sorted(self.atom_ext)
        roles = sorted(self.role_ext)
        names = {}
        for i, x in self.individual_map.items():
            names.setdefault(x, []).append(i)
        rows = [("elem", "rank", "atoms", "edges", "names")]
        for x in sorted(self.domain, key=lambda e: (self.rank[e], str(e))):
            mem = ",".join(a for a in atoms if x in self.atom_ext[a]) or "-"
            edges = ",".join(
                f"{r}->{y}" for r in roles for (z, y) in sorted(
                    self.role_ext[r], key=str) if z == x) or "-"
            nm = ",".join(sorted(names.get(x, []))) or "-"
            rows.append((str(x), str(self.rank[x]), mem, edges, nm))
        widths = [max(len(r[i]) for r in rows) for i in range(5)]
        return "\n".join(
            "  ".join(cell.ljust(w) for cell, w in zip(row, widths)).rstrip()
            for row in rows)

    def __repr__(self):
        return f"<RankedInterpretation |domain|={len(self.domain)}>"


# ---------------------------------------------------------------------------
# module-level delegates, matching the operation names of the API


def extension(m: RankedInterpretation, c: Concept) -> frozenset:
    return m.extension(c)


def typical_set(m: RankedInterpretation, c: Concept) -> frozenset:
    return m.typical_set(c)


def satisfies(m: RankedInterpretation, kb: KnowledgeBase) -> bool:
    return m.satisfies(kb)


def satisfies_query(m: RankedInterpretation, q) -> bool:
    return m.satisfies_query(q)


def longest_chain_below(m: RankedInterpretation, x) -> int:
    """Length of the longest strictly descending preference chain below x.
    For rank-induced orders this equals rank(x); the test suite asserts it."""
    best = 0
    for y in m.domain:
        if m.rank[y] < m.rank[x]:
            best = max(best, 1 + longest_chain_below(m, y))
    return best


def induced_relation_properties(m: RankedInterpretation) -> dict:
    """Explicitly verify that x < y iff rank(x) < rank(y) is irreflexive,
    transitive and modular, and that chain length matches rank."""
    dom = sorted(m.domain, key=str)
    lt = lambda x, y: m.rank[x] < m.rank[y]
    irrefl = not any(lt(x, x) for x in dom)
    trans = all(not (lt(x, y) and lt(y, z)) or lt(x, z)
                for x in dom for y in dom for z in dom)
    modular = all(not lt(x, y) or (lt(x, z) or lt(z, y))
                  for x in dom for y in dom for z in dom)
    chain = all(longest_chain_below(m, x) == m.rank[x] for x in dom)
    has_zero = (not dom) or any(m.rank[x] == 0 for x in dom)
    return {"irreflexive": irrefl, "transitive": trans, "modular": modular,
            "chain_equals_rank": chain, "rank_zero_present": has_zero}


# ---------------------------------------------------------------------------
# selection-function postulates


@dataclass(frozen=True)
class Violation:
    postulate: str
    sets: tuple
    witness: tuple


def check_postulates(m: RankedInterpretation, family, selector=None):
    """Evaluate the six selection-function postulates over the given family
    of subsets of the domain, returning a list of violations (empty when the
    selector is the honest min-by-rank choice, as it is by default).

    The binary postulates are instantiated over all ordered pairs from the
    family; unions and intersections are formed pairwise. `selector` may
    override the selection function, which the mutation tests use to check
    that corrupting it is actually detected.
    """
    f = selector if selector is not None else m.min_of
    fam = [frozenset(s) for s in family]
    out = []

    for s in fam:
        fs = f(s)
        if not fs <= s:
            out.append(Violation("f_T-1", (tuple(sorted(s, key=str)),),
                                 tuple(sorted(fs - s, key=str))))
        if s and not fs:
            out.append(Violation("f_T-2", (tuple(sorted(s, key=str)),), ()))
    for s in fam:
        fs = f(s)
        for r in fam:
            # (f3) f(S) <= R implies f(S) = f(S & R)
            if fs <= r:
                other = f(s & r)
                if fs != other:
                    out.append(Violation(
                        "f_T-3",
                        (tuple(sorted(s, key=str)), tuple(sorted(r, key=str))),
                        tuple(sorted(fs ^ other, key=str))))
            # (f6) f(S) & R nonempty implies f(S & R) <= f(S)
            if fs & r:
                other = f(s & r)
                if not other <= fs:
                    out.append(Violation(
                        "f_T-6",
                        (tuple(sorted(s, key=str)), tuple(sorted(r, key=str))),
                        tuple(sorted(other - fs, key=str))))
    for s1 in fam:
        f1_ = f(s1)
        for s2 in fam:
            f2_ = f(s2)
            u = f(s1 | s2)
            # (f4) f(S1 | S2) <= f(S1) | f(S2)
            if not u <= (f1_ | f2_):
                out.append(Violation(
                    "f_T-4",
                    (tuple(sorted(s1, key=str)), tuple(sorted(s2, key=str))),
                    tuple(sorted(u - (f1_ | f2_), key=str))))
            # (f5) f(S1) & f(S2) <= f(S1 | S2)
            if not (f1_ & f2_) <= u:
                out.append(Violation(
                    "f_T-5",
                    (tuple(sorted(s1, key=str)), tuple(sorted(s2, key=str))),
                    tuple(sorted((f1_ & f2_) - u, key=str))))
    return out


# ---------------------------------------------------------------------------
# oracle wrappers


def oracle_entails(kb: KnowledgeBase, q, domain_bound: int):
    from . import oracle

    return oracle.oracle_entails(kb, q, domain_bound)


def oracle_min_canonical_entails(kb: KnowledgeBase, q, domain_bound: int):
    from . import oracle

    return oracle.oracle_min_canonical_entails(kb, q, domain_bound)
