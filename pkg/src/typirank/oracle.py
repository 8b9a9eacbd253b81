"""Brute-force entailment oracles over finite ranked models.

Two independent decision procedures live here, used by the test suite to
cross-check the symbolic reasoners:

* oracle_entails: search for a countermodel, i.e. a ranked model of the KB
  falsifying the query. Rank functions are never enumerated; for each
  candidate frame (domain + extensions + individual assignment) a greedy
  pass finds a valid rank assignment compatible with the required
  falsification witnesses, or proves none exists (valid assignments are
  closed under pointwise minimum, so the greedy least assignment decides).

* oracle_min_canonical_entails: restrict attention to canonical models
  (realizing every type that is realizable among the enumerated models,
  types being bit-vectors of membership in the top-level concepts of KB and
  query) that are rank-minimal for their frame, then evaluate the query on
  all of them. Named individuals are additionally minimized: only verdict
  rows whose individual-rank vectors are Pareto-minimal count.

Role-free problems take a vector fast path: an element's whole behaviour is
its atom bit-vector, duplicate elements never matter (except one explicit
phantom-duplicate case for falsifying typicality assertions), so domains
are subsets of the 2^натoms vector space and the search is exact rather
than bounded. Problems with roles run the labeled-domain sweep kernel at
the requested bound; models smaller than the bound embed into it by
duplicating an element, so a single sweep at the bound is complete.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Optional

from . import kernel
from ._kernel_py import eval_program, greedy_ranks
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
    canonical_form,
    subconcepts,
)
from .ranked import RankedInterpretation

ENTAILED = "entailed"
NOT_ENTAILED = "not entailed"
NO_CANONICAL = "no canonical model within bound"

# enumeration state beyond ~2^26 frames is not worth waiting for
_STATE_BITS_CAP = 26
_VECTOR_ATOM_CAP = 4
_TYPE_BITS_CAP = 16

OP_TOP, OP_BOT, OP_ATOM, OP_NOT, OP_AND, OP_OR, OP_EXISTS, OP_FORALL = range(8)


class OracleCapacityError(Exception):
    """The instance is too large for exhaustive enumeration."""


@dataclass
class OracleResult:
    entailed_up_to_bound: bool
    countermodel: Optional[RankedInterpretation]
    effective_bound: int
    exhaustive: bool


@dataclass
class MinCanonicalResult:
    verdict: str
    effective_bound: int
    models_seen: int

    @property
    def entailed(self) -> Optional[bool]:
        if self.verdict == NO_CANONICAL:
            return None
        return self.verdict == ENTAILED


def _role_free(c: Concept) -> bool:
    return not any(isinstance(s, (Exists, Forall)) for s in subconcepts(c))


class _Problem:
    """Compiled form of a KB + query pair, shared by both search paths."""

    def __init__(self, kb: KnowledgeBase, query):
        kb = kb.stripped()
        self.kb = kb
        self.query = query
        atoms, roles, inds = set(), set(), set()

        def scan(c):
            for s in subconcepts(c):
                if isinstance(s, Atom):
                    atoms.add(s.name)
                elif isinstance(s, (Exists, Forall)):
                    roles.add(s.role)

        tops = []
        for inc in kb.strict + kb.defeasible:
            scan(inc.left.concept)
            scan(inc.right)
            tops += [inc.left.concept, inc.right]
        for a in kb.abox:
            if isinstance(a, ConceptAssertion):
                scan(a.left.concept)
                inds.add(a.individual)
                tops.append(a.left.concept)
            else:
                roles.add(a.role)
                inds.update((a.subject, a.object))
        if isinstance(query, Inclusion):
            scan(query.left.concept)
            scan(query.right)
            tops += [query.left.concept, query.right]
        elif isinstance(query, ConceptAssertion):
            scan(query.left.concept)
            inds.add(query.individual)
            tops.append(query.left.concept)
        elif isinstance(query, RoleAssertion):
            roles.add(query.role)
            inds.update((query.subject, query.object))
        elif query is not None:
            raise TypeError(f"not a query: {query!r}")

        self.atoms = sorted(atoms)
        self.roles = sorted(roles)
        self.inds = sorted(inds)
        self.aidx = {a: i for i, a in enumerate(self.atoms)}
        self.ridx = {r: i for i, r in enumerate(self.roles)}
        self.iidx = {i: j for j, i in enumerate(self.inds)}

        self.prog = []
        self.starts = []
        self.ends = []
        self.rolefree = []
        self._cids = {}

        self.strict = []
        for inc in kb.strict:
            self.strict += [self.cid(inc.left.concept), self.cid(inc.right)]
        self.defaults = []
        for inc in kb.defeasible:
            self.defaults += [self.cid(inc.left.concept), self.cid(inc.right)]
        self.aconc = []
        self.arole = []
        for a in kb.abox:
            if isinstance(a, ConceptAssertion):
                self.aconc += [self.cid(a.left.concept),
                               self.iidx[a.individual],
                               1 if a.left.typical else 0]
            else:
                self.arole += [self.ridx[a.role], self.iidx[a.subject],
                               self.iidx[a.object]]

        if query is None:
            t = self.cid(Top())
            self.q = [0, t, t, 0]
        elif isinstance(query, Inclusion):
            self.q = [1 if query.left.typical else 0,
                      self.cid(query.left.concept), self.cid(query.right), 0]
        elif isinstance(query, ConceptAssertion):
            self.q = [3 if query.left.typical else 2,
                      self.cid(query.left.concept),
                      self.iidx[query.individual], 0]
        else:
            self.q = [4, self.ridx[query.role], self.iidx[query.subject],
                      self.iidx[query.object]]

        base = []
        for c in tops:
            c = canonical_form(c)
            if isinstance(c, Not):
                c = c.c
            if c not in base:
                base.append(c)
        base.sort(key=str)
        if len(base) > _TYPE_BITS_CAP:
            raise OracleCapacityError(f"{len(base)} type concepts")
        self.base = [self.cid(c) for c in base]

        self.vector = not self.roles and len(self.atoms) <= _VECTOR_ATOM_CAP

    def cid(self, c: Concept) -> int:
        key = canonical_form(c)
        got = self._cids.get(key)
        if got is not None:
            return got
        out = []
        self._emit(c, out)
        depth = peak = 0
        for j in range(0, len(out), 2):
            if out[j] in (OP_TOP, OP_BOT, OP_ATOM):
                depth += 1
                peak = max(peak, depth)
            elif out[j] in (OP_AND, OP_OR):
                depth -= 1
        if peak > 64:
            raise OracleCapacityError("concept nests too deeply")
        i = len(self.starts)
        self._cids[key] = i
        self.starts.append(len(self.prog))
        self.prog += out
        self.ends.append(len(self.prog))
        self.rolefree.append(1 if _role_free(c) else 0)
        return i

    def _emit(self, c, out):
        if isinstance(c, Atom):
            out += [OP_ATOM, self.aidx[c.name]]
        elif isinstance(c, Top):
            out += [OP_TOP, 0]
        elif isinstance(c, Bottom):
            out += [OP_BOT, 0]
        elif isinstance(c, Not):
            self._emit(c.c, out)
            out += [OP_NOT, 0]
        elif isinstance(c, And):
            self._emit(c.l, out)
            self._emit(c.r, out)
            out += [OP_AND, 0]
        elif isinstance(c, Or):
            self._emit(c.l, out)
            self._emit(c.r, out)
            out += [OP_OR, 0]
        elif isinstance(c, Exists):
            self._emit(c.c, out)
            out += [OP_EXISTS, self.ridx[c.role]]
        elif isinstance(c, Forall):
            self._emit(c.c, out)
            out += [OP_FORALL, self.ridx[c.role]]
        else:
            raise TypeError(f"not a concept: {c!r}")

    def guard_labeled(self, n):
        bits = len(self.atoms) * n + len(self.roles) * n * n
        if bits > _STATE_BITS_CAP:
            raise OracleCapacityError(
                f"{bits} bits of frame state at domain size {n}")

    def sweep(self, mode, n, rmasks=(), target=-1):
        self.guard_labeled(n)
        return kernel.labeled_sweep(
            mode, n, len(self.atoms), len(self.roles), len(self.inds),
            self.prog, self.starts, self.ends, self.rolefree,
            self.strict, self.defaults, self.aconc, self.arole, self.q,
            self.base, list(rmasks), target)

    # -- model reconstruction ---------------------------------------------

    def labeled_model(self, n, atom_masks, role_rows, ranks, imap):
        atom_ext = {a: {x for x in range(n) if (atom_masks[i] >> x) & 1}
                    for a, i in self.aidx.items()}
        role_ext = {r: {(x, y) for x in range(n) for y in range(n)
                        if (role_rows[i * n + x] >> y) & 1}
                    for r, i in self.ridx.items()}
        rank = {x: ranks[x] for x in range(n)}
        imap_d = {name: imap[j] for name, j in self.iidx.items()}
        return RankedInterpretation(range(n), atom_ext, role_ext, rank, imap_d)

    def vector_model(self, v, ranks, imap_d, phantom_vec=None):
        m = 1 << len(self.atoms)
        dom = [x for x in range(m) if (v >> x) & 1]
        if phantom_vec is not None:
            dom.append(m)
        atom_ext = {}
        for a, i in self.aidx.items():
            s = {x for x in dom if x < m and (x >> i) & 1}
            if phantom_vec is not None and (phantom_vec >> i) & 1:
                s.add(m)
            atom_ext[a] = s
        rank = {x: ranks[x] for x in dom}
        return RankedInterpretation(dom, atom_ext, {}, rank, imap_d)


# ---------------------------------------------------------------------------
# role-free vector path


class _VectorSpace:
    def __init__(self, pb: _Problem):
        self.pb = pb
        na = len(pb.atoms)
        self.m = 1 << na
        fullm = (1 << self.m) - 1
        amasks = []
        for i in range(na):
            mk = 0
            for v in range(self.m):
                if (v >> i) & 1:
                    mk |= 1 << v
            amasks.append(mk)
        nc = len(pb.starts)
        self.cext = [eval_program(pb.prog, pb.starts[i], pb.ends[i],
                                  amasks, [], self.m, fullm)
                     for i in range(nc)]
        viol = 0
        for j in range(len(pb.strict) // 2):
            viol |= self.cext[pb.strict[2 * j]] & ~self.cext[pb.strict[2 * j + 1]]
        self.allowed = fullm & ~viol
        self.typefull = []
        for v in range(self.m):
            t = 0
            for bj, cid in enumerate(pb.base):
                if (self.cext[cid] >> v) & 1:
                    t |= 1 << bj
            self.typefull.append(t)

    def states(self):
        v = self.allowed
        while v:
            yield v
            v = (v - 1) & self.allowed

    def maps(self, v):
        elems = [x for x in range(self.m) if (v >> x) & 1]
        return product(elems, repeat=len(self.pb.inds))

    def frame(self, v):
        """Per-state extensions, default masks; None if an element breaks
        nothing (always valid here since strict was folded into allowed)."""
        ext = [e & v for e in self.cext]
        pb = self.pb
        dmasks = [(ext[pb.defaults[2 * j]], ext[pb.defaults[2 * j + 1]])
                  for j in range(len(pb.defaults) // 2)]
        return ext, dmasks

    def abox_pins(self, ext, imap):
        pb = self.pb
        pins = []
        for j in range(len(pb.aconc) // 3):
            cid = pb.aconc[3 * j]
            elem = imap[pb.aconc[3 * j + 1]]
            if not (ext[cid] >> elem) & 1:
                return None
            if pb.aconc[3 * j + 2]:
                pins.append((elem, ext[cid]))
        return pins


def _min_rank_of(mask, ranks):
    best = -1
    while mask:
        zb = mask & -mask
        mask ^= zb
        r = ranks[zb.bit_length() - 1]
        if best < 0 or r < best:
            best = r
    return best


def _vector_counter(pb: _Problem):
    vs = _VectorSpace(pb)
    qk = pb.q[0]
    ranks = [0] * (vs.m + 1)
    for v in vs.states():
        ext, dmasks = vs.frame(v)
        for imap in vs.maps(v):
            pins = vs.abox_pins(ext, imap)
            if pins is None:
                continue
            if qk == 0:
                if ext[pb.q[1]] & ~ext[pb.q[2]]:
                    if greedy_ranks(vs.m, v, dmasks, pins, [], ranks):
                        return pb.vector_model(
                            v, ranks, {i: imap[j] for i, j in pb.iidx.items()})
            elif qk == 2:
                if not (ext[pb.q[1]] >> imap[pb.q[2]]) & 1:
                    if greedy_ranks(vs.m, v, dmasks, pins, [], ranks):
                        return pb.vector_model(
                            v, ranks, {i: imap[j] for i, j in pb.iidx.items()})
            elif qk == 1:
                wit = ext[pb.q[1]] & ~ext[pb.q[2]]
                while wit:
                    zb = wit & -wit
                    wit ^= zb
                    x = zb.bit_length() - 1
                    if greedy_ranks(vs.m, v, dmasks,
                                    pins + [(x, ext[pb.q[1]])], [], ranks):
                        return pb.vector_model(
                            v, ranks, {i: imap[j] for i, j in pb.iidx.items()})
            else:  # qk == 3
                e = imap[pb.q[2]]
                lm = ext[pb.q[1]]
                if not (lm >> e) & 1:
                    if greedy_ranks(vs.m, v, dmasks, pins, [], ranks):
                        return pb.vector_model(
                            v, ranks, {i: imap[j] for i, j in pb.iidx.items()})
                    continue
                hit = False
                wit = lm & ~(1 << e)
                while wit and not hit:
                    zb = wit & -wit
                    wit ^= zb
                    y = zb.bit_length() - 1
                    hit = greedy_ranks(vs.m, v, dmasks, pins, [(y, e)], ranks)
                if hit:
                    return pb.vector_model(
                        v, ranks, {i: imap[j] for i, j in pb.iidx.items()})
                # phantom duplicate of e's vector strictly below e
                ph = 1 << vs.m
                fullp = v | ph
                extp = [x | (ph if (vs.cext[i] >> e) & 1 else 0)
                        for i, x in enumerate(ext)]
                dmp = [(extp[pb.defaults[2 * j]], extp[pb.defaults[2 * j + 1]])
                       for j in range(len(pb.defaults) // 2)]
                pinsp = []
                bad = False
                for j in range(len(pb.aconc) // 3):
                    cid = pb.aconc[3 * j]
                    elem = imap[pb.aconc[3 * j + 1]]
                    if not (extp[cid] >> elem) & 1:
                        bad = True
                        break
                    if pb.aconc[3 * j + 2]:
                        pinsp.append((elem, extp[cid]))
                if bad:
                    continue
                if greedy_ranks(vs.m + 1, fullp, dmp, pinsp,
                                [(vs.m, e)], ranks):
                    return pb.vector_model(
                        v, ranks, {i: imap[j] for i, j in pb.iidx.items()},
                        phantom_vec=e)
    return None


def _query_verdict_bits(pb, ext, ranks, imap, role_edge=None):
    qk = pb.q[0]
    if qk == 0:
        return 0 if ext[pb.q[1]] & ~ext[pb.q[2]] else 1
    if qk == 1:
        lm = ext[pb.q[1]]
        if lm == 0:
            return 1
        mr = _min_rank_of(lm, ranks)
        sc = lm
        while sc:
            zb = sc & -sc
            sc ^= zb
            if ranks[zb.bit_length() - 1] == mr and not ext[pb.q[2]] & zb:
                return 0
        return 1
    if qk == 2:
        return (ext[pb.q[1]] >> imap[pb.q[2]]) & 1
    if qk == 3:
        e = imap[pb.q[2]]
        lm = ext[pb.q[1]]
        if not (lm >> e) & 1:
            return 0
        return 1 if ranks[e] == _min_rank_of(lm, ranks) else 0
    return role_edge


def _vector_min_canonical(pb: _Problem):
    vs = _VectorSpace(pb)
    ranks = [0] * vs.m
    realized = set()
    valid_state = {}
    for v in vs.states():
        ext, dmasks = vs.frame(v)
        for imap in vs.maps(v):
            pins = vs.abox_pins(ext, imap)
            if pins is None:
                continue
            if greedy_ranks(vs.m, v, dmasks, pins, [], ranks):
                valid_state[v] = True
                realized |= {vs.typefull[x] for x in range(vs.m)
                             if (v >> x) & 1}
                break
    verdicts = {}
    for v in valid_state:
        types = {vs.typefull[x] for x in range(vs.m) if (v >> x) & 1}
        if not realized <= types:
            continue
        ext, dmasks = vs.frame(v)
        for imap in vs.maps(v):
            pins = vs.abox_pins(ext, imap)
            if pins is None:
                continue
            if not greedy_ranks(vs.m, v, dmasks, pins, [], ranks):
                continue
            verd = _query_verdict_bits(pb, ext, ranks, imap)
            iv = tuple(ranks[imap[j]] for j in range(len(pb.inds)))
            verdicts[iv] = verdicts.get(iv, 1) & verd
    return verdicts


# ---------------------------------------------------------------------------
# public API


def _pareto_verdict(verdicts):
    keys = list(verdicts)
    minimal = []
    for k in keys:
        dominated = any(o != k and all(a <= b for a, b in zip(o, k))
                        for o in keys)
        if not dominated:
            minimal.append(k)
    return all(verdicts[k] for k in minimal)


def oracle_entails(kb: KnowledgeBase, query, domain_bound: int) -> OracleResult:
    """Search for a ranked model of kb falsifying the query.

    Role-free problems are decided exactly; with roles the search is
    complete for domains up to domain_bound.
    """
    pb = _Problem(kb, query)
    if pb.vector:
        cm = _vector_counter(pb)
        eff = 1 << len(pb.atoms)
        exhaustive = True
    else:
        res = pb.sweep(0, max(1, domain_bound))
        cm = (pb.labeled_model(max(1, domain_bound), *res)
              if res is not None else None)
        eff = domain_bound
        exhaustive = False
    if cm is not None:
        if not cm.satisfies(pb.kb) or cm.satisfies_query(pb.query):
            raise RuntimeError("internal error: bad countermodel")
        return OracleResult(False, cm, eff, exhaustive)
    return OracleResult(True, None, eff, exhaustive)


def oracle_min_canonical_entails(kb: KnowledgeBase, query,
                                 domain_bound: int) -> MinCanonicalResult:
    """Evaluate the query on every minimal canonical model found within the
    search space, Pareto-minimizing named-individual ranks. Verdict is one
    of ENTAILED, NOT_ENTAILED, NO_CANONICAL.
    """
    pb = _Problem(kb, query)
    if pb.vector:
        verdicts = _vector_min_canonical(pb)
        eff = 1 << len(pb.atoms)
    else:
        n = max(1, domain_bound)
        realized = pb.sweep(1, n)
        if realized:
            coded = pb.sweep(2, n, rmasks=sorted(realized))
            verdicts = {}
            for code, verd in coded.items():
                iv = []
                for _ in range(len(pb.inds)):
                    iv.append(code % (n + 1))
                    code //= n + 1
                verdicts[tuple(reversed(iv))] = verd
        else:
            verdicts = {}
        eff = domain_bound
    if not verdicts:
        return MinCanonicalResult(NO_CANONICAL, eff, 0)
    verdict = ENTAILED if _pareto_verdict(verdicts) else NOT_ENTAILED
    return MinCanonicalResult(verdict, eff, len(verdicts))


def brute_force_satisfiable(concept: Concept, strict=(), bound: int = 3) -> bool:
    """Classical satisfiability by model enumeration, for cross-checking
    the tableau. Monotone in domain size, so one sweep at `bound` decides
    all sizes up to it."""
    from .model import Plain

    kb = KnowledgeBase(dialect="plain", strict=tuple(strict))
    # the dummy query registers the concept's atoms and roles
    pb = _Problem(kb, Inclusion(Plain(concept), Top()))
    target = pb.cid(concept)
    return bool(pb.sweep(3, max(1, bound), target=target))


def brute_force_abox_consistent(kb: KnowledgeBase, bound: int = 3) -> bool:
    """Classical ABox consistency by model enumeration (strict part plus
    ABox; no typicality assertions allowed here)."""
    assert not kb.defeasible
    assert all(not (isinstance(a, ConceptAssertion) and a.left.typical)
               for a in kb.abox)
    pb = _Problem(kb, None)
    return bool(pb.sweep(3, max(1, bound)))
