"""Plain ALC decision procedures.

Concept satisfiability w.r.t. a general TBox is decided by a tableau with
TBox internalization: every node label carries the conjuncts ~C | D for each
strict inclusion C <= D. Termination comes from ancestor subset-blocking,
which is sufficient for ALC (no inverse roles here). Rule order is fixed:
conjunctions, then disjunctions (left branch first), then existentials with
their universal payload. ABox reasoning uses precompletion: one root label
per individual, universal restrictions pushed along the asserted role edges,
disjunctions branched globally, then a per-individual tableau run.

Results of is_satisfiable are memoized under (canonical concept, TBox
fingerprint). The cache is append-only; clear_cache() empties it.
"""

from __future__ import annotations

from .model import (
    And,
    Atom,
    BOT,
    Bottom,
    Concept,
    ConceptAssertion,
    Exists,
    Forall,
    Not,
    Or,
    RoleAssertion,
    TOP,
    Top,
    canonical_form,
    concept_to_str,
)

_SAT_CACHE = {}


def clear_cache():
    _SAT_CACHE.clear()


def nnf(c):
    """Negation normal form: negation only on atoms, logically equivalent."""
    if isinstance(c, (Atom, Top, Bottom)):
        return c
    if isinstance(c, And):
        return And(nnf(c.l), nnf(c.r))
    if isinstance(c, Or):
        return Or(nnf(c.l), nnf(c.r))
    if isinstance(c, Exists):
        return Exists(c.role, nnf(c.c))
    if isinstance(c, Forall):
        return Forall(c.role, nnf(c.c))
    if isinstance(c, Not):
        inner = c.c
        if isinstance(inner, Atom):
            return c
        if isinstance(inner, Top):
            return BOT
        if isinstance(inner, Bottom):
            return TOP
        if isinstance(inner, Not):
            return nnf(inner.c)
        if isinstance(inner, And):
            return Or(nnf(Not(inner.l)), nnf(Not(inner.r)))
        if isinstance(inner, Or):
            return And(nnf(Not(inner.l)), nnf(Not(inner.r)))
        if isinstance(inner, Exists):
            return Forall(inner.role, nnf(Not(inner.c)))
        if isinstance(inner, Forall):
            return Exists(inner.role, nnf(Not(inner.c)))
    raise TypeError(f"not a concept: {c!r}")


def _internalize(strict):
    """NNF'd constraints ~L | R for the strict inclusions, deduplicated."""
    out, seen = [], set()
    for inc in strict:
        if inc.left.typical:
            raise ValueError(f"typicality inclusion in a strict TBox: {inc}")
        if inc.probability is not None:
            raise ValueError(f"probabilistic inclusion in a strict TBox: {inc}")
        c = nnf(Or(Not(inc.left.concept), inc.right))
        if c not in seen:
            seen.add(c)
            out.append(c)
    return tuple(out)


def _saturate(label):
    """Close a label under conjunction expansion. Conjunctions stay in the
    label (so disjunction branches remain visibly resolved). Returns
    (set, clash)."""
    out = set()
    todo = list(label)
    while todo:
        c = todo.pop()
        if c in out:
            continue
        out.add(c)
        if isinstance(c, And):
            todo.append(c.l)
            todo.append(c.r)
            continue
        if isinstance(c, Bottom):
            return out, True
        if isinstance(c, Atom) and Not(c) in out:
            return out, True
        if isinstance(c, Not) and c.c in out:
            return out, True
    return out, False


def _open_disjunctions(label):
    opens = [c for c in label if isinstance(c, Or) and c.l not in label and c.r not in label]
    opens.sort(key=concept_to_str)
    return opens


def _node_sat(label, meta, ancestors):
    label, clash = _saturate(label)
    if clash:
        return False
    opens = _open_disjunctions(label)
    if opens:
        d = opens[0]
        for branch in (d.l, d.r):
            if _node_sat(label | {branch}, meta, ancestors):
                return True
        return False
    # only literals and quantifiers left; spawn one child per existential
    frozen = frozenset(label)
    for c in sorted((x for x in label if isinstance(x, Exists)), key=concept_to_str):
        payload = {d.c for d in label if isinstance(d, Forall) and d.role == c.role}
        child = frozenset(_saturate({c.c} | payload | set(meta))[0])
        if any(child <= anc for anc in ancestors) or child <= frozen:
            continue  # blocked
        if not _node_sat(set(child), meta, ancestors + [frozen]):
            return False
    return True


def is_satisfiable(c, strict, use_cache=True):
    """Is there an ALC model of the strict inclusions with c nonempty?"""
    meta = _internalize(strict)
    if use_cache:
        key = (canonical_form(c), frozenset(meta))
        hit = _SAT_CACHE.get(key)
        if hit is not None:
            return hit
    result = _node_sat({nnf(c)} | set(meta), meta, [])
    if use_cache:
        _SAT_CACHE[key] = result
    return result


def entails(strict, c, d):
    """Does every model of the strict inclusions satisfy c <= d?"""
    return not is_satisfiable(And(c, Not(d)), strict)


def _abox_labels(strict, abox):
    meta = _internalize(strict)
    labels = {}
    edges = {}
    for a in abox:
        if isinstance(a, ConceptAssertion):
            if a.left.typical:
                raise ValueError(
                    f"typicality assertion reached the ALC layer untranslated: {a}"
                )
            labels.setdefault(a.individual, set()).add(nnf(a.left.concept))
        elif isinstance(a, RoleAssertion):
            labels.setdefault(a.subject, set())
            labels.setdefault(a.object, set())
            edges.setdefault((a.subject, a.object), set()).add(a.role)
        else:
            raise TypeError(f"not an assertion: {a!r}")
    for lab in labels.values():
        lab.update(meta)
    return labels, edges, meta


def _precompletion_sat(labels, edges, meta):
    # saturate every label, propagate universals over named edges, to fixpoint
    while True:
        changed = False
        for ind in list(labels):
            lab, clash = _saturate(labels[ind])
            if clash:
                return False
            if lab != labels[ind]:
                labels[ind] = lab
                changed = True
        for (a, b), roles in edges.items():
            for c in list(labels[a]):
                if isinstance(c, Forall) and c.role in roles and c.c not in labels[b]:
                    labels[b].add(c.c)
                    changed = True
        if not changed:
            break
    # branch on the first open disjunction anywhere, deterministically
    for ind in sorted(labels):
        opens = _open_disjunctions(labels[ind])
        if opens:
            d = opens[0]
            for branch in (d.l, d.r):
                trial = {k: set(v) for k, v in labels.items()}
                trial[ind].add(branch)
                if _precompletion_sat(trial, edges, meta):
                    return True
            return False
    # no open disjunctions: each individual stands alone for its existentials
    for ind in sorted(labels):
        if not _node_sat(set(labels[ind]), meta, []):
            return False
    return True


def abox_consistent(strict, abox):
    """Standard ALC ABox consistency w.r.t. the strict TBox."""
    labels, edges, meta = _abox_labels(strict, abox)
    if not labels:
        return is_satisfiable(TOP, strict)
    return _precompletion_sat(labels, edges, meta)


def instance_of(strict, abox, c, a):
    """Does every model of (strict, abox) put individual a in concept c?"""
    from .model import Plain

    extra = ConceptAssertion(Plain(nnf(Not(c))), a)
    labels, edges, meta = _abox_labels(strict, tuple(abox) + (extra,))
    return not _precompletion_sat(labels, edges, meta)
