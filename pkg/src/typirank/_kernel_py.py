"""Pure-Python brute-force sweep kernel over labeled finite domains.

This is the reference twin of the compiled extension module; both expose the
same labeled_sweep contract and the test suite checks them against each other.
Domains are 0..n-1, concept extensions are n-bit masks, role extensions are
per-source successor masks. Concepts arrive compiled to postfix programs:

    op 0  TOP          op 4  OR
    op 1  BOT          op 5  EXISTS role-arg
    op 2  ATOM arg     op 6  FORALL role-arg
    op 3  NOT          op 7  (unused)

each instruction being an (op, arg) pair laid out flat in `prog`.

A sweep enumerates atom extensions (outer odometer) and role extensions
(inner odometer), evaluating role-free concepts and role-free strict checks
in the outer loop so that frames failing them never pay for the role loop.
Inside a surviving frame it enumerates assignments of named individuals to
elements. Rank functions are never enumerated: valid rank assignments are
closed under pointwise minimum, so a single greedy pass per frame finds the
least valid assignment or proves there is none, including under "element e
is rank-minimal in this mask" pins and "y strictly below x" constraints.

Modes: 0 countermodel search, 1 realized-type collection, 2 canonical-model
verdict collection, 3 classical satisfiability.
"""

from __future__ import annotations

from itertools import product


def eval_program(prog, s, e, atom_masks, role_rows, n, full):
    """Evaluate one postfix program to an n-bit extension mask."""
    stack = []
    i = s
    while i < e:
        op = prog[i]
        arg = prog[i + 1]
        i += 2
        if op == 0:
            stack.append(full)
        elif op == 1:
            stack.append(0)
        elif op == 2:
            stack.append(atom_masks[arg])
        elif op == 3:
            stack[-1] = full & ~stack[-1]
        elif op == 4:
            b = stack.pop()
            stack[-1] &= b
        elif op == 5:
            b = stack.pop()
            stack[-1] |= b
        elif op == 6:
            v = stack.pop()
            out = 0
            base = arg * n
            for x in range(n):
                if role_rows[base + x] & v:
                    out |= 1 << x
            stack.append(out)
        elif op == 7:
            v = stack.pop()
            out = 0
            base = arg * n
            nv = full & ~v
            for x in range(n):
                if not role_rows[base + x] & nv:
                    out |= 1 << x
            stack.append(out)
        else:
            raise ValueError(f"bad opcode {op}")
    return stack[-1]


def greedy_ranks(n, full, dmasks, pins, belows, ranks):
    """Least valid rank assignment on the set bits of `full`, or False.

    dmasks: (antecedent-mask, consequent-mask) per defeasible inclusion;
    pins: (element, mask) requiring the element to be rank-minimal within
    mask; belows: (y, x) requiring rank(y) < rank(x). Writes levels into
    `ranks` (indexed by element) and returns True on success.
    """
    assigned = 0
    level = 0
    while assigned != full:
        p = 0
        rem = full & ~assigned
        while rem:
            zb = rem & -rem
            rem ^= zb
            ok = True
            for am, cm in dmasks:
                if (am & zb) and not (am & assigned) and not (cm & zb):
                    ok = False
                    break
            if ok:
                p |= zb
        while True:
            changed = False
            for elem, m in pins:
                eb = 1 << elem
                if eb & assigned or eb & p:
                    continue
                if p & m:
                    p &= ~m
                    changed = True
            for y, x in belows:
                xb = 1 << x
                if (p & xb) and not ((1 << y) & assigned):
                    p &= ~xb
                    changed = True
            if not changed:
                break
        if p == 0:
            return False
        assigned |= p
        lvl = p
        while lvl:
            zb = lvl & -lvl
            lvl ^= zb
            ranks[zb.bit_length() - 1] = level
        level += 1
    return True


def _min_rank(mask, ranks):
    best = -1
    while mask:
        zb = mask & -mask
        mask ^= zb
        r = ranks[zb.bit_length() - 1]
        if best < 0 or r < best:
            best = r
    return best


def labeled_sweep(mode, n, natoms, nroles, nind,
                  prog, starts, ends, rolefree,
                  strict, defaults, aconc, arole, q,
                  base, rmasks, target):
    """One full enumeration pass at domain size n. See the module docstring.

    strict/defaults: flat (left-cid, right-cid) pairs; aconc: flat
    (cid, individual, typical-flag) triples; arole: flat (role, subj, obj)
    triples; q: (kind, a, b, c) with kind 0 strict inclusion, 1 typicality
    inclusion, 2 plain assertion, 3 typicality assertion, 4 role assertion;
    base: cids whose membership bits form an element's type (modes 1, 2);
    rmasks: the realizable types a canonical frame must cover (mode 2);
    target: cid that must be nonempty (mode 3), or -1.

    Returns: mode 0 -> countermodel tuple or None; mode 1 -> set of type
    masks; mode 2 -> {individual-rank-code: running-AND verdict}; mode 3 ->
    0/1.
    """
    full = (1 << n) - 1
    nc = len(starts)
    ext = [0] * nc
    ranks = [0] * n

    atom_cids = [i for i in range(nc) if rolefree[i]]
    role_cids = [i for i in range(nc) if not rolefree[i]]
    ns = len(strict) // 2
    atom_strict = [j for j in range(ns)
                   if rolefree[strict[2 * j]] and rolefree[strict[2 * j + 1]]]
    role_strict = [j for j in range(ns) if j not in atom_strict]
    nd = len(defaults) // 2
    nac = len(aconc) // 3
    nar = len(arole) // 3
    qk = q[0]

    found = set()
    verdicts = {}
    rset = set(rmasks)
    no_roles = nroles == 0
    zero_rows = [0] * (nroles * n)

    # index 0 varies fastest, matching the compiled odometers exactly so
    # both kernels surface the same first countermodel
    for am_rev in product(range(full + 1), repeat=natoms):
        atom_masks = am_rev[::-1]
        for i in atom_cids:
            ext[i] = eval_program(prog, starts[i], ends[i], atom_masks,
                                  zero_rows, n, full)
        ok = True
        for j in atom_strict:
            if ext[strict[2 * j]] & ~ext[strict[2 * j + 1]]:
                ok = False
                break
        if not ok:
            continue
        role_iter = (iter([zero_rows]) if no_roles else
                     (rv[::-1] for rv in
                      product(range(full + 1), repeat=nroles * n)))
        for role_rows in role_iter:
            for i in role_cids:
                ext[i] = eval_program(prog, starts[i], ends[i], atom_masks,
                                      role_rows, n, full)
            ok = True
            for j in role_strict:
                if ext[strict[2 * j]] & ~ext[strict[2 * j + 1]]:
                    ok = False
                    break
            if not ok:
                continue

            dmasks = [(ext[defaults[2 * j]], ext[defaults[2 * j + 1]])
                      for j in range(nd)]

            if mode == 1 or mode == 2:
                types = set()
                for x in range(n):
                    t = 0
                    for bj, cid in enumerate(base):
                        if (ext[cid] >> x) & 1:
                            t |= 1 << bj
                    types.add(t)
                if mode == 2 and not rset <= types:
                    continue
            if mode == 3 and target >= 0 and ext[target] == 0:
                continue

            frame_done = False
            for im_rev in product(range(n), repeat=nind):
                if frame_done:
                    break
                imap = im_rev[::-1]
                ok = True
                pins = []
                for j in range(nac):
                    cid = aconc[3 * j]
                    elem = imap[aconc[3 * j + 1]]
                    if not (ext[cid] >> elem) & 1:
                        ok = False
                        break
                    if aconc[3 * j + 2]:
                        pins.append((elem, ext[cid]))
                if ok:
                    for j in range(nar):
                        rr = role_rows[arole[3 * j] * n + imap[arole[3 * j + 1]]]
                        if not (rr >> imap[arole[3 * j + 2]]) & 1:
                            ok = False
                            break
                if not ok:
                    continue

                if mode == 3:
                    return 1

                if mode == 1:
                    if greedy_ranks(n, full, dmasks, pins, [], ranks):
                        found |= types
                        frame_done = True
                    continue

                if mode == 2:
                    if not greedy_ranks(n, full, dmasks, pins, [], ranks):
                        continue
                    if qk == 0:
                        v = 0 if ext[q[1]] & ~ext[q[2]] else 1
                    elif qk == 1:
                        lm = ext[q[1]]
                        if lm == 0:
                            v = 1
                        else:
                            mr = _min_rank(lm, ranks)
                            tm = 0
                            sc = lm
                            while sc:
                                zb = sc & -sc
                                sc ^= zb
                                if ranks[zb.bit_length() - 1] == mr:
                                    tm |= zb
                            v = 0 if tm & ~ext[q[2]] else 1
                    elif qk == 2:
                        v = (ext[q[1]] >> imap[q[2]]) & 1
                    elif qk == 3:
                        e = imap[q[2]]
                        lm = ext[q[1]]
                        if not (lm >> e) & 1:
                            v = 0
                        else:
                            v = 1 if ranks[e] == _min_rank(lm, ranks) else 0
                    else:
                        rr = role_rows[q[1] * n + imap[q[2]]]
                        v = (rr >> imap[q[3]]) & 1
                    code = 0
                    for j in range(nind):
                        code = code * (n + 1) + ranks[imap[j]]
                    verdicts[code] = verdicts.get(code, 1) & v
                    continue

                # mode 0: countermodel search
                hit = False
                if qk == 0:
                    if ext[q[1]] & ~ext[q[2]]:
                        hit = greedy_ranks(n, full, dmasks, pins, [], ranks)
                elif qk == 2:
                    if not (ext[q[1]] >> imap[q[2]]) & 1:
                        hit = greedy_ranks(n, full, dmasks, pins, [], ranks)
                elif qk == 4:
                    rr = role_rows[q[1] * n + imap[q[2]]]
                    if not (rr >> imap[q[3]]) & 1:
                        hit = greedy_ranks(n, full, dmasks, pins, [], ranks)
                elif qk == 1:
                    wit = ext[q[1]] & ~ext[q[2]]
                    while wit and not hit:
                        zb = wit & -wit
                        wit ^= zb
                        x = zb.bit_length() - 1
                        hit = greedy_ranks(n, full, dmasks,
                                           pins + [(x, ext[q[1]])], [], ranks)
                else:
                    e = imap[q[2]]
                    lm = ext[q[1]]
                    if not (lm >> e) & 1:
                        hit = greedy_ranks(n, full, dmasks, pins, [], ranks)
                    else:
                        wit = lm & ~(1 << e)
                        while wit and not hit:
                            zb = wit & -wit
                            wit ^= zb
                            y = zb.bit_length() - 1
                            hit = greedy_ranks(n, full, dmasks, pins,
                                               [(y, e)], ranks)
                if hit:
                    return (list(atom_masks), list(role_rows),
                            list(ranks), list(imap))

    if mode == 0:
        return None
    if mode == 1:
        return found
    if mode == 2:
        return verdicts
    return 0
