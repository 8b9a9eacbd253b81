# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled brute-force sweep kernel; typed port of _kernel_py with the
identical labeled_sweep contract (see that module for the semantics).
Extensions are 64-bit masks, so domain sizes up to 32 are safe, far beyond
what enumeration can reach anyway."""

from libc.stdlib cimport calloc, free
from cpython.exc cimport PyErr_CheckSignals

ctypedef unsigned long long u64


cdef inline u64 _eval(int* prog, int s, int e, u64* atom_masks,
                      u64* role_rows, int n, u64 full, u64* stack) noexcept:
    cdef int sp = 0, i = s, op, arg, x
    cdef u64 v, out, nv
    while i < e:
        op = prog[i]
        arg = prog[i + 1]
        i += 2
        if op == 0:
            stack[sp] = full; sp += 1
        elif op == 1:
            stack[sp] = 0; sp += 1
        elif op == 2:
            stack[sp] = atom_masks[arg]; sp += 1
        elif op == 3:
            stack[sp - 1] = full & ~stack[sp - 1]
        elif op == 4:
            sp -= 1
            stack[sp - 1] = stack[sp - 1] & stack[sp]
        elif op == 5:
            sp -= 1
            stack[sp - 1] = stack[sp - 1] | stack[sp]
        elif op == 6:
            v = stack[sp - 1]
            out = 0
            for x in range(n):
                if role_rows[arg * n + x] & v:
                    out |= (<u64>1) << x
            stack[sp - 1] = out
        else:
            v = stack[sp - 1]
            out = 0
            nv = full & ~v
            for x in range(n):
                if (role_rows[arg * n + x] & nv) == 0:
                    out |= (<u64>1) << x
            stack[sp - 1] = out
    return stack[sp - 1]


cdef int _greedy(int n, u64 full, int nd, u64* dante, u64* dcons,
                 int npin, int* pin_e, u64* pin_m,
                 int nbel, int* bel_y, int* bel_x, int* ranks) noexcept:
    cdef u64 assigned = 0, p, rem, zb, eb, xb
    cdef int level = 0, z, i, changed, ok
    while assigned != full:
        p = 0
        rem = full & ~assigned
        while rem:
            zb = rem & (~rem + 1)
            rem ^= zb
            ok = 1
            for i in range(nd):
                if (dante[i] & zb) and (dante[i] & assigned) == 0 \
                        and (dcons[i] & zb) == 0:
                    ok = 0
                    break
            if ok:
                p |= zb
        while True:
            changed = 0
            for i in range(npin):
                eb = (<u64>1) << pin_e[i]
                if (eb & assigned) or (eb & p):
                    continue
                if p & pin_m[i]:
                    p &= ~pin_m[i]
                    changed = 1
            for i in range(nbel):
                xb = (<u64>1) << bel_x[i]
                if (p & xb) and ((((<u64>1) << bel_y[i]) & assigned) == 0):
                    p &= ~xb
                    changed = 1
            if not changed:
                break
        if p == 0:
            return 0
        assigned |= p
        for z in range(n):
            if (p >> z) & 1:
                ranks[z] = level
        level += 1
    return 1


cdef inline int _min_rank(u64 mask, int* ranks, int n) noexcept:
    cdef int best = -1, x
    for x in range(n):
        if (mask >> x) & 1:
            if best < 0 or ranks[x] < best:
                best = ranks[x]
    return best


def labeled_sweep(int mode, int n, int natoms, int nroles, int nind,
                  prog, starts, ends, rolefree,
                  strict, defaults, aconc, arole, q,
                  base, rmasks, int target):
    cdef u64 full = ((<u64>1) << n) - 1
    cdef unsigned long sigtick = 0
    cdef int nc = len(starts)
    cdef int nprog = len(prog)
    cdef int ns = len(strict) // 2
    cdef int nd = len(defaults) // 2
    cdef int nac = len(aconc) // 3
    cdef int nar = len(arole) // 3
    cdef int nb = len(base)
    cdef int nr = len(rmasks)
    cdef int qk = q[0], q1 = q[1], q2 = q[2], q3 = q[3]
    cdef int nrows = nroles * n if nroles > 0 else 1

    if mode == 2 and nr > n:
        return {}

    cdef int* cprog = <int*>calloc(max(nprog, 1), sizeof(int))
    cdef int* cstarts = <int*>calloc(nc, sizeof(int))
    cdef int* cends = <int*>calloc(nc, sizeof(int))
    cdef int* crf = <int*>calloc(nc, sizeof(int))
    cdef int* cstrict = <int*>calloc(max(2 * ns, 1), sizeof(int))
    cdef int* cdef_ = <int*>calloc(max(2 * nd, 1), sizeof(int))
    cdef int* caconc = <int*>calloc(max(3 * nac, 1), sizeof(int))
    cdef int* carole = <int*>calloc(max(3 * nar, 1), sizeof(int))
    cdef int* cbase = <int*>calloc(max(nb, 1), sizeof(int))
    cdef u64* crmasks = <u64*>calloc(max(nr, 1), sizeof(u64))
    cdef u64* ext = <u64*>calloc(max(nc, 1), sizeof(u64))
    cdef u64* am = <u64*>calloc(max(natoms, 1), sizeof(u64))
    cdef u64* rows = <u64*>calloc(nrows, sizeof(u64))
    cdef int* cranks = <int*>calloc(max(n, 1), sizeof(int))
    cdef u64* dante = <u64*>calloc(max(nd, 1), sizeof(u64))
    cdef u64* dcons = <u64*>calloc(max(nd, 1), sizeof(u64))
    cdef int* im = <int*>calloc(max(nind, 1), sizeof(int))
    cdef int* pin_e = <int*>calloc(nac + 2, sizeof(int))
    cdef u64* pin_m = <u64*>calloc(nac + 2, sizeof(u64))
    cdef int* bel_y = <int*>calloc(2, sizeof(int))
    cdef int* bel_x = <int*>calloc(2, sizeof(int))
    cdef u64* stack = <u64*>calloc(64, sizeof(u64))
    cdef u64* ftypes = <u64*>calloc(max(n, 1), sizeof(u64))
    cdef char* rbits = NULL
    if mode == 1:
        rbits = <char*>calloc((<size_t>1) << nb, sizeof(char))

    cdef int i, j, x, k, elem, ok, npin, nbel, hit, frame_done, v
    cdef int atom_done, role_done, map_done, canonical
    cdef u64 wit, zb, lm, tmask, code, t, rr
    cdef int mr, e_
    cdef object verdicts = {}
    result = None

    for i in range(nprog):
        cprog[i] = prog[i]
    for i in range(nc):
        cstarts[i] = starts[i]
        cends[i] = ends[i]
        crf[i] = rolefree[i]
    for i in range(2 * ns):
        cstrict[i] = strict[i]
    for i in range(2 * nd):
        cdef_[i] = defaults[i]
    for i in range(3 * nac):
        caconc[i] = aconc[i]
    for i in range(3 * nar):
        carole[i] = arole[i]
    for i in range(nb):
        cbase[i] = base[i]
    for i in range(nr):
        crmasks[i] = rmasks[i]

    try:
        atom_done = 0
        while not atom_done:
            sigtick += 1
            if (sigtick & 8191) == 0:
                PyErr_CheckSignals()
            # atom phase: role-free concepts and their strict checks
            ok = 1
            for i in range(nc):
                if crf[i]:
                    ext[i] = _eval(cprog, cstarts[i], cends[i], am, rows,
                                   n, full, stack)
            for j in range(ns):
                if crf[cstrict[2 * j]] and crf[cstrict[2 * j + 1]]:
                    if ext[cstrict[2 * j]] & ~ext[cstrict[2 * j + 1]]:
                        ok = 0
                        break
            if ok:
                for i in range(nrows):
                    rows[i] = 0
                role_done = 0
                while not role_done:
                    sigtick += 1
                    if (sigtick & 8191) == 0:
                        PyErr_CheckSignals()
                    ok = 1
                    for i in range(nc):
                        if not crf[i]:
                            ext[i] = _eval(cprog, cstarts[i], cends[i], am,
                                           rows, n, full, stack)
                    for j in range(ns):
                        if not (crf[cstrict[2 * j]] and crf[cstrict[2 * j + 1]]):
                            if ext[cstrict[2 * j]] & ~ext[cstrict[2 * j + 1]]:
                                ok = 0
                                break
                    if ok and mode == 3 and target >= 0 and ext[target] == 0:
                        ok = 0
                    canonical = 1
                    if ok and (mode == 1 or mode == 2):
                        for x in range(n):
                            t = 0
                            for j in range(nb):
                                if (ext[cbase[j]] >> x) & 1:
                                    t |= (<u64>1) << j
                            ftypes[x] = t
                        if mode == 2:
                            for j in range(nr):
                                hit = 0
                                for x in range(n):
                                    if ftypes[x] == crmasks[j]:
                                        hit = 1
                                        break
                                if not hit:
                                    canonical = 0
                                    break
                            if not canonical:
                                ok = 0
                    if ok:
                        for j in range(nd):
                            dante[j] = ext[cdef_[2 * j]]
                            dcons[j] = ext[cdef_[2 * j + 1]]
                        for i in range(nind):
                            im[i] = 0
                        frame_done = 0
                        map_done = 0
                        while not map_done and not frame_done:
                            ok = 1
                            npin = 0
                            for j in range(nac):
                                elem = im[caconc[3 * j + 1]]
                                if not (ext[caconc[3 * j]] >> elem) & 1:
                                    ok = 0
                                    break
                                if caconc[3 * j + 2]:
                                    pin_e[npin] = elem
                                    pin_m[npin] = ext[caconc[3 * j]]
                                    npin += 1
                            if ok:
                                for j in range(nar):
                                    rr = rows[carole[3 * j] * n + im[carole[3 * j + 1]]]
                                    if not (rr >> im[carole[3 * j + 2]]) & 1:
                                        ok = 0
                                        break
                            if ok:
                                if mode == 3:
                                    result = 1
                                    return result
                                elif mode == 1:
                                    if _greedy(n, full, nd, dante, dcons,
                                               npin, pin_e, pin_m,
                                               0, bel_y, bel_x, cranks):
                                        for x in range(n):
                                            rbits[ftypes[x]] = 1
                                        frame_done = 1
                                elif mode == 2:
                                    if _greedy(n, full, nd, dante, dcons,
                                               npin, pin_e, pin_m,
                                               0, bel_y, bel_x, cranks):
                                        if qk == 0:
                                            v = 0 if ext[q1] & ~ext[q2] else 1
                                        elif qk == 1:
                                            lm = ext[q1]
                                            if lm == 0:
                                                v = 1
                                            else:
                                                mr = _min_rank(lm, cranks, n)
                                                v = 1
                                                for x in range(n):
                                                    if (lm >> x) & 1 and \
                                                            cranks[x] == mr and \
                                                            not (ext[q2] >> x) & 1:
                                                        v = 0
                                                        break
                                        elif qk == 2:
                                            v = (ext[q1] >> im[q2]) & 1
                                        elif qk == 3:
                                            e_ = im[q2]
                                            lm = ext[q1]
                                            if not (lm >> e_) & 1:
                                                v = 0
                                            else:
                                                v = 1 if cranks[e_] == _min_rank(lm, cranks, n) else 0
                                        else:
                                            rr = rows[q1 * n + im[q2]]
                                            v = (rr >> im[q3]) & 1
                                        code = 0
                                        for j in range(nind):
                                            code = code * (n + 1) + cranks[im[j]]
                                        verdicts[code] = verdicts.get(code, 1) & v
                                else:
                                    # mode 0: countermodel search
                                    hit = 0
                                    if qk == 0:
                                        if ext[q1] & ~ext[q2]:
                                            hit = _greedy(n, full, nd, dante,
                                                          dcons, npin, pin_e,
                                                          pin_m, 0, bel_y,
                                                          bel_x, cranks)
                                    elif qk == 2:
                                        if not (ext[q1] >> im[q2]) & 1:
                                            hit = _greedy(n, full, nd, dante,
                                                          dcons, npin, pin_e,
                                                          pin_m, 0, bel_y,
                                                          bel_x, cranks)
                                    elif qk == 4:
                                        rr = rows[q1 * n + im[q2]]
                                        if not (rr >> im[q3]) & 1:
                                            hit = _greedy(n, full, nd, dante,
                                                          dcons, npin, pin_e,
                                                          pin_m, 0, bel_y,
                                                          bel_x, cranks)
                                    elif qk == 1:
                                        wit = ext[q1] & ~ext[q2]
                                        for x in range(n):
                                            if (wit >> x) & 1:
                                                pin_e[npin] = x
                                                pin_m[npin] = ext[q1]
                                                hit = _greedy(n, full, nd,
                                                              dante, dcons,
                                                              npin + 1, pin_e,
                                                              pin_m, 0, bel_y,
                                                              bel_x, cranks)
                                                if hit:
                                                    break
                                    else:
                                        e_ = im[q2]
                                        lm = ext[q1]
                                        if not (lm >> e_) & 1:
                                            hit = _greedy(n, full, nd, dante,
                                                          dcons, npin, pin_e,
                                                          pin_m, 0, bel_y,
                                                          bel_x, cranks)
                                        else:
                                            bel_x[0] = e_
                                            for x in range(n):
                                                if x != e_ and (lm >> x) & 1:
                                                    bel_y[0] = x
                                                    hit = _greedy(n, full, nd,
                                                                  dante, dcons,
                                                                  npin, pin_e,
                                                                  pin_m, 1,
                                                                  bel_y, bel_x,
                                                                  cranks)
                                                    if hit:
                                                        break
                                    if hit:
                                        result = ([am[i] for i in range(natoms)],
                                                  [rows[i] for i in range(nrows)] if nroles else [],
                                                  [cranks[i] for i in range(n)],
                                                  [im[i] for i in range(nind)])
                                        return result
                            # advance individual map
                            k = 0
                            while k < nind:
                                if im[k] == n - 1:
                                    im[k] = 0
                                    k += 1
                                else:
                                    im[k] += 1
                                    break
                            if k == nind:
                                map_done = 1
                    # advance role odometer
                    if nroles == 0:
                        role_done = 1
                    else:
                        k = 0
                        while k < nrows:
                            if rows[k] == full:
                                rows[k] = 0
                                k += 1
                            else:
                                rows[k] += 1
                                break
                        if k == nrows:
                            role_done = 1
            # advance atom odometer
            k = 0
            while k < natoms:
                if am[k] == full:
                    am[k] = 0
                    k += 1
                else:
                    am[k] += 1
                    break
            if k == natoms:
                atom_done = 1

        if mode == 0:
            result = None
        elif mode == 1:
            result = set()
            for i in range((<size_t>1) << nb):
                if rbits[i]:
                    result.add(i)
        elif mode == 2:
            result = verdicts
        else:
            result = 0
        return result
    finally:
        free(cprog); free(cstarts); free(cends); free(crf); free(cstrict)
        free(cdef_); free(caconc); free(carole); free(cbase); free(crmasks)
        free(ext); free(am); free(rows); free(cranks); free(dante)
        free(dcons); free(im); free(pin_e); free(pin_m); free(bel_y)
        free(bel_x); free(stack); free(ftypes)
        if rbits != NULL:
            free(rbits)
