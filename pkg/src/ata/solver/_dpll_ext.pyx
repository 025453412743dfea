# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled DPLL kernel; must stay bit-identical to ``_dpll_py.solve_flat``."""
from libc.stdlib cimport malloc, calloc, free


cdef inline int _value(signed char* val, int lit) nogil:
    cdef signed char v = val[lit >> 1]
    if v < 0:
        return -1
    return v ^ (lit & 1)


cdef inline void _assign(signed char* val, int* trail, int* tlen,
                         unsigned char* used, int lit, int reason) nogil:
    val[lit >> 1] = 1 - (lit & 1)
    trail[tlen[0]] = lit
    tlen[0] += 1
    if reason >= 0:
        used[reason] = 1


cdef int _propagate(int qhead, signed char* val, int* trail, int* tlen,
                    unsigned char* used, const int* lits, const int* offsets,
                    const int* occ_start, const int* occ) nogil:
    cdef int false_lit, j, c, k, x, xv, unit, nfree, satisfied
    while qhead < tlen[0]:
        false_lit = trail[qhead] ^ 1
        qhead += 1
        for j in range(occ_start[false_lit], occ_start[false_lit + 1]):
            c = occ[j]
            unit = -1
            nfree = 0
            satisfied = 0
            for k in range(offsets[c], offsets[c + 1]):
                x = lits[k]
                xv = _value(val, x)
                if xv == 1:
                    satisfied = 1
                    break
                if xv < 0:
                    nfree += 1
                    if nfree == 1:
                        unit = x
            if satisfied:
                continue
            if nfree == 0:
                used[c] = 1
                return 0
            if nfree == 1:
                _assign(val, trail, tlen, used, unit, c)
    return 1


cdef int _search(int n, int m, const int* lits, const int* offsets,
                 signed char* val, unsigned char* used,
                 int* occ_start, int* occ, int* fill,
                 int* trail, int* dec_var, int* dec_pos, unsigned char* dec_flipped) nogil:
    cdef int c, k, lit, lv, v, pos, ndec = 0, qhead
    cdef int tlen = 0

    for c in range(m):
        if offsets[c] == offsets[c + 1]:
            used[c] = 1
            return 0
        for k in range(offsets[c], offsets[c + 1]):
            occ_start[lits[k] + 1] += 1
    for k in range(2 * n):
        occ_start[k + 1] += occ_start[k]
    for c in range(m):
        for k in range(offsets[c], offsets[c + 1]):
            lit = lits[k]
            occ[occ_start[lit] + fill[lit]] = c
            fill[lit] += 1

    for c in range(m):
        if offsets[c + 1] - offsets[c] != 1:
            continue
        lit = lits[offsets[c]]
        lv = _value(val, lit)
        if lv == 0:
            used[c] = 1
            return 0
        if lv < 0:
            _assign(val, trail, &tlen, used, lit, c)
    if not _propagate(0, val, trail, &tlen, used, lits, offsets, occ_start, occ):
        return 0

    while True:
        v = 0
        while v < n and val[v] >= 0:
            v += 1
        if v == n:
            return 1
        dec_var[ndec] = v
        dec_pos[ndec] = tlen
        dec_flipped[ndec] = 0
        ndec += 1
        qhead = tlen
        _assign(val, trail, &tlen, used, 2 * v + 1, -1)
        while not _propagate(qhead, val, trail, &tlen, used, lits, offsets, occ_start, occ):
            while ndec > 0 and dec_flipped[ndec - 1]:
                ndec -= 1
                pos = dec_pos[ndec]
                while tlen > pos:
                    tlen -= 1
                    val[trail[tlen] >> 1] = -1
            if ndec == 0:
                return 0
            pos = dec_pos[ndec - 1]
            while tlen > pos:
                tlen -= 1
                val[trail[tlen] >> 1] = -1
            dec_flipped[ndec - 1] = 1
            qhead = pos
            _assign(val, trail, &tlen, used, 2 * dec_var[ndec - 1], -1)


def solve_flat(int num_atoms, const int[::1] lits, const int[::1] offsets):
    """Return ``(sat, values, used)``; see ``_dpll_py.solve_flat``."""
    cdef int m = offsets.shape[0] - 1
    cdef int nl = lits.shape[0]
    cdef int n = num_atoms
    cdef int status, v
    cdef signed char* val = <signed char*> malloc(max(n, 1) * sizeof(signed char))
    cdef unsigned char* used = <unsigned char*> calloc(max(m, 1), sizeof(unsigned char))
    cdef int* occ_start = <int*> calloc(2 * n + 2, sizeof(int))
    cdef int* occ = <int*> malloc(max(nl, 1) * sizeof(int))
    cdef int* fill = <int*> calloc(2 * n + 1, sizeof(int))
    cdef int* trail = <int*> malloc(max(n, 1) * sizeof(int))
    cdef int* dec_var = <int*> malloc(max(n, 1) * sizeof(int))
    cdef int* dec_pos = <int*> malloc(max(n, 1) * sizeof(int))
    cdef unsigned char* dec_flipped = <unsigned char*> malloc(max(n, 1) * sizeof(unsigned char))
    cdef const int* lp = &lits[0] if nl > 0 else NULL
    if (val == NULL or used == NULL or occ_start == NULL or occ == NULL or fill == NULL
            or trail == NULL or dec_var == NULL or dec_pos == NULL or dec_flipped == NULL):
        free(val); free(used); free(occ_start); free(occ); free(fill)
        free(trail); free(dec_var); free(dec_pos); free(dec_flipped)
        raise MemoryError()
    try:
        for v in range(n):
            val[v] = -1
        with nogil:
            status = _search(n, m, lp, &offsets[0], val, used, occ_start, occ, fill,
                             trail, dec_var, dec_pos, dec_flipped)
        if status:
            values = bytearray(n)
            for v in range(n):
                values[v] = val[v]
        else:
            values = bytearray(n)
        return bool(status), values, bytearray(used[:m]) if m > 0 else bytearray()
    finally:
        free(val); free(used); free(occ_start); free(occ); free(fill)
        free(trail); free(dec_var); free(dec_pos); free(dec_flipped)
