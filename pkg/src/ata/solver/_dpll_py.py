"""Pure-Python DPLL kernel; reference twin of ``_dpll_ext.pyx``.

Both kernels take clauses in CSR form over encoded literals
(``2 * atom`` for positive, ``2 * atom + 1`` for negative) and must return
bit-identical results. Keep the two files in step.
"""


def solve_flat(num_atoms, lits, offsets):
    """Return ``(sat, values, used)``.

    ``values[v]`` is the model value of atom ``v`` when ``sat``. ``used[c]``
    marks clauses that served as propagation reasons or conflicts; when
    unsatisfiable those clauses alone are unsatisfiable.
    """
    num_clauses = len(offsets) - 1
    val = [-1] * num_atoms
    used = bytearray(num_clauses)
    trail = []

    occ = [[] for _ in range(2 * num_atoms)]
    for c in range(num_clauses):
        start, end = offsets[c], offsets[c + 1]
        if start == end:
            used[c] = 1
            return False, bytearray(num_atoms), used
        for k in range(start, end):
            occ[lits[k]].append(c)

    def value(lit):
        v = val[lit >> 1]
        if v < 0:
            return -1
        return v ^ (lit & 1)

    def assign(lit, reason):
        val[lit >> 1] = 1 - (lit & 1)
        trail.append(lit)
        if reason >= 0:
            used[reason] = 1

    def propagate(qhead):
        while qhead < len(trail):
            false_lit = trail[qhead] ^ 1
            qhead += 1
            for c in occ[false_lit]:
                unit = -1
                free = 0
                satisfied = False
                for k in range(offsets[c], offsets[c + 1]):
                    x = lits[k]
                    xv = value(x)
                    if xv == 1:
                        satisfied = True
                        break
                    if xv < 0:
                        free += 1
                        if free == 1:
                            unit = x
                if satisfied:
                    continue
                if free == 0:
                    used[c] = 1
                    return False
                if free == 1:
                    assign(unit, c)
        return True

    for c in range(num_clauses):
        if offsets[c + 1] - offsets[c] != 1:
            continue
        lit = lits[offsets[c]]
        lv = value(lit)
        if lv == 0:
            used[c] = 1
            return False, bytearray(num_atoms), used
        if lv < 0:
            assign(lit, c)
    if not propagate(0):
        return False, bytearray(num_atoms), used

    dec_var = []
    dec_pos = []
    dec_flipped = []
    while True:
        v = 0
        while v < num_atoms and val[v] >= 0:
            v += 1
        if v == num_atoms:
            return True, bytearray(val), used
        dec_var.append(v)
        dec_pos.append(len(trail))
        dec_flipped.append(False)
        qhead = len(trail)
        assign(2 * v + 1, -1)
        while not propagate(qhead):
            while dec_var and dec_flipped[-1]:
                pos = dec_pos.pop()
                dec_var.pop()
                dec_flipped.pop()
                while len(trail) > pos:
                    val[trail.pop() >> 1] = -1
            if not dec_var:
                return False, bytearray(num_atoms), used
            pos = dec_pos[-1]
            while len(trail) > pos:
                val[trail.pop() >> 1] = -1
            dec_flipped[-1] = True
            qhead = pos
            assign(2 * dec_var[-1], -1)
