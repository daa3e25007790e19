"""Pure-Python DPLL over integer clauses (fallback for the compiled kernel).

Clauses arrive in CSR form: ``lits[indptr[k]:indptr[k+1]]`` is clause ``k``
and a literal is ``+(a+1)`` or ``-(a+1)`` for atom ``a``. Search is
chronological backtracking with two watched literals, branching on the
lowest-numbered unassigned atom, true first. No learning.
"""


def solve_csr(num_atoms, indptr, lits):
    """Return a list of 0/1 values per atom, or None when unsatisfiable."""
    indptr = [int(x) for x in indptr]
    lits = [int(x) for x in lits]
    value = [-1] * num_atoms
    watches = [[] for _ in range(2 * num_atoms)]
    clauses = []
    units = []
    for k in range(len(indptr) - 1):
        seen = {}
        taut = False
        for x in lits[indptr[k]:indptr[k + 1]]:
            code = 2 * (x - 1) if x > 0 else 2 * (-x - 1) + 1
            if code ^ 1 in seen:
                taut = True
                break
            seen.setdefault(code, None)
        if taut:
            continue
        cl = list(seen)
        if not cl:
            return None
        if len(cl) == 1:
            units.append(cl[0])
            continue
        ci = len(clauses)
        clauses.append(cl)
        watches[cl[0]].append(ci)
        watches[cl[1]].append(ci)

    trail = []

    def lit_value(code):
        v = value[code >> 1]
        if v < 0:
            return -1
        return v ^ (code & 1)

    def assign(code):
        value[code >> 1] = 1 - (code & 1)
        trail.append(code)

    for u in units:
        lv = lit_value(u)
        if lv == 0:
            return None
        if lv < 0:
            assign(u)

    qhead = 0

    def propagate():
        nonlocal qhead
        while qhead < len(trail):
            false_code = trail[qhead] ^ 1
            qhead += 1
            ws = watches[false_code]
            i = 0
            while i < len(ws):
                ci = ws[i]
                cl = clauses[ci]
                if cl[0] == false_code:
                    cl[0], cl[1] = cl[1], cl[0]
                if lit_value(cl[0]) == 1:
                    i += 1
                    continue
                moved = False
                for k in range(2, len(cl)):
                    if lit_value(cl[k]) != 0:
                        cl[1], cl[k] = cl[k], cl[1]
                        watches[cl[1]].append(ci)
                        ws[i] = ws[-1]
                        ws.pop()
                        moved = True
                        break
                if moved:
                    continue
                first = lit_value(cl[0])
                if first == 0:
                    return False
                assign(cl[0])
                i += 1
        return True

    # decision stack entries: [trail length before decision, decision code, flipped]
    stack = []
    next_atom = 0
    while True:
        if not propagate():
            while stack and stack[-1][2]:
                stack.pop()
            if not stack:
                return None
            start, code, _ = stack[-1]
            for c in trail[start:]:
                value[c >> 1] = -1
            del trail[start:]
            qhead = start
            stack[-1][2] = True
            next_atom = code >> 1
            assign(code ^ 1)
            continue
        while next_atom < num_atoms and value[next_atom] >= 0:
            next_atom += 1
        if next_atom == num_atoms:
            return value
        code = 2 * next_atom
        stack.append([len(trail), code, False])
        assign(code)
