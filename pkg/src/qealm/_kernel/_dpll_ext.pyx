# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
# distutils: language = c++
"""Compiled DPLL kernel; same search order and result as ``_dpll.solve_csr``."""

from libcpp.vector cimport vector
from libc.stdint cimport int32_t, int64_t, int8_t

import numpy as np
cimport numpy as cnp

cnp.import_array()


cdef inline int lit_value(int8_t* value, int code) nogil:
    cdef int8_t v = value[code >> 1]
    if v < 0:
        return -1
    return v ^ (code & 1)


def solve_csr(Py_ssize_t num_atoms, indptr, lits):
    """Return an int8 array of 0/1 per atom, or None when unsatisfiable."""
    cdef cnp.int64_t[:] ip = np.ascontiguousarray(indptr, dtype=np.int64)
    cdef cnp.int32_t[:] ls = np.ascontiguousarray(lits, dtype=np.int32)
    cdef Py_ssize_t m = ip.shape[0] - 1
    cdef Py_ssize_t k, j, i, n_cl
    cdef int x, code

    cdef cnp.ndarray[cnp.int8_t, ndim=1] value_arr = np.full(num_atoms, -1, dtype=np.int8)
    cdef int8_t* value = <int8_t*> value_arr.data
    cdef cnp.ndarray[cnp.int32_t, ndim=1] mark_arr = np.full(2 * num_atoms + 2, -1, dtype=np.int32)
    cdef int32_t* mark = <int32_t*> mark_arr.data

    cdef vector[int] store          # flattened deduplicated clause literals
    cdef vector[int64_t] start      # clause offsets into store
    cdef vector[int] units
    cdef vector[vector[int]] watches
    watches.resize(2 * num_atoms)
    cdef bint taut
    cdef Py_ssize_t base

    with nogil:
        for k in range(m):
            taut = False
            base = store.size()
            for j in range(ip[k], ip[k + 1]):
                x = ls[j]
                if x > 0:
                    code = 2 * (x - 1)
                else:
                    code = 2 * (-x - 1) + 1
                if mark[code ^ 1] == k:
                    taut = True
                    break
                if mark[code] != k:
                    mark[code] = k
                    store.push_back(code)
            if taut:
                store.resize(base)
                continue
            n_cl = store.size() - base
            if n_cl == 0:
                with gil:
                    return None
            if n_cl == 1:
                units.push_back(store[base])
                store.resize(base)
                continue
            watches[store[base]].push_back(start.size())
            watches[store[base + 1]].push_back(start.size())
            start.push_back(base)
        start.push_back(store.size())

    cdef vector[int] trail
    trail.reserve(num_atoms)
    cdef int u
    for i in range(units.size()):
        u = units[i]
        x = lit_value(value, u)
        if x == 0:
            return None
        if x < 0:
            value[u >> 1] = 1 - (u & 1)
            trail.push_back(u)

    cdef Py_ssize_t qhead = 0
    cdef vector[int64_t] dec_start
    cdef vector[int] dec_code
    cdef vector[int8_t] dec_flipped
    cdef Py_ssize_t next_atom = 0
    cdef int false_code, ci, tmp, first
    cdef int64_t s0, s1, kk
    cdef bint conflict, moved
    cdef vector[int]* ws
    cdef Py_ssize_t wi, t

    with nogil:
        while True:
            # unit propagation
            conflict = False
            while qhead < <Py_ssize_t> trail.size() and not conflict:
                false_code = trail[qhead] ^ 1
                qhead += 1
                ws = &watches[false_code]
                wi = 0
                while wi < <Py_ssize_t> ws.size():
                    ci = ws[0][wi]
                    s0 = start[ci]
                    s1 = start[ci + 1]
                    if store[s0] == false_code:
                        tmp = store[s0]
                        store[s0] = store[s0 + 1]
                        store[s0 + 1] = tmp
                    if lit_value(value, store[s0]) == 1:
                        wi += 1
                        continue
                    moved = False
                    for kk in range(s0 + 2, s1):
                        if lit_value(value, store[kk]) != 0:
                            tmp = store[s0 + 1]
                            store[s0 + 1] = store[kk]
                            store[kk] = tmp
                            watches[store[s0 + 1]].push_back(ci)
                            ws[0][wi] = ws[0][ws.size() - 1]
                            ws.pop_back()
                            moved = True
                            break
                    if moved:
                        continue
                    first = lit_value(value, store[s0])
                    if first == 0:
                        conflict = True
                        break
                    value[store[s0] >> 1] = 1 - (store[s0] & 1)
                    trail.push_back(store[s0])
                    wi += 1
            if conflict:
                while dec_code.size() > 0 and dec_flipped[dec_flipped.size() - 1]:
                    dec_code.pop_back()
                    dec_start.pop_back()
                    dec_flipped.pop_back()
                if dec_code.size() == 0:
                    with gil:
                        return None
                s0 = dec_start[dec_start.size() - 1]
                code = dec_code[dec_code.size() - 1]
                for t in range(s0, trail.size()):
                    value[trail[t] >> 1] = -1
                trail.resize(s0)
                qhead = s0
                dec_flipped[dec_flipped.size() - 1] = 1
                next_atom = code >> 1
                code = code ^ 1
                value[code >> 1] = 1 - (code & 1)
                trail.push_back(code)
                continue
            while next_atom < num_atoms and value[next_atom] >= 0:
                next_atom += 1
            if next_atom == num_atoms:
                break
            code = 2 * next_atom
            dec_start.push_back(trail.size())
            dec_code.push_back(code)
            dec_flipped.push_back(0)
            value[code >> 1] = 1
            trail.push_back(code)

    return value_arr
