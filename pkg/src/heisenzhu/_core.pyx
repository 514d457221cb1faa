# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled versions of the dictionary kernels in :mod:`heisenzhu.fock`.

Coefficients stay generic Python objects (int, Fraction or Poly), so results are
identical to the pure-Python kernels; only the loop and tuple handling is compiled.
"""


cpdef tuple insert_mode(tuple mono, long k):
    cdef Py_ssize_t i = 0, n = len(mono)
    while i < n and <long>mono[i] > k:
        i += 1
    return mono[:i] + (k,) + mono[i:]


cpdef tuple multiply_monomials(tuple m1, tuple m2):
    # both inputs are sorted descending, so a linear merge suffices
    cdef Py_ssize_t i = 0, j = 0, n1 = len(m1), n2 = len(m2)
    if n1 == 0:
        return m2
    if n2 == 0:
        return m1
    cdef list parts = []
    while i < n1 and j < n2:
        if <long>m1[i] >= <long>m2[j]:
            parts.append(m1[i])
            i += 1
        else:
            parts.append(m2[j])
            j += 1
    if i < n1:
        parts.extend(m1[i:])
    else:
        parts.extend(m2[j:])
    return tuple(parts)


def raw_add(dict acc, vec, scale=1):
    cdef object mono, c, v
    if scale == 1:
        for mono, c in vec.items():
            v = acc.get(mono, 0) + c
            if v:
                acc[mono] = v
            else:
                acc.pop(mono, None)
    else:
        for mono, c in vec.items():
            v = acc.get(mono, 0) + scale * c
            if v:
                acc[mono] = v
            else:
                acc.pop(mono, None)
    return acc


def raw_apply_mode(long m, vec, zero_value=None):
    cdef dict out = {}
    cdef tuple mono, key
    cdef object c, v
    cdef long k, cnt
    cdef Py_ssize_t i
    if m < 0:
        k = -m
        for mono, c in vec.items():
            key = insert_mode(mono, k)
            out[key] = out.get(key, 0) + c
        return out
    if m == 0:
        if zero_value is None:
            return out
        return {mono: c * zero_value for mono, c in vec.items() if c * zero_value}
    for mono, c in vec.items():
        cnt = mono.count(m)
        if cnt:
            i = mono.index(m)
            key = mono[:i] + mono[i + 1:]
            v = out.get(key, 0) + m * cnt * c
            if v:
                out[key] = v
            else:
                out.pop(key, None)
    return out


def raw_multiply(p, vec):
    cdef dict out = {}
    cdef tuple m1, m2, key
    cdef object c1, c2, v
    for m1, c1 in p.items():
        for m2, c2 in vec.items():
            key = multiply_monomials(m1, m2)
            v = out.get(key, 0) + c1 * c2
            if v:
                out[key] = v
            else:
                out.pop(key, None)
    return out


def raw_shift(vec):
    cdef dict out = {}
    cdef tuple mono, key
    cdef object c
    cdef long w, k, prev, cnt
    cdef Py_ssize_t i, n
    for mono, c in vec.items():
        w = sum(mono)
        if w == 0:
            continue
        out[mono] = out.get(mono, 0) + w * c
        n = len(mono)
        prev = 0
        for i in range(n):
            k = mono[i]
            if k == prev:
                continue
            prev = k
            cnt = mono.count(k)
            key = insert_mode(mono[:i] + mono[i + 1:], k + 1)
            out[key] = out.get(key, 0) + k * cnt * c
    return {m: c for m, c in out.items() if c}
