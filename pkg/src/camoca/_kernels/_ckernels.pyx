# cython: language_level=3
"""Compiled kernels.  Drop-in replacements for ``_pykernels``."""
from libc.stdlib cimport malloc, free, calloc


def evaluate_codes(table, long long q, long long d, long long n, codes):
    cdef long long width = 1, steps = n - d + 1, code, acc, place
    cdef long long i, k, t
    cdef long long nt = len(table)
    for i in range(d):
        width *= q
    cdef long long *tab = <long long *> malloc(nt * sizeof(long long))
    if tab == NULL:
        raise MemoryError()
    try:
        for i in range(nt):
            tab[i] = table[i]
        out = []
        for c in codes:
            code = c
            acc = 0
            place = 1
            for t in range(steps):
                acc += tab[code % width] * place
                code //= q
                place *= q
            out.append(acc)
        return out
    finally:
        free(tab)


def superposition_distinct(a, b, long long order):
    cdef long long n = len(a), i, k
    cdef unsigned char *seen = <unsigned char *> calloc(order * order, 1)
    if seen == NULL:
        raise MemoryError()
    try:
        for i in range(n):
            k = (<long long> a[i] - 1) * order + (<long long> b[i] - 1)
            if seen[k]:
                return False
            seen[k] = 1
        return True
    finally:
        free(seen)


def is_latin_flat(entries, long long order):
    cdef long long n = order * order, i, j, v
    cdef long long *buf = <long long *> malloc(n * sizeof(long long))
    cdef unsigned char *mark = <unsigned char *> malloc(order + 1)
    if buf == NULL or mark == NULL:
        free(buf)
        free(mark)
        raise MemoryError()
    try:
        for i in range(n):
            v = entries[i]
            if v < 1 or v > order:
                return False
            buf[i] = v
        for i in range(order):
            for j in range(order + 1):
                mark[j] = 0
            for j in range(order):
                v = buf[i * order + j]
                if mark[v]:
                    return False
                mark[v] = 1
            for j in range(order + 1):
                mark[j] = 0
            for j in range(order):
                v = buf[j * order + i]
                if mark[v]:
                    return False
                mark[v] = 1
        return True
    finally:
        free(buf)
        free(mark)
