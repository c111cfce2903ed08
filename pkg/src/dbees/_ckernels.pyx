# cython: language_level=3, boundscheck=False, wraparound=False, initializedcheck=False
"""Compiled brute-force enumeration kernel (see ``_kernels_py`` for the contract)."""

from cpython.mem cimport PyMem_Malloc, PyMem_Free


def enumerate_best(const long long[:] counts, const long long[:] offsets,
                   const double[:] matrix, Py_ssize_t stride):
    cdef Py_ssize_t n = counts.shape[0]
    cdef Py_ssize_t i, j, k, base
    cdef double q
    cdef double best_q = -1.0
    cdef long long evaluated = 0
    cdef Py_ssize_t *choice
    cdef Py_ssize_t *best
    cdef Py_ssize_t *rows

    if n == 0:
        return 0.0, (), 1

    choice = <Py_ssize_t *> PyMem_Malloc(3 * n * sizeof(Py_ssize_t))
    if choice == NULL:
        raise MemoryError()
    best = choice + n
    rows = choice + 2 * n
    try:
        for i in range(n):
            if counts[i] <= 0:
                raise ValueError("every word needs at least one candidate")
            choice[i] = 0
            best[i] = 0
        while True:
            for i in range(n):
                rows[i] = offsets[i] + choice[i]
            q = 0.0
            for i in range(n):
                base = rows[i] * stride
                for j in range(i + 1, n):
                    q += matrix[base + rows[j]]
            evaluated += 1
            if q > best_q:
                best_q = q
                for i in range(n):
                    best[i] = choice[i]
            # odometer step, last word fastest
            k = n - 1
            while k >= 0:
                choice[k] += 1
                if choice[k] < counts[k]:
                    break
                choice[k] = 0
                k -= 1
            if k < 0:
                break
        return best_q, tuple([best[i] for i in range(n)]), evaluated
    finally:
        PyMem_Free(choice)
