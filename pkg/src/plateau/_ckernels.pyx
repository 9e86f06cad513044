# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled butterflies and overflow-checked int64 matrix product."""

import numpy as np
cimport numpy as cnp

cnp.import_array()

cdef extern from *:
    """
    static inline int plateau_mul_ovf(long long a, long long b, long long *out) {
        return __builtin_mul_overflow(a, b, out);
    }
    static inline int plateau_add_ovf(long long a, long long b, long long *out) {
        return __builtin_add_overflow(a, b, out);
    }
    """
    int plateau_mul_ovf(long long a, long long b, long long *out) nogil
    int plateau_add_ovf(long long a, long long b, long long *out) nogil


def wht_inplace(cnp.int64_t[::1] a):
    """Unnormalised Walsh-Hadamard butterfly. Caller guarantees no overflow."""
    cdef Py_ssize_t size = a.shape[0]
    cdef Py_ssize_t h = 1, i, j
    cdef cnp.int64_t x, y
    with nogil:
        while h < size:
            i = 0
            while i < size:
                for j in range(i, i + h):
                    x = a[j]
                    y = a[j + h]
                    a[j] = x + y
                    a[j + h] = x - y
                i += 2 * h
            h *= 2


def mobius_inplace(cnp.uint8_t[::1] a):
    """Binary Moebius (zeta over GF(2)) butterfly; it is its own inverse."""
    cdef Py_ssize_t size = a.shape[0]
    cdef Py_ssize_t h = 1, i, j
    with nogil:
        while h < size:
            i = 0
            while i < size:
                for j in range(i, i + h):
                    a[j + h] ^= a[j]
                i += 2 * h
            h *= 2


def matmul_checked(const cnp.int64_t[:, ::1] a, const cnp.int64_t[:, ::1] b):
    """Exact ``a @ b`` in int64; raises OverflowError instead of wrapping."""
    cdef Py_ssize_t rows = a.shape[0], inner = a.shape[1], cols = b.shape[1]
    if b.shape[0] != inner:
        raise ValueError("shape mismatch")
    out = np.zeros((rows, cols), dtype=np.int64)
    cdef cnp.int64_t[:, ::1] c = out
    cdef Py_ssize_t i, k, j
    cdef long long aik, prod, acc
    cdef int bad = 0
    with nogil:
        for i in range(rows):
            for k in range(inner):
                aik = a[i, k]
                if aik == 0:
                    continue
                for j in range(cols):
                    if plateau_mul_ovf(aik, b[k, j], &prod):
                        bad = 1
                        break
                    if plateau_add_ovf(c[i, j], prod, &acc):
                        bad = 1
                        break
                    c[i, j] = acc
                if bad:
                    break
            if bad:
                break
    if bad:
        raise OverflowError("int64 overflow in matrix product")
    return out
