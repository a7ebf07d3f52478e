# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled convolution kernel.

Same contract as ``_pykernels.convolve_dominant``; callers guarantee that
all partial sums fit in a signed 64-bit integer.
"""
from array import array

from libc.stdlib cimport calloc, free
from libc.stdint cimport int64_t

cdef int64_t DENSE_LIMIT = 1 << 24


def convolve_dominant(int rank, left, right):
    cdef Py_ssize_t n1 = len(left), n2 = len(right)
    if n1 == 0 or n2 == 0:
        return {}
    cdef int64_t[::1] ac = array("q", [c for w, _ in left for c in w])
    cdef int64_t[::1] am = array("q", [m for _, m in left])
    cdef int64_t[::1] bc = array("q", [c for w, _ in right for c in w])
    cdef int64_t[::1] bm = array("q", [m for _, m in right])
    cdef Py_ssize_t i, j, k, idx
    cdef int64_t s, size = 1
    cdef int ok
    hi = []
    for k in range(rank):
        hi.append(max(ac[i * rank + k] for i in range(n1)) + max(bc[j * rank + k] for j in range(n2)))
        if hi[k] < 0:
            return {}
    for k in range(rank):
        size *= hi[k] + 1
        if size > DENSE_LIMIT:
            return _convolve_sparse(rank, n1, n2, ac, am, bc, bm)
    cdef int64_t[::1] stride = array("q", [0] * rank)
    s = 1
    for k in range(rank - 1, -1, -1):
        stride[k] = s
        s *= hi[k] + 1
    cdef int64_t *acc = <int64_t *> calloc(size, sizeof(int64_t))
    if acc == NULL:
        raise MemoryError()
    cdef int64_t v
    try:
        with nogil:
            for i in range(n1):
                for j in range(n2):
                    ok = 1
                    idx = 0
                    for k in range(rank):
                        v = ac[i * rank + k] + bc[j * rank + k]
                        if v < 0:
                            ok = 0
                            break
                        idx += v * stride[k]
                    if ok:
                        acc[idx] += am[i] * bm[j]
        out = {}
        for idx in range(size):
            if acc[idx] != 0:
                key = []
                s = idx
                for k in range(rank):
                    key.append(s // stride[k])
                    s = s % stride[k]
                out[tuple(key)] = acc[idx]
        return out
    finally:
        free(acc)


cdef dict _convolve_sparse(int rank, Py_ssize_t n1, Py_ssize_t n2,
                           int64_t[::1] ac, int64_t[::1] am,
                           int64_t[::1] bc, int64_t[::1] bm):
    cdef dict out = {}
    cdef Py_ssize_t i, j, k
    cdef int ok
    cdef int64_t v
    for i in range(n1):
        for j in range(n2):
            ok = 1
            for k in range(rank):
                if ac[i * rank + k] + bc[j * rank + k] < 0:
                    ok = 0
                    break
            if ok:
                key = tuple([ac[i * rank + k] + bc[j * rank + k] for k in range(rank)])
                out[key] = out.get(key, 0) + am[i] * bm[j]
    return out
