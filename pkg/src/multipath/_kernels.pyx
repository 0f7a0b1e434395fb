# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled elimination kernels.  Same contract as ``_kernels_py``."""
from libc.stdlib cimport calloc, free, malloc, realloc
from libc.stdint cimport int64_t


cdef inline int64_t _modinv(int64_t a, int64_t p) nogil:
    cdef int64_t t = 0, nt = 1, r = p, nr = a, q, tmp
    while nr != 0:
        q = r // nr
        tmp = t - q * nt
        t = nt
        nt = tmp
        tmp = r - q * nr
        r = nr
        nr = tmp
    if t < 0:
        t += p
    return t


def rank_mod_p(Py_ssize_t ncols, const long long[:] indptr, const long long[:] indices,
               const long long[:] values, long long p):
    """Rank over GF(p) of a CSR matrix, p < 2**31.

    Rows are folded one at a time into an echelon basis whose pivot rows are
    kept normalised (leading 1) and sparse.
    """
    cdef Py_ssize_t nrows = indptr.shape[0] - 1
    cdef Py_ssize_t r, k, c, cc, lo, hi, s, start
    cdef int64_t v, inv, pm = p
    cdef Py_ssize_t rank = 0, nstore = 0, cap = 1024
    if nrows <= 0 or ncols <= 0:
        return 0
    cdef int64_t *work = <int64_t *> calloc(ncols, sizeof(int64_t))
    cdef Py_ssize_t *piv_start = <Py_ssize_t *> malloc(ncols * sizeof(Py_ssize_t))
    cdef Py_ssize_t *piv_len = <Py_ssize_t *> malloc(ncols * sizeof(Py_ssize_t))
    cdef Py_ssize_t *st_idx = <Py_ssize_t *> malloc(cap * sizeof(Py_ssize_t))
    cdef int64_t *st_val = <int64_t *> malloc(cap * sizeof(int64_t))
    cdef void *grow
    if not (work and piv_start and piv_len and st_idx and st_val):
        free(work); free(piv_start); free(piv_len); free(st_idx); free(st_val)
        raise MemoryError()
    try:
        for c in range(ncols):
            piv_start[c] = -1
        for r in range(nrows):
            lo = ncols
            hi = -1
            for k in range(indptr[r], indptr[r + 1]):
                c = indices[k]
                v = values[k] % pm
                if v < 0:
                    v += pm
                work[c] = (work[c] + v) % pm
                if c < lo:
                    lo = c
                if c > hi:
                    hi = c
            c = lo
            while c <= hi:
                v = work[c]
                if v != 0:
                    s = piv_start[c]
                    if s >= 0:
                        v = pm - v
                        for k in range(s, s + piv_len[c]):
                            cc = st_idx[k]
                            work[cc] = (work[cc] + v * st_val[k]) % pm
                            if cc > hi:
                                hi = cc
                    else:
                        if nstore + (hi - c + 1) > cap:
                            while nstore + (hi - c + 1) > cap:
                                cap *= 2
                            grow = realloc(st_idx, cap * sizeof(Py_ssize_t))
                            if not grow:
                                raise MemoryError()
                            st_idx = <Py_ssize_t *> grow
                            grow = realloc(st_val, cap * sizeof(int64_t))
                            if not grow:
                                raise MemoryError()
                            st_val = <int64_t *> grow
                        inv = _modinv(v, pm)
                        start = nstore
                        for cc in range(c, hi + 1):
                            if work[cc] != 0:
                                st_idx[nstore] = cc
                                st_val[nstore] = work[cc] * inv % pm
                                nstore += 1
                        piv_start[c] = start
                        piv_len[c] = nstore - start
                        rank += 1
                        break
                c += 1
            for cc in range(lo, hi + 1):
                work[cc] = 0
    finally:
        free(work)
        free(piv_start)
        free(piv_len)
        free(st_idx)
        free(st_val)
    return rank
