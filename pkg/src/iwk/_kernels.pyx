# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels: truncated series product, monic remainder, Bareiss det.

Moduli below 2**62 run on machine words with 128-bit accumulation; anything
else falls through to the generic object loop.
"""

cdef extern from *:
    ctypedef long long i128 "__int128"

_WORD_LIMIT = 1 << 62


cdef bint _fits(list xs, long long modulus):
    cdef object x
    for x in xs:
        if x < 0 or x >= modulus:
            return False
    return True


def series_mul(list a, list b, Py_ssize_t trunc, object modulus=0):
    cdef Py_ssize_t la = len(a), lb = len(b), n, i, j, lim
    if la == 0 or lb == 0 or trunc <= 0:
        return []
    n = min(trunc, la + lb - 1)
    if modulus and 0 < modulus < _WORD_LIMIT and _fits(a, modulus) and _fits(b, modulus):
        return _series_mul_word(a, b, n, <long long>modulus)
    cdef list out = [0] * n
    cdef object ai
    for i in range(min(la, n)):
        ai = a[i]
        if not ai:
            continue
        lim = min(lb, n - i)
        for j in range(lim):
            out[i + j] += ai * b[j]
    if modulus:
        return [c % modulus for c in out]
    return out


cdef list _series_mul_word(list a, list b, Py_ssize_t n, long long m):
    cdef Py_ssize_t la = len(a), lb = len(b), i, k, lo, hi
    cdef long long[::1] av, bv
    import array
    av = array.array('q', a[:min(la, n)])
    bv = array.array('q', b[:min(lb, n)])
    la = av.shape[0]
    lb = bv.shape[0]
    cdef i128 acc
    cdef i128 limit = (<i128>1) << 125
    cdef list out = [0] * n
    for k in range(n):
        acc = 0
        lo = k - lb + 1 if k - lb + 1 > 0 else 0
        hi = k if k < la - 1 else la - 1
        for i in range(lo, hi + 1):
            acc += (<i128>av[i]) * bv[k - i]
            if acc >= limit:
                acc %= m
        out[k] = <long long>(acc % m)
    return out


def poly_rem_monic(list a, list m, object modulus=0):
    cdef Py_ssize_t d = len(m) - 1, top, j, shift
    if d < 0 or m[d] != 1:
        raise ValueError("modulus polynomial must be monic")
    cdef list r = list(a)
    cdef object c
    for top in range(len(r) - 1, d - 1, -1):
        c = r[top]
        if not c:
            continue
        shift = top - d
        for j in range(d):
            r[shift + j] -= c * m[j]
        if modulus:
            for j in range(d):
                r[shift + j] %= modulus
        r[top] = 0
    r = r[:d] + [0] * max(0, d - len(r))
    if modulus:
        return [x % modulus for x in r]
    return r


def det_bareiss(list rows):
    cdef Py_ssize_t n = len(rows), k, i, j
    if n == 0:
        return 1
    cdef list a = [list(r) for r in rows]
    cdef int sign = 1
    cdef object prev = 1, akk, aik
    cdef list row_i, row_k
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        akk = a[k][k]
        row_k = a[k]
        for i in range(k + 1, n):
            row_i = a[i]
            aik = row_i[k]
            for j in range(k + 1, n):
                row_i[j] = (row_i[j] * akk - aik * row_k[j]) // prev
        prev = akk
    return sign * a[n - 1][n - 1]
