"""Pure-Python reference kernels.

Same signatures and results as the compiled ``_kernels`` extension; used when
the extension is unavailable or ``IWK_PURE_PYTHON`` is set.
"""


def series_mul(a, b, trunc, modulus=0):
    """Product of coefficient lists ``a`` and ``b`` truncated to ``trunc`` terms.

    With ``modulus`` > 0 every coefficient is reduced into ``[0, modulus)``.
    The result has ``min(trunc, len(a) + len(b) - 1)`` entries.
    """
    la, lb = len(a), len(b)
    if la == 0 or lb == 0 or trunc <= 0:
        return []
    n = min(trunc, la + lb - 1)
    out = [0] * n
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


def poly_rem_monic(a, m, modulus=0):
    """Remainder of ``a`` modulo the monic polynomial ``m`` (low-to-high lists)."""
    d = len(m) - 1
    if d < 0 or m[-1] != 1:
        raise ValueError("modulus polynomial must be monic")
    r = list(a)
    for top in range(len(r) - 1, d - 1, -1):
        c = r[top]
        if not c:
            continue
        shift = top - d
        for j in range(d):
            r[shift + j] -= c * m[j]
        r[top] = 0
    r = r[:d] + [0] * max(0, d - len(r))
    if modulus:
        return [c % modulus for c in r]
    return r


def det_bareiss(rows):
    """Exact determinant of a square integer matrix (fraction-free elimination)."""
    n = len(rows)
    if n == 0:
        return 1
    a = [list(r) for r in rows]
    sign = 1
    prev = 1
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
        for i in range(k + 1, n):
            aik = a[i][k]
            row_i = a[i]
            row_k = a[k]
            for j in range(k + 1, n):
                row_i[j] = (row_i[j] * akk - aik * row_k[j]) // prev
        prev = akk
    return sign * a[n - 1][n - 1]
