"""Exact linear algebra used across the package.

* minors over an arbitrary commutative ring (entries only need ``+ - *``),
* Gaussian elimination over Q with Fractions,
* :class:`ZpLattice`, Z_(p)-submodules of Q^d with exact membership tests,
* :func:`dvr_smith`, Smith form over a discrete valuation ring given as a
  field plus a valuation.
"""
from fractions import Fraction
from math import gcd
from itertools import combinations

from iwk import kernels
from iwk.padic import vp


def identity(n):
    return [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]


def matmul(a, b):
    bt = list(zip(*b))
    return [[sum((x * y for x, y in zip(row, col)), Fraction(0)) for col in bt] for row in a]


def transpose(a):
    return [list(r) for r in zip(*a)]


def matvec(a, v):
    return [sum((x * y for x, y in zip(row, v)), Fraction(0)) for row in a]


def maximal_minors(rows, zero=0, one=1):
    """All k x k minors of a k x s matrix, keyed by sorted column tuple.

    Dynamic programme over column subsets, expanding along the last row; the
    entries only need ring operations, so polynomials and series work too.
    """
    k = len(rows)
    s = len(rows[0]) if rows else 0
    level = {(): one}
    for depth in range(k):
        row = rows[depth]
        nxt = {}
        for cols in combinations(range(s), depth + 1):
            acc = zero
            for pos, c in enumerate(cols):
                a = row[c]
                if a == 0:
                    continue
                sub = level.get(cols[:pos] + cols[pos + 1:])
                if sub is None or sub == 0:
                    continue
                term = a * sub
                acc = acc + term if (pos + depth) % 2 == 0 else acc - term
            nxt[cols] = acc
        level = nxt
    return level


def minors(matrix, size, zero=0, one=1):
    """All ``size`` x ``size`` minors as a list (row subsets x column subsets)."""
    if size == 0:
        return [one]
    out = []
    for rs in combinations(range(len(matrix)), size):
        out.extend(maximal_minors([matrix[i] for i in rs], zero, one).values())
    return out


def det(matrix, zero=0, one=1):
    n = len(matrix)
    if n == 0:
        return one
    if all(isinstance(x, int) for row in matrix for x in row):
        return kernels.det_bareiss([list(r) for r in matrix])
    if all(isinstance(x, (int, Fraction)) for row in matrix for x in row):
        return det_rational(matrix)
    return maximal_minors(matrix, zero, one)[tuple(range(n))]


def det_rational(matrix):
    a = [[Fraction(x) for x in row] for row in matrix]
    n = len(a)
    d = Fraction(1)
    for c in range(n):
        piv = next((r for r in range(c, n) if a[r][c] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            a[c], a[piv] = a[piv], a[c]
            d = -d
        d *= a[c][c]
        inv = 1 / a[c][c]
        for r in range(c + 1, n):
            f = a[r][c] * inv
            if f:
                for j in range(c, n):
                    a[r][j] -= f * a[c][j]
    return d


def rref(matrix):
    """Reduced row echelon form over Q; returns (rows, pivot columns)."""
    a = [[Fraction(x) for x in row] for row in matrix]
    if not a:
        return [], []
    m, n = len(a), len(a[0])
    pivots = []
    r = 0
    for c in range(n):
        piv = next((i for i in range(r, m) if a[i][c] != 0), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        inv = 1 / a[r][c]
        a[r] = [x * inv for x in a[r]]
        for i in range(m):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == m:
            break
    return a[:r], pivots


def rank(matrix):
    return len(rref(matrix)[1])


def nullspace(matrix, ncols=None):
    """Basis of {x : A x = 0} over Q."""
    if not matrix:
        return [[Fraction(int(i == j)) for j in range(ncols)] for i in range(ncols)]
    n = len(matrix[0])
    rows, pivots = rref(matrix)
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * n
        v[f] = Fraction(1)
        for row, pc in zip(rows, pivots):
            v[pc] = -row[f]
        basis.append(v)
    return basis


def inverse(matrix):
    n = len(matrix)
    aug = [list(map(Fraction, row)) + [Fraction(int(i == j)) for j in range(n)]
           for i, row in enumerate(matrix)]
    rows, pivots = rref(aug)
    if pivots[:n] != list(range(n)) or len(rows) < n:
        raise ZeroDivisionError("matrix is singular")
    return [row[n:] for row in rows]


def solve(matrix, rhs):
    """One solution of A x = b over Q, or None when inconsistent."""
    n = len(matrix[0])
    aug = [list(row) + [b] for row, b in zip(matrix, rhs)]
    rows, pivots = rref(aug)
    if n in pivots:
        return None
    x = [Fraction(0)] * n
    for row, pc in zip(rows, pivots):
        x[pc] = row[n]
    return x


class ZpLattice:
    """Z_(p)-span of vectors in Q^d with exact membership.

    Vectors may have any rational entries; they are first multiplied by the
    prime-to-p part of their denominators (a unit) and by ``p**shift`` where
    ``shift`` is fixed per lattice, so fractional lattices are supported as
    long as their p-denominators are bounded by ``p**shift``.

    With ``modulus`` set the lattice lives in ``(Z/modulus)^d`` instead, which
    is what the power-series desk ring needs (its coordinates are p-adic).
    """

    def __init__(self, p, dim, shift=0, modulus=None):
        self.p = p
        self.dim = dim
        self.shift = shift
        self.modulus = modulus
        self._rows = {}  # leading column -> vector

    # integer normalisation -------------------------------------------------
    def _normalise(self, vec):
        p = self.p
        if all(type(x) is int or (type(x) is Fraction and x.denominator == 1) for x in vec):
            out = [int(x) * p ** self.shift for x in vec]
            return [x % self.modulus for x in out] if self.modulus else out
        out = []
        den = 1
        for x in vec:
            x = Fraction(x)
            den = den * x.denominator // gcd(den, x.denominator)
        pden = p ** (vp(den, p) or 0)
        if pden > p ** self.shift:
            raise ValueError("vector has a larger p-denominator than the lattice shift allows")
        for x in vec:
            x = Fraction(x) * den * (p ** self.shift) // pden
            out.append(int(x))
        # multiplying by den/pden (a unit) and p**shift is harmless
        if self.modulus:
            out = [x % self.modulus for x in out]
        return out

    def _lead(self, v):
        for i, x in enumerate(v):
            if x:
                return i
        return None

    def _reduce_content(self, v):
        if self.modulus:
            return v
        g = 0
        for x in v:
            g = gcd(g, x)
        if g == 0:
            return v
        g //= self.p ** (vp(g, self.p) or 0)
        if g > 1:
            v = [x // g for x in v]
        return v

    def _eliminate(self, v, r, c):
        # r[c] has valuation <= that of v[c]
        p = self.p
        if self.modulus:
            # stored pivots are exactly p**w, and val(v[c]) >= w
            m = self.modulus
            f = v[c] // r[c]
            return [(x - f * y) % m for x, y in zip(v, r)]
        vr, vv = vp(r[c], p), vp(v[c], p)
        ur, uv = r[c] // p ** vr, v[c] // p ** vv
        f = uv * p ** (vv - vr)
        return self._reduce_content([ur * x - f * y for x, y in zip(v, r)])

    def _val(self, x):
        return vp(x, self.p)

    def _insert(self, v):
        pending = [v]
        while pending:
            v = pending.pop()
            while True:
                c = self._lead(v)
                if c is None:
                    break
                r = self._rows.get(c)
                if r is None:
                    self._store(c, v, pending)
                    break
                if self._val(v[c]) < self._val(r[c]):
                    self._store(c, v, pending)
                    v = r
                    continue
                v = self._eliminate(v, r, c)

    def _store(self, c, v, pending):
        if self.modulus:
            m = self.modulus
            w = self._val(v[c])
            u = v[c] // self.p ** w
            inv = pow(u, -1, m)
            v = [x * inv % m for x in v]
            # p**(E - w) * v has a zero lead but may be nonzero further right
            if w:
                e = vp(m, self.p)
                extra = [x * self.p ** (e - w) % m for x in v]
                if any(extra):
                    pending.append(extra)
        else:
            v = self._reduce_content(v)
        self._rows[c] = v

    # public API --------------------------------------------------------------
    def add(self, vec):
        if len(vec) != self.dim:
            raise ValueError("dimension mismatch")
        self._insert(self._normalise(vec))
        return self

    def extend(self, vecs):
        for v in vecs:
            self.add(v)
        return self

    def contains(self, vec):
        try:
            v = self._normalise(vec)
        except ValueError:
            # every member has p-denominator at most p**shift
            return False
        while True:
            c = self._lead(v)
            if c is None:
                return True
            r = self._rows.get(c)
            if r is None or self._val(v[c]) < self._val(r[c]):
                return False
            v = self._eliminate(v, r, c)

    def basis(self):
        return [self._rows[c] for c in sorted(self._rows)]

    def rank(self):
        return len(self._rows)

    def issubset(self, other):
        scale = Fraction(1, self.p ** self.shift)
        return all(other.contains([Fraction(x) * scale for x in r]) for r in self.basis())

    def __eq__(self, other):
        return self.issubset(other) and other.issubset(self)

    def pivot_valuations(self):
        return {c: self._val(r[c]) for c, r in self._rows.items()}




def dvr_smith(matrix, valuation, track=False):
    """Smith form over the DVR {x : valuation(x) >= 0} of a field.

    ``matrix`` entries are field elements (Fraction, RatFunc, ...) and
    ``valuation`` maps nonzero elements to ints and zero to None.  Returns
    ``(exponents, info)`` where ``exponents`` lists the valuations of the
    nonzero elementary divisors and ``info`` carries ``rank`` and, when
    ``track`` is set, ``w_inv`` with ``U A W = D`` and ``w_inv = W^{-1}``.
    """
    a = [list(row) for row in matrix]
    r = len(a)
    s = len(a[0]) if r else 0
    w_inv = [[Fraction(int(i == j)) for j in range(s)] for i in range(s)] if track else None
    exps = []
    for t in range(min(r, s)):
        best = None
        for i in range(t, r):
            for j in range(t, s):
                if a[i][j]:
                    v = valuation(a[i][j])
                    if best is None or v < best[0]:
                        best = (v, i, j)
        if best is None:
            break
        v, i, j = best
        a[t], a[i] = a[i], a[t]
        if j != t:
            for row in a:
                row[t], row[j] = row[j], row[t]
            if track:
                w_inv[t], w_inv[j] = w_inv[j], w_inv[t]
        piv = a[t][t]
        for i in range(t + 1, r):
            if a[i][t]:
                f = a[i][t] / piv
                a[i] = [x - f * y for x, y in zip(a[i], a[t])]
        for j in range(t + 1, s):
            if a[t][j]:
                f = a[t][j] / piv
                for row in a:
                    row[j] = row[j] - f * row[t]
                if track:
                    w_inv[t] = [x + f * y for x, y in zip(w_inv[t], w_inv[j])]
        exps.append(v)
    info = {"rank": len(exps)}
    if track:
        info["w_inv"] = w_inv
    return exps, info


def saturation(vectors, p):
    """Z_(p)^m intersected with the Q-span of ``vectors`` (a Z_(p)-basis)."""
    vectors = [v for v in vectors if any(v)]
    if not vectors:
        return []

    def val(x):
        return vp(x, p)

    exps, info = dvr_smith([[Fraction(x) for x in v] for v in vectors], val, track=True)
    return [info["w_inv"][i] for i in range(info["rank"])]
