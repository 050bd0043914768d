"""L-invariant matrices, the ideals I_k, and Greenberg-style L-invariants.

A full log-Jacobian ``G`` is square with ``G[i][l] = dlog F_i / dlog(1+X_l)``.
Because ``sum_i log F_i`` is constant, every column of ``G`` sums to zero.
"""
import random
from dataclasses import dataclass
from fractions import Fraction

from iwk.errors import DegenerateDirection, DimensionMismatch
from iwk.iwasawa import MultiSeries, WeightVar, norm_substitute
from iwk.linalg import det, inverse, matmul, maximal_minors, minors
from iwk.modules import IdealGens, LayerQuotient
from iwk.poly import Poly
from iwk.sl2 import m_coeff, m_prime


@dataclass(frozen=True)
class LogJacobian:
    n: int  # the matrix is (n+1) x (n+1)
    entries: tuple

    @classmethod
    def from_rows(cls, rows):
        m = len(rows)
        if any(len(r) != m for r in rows):
            raise DimensionMismatch("log-Jacobian must be square")
        return cls(m - 1, tuple(tuple(Fraction(x) for x in r) for r in rows))

    def rows(self):
        return [list(r) for r in self.entries]

    def column_sums(self):
        return [sum(col) for col in zip(*self.entries)]

    def is_constrained(self):
        return all(s == 0 for s in self.column_sums())


def l_matrix(jac):
    """Difference matrix dlog(1+T_i)/dlog(1+X_last) - dlog(1+T_i)/dlog(1+X_j) and its determinant.

    Accepts a full square Jacobian (its last row is dropped) or the
    ``(m-1) x m`` block of the first ``m-1`` rows.
    """
    rows = jac.rows() if isinstance(jac, LogJacobian) else [list(map(Fraction, r)) for r in jac]
    if not rows:
        raise DimensionMismatch("empty Jacobian")
    m = len(rows[0])
    if any(len(r) != m for r in rows):
        raise DimensionMismatch("ragged Jacobian")
    if len(rows) == m:
        rows = rows[:-1]
    elif len(rows) != m - 1:
        raise DimensionMismatch(f"expected {m - 1} or {m} rows for {m} columns, got {len(rows)}")
    mat = [[r[m - 1] - r[j] for j in range(m - 1)] for r in rows]
    return mat, det(mat) if mat else Fraction(1)


@dataclass(frozen=True)
class LInvariantIdeal:
    k: int
    p: int
    from_minors: IdealGens
    from_expansion: IdealGens

    @property
    def generators(self):
        return self.from_minors.generators

    def consistent(self):
        return self.from_minors == self.from_expansion


def i_k_ideal(lmat, k, p):
    """I_k as the 0th Fitting ideal of (S*1 | L) over B_k, and as sum_i S^i F^(i)(L)."""
    n1 = len(lmat)
    if any(len(r) != n1 for r in lmat):
        raise DimensionMismatch("L must be square")
    ring = LayerQuotient(p, k)
    s = Poly([0, 1])
    lp = [[Poly(Fraction(x)) for x in row] for row in lmat]
    aug = [[s if i == j else Poly() for j in range(n1)] + lp[i] for i in range(n1)]
    if n1 == 0:
        gens = [Poly(1)]
    else:
        gens = list(maximal_minors(aug, Poly(), Poly(1)).values())
    expansion = []
    for i in range(n1 + 1):
        size = n1 - i
        fi = minors([[Fraction(x) for x in row] for row in lmat], size, Fraction(0), Fraction(1)) if size else [1]
        expansion.extend(s ** i * Poly(g) for g in fi)
    return LInvariantIdeal(k, p, IdealGens(ring, gens), IdealGens(ring, expansion))


def det_ideal_check(lmat, p):
    """I_0 == (det L) in B_0 = Z_p."""
    ideal = i_k_ideal(lmat, 0, p)
    d = det([[Fraction(x) for x in r] for r in lmat]) if lmat else Fraction(1)
    return ideal.from_minors == IdealGens(ideal.from_minors.ring, [d])


# -- scaling under the norm map ------------------------------------------------

def layer_log_series(a, k, rng=None, truncation=3):
    """Series log(1+T_{k,i}) in X_{k,1..m} with linear part ``a[i]`` plus quadratic noise."""
    m = len(a[0])
    xs = tuple(WeightVar("X", k, j) for j in range(1, m + 1))
    out = []
    for row in a:
        terms = {}
        for j, c in enumerate(row):
            e = [0] * m
            e[j] = 1
            terms[tuple(e)] = Fraction(c)
        if rng is not None:
            for _ in range(2):
                e = [0] * m
                e[rng.randrange(m)] += 1
                e[rng.randrange(m)] += 1
                terms[tuple(e)] = terms.get(tuple(e), 0) + rng.randint(-5, 5)
        out.append(MultiSeries(xs, terms, truncation))
    return out


def scaling_factor(a, k, p, seed=0):
    """(L_k, L_0) where L_0 is computed after pulling the layer-k series back to layer 0."""
    rng = random.Random(seed)
    series = layer_log_series(a, k, rng)
    pulled = [norm_substitute(f, k, p) for f in series]
    j0 = [f.linear_coefficients() for f in pulled]
    jk = [f.linear_coefficients() for f in series]
    return l_matrix(jk)[1], l_matrix(j0)[1]


def scaling_check(a, k, p, seed=0):
    """L_k == p^{-k(n-1)} L_0, where a has n columns (weight variables)."""
    n = len(a[0])
    lk, l0 = scaling_factor(a, k, p, seed)
    return lk == Fraction(1, p ** (k * (n - 1))) * l0


# -- Greenberg L-invariants ----------------------------------------------------

def greenberg_l(j, jac, y):
    """-(sum_i M_{n,j,i-1} (G y)_i) / (sum_i M_{n,j,i-1} y_i)."""
    g = jac.rows() if isinstance(jac, LogJacobian) else [list(map(Fraction, r)) for r in jac]
    n = len(g) - 1
    if len(y) != n + 1:
        raise DimensionMismatch(f"direction needs {n + 1} components")
    if not 1 <= j <= n:
        raise DimensionMismatch(f"j must lie in 1..{n}")
    y = [Fraction(v) for v in y]
    if sum(y) != 0:
        raise DegenerateDirection("direction components must sum to zero")
    gy = [sum((a * b for a, b in zip(row, y)), Fraction(0)) for row in g]
    weights = [m_coeff(n, j, i) for i in range(n + 1)]
    den = sum(w * v for w, v in zip(weights, y))
    if den == 0:
        raise DegenerateDirection(f"sum_i M_(n,{j},i-1) y_i vanishes for y=({', '.join(map(str, y))})")
    num = sum(w * v for w, v in zip(weights, gy))
    return -num / den


def build_consistent_jacobian(d, n=None):
    """A constrained (n+1)x(n+1) Jacobian whose Greenberg invariants are ``d``.

    F' = -M'^{-1} diag(d) M' fills the top-left n x n block, the last column
    is zero and the last row makes every column sum to zero.
    """
    d = [Fraction(x) for x in d]
    n = len(d) if n is None else n
    if len(d) != n:
        raise DimensionMismatch("need one target value per j = 1..n")
    mp = [[Fraction(x) for x in row] for row in m_prime(n)]
    fprime = matmul(inverse(mp), matmul([[d[i] if i == j else Fraction(0) for j in range(n)] for i in range(n)], mp))
    fprime = [[-x for x in row] for row in fprime]
    g = [row + [Fraction(0)] for row in fprime]
    g.append([-sum(fprime[i][l] for i in range(n)) for l in range(n)] + [Fraction(0)])
    return LogJacobian.from_rows(g), fprime


def random_direction(rng, n, j=None):
    """Integer direction with sum zero, nonzero denominator for index j if given."""
    while True:
        y = [rng.randint(-6, 6) for _ in range(n)]
        y.append(-sum(y))
        if not any(y):
            continue
        if j is not None and sum(m_coeff(n, j, i) * v for i, v in enumerate(y)) == 0:
            continue
        return y


@dataclass
class CompareReport:
    n: int
    product: Fraction
    l_value: Fraction
    det_fprime: Fraction
    direction_independent: bool
    values: list
    targets: list

    @property
    def ok(self):
        sign = (-1) ** self.n
        return (self.product == self.l_value and self.direction_independent
                and self.values == self.targets and sign * self.det_fprime == self.product)


def compare_check(d, n=None, directions=10, seed=0):
    """prod_j L_j^Gr == L from the L-matrix, for the Jacobian built from ``d``."""
    d = [Fraction(x) for x in d]
    n = len(d) if n is None else n
    jac, fprime = build_consistent_jacobian(d, n)
    rng = random.Random(seed)
    independent = True
    values = []
    for j in range(1, n + 1):
        seen = set()
        for _ in range(directions):
            seen.add(greenberg_l(j, jac, random_direction(rng, n, j)))
        independent &= len(seen) == 1
        values.append(seen.pop() if len(seen) == 1 else None)
    product = Fraction(1)
    for v in values:
        product = product * v if v is not None else product
    _, l_value = l_matrix(jac)
    return CompareReport(n, product, l_value, det(fprime) if fprime else Fraction(1), independent, values, d)
