"""Symmetric powers of 2x2 matrices and sl2 Clebsch-Gordan combinatorics.

Conventions: ``Sym^n V`` has basis ``x**(n-l) * y**l`` (l = 0..n) with
``x = e_1`` of weight +1 and ``y = e_{-1}`` of weight -1.  A matrix
``g = [[a, b], [c, d]]`` acts by ``x -> a x + c y``, ``y -> b x + d y``.
``Sym^n V*`` uses the dual monomials ``(e_1*)**(n-l) (e_{-1}*)**l``, on which
g acts through ``Sym^n(g^{-T})``.
"""
import random
from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial

from iwk.errors import IndexOutOfRange, RangeParityError, SingularInput
from iwk.linalg import det, identity, inverse, matmul, nullspace, transpose
from iwk import poly as P


@dataclass(frozen=True)
class SymPowerMap:
    n: int
    matrix: tuple  # rows of Fractions

    def rows(self):
        return [list(r) for r in self.matrix]

    def trace(self):
        return sum(self.matrix[i][i] for i in range(self.n + 1))


def _binom_expand(a, c, m):
    """Coefficients of (a x + c y)**m in the basis x**(m-l) y**l."""
    return [comb(m, l) * a ** (m - l) * c ** l for l in range(m + 1)]


def sym_power(g, n):
    """Matrix of Sym^n(g) on the monomial basis."""
    if n < 0:
        raise IndexOutOfRange("degree must be >= 0")
    (a, b), (c, d) = [[Fraction(x) for x in row] for row in g]
    cols = []
    for l in range(n + 1):
        col = P.mul(_binom_expand(a, c, n - l), _binom_expand(b, d, l))
        cols.append([Fraction(col[i]) if i < len(col) else Fraction(0) for i in range(n + 1)])
    return SymPowerMap(n, tuple(tuple(r) for r in transpose(cols)))


def dual_sym_power(g, n):
    """Action of g on Sym^n V* in the dual-monomial basis."""
    return sym_power(transpose(inverse(g)), n)


def a_twist(g, j):
    """Sym^{2j}(g) * det(g)**(-j)."""
    d = det([[Fraction(x) for x in r] for r in g])
    if d == 0:
        raise SingularInput("twist needs an invertible matrix")
    s = sym_power(g, 2 * j)
    scale = Fraction(d) ** (-j)
    return [[x * scale for x in row] for row in s.matrix]


def m_coeff(m, k, i):
    """M_{m,k,i} = sum_a (-1)^a m!(m-i+a)!(i+k-a)! / (a!(i-a)!(k-a)!(m-i-k+a)!)."""
    if not (0 <= k <= m and 0 <= i <= m):
        raise IndexOutOfRange(f"need 0 <= k, i <= m, got m={m}, k={k}, i={i}")
    total = 0
    f = factorial
    for a in range(max(0, i + k - m), min(i, k) + 1):
        num = f(m) * f(m - i + a) * f(i + k - a)
        den = f(a) * f(i - a) * f(k - a) * f(m - i - k + a)
        total += (-1) ** a * num // den
    return total


def m_table(m):
    """Rows (m, k, i, value) for 0 <= k, i <= m."""
    return [(m, k, i, m_coeff(m, k, i)) for k in range(m + 1) for i in range(m + 1)]


def m_matrix(n):
    """Square matrix (M_{n,k,i})_{k,i = 0..n}."""
    return [[m_coeff(n, k, i) for i in range(n + 1)] for k in range(n + 1)]


def m_prime(n):
    """M'_{j,i} = M_{n,j,i} - M_{n,j,n}, j = 1..n, i = 0..n-1."""
    return [[m_coeff(n, j, i) - m_coeff(n, j, n) for i in range(n)] for j in range(1, n + 1)]


def m_prime_det_identity(n):
    """(det M, (-1)^n n! det M') - equal when the identity holds."""
    return det(m_matrix(n)), (-1) ** n * factorial(n) * det(m_prime(n))


def phi_n_dual(n):
    """phi_n: x^(n-i) y^i -> (-1)^(n-i) (e_1*)^i (e_{-1}*)^(n-i)."""
    mat = [[Fraction(0)] * (n + 1) for _ in range(n + 1)]
    for i in range(n + 1):
        mat[n - i][i] = Fraction((-1) ** (n - i))
    return mat


def phi_n_symmetry(n):
    """phi_n^T == (-1)^n phi_n, i.e. the induced pairing has parity (-1)^n."""
    f = phi_n_dual(n)
    return transpose(f) == [[(-1) ** n * x for x in row] for row in f]


# -- Clebsch-Gordan projections ---------------------------------------------

@dataclass(frozen=True)
class CGProjection:
    a: int
    b: int
    r: int
    matrix: tuple  # (r+1) x ((a+1)(b+1)); column i*(b+1)+j is x^(a-i)y^i (x) x^(b-j)y^j

    def image(self, i, j):
        col = i * (self.b + 1) + j
        return [self.matrix[l][col] for l in range(self.r + 1)]

    def apply(self, tensor):
        return [sum((c * t for c, t in zip(row, tensor)), Fraction(0)) for row in self.matrix]


def _raise_op(n):
    """x d/dy on Sym^n: x^(n-l) y^l -> l x^(n-l+1) y^(l-1)."""
    m = [[Fraction(0)] * (n + 1) for _ in range(n + 1)]
    for l in range(1, n + 1):
        m[l - 1][l] = Fraction(l)
    return m


def _lower_op(n):
    """y d/dx on Sym^n: x^(n-l) y^l -> (n-l) x^(n-l-1) y^(l+1)."""
    m = [[Fraction(0)] * (n + 1) for _ in range(n + 1)]
    for l in range(n):
        m[l + 1][l] = Fraction(n - l)
    return m


def _kron(a, b):
    return [[x * y for x in ra for y in rb] for ra in a for rb in b]


def _tensor_op(op_a, op_b, a, b):
    """op (x) 1 + 1 (x) op on Sym^a (x) Sym^b."""
    ia, ib = identity(a + 1), identity(b + 1)
    left, right = _kron(op_a, ib), _kron(ia, op_b)
    return [[x + y for x, y in zip(r1, r2)] for r1, r2 in zip(left, right)]


def cg_projection(a, b, r):
    """The sl2-equivariant map Sym^a (x) Sym^b -> Sym^r.

    Solved from the raising/lowering equivariance equations with a
    weight-preserving ansatz; scaled so that ``y^a (x) x^b`` has coefficient
    +1 on ``x^(b-t) y^(a-t)``, where ``t = (a+b-r)/2``.
    """
    if r < abs(a - b) or r > a + b or (a + b - r) % 2:
        raise RangeParityError(f"r={r} not in the Clebsch-Gordan range of ({a}, {b})")
    t = (a + b - r) // 2
    unknowns = []  # (i, j, l)
    for i in range(a + 1):
        for j in range(b + 1):
            l = i + j - t
            if 0 <= l <= r:
                unknowns.append((i, j, l))
    index = {u: k for k, u in enumerate(unknowns)}
    ncol = (a + 1) * (b + 1)

    def xi_matrix(vec):
        m = [[Fraction(0)] * ncol for _ in range(r + 1)]
        for (i, j, l), k in index.items():
            m[l][i * (b + 1) + j] = vec[k]
        return m

    # linear in the unknowns: Xi*E - E_r*Xi = 0 for E in {X, Y}
    equations = []
    for op in (_raise_op, _lower_op):
        e_src = _tensor_op(op(a), op(b), a, b)
        e_dst = op(r)
        for row in range(r + 1):
            for col in range(ncol):
                coeffs = [Fraction(0)] * len(unknowns)
                # (Xi E)[row][col] = sum_s Xi[row][s] E[s][col]
                for s in range(ncol):
                    if e_src[s][col]:
                        i, j = divmod(s, b + 1)
                        k = index.get((i, j, row))
                        if k is not None:
                            coeffs[k] += e_src[s][col]
                # (E_r Xi)[row][col] = sum_q E_r[row][q] Xi[q][col]
                i, j = divmod(col, b + 1)
                for q in range(r + 1):
                    if e_dst[row][q]:
                        k = index.get((i, j, q))
                        if k is not None:
                            coeffs[k] -= e_dst[row][q]
                if any(coeffs):
                    equations.append(coeffs)
    basis = nullspace(equations, len(unknowns))
    if len(basis) != 1:
        raise ArithmeticError(f"equivariant maps form a space of dimension {len(basis)}")
    vec = basis[0]
    pin = index[(a, 0, a - t)]
    if vec[pin] == 0:
        raise ArithmeticError("normalising coefficient vanishes")
    vec = [v / vec[pin] for v in vec]
    return CGProjection(a, b, r, tuple(tuple(row) for row in xi_matrix(vec)))


def equivariance_defect(proj, g):
    """Xi (Sym^a g (x) Sym^b g) - Sym^r g Xi; all zeros for an equivariant map."""
    src = _kron(sym_power(g, proj.a).rows(), sym_power(g, proj.b).rows())
    lhs = matmul([list(r) for r in proj.matrix], src)
    rhs = matmul(sym_power(g, proj.r).rows(), [list(r) for r in proj.matrix])
    return [[x - y for x, y in zip(r1, r2)] for r1, r2 in zip(lhs, rhs)]


# -- End(Sym^n) -> Sym^{2k} ---------------------------------------------------

@dataclass(frozen=True)
class PhiComposite:
    n: int
    k: int
    matrix: tuple  # (2k+1) x (n+1)^2; column i*(n+1)+j is x^(n-i)y^i (x) dual monomial j

    def image(self, i, j):
        col = i * (self.n + 1) + j
        return [self.matrix[w][col] for w in range(2 * self.k + 1)]

    def c_coeff(self, i, w=None):
        """C^{i,n-i,w}_{n,n,2k}; the default w = k is the weight-zero coordinate."""
        w = self.k if w is None else w
        return (-1) ** i * self.image(i, i)[w]


def phi_composite(n, k):
    """(-1)^(n-k) n! n!/(n-k)! * Xi_{n,n,2k} o (1 (x) phi_n^{-1})."""
    if not 0 <= k <= n:
        raise IndexOutOfRange(f"need 0 <= k <= n, got n={n}, k={k}")
    xi = cg_projection(n, n, 2 * k)
    inv_phi = inverse(phi_n_dual(n))
    one_tensor = _kron(identity(n + 1), inv_phi)
    scale = Fraction((-1) ** (n - k) * factorial(n) * factorial(n), factorial(n - k))
    m = matmul([list(r) for r in xi.matrix], one_tensor)
    return PhiComposite(n, k, tuple(tuple(x * scale for x in row) for row in m))


def c_matrix(n):
    """(C^{i,n-i,k}_{n,n,2k})_{i,k}."""
    comps = [phi_composite(n, k) for k in range(n + 1)]
    return [[comps[k].c_coeff(i) for k in range(n + 1)] for i in range(n + 1)]


def anchor_scale(n):
    """Scalar s with M_{n,0,i} = s * (-1)^i binom(n,i) C^{i,n-i,0}; 1 means no rescaling."""
    comp = phi_composite(n, 0)
    ratios = {Fraction(m_coeff(n, 0, i), (-1) ** i * comb(n, i) * comp.c_coeff(i)) for i in range(n + 1)}
    if len(ratios) != 1:
        raise ArithmeticError(f"anchor ratio depends on i: {sorted(ratios)}")
    return ratios.pop()


def cm_relation(n):
    """Per (k, i): (M_{n,k,i}, s * (-1)^i binom(n,i) C^{i,n-i,k}) with the anchor scale s."""
    s = anchor_scale(n)
    out = []
    for k in range(n + 1):
        comp = phi_composite(n, k)
        for i in range(n + 1):
            out.append((k, i, m_coeff(n, k, i), s * (-1) ** i * comb(n, i) * comp.c_coeff(i)))
    return out


def weights_preserved(comp):
    """Image of a weight-w tensor lies in the weight-w line of Sym^{2k}."""
    n, k = comp.n, comp.k
    for i in range(n + 1):
        for j in range(n + 1):
            w = 2 * (j - i)
            for l, v in enumerate(comp.image(i, j)):
                if v and 2 * k - 2 * l != w:
                    return False
    return True


# -- characters ----------------------------------------------------------------

def random_sl2(rng, steps=4, bound=3):
    """Random integral SL2 element as a product of elementary matrices."""
    g = [[1, 0], [0, 1]]
    for _ in range(steps):
        t = rng.randint(-bound, bound)
        e = [[1, t], [0, 1]] if rng.random() < 0.5 else [[1, 0], [t, 1]]
        g = [[sum(g[i][m] * e[m][j] for m in range(2)) for j in range(2)] for i in range(2)]
    return g


def _trace_sym(g, n):
    """trace Sym^n(g) = h_n(eigenvalues), via the recursion on tr g and det g."""
    t = Fraction(g[0][0] + g[1][1])
    d = Fraction(g[0][0] * g[1][1] - g[0][1] * g[1][0])
    prev, cur = Fraction(1), t
    if n == 0:
        return prev
    for _ in range(n - 1):
        prev, cur = cur, t * cur - d * prev
    return cur


def decomposition_check(n, sample_count=50, seed=0):
    """Character identities for End(Sym^{n-1}) and Sym^{n-1} (x) Sym^n on random SL2 elements."""
    if n < 2:
        raise IndexOutOfRange("needs n >= 2")
    rng = random.Random(seed)
    for _ in range(sample_count):
        g = random_sl2(rng)
        ginv = [[g[1][1], -g[0][1]], [-g[1][0], g[0][0]]]
        sg = sym_power(g, n - 1)
        lhs = sg.trace() * sym_power(ginv, n - 1).trace()
        if lhs != sum(sym_power(g, 2 * j).trace() for j in range(n)):
            return False
        if sg.trace() != _trace_sym(g, n - 1):
            return False
        lhs = sg.trace() * sym_power(g, n).trace()
        if lhs != sum(sym_power(g, m).trace() for m in range(1, 2 * n, 2)):
            return False
    return True


def adjoint_twist_check(n, sample_count=20, seed=0):
    """End(Sym^{n-1} g) = 1 + sum_{j=1}^{n-1} A^j(g) as characters, for g in GL2."""
    rng = random.Random(seed)
    for _ in range(sample_count):
        g = random_sl2(rng)
        s = rng.choice([1, 2, 3, -2])
        g = [[g[0][0] * s, g[0][1]], [g[1][0] * s, g[1][1]]]  # det = s
        ginv = inverse(g)
        lhs = sym_power(g, n - 1).trace() * sym_power(ginv, n - 1).trace()
        rhs = 1 + sum(sum(a_twist(g, j)[i][i] for i in range(2 * j + 1)) for j in range(1, n))
        if lhs != rhs:
            return False
    return True
