"""Hecke and Frobenius parameters under symmetric-power transfer and cyclic base change."""
from dataclasses import dataclass
from fractions import Fraction

from iwk import poly as P
from iwk.errors import DimensionMismatch, NotMonic, ZeroEigenvalue


def elementary_symmetric(values, one=1, zero=0):
    """[e_0, e_1, ..., e_n] of a list of ring elements."""
    e = [one] + [zero] * len(values)
    for v in values:
        for i in range(len(e) - 1, 0, -1):
            e[i] = e[i] + e[i - 1] * v
    return e


@dataclass(frozen=True)
class HeckeCharPoly:
    """X^n - T_1 X^(n-1) + ... + (-1)^i N^(i(i-1)/2) T_i X^(n-i) + ... ."""

    n: int
    t: tuple  # T_1..T_n
    norm: int

    def coefficients(self):
        """Monic polynomial, low degree first."""
        out = [None] * (self.n + 1)
        out[self.n] = 1
        for i, ti in enumerate(self.t, start=1):
            out[self.n - i] = (-1) ** i * self.norm ** (i * (i - 1) // 2) * ti
        return out

    @classmethod
    def from_coefficients(cls, coeffs, norm):
        c = list(coeffs)
        n = len(c) - 1
        if c[n] != 1:
            raise NotMonic("characteristic polynomial must be monic")
        t = tuple(c[n - i] * (-1) ** i / Fraction(norm) ** (i * (i - 1) // 2) for i in range(1, n + 1))
        return cls(n, t, norm)

    @classmethod
    def from_roots(cls, roots, norm):
        e = elementary_symmetric(list(roots))
        n = len(roots)
        return cls(n, tuple(e[i] / Fraction(norm) ** (i * (i - 1) // 2) if isinstance(e[i], (int, Fraction))
                            else e[i] / norm ** (i * (i - 1) // 2) for i in range(1, n + 1)), norm)


def sym_eigenvalues(alpha, beta, n):
    """{alpha^(n-1-i) beta^i : i = 0..n-1}."""
    return [alpha ** (n - 1 - i) * beta ** i for i in range(n)]


def sym_transfer(alpha, beta, n, norm):
    """Hecke polynomial of the Sym^(n-1) transfer: T_i = e_i(eigenvalues) / N^(i(i-1)/2)."""
    if n < 1:
        raise DimensionMismatch("n must be >= 1")
    if norm < 2:
        raise DimensionMismatch("norm must be >= 2")
    if isinstance(alpha, int):
        alpha = Fraction(alpha)
    if isinstance(beta, int):
        beta = Fraction(beta)
    return HeckeCharPoly.from_roots(sym_eigenvalues(alpha, beta, n), norm)


def power_sums(coeffs, count):
    """p_1..p_count of the roots of a monic polynomial (low degree first), via Newton."""
    c = [Fraction(x) for x in coeffs]
    n = len(c) - 1
    if c[n] != 1:
        raise NotMonic("polynomial must be monic")
    # monic: X^n + a_1 X^(n-1) + ... + a_n, a_i = c[n-i]
    a = [None] + [c[n - i] for i in range(1, n + 1)]
    p = [Fraction(n)]
    for k in range(1, count + 1):
        s = -k * a[k] if k <= n else Fraction(0)
        for i in range(1, min(k - 1, n) + 1):
            s -= a[i] * p[k - i]
        p.append(s)
    return p[1:]


def from_power_sums(ps, n):
    """Monic degree-n polynomial (low degree first) with the given power sums p_1..p_n."""
    e = [Fraction(1)]
    for k in range(1, n + 1):
        s = Fraction(0)
        for i in range(1, k + 1):
            s += (-1) ** (i - 1) * e[k - i] * ps[i - 1]
        e.append(s / k)
    return [(-1) ** (n - j) * e[n - j] for j in range(n + 1)]


def base_change_adams(poly, f):
    """Monic polynomial whose roots are the f-th powers of the roots of ``poly``.

    Accepts a coefficient list (low degree first) or a :class:`HeckeCharPoly`;
    the latter comes back as a HeckeCharPoly for the norm N^f.
    """
    if f < 1:
        raise DimensionMismatch("residue degree must be >= 1")
    if isinstance(poly, HeckeCharPoly):
        out = base_change_adams(poly.coefficients(), f)
        return HeckeCharPoly.from_coefficients(out, poly.norm ** f)
    c = [Fraction(x) for x in P.trim(poly)]
    if not c or c[-1] != 1:
        raise NotMonic("polynomial must be monic")
    n = len(c) - 1
    if f == 1 or n == 0:
        return c
    ps = power_sums(c, n * f)
    return from_power_sums([ps[k * f - 1] for k in range(1, n + 1)], n)


@dataclass(frozen=True)
class OrdinaryFrobData:
    """U-eigenvalues u_1..u_n (u_0 = 1), weights lambda_1..lambda_n, norm N(P), uniformizer value."""

    n: int
    u: tuple
    lambdas: tuple
    norm: int
    varpi: Fraction

    @classmethod
    def with_conventions(cls, n, u, lambdas, norm, varpi):
        """Fill u_n = 1 and lambda_n = 0 when only n-1 values are supplied."""
        u = list(u)
        lam = list(lambdas)
        if len(u) == n - 1:
            u.append(1)
        if len(lam) == n - 1:
            lam.append(0)
        if len(u) != n or len(lam) != n:
            raise DimensionMismatch(f"need {n} (or {n - 1}) U-eigenvalues and weights")
        return cls(n, tuple(Fraction(x) for x in u), tuple(int(x) for x in lam), norm, Fraction(varpi))

    def roots(self):
        if self.varpi == 0 or any(x == 0 for x in self.u):
            raise ZeroEigenvalue("U-eigenvalues and the uniformizer must be nonzero")
        us = (Fraction(1),) + self.u
        return [Fraction(self.norm) ** (j - 1) * us[j] / us[j - 1] * self.varpi ** self.lambdas[self.n - j]
                for j in range(1, self.n + 1)]


def frob_charpoly_at_p(data):
    """prod_j (X - N^(j-1) (u_j/u_(j-1)) varpi^(lambda_(n+1-j))), low degree first."""
    return P.from_roots(data.roots())
