import random
from fractions import Fraction
from math import comb

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from iwk.errors import NotMonic, ZeroEigenvalue
from iwk.hecke import (
    HeckeCharPoly,
    OrdinaryFrobData,
    base_change_adams,
    frob_charpoly_at_p,
    sym_transfer,
)
from iwk.poly import from_roots

X = sympy.Symbol("X")
rat = st.fractions(min_value=-6, max_value=6, max_denominator=4)


def _sympy_coeffs(expr):
    return [Fraction(int(c.p), int(c.q)) for c in sympy.Poly(expr, X).all_coeffs()[::-1]]


def test_sym_transfer_examples():
    a, b, n = Fraction(2), Fraction(3), 5
    h = sym_transfer(a, b, 2, n)
    assert h.t == (a + b, a * b / n)
    assert h.coefficients() == [a * b, -(a + b), 1]
    assert sym_transfer(2, 3, 3, 5).t == (19, Fraction(114, 5), Fraction(216, 125))
    for n in range(1, 7):
        h = sym_transfer(1, 1, n, 7)
        assert h.t == tuple(Fraction(comb(n, i), 7 ** (i * (i - 1) // 2)) for i in range(1, n + 1))


def test_sym_transfer_validates():
    with pytest.raises(Exception):
        sym_transfer(1, 2, 0, 5)
    with pytest.raises(Exception):
        sym_transfer(1, 2, 2, 1)


@settings(max_examples=40, deadline=None)
@given(rat, rat, st.integers(1, 6), st.sampled_from([2, 3, 5, 7]))
def test_sym_transfer_roots_are_sym_eigenvalues(alpha, beta, n, norm):
    h = sym_transfer(alpha, beta, n, norm)
    expr = sympy.prod([X - sympy.Rational(alpha.numerator, alpha.denominator) ** (n - 1 - i)
                       * sympy.Rational(beta.numerator, beta.denominator) ** i for i in range(n)])
    assert h.coefficients() == _sympy_coeffs(sympy.expand(expr))
    assert HeckeCharPoly.from_coefficients(h.coefficients(), norm) == h


def test_factoring_recovers_multiset():
    alpha, beta, n = Fraction(2), Fraction(-3), 4
    h = sym_transfer(alpha, beta, n, 11)
    roots = sympy.roots(sympy.Poly(list(reversed(h.coefficients())), X))
    want = {}
    for i in range(n):
        r = alpha ** (n - 1 - i) * beta ** i
        want[sympy.Rational(r.numerator, r.denominator)] = want.get(r, 0) + 1
    assert roots == want


def _companion_power_oracle(coeffs, f):
    """Char poly of C^f for the companion matrix C (independent of Newton)."""
    n = len(coeffs) - 1
    c = sympy.zeros(n, n)
    for i in range(1, n):
        c[i, i - 1] = 1
    for i in range(n):
        c[i, n - 1] = -sympy.Rational(coeffs[i].numerator, coeffs[i].denominator)
    return _sympy_coeffs((c ** f).charpoly(X).as_expr())


def test_adams_examples():
    assert base_change_adams([6, -5, 1], 1) == [6, -5, 1]
    assert base_change_adams([6, -5, 1], 2) == [36, -13, 1]
    assert base_change_adams([-1, 0, 0, 1], 3) == [-1, 3, -3, 1]
    with pytest.raises(NotMonic):
        base_change_adams([1, 2], 2)


@settings(max_examples=40, deadline=None)
@given(st.lists(rat, min_size=1, max_size=5), st.integers(1, 4))
def test_adams_against_companion_power(low, f):
    coeffs = list(low) + [Fraction(1)]
    assert base_change_adams(coeffs, f) == _companion_power_oracle(coeffs, f)


@settings(max_examples=30, deadline=None)
@given(rat, rat, st.integers(1, 4), st.integers(1, 6), st.sampled_from([2, 3, 5]))
def test_functoriality_square(alpha, beta, f, n, norm):
    lhs = base_change_adams(sym_transfer(alpha, beta, n, norm), f)
    assert lhs == sym_transfer(alpha ** f, beta ** f, n, norm ** f)


@settings(max_examples=30, deadline=None)
@given(st.lists(rat, min_size=1, max_size=4), st.integers(1, 3), st.integers(1, 3))
def test_adams_composition(low, f, g):
    coeffs = list(low) + [Fraction(1)]
    assert base_change_adams(coeffs, f * g) == base_change_adams(base_change_adams(coeffs, f), g)


def test_frob_examples():
    d = OrdinaryFrobData.with_conventions(1, [Fraction(4)], [2], 5, 3)
    assert frob_charpoly_at_p(d) == [-36, 1]
    u = [Fraction(2), Fraction(3), Fraction(7)]
    d = OrdinaryFrobData.with_conventions(3, u, [0, 0, 0], 5, 11)
    want = from_roots([u[0], 5 * u[1] / u[0], 25 * u[2] / u[1]])
    assert frob_charpoly_at_p(d) == want


def test_frob_conventions_and_telescoping():
    d = OrdinaryFrobData.with_conventions(3, [2, 3], [4, 1], 7, Fraction(1, 2))
    assert d.u == (2, 3, 1) and d.lambdas == (4, 1, 0)
    roots = d.roots()
    # u-parts telescope to u_n / u_0 = 1
    u_part = Fraction(1)
    for j, r in enumerate(roots, start=1):
        u_part *= r / (Fraction(7) ** (j - 1) * d.varpi ** d.lambdas[3 - j])
    assert u_part == 1


def test_frob_zero_eigenvalue():
    with pytest.raises(ZeroEigenvalue):
        frob_charpoly_at_p(OrdinaryFrobData.with_conventions(2, [0], [1], 5, 3))
    with pytest.raises(ZeroEigenvalue):
        frob_charpoly_at_p(OrdinaryFrobData.with_conventions(2, [1], [1], 5, 0))
