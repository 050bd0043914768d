import random
from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from iwk.errors import AllCoefficientsNonUnit, TruncationTooSmall, UnknownVariable
from iwk.iwasawa import (
    IwasawaSeries,
    LayerRing,
    MultiSeries,
    WeightAlgebraPresentation,
    WeightVar,
    layer_reduce,
    norm_substitute,
    weierstrass_prepare,
)
from iwk.padic import PadicContext
from iwk.poly import mul


def series(p, n, coeffs, m=16):
    return IwasawaSeries(PadicContext(p, n), coeffs, m)


# -- Weierstrass preparation --------------------------------------------------

def test_prepare_constructed_product():
    p = 3
    f = series(p, 10, mul([p, 1], [1, p]))
    fac = weierstrass_prepare(f)
    assert fac.mu == 0 and fac.distinguished_poly == (p, 1)
    assert fac.unit == series(p, 10, [1, p])


def test_prepare_pure_power_of_p():
    p = 5
    fac = weierstrass_prepare(series(p, 8, [p, p]))
    assert fac.mu == 1 and fac.distinguished_poly == (1,)
    assert fac.unit.int_coeffs()[:3] == [1, 1, 0]


def test_prepare_already_distinguished():
    p = 3
    fac = weierstrass_prepare(series(p, 12, [-p * p, 0, 1]))
    mod = p ** fac.precision
    assert fac.mu == 0 and [c % mod for c in fac.distinguished_poly] == [(-9) % mod, 0, 1]
    assert fac.unit == series(p, 12, [1])


def test_prepare_zero_series():
    with pytest.raises(AllCoefficientsNonUnit):
        weierstrass_prepare(series(3, 4, [81, 0, 3 ** 4]))


@settings(max_examples=40, deadline=None)
@given(st.sampled_from([3, 5]), st.integers(0, 5), st.integers(0, 3), st.integers(0, 2 ** 32))
def test_prepare_roundtrip_and_uniqueness(p, lam, shift, seed):
    rng = random.Random(seed)
    n, m = 12, 24
    mod = p ** n
    c = [rng.randrange(mod) for _ in range(m)]
    for i in range(lam):
        c[i] = c[i] * p % mod
    c[lam] = c[lam] * p + rng.randint(1, p - 1)
    f = series(p, n, c, m)
    fac = weierstrass_prepare(f)
    assert fac.mu == 0 and fac.lam == lam
    assert all(x % p == 0 for x in fac.distinguished_poly[:-1])
    assert fac.unit.is_unit()
    rebuilt = IwasawaSeries(f.context, list(fac.distinguished_poly), m) * fac.unit
    assert rebuilt == f
    # p^shift * f has the same P and U and mu + shift
    g = IwasawaSeries(f.context, [x * p ** shift for x in c], m)
    if shift < n - 2:
        fac2 = weierstrass_prepare(g)
        assert fac2.mu == shift
        assert fac2.agrees_with(type(fac)(shift, fac.distinguished_poly, fac.unit, fac.precision))


@settings(max_examples=25, deadline=None)
@given(st.sampled_from([3, 5]), st.integers(0, 2 ** 32))
def test_prepare_is_multiplicative(p, seed):
    rng = random.Random(seed)
    n, m = 16, 24

    def rand(lam):
        c = [rng.randrange(p ** n) for _ in range(m)]
        for i in range(lam):
            c[i] = c[i] * p
        c[lam] = c[lam] * p + 1
        return series(p, n, c, m)

    f, g = rand(rng.randint(0, 2)), rand(rng.randint(0, 2))
    a, b, ab = weierstrass_prepare(f), weierstrass_prepare(g), weierstrass_prepare(f * g)
    assert ab.mu == a.mu + b.mu and ab.lam == a.lam + b.lam
    # P(fg) = P(f) P(g), but S^M = p^(M // lam) mod P, so truncation at S^M
    # pins P only to that many digits
    prod = mul(list(a.distinguished_poly), list(b.distinguished_poly))
    digits = min(ab.precision, a.precision, b.precision, m // max(ab.lam, 1))
    mod = p ** digits
    assert all((x - y) % mod == 0 for x, y in zip(prod, ab.distinguished_poly))


def test_prepared_poly_roots_match_sympy():
    # (S - 3)(S - 6) + ... has p-adic roots congruent to 0; compare with sympy's
    # exact factorisation over Q for a polynomial input.
    p, n = 3, 20
    f = series(p, n, [18, -9, 1], 8)  # (S-3)(S-6)
    fac = weierstrass_prepare(f)
    expect = sympy.Poly(sympy.expand((sympy.Symbol("S") - 3) * (sympy.Symbol("S") - 6)))
    got = [int(c) for c in expect.all_coeffs()[::-1]]
    mod = p ** fac.precision
    assert [c % mod for c in got] == [c % mod for c in fac.distinguished_poly]


# -- layers ------------------------------------------------------------------

def test_layer_reduce_examples():
    p = 3
    assert layer_reduce(series(p, 8, [0, 1]), 0).coeffs == (0,)
    assert not any(layer_reduce(series(p, 8, [0, 3, 3, 1]), 1).coeffs)
    assert layer_reduce(series(p, 8, [0, 0, 1]), 1).coeffs == (0, 0, 1)


def test_layer_reduce_needs_truncation():
    with pytest.raises(TruncationTooSmall):
        layer_reduce(series(3, 8, [1], m=5), 2)


def test_layer_reduce_matches_sympy_remainder():
    p, k = 3, 2
    rng = random.Random(1)
    c = [rng.randint(-40, 40) for _ in range(30)]
    f = series(p, 30, c, 64)
    s = sympy.Symbol("S")
    rem = sympy.rem(sum(ci * s ** i for i, ci in enumerate(c)), (1 + s) ** (p ** k) - 1, s)
    want = [int(x) for x in sympy.Poly(rem, s).all_coeffs()[::-1]]
    got = layer_reduce(f, k)
    mod = p ** got.precision
    want += [0] * (p ** k - len(want))
    assert [x % mod for x in want] == [x % mod for x in got.coeffs]


@settings(max_examples=40, deadline=None)
@given(st.sampled_from([3, 5]), st.integers(0, 3), st.integers(0, 2 ** 32))
def test_layer_reduce_is_multiplicative(p, k, seed):
    if p ** k > 64:
        return
    rng = random.Random(seed)
    n = 32
    f = series(p, n, [rng.randrange(p ** n) for _ in range(64)], 64)
    g = series(p, n, [rng.randrange(p ** n) for _ in range(64)], 64)
    lhs = layer_reduce(f * g, k)
    rhs = layer_reduce(f, k) * layer_reduce(g, k)
    assert lhs == rhs
    assert LayerRing(f.context, k).rank == p ** k


# -- weight algebras ------------------------------------------------------------

def test_norm_substitute_examples():
    x11 = WeightVar.parse("X_{1,1}")
    g = MultiSeries.variable((x11,), 0)
    out = norm_substitute(g, 1, 3)
    assert str(out.vars[0]) == "X_{0,1}"
    assert [out.coefficient((i,)) for i in range(5)] == [0, 3, 3, 1, 0]
    t = MultiSeries.variable((WeightVar("T", 2, 1),), 0)
    pulled = norm_substitute(t, 2, 5)
    assert pulled.vars == (WeightVar("T", 0, 1),) and pulled.terms == t.terms
    h = MultiSeries((WeightVar("X", 0, 1), WeightVar("X", 0, 2)), {(1, 1): Fraction(2), (0, 2): Fraction(-1)})
    assert norm_substitute(h, 0, 3) == h


def test_norm_substitute_wrong_layer():
    g = MultiSeries.variable((WeightVar("X", 2, 1),), 0)
    with pytest.raises(UnknownVariable):
        norm_substitute(g, 1, 3)
    with pytest.raises(UnknownVariable):
        WeightVar.parse("Y_{1,1}")


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_relation_vanishes_after_elimination(n):
    pres = WeightAlgebraPresentation(n, 1, truncation=6)
    assert pres.relation_residual() == MultiSeries.constant(pres.free_variables, 0, 6)
    assert pres.generator_names == [f"X_{{1,{i}}}" for i in range(1, n + 1)]


def test_eliminated_variable_two_generators():
    # V_2 = (1+V_1)^-1 - 1 = -V + V^2 - V^3 + ...
    pres = WeightAlgebraPresentation(2, 0, truncation=6)
    v2 = pres.eliminated()
    assert [v2.coefficient((i,)) for i in range(6)] == [0, -1, 1, -1, 1, -1]
