from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from iwk.errors import ContextMismatch, DivisionByZeroAtPrecision, ZeroResidue
from iwk.padic import PadicContext, padic_add, padic_inv, padic_mul, teichmuller, vp

PRIMES = st.sampled_from([3, 5, 7, 11])


def test_add_carries_into_valuation():
    ctx = PadicContext(5, 4)
    s = padic_add(ctx(2), ctx(3))
    assert (s.valuation, s.unit_part) == (1, 1)


def test_inverse_of_two_mod_625():
    ctx = PadicContext(5, 4)
    # oracle: three-argument pow is an independent extended-Euclid inverse
    assert padic_inv(ctx(2)).to_int() == pow(2, -1, 625) == 313


def test_valuation_and_unit_of_fifty():
    x = PadicContext(5, 8)(50)
    assert (x.valuation, x.unit_part) == (2, 2)


def test_teichmuller_examples():
    assert teichmuller(PadicContext(5, 6), 1).to_int() == 1
    t = teichmuller(PadicContext(5, 3), 2)
    assert t.to_int() == 57
    assert pow(57, 4, 125) == 1
    for n in (1, 5, 20):
        ctx = PadicContext(3, n)
        assert teichmuller(ctx, 2) == ctx(-1)


def test_teichmuller_zero_residue():
    with pytest.raises(ZeroResidue):
        teichmuller(PadicContext(7, 5), 14)


def test_zero_at_precision_refuses_inverse():
    ctx = PadicContext(3, 4)
    z = ctx(81)
    assert z.is_zero()
    with pytest.raises(DivisionByZeroAtPrecision):
        padic_inv(z)


def test_context_mismatch():
    with pytest.raises(ContextMismatch):
        padic_add(PadicContext(3, 4)(1), PadicContext(3, 5)(1))
    with pytest.raises(ContextMismatch):
        padic_mul(PadicContext(3, 4)(1), PadicContext(5, 4)(1))


@pytest.mark.parametrize("p", [1, 2, 4, 9])
def test_context_rejects_bad_primes(p):
    with pytest.raises(ValueError):
        PadicContext(p, 4)


def test_field_elements_with_negative_valuation():
    ctx = PadicContext(3, 6)
    x = ctx(Fraction(1, 9))
    assert x.valuation == -2
    assert (x * ctx(9)) == ctx(1)


@settings(max_examples=150, deadline=None)
@given(PRIMES, st.integers(1, 12), st.integers(-10 ** 6, 10 ** 6), st.integers(-10 ** 6, 10 ** 6))
def test_valuation_laws(p, n, a, b):
    ctx = PadicContext(p, n)
    x, y = ctx(a), ctx(b)
    prod = padic_mul(x, y)
    if not prod.is_zero():
        assert prod.valuation == x.valuation + y.valuation
        assert prod.to_int() == a * b % p ** n
    s = padic_add(x, y)
    assert s.to_int() == (a + b) % p ** n
    if not (x.is_zero() or y.is_zero() or s.is_zero()):
        assert s.valuation >= min(x.valuation, y.valuation)
        if x.valuation != y.valuation:
            assert s.valuation == min(x.valuation, y.valuation)


@settings(max_examples=150, deadline=None)
@given(PRIMES, st.integers(1, 12), st.integers(1, 10 ** 8))
def test_inverse_is_two_sided(p, n, a):
    ctx = PadicContext(p, n)
    x = ctx(a)
    if x.is_zero():
        return
    inv = padic_inv(x)
    assert x * inv == ctx(1) and inv * x == ctx(1)
    # exact oracle through rationals; a non-unit input only pins the
    # inverse's unit part to p^(N - 2v)
    v = x.valuation
    if v == 0:
        assert inv == ctx(Fraction(1, a))
    elif 2 * v < n:
        want = ctx(Fraction(1, a))
        assert inv.valuation == want.valuation == -v
        assert (inv.unit_part - want.unit_part) % p ** (n - 2 * v) == 0


@settings(max_examples=100, deadline=None)
@given(PRIMES, st.integers(1, 10), st.integers(1, 10 ** 6))
def test_teichmuller_is_root_of_unity(p, n, a):
    if a % p == 0:
        return
    ctx = PadicContext(p, n)
    t = teichmuller(ctx, a)
    assert t ** (p - 1) == ctx(1)
    assert t.residue() == a % p


def test_vp_on_fractions():
    assert vp(Fraction(50, 3), 5) == 2
    assert vp(Fraction(7, 25), 5) == -2
    assert vp(0, 5) is None
