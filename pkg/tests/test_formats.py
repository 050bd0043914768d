import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from iwk.formats import (
    FormatError,
    dump_dvector,
    dump_jacobian,
    dump_polynomial,
    dump_presentation,
    dump_series,
    load_dvector,
    load_jacobian,
    load_polynomial,
    load_presentation,
    load_series,
)
from iwk.iwasawa import IwasawaSeries
from iwk.linv import build_consistent_jacobian
from iwk.modules import DVR, LayerQuotient, PowerSeriesRing, Presentation, RationalField
from iwk.padic import PadicContext
from iwk.poly import Poly

rat = st.fractions(min_value=-50, max_value=50, max_denominator=20)


@settings(max_examples=60, deadline=None)
@given(st.sampled_from([3, 5, 7]), st.integers(1, 20), st.integers(1, 20), st.integers(0, 2 ** 32))
def test_series_roundtrip_is_bit_exact(p, n, m, seed):
    rng = random.Random(seed)
    c = [rng.choice([0, rng.randrange(p ** n), p ** rng.randint(0, n) * rng.randint(1, 9)]) for _ in range(m)]
    f = IwasawaSeries(PadicContext(p, n), c, m)
    text = dump_series(f)
    g = load_series(text)
    assert g == f and dump_series(g) == text
    assert text.splitlines()[0] == f"{p} {n} {m}"


def test_series_format_rejects_garbage():
    with pytest.raises(FormatError):
        load_series("3 4\n")
    with pytest.raises(FormatError):
        load_series("3 4 2\n5 0 1\n")
    with pytest.raises(FormatError):
        load_series("3 4 2\n0 0 3\n")  # unit part divisible by p
    with pytest.raises(FormatError):
        load_series("4 4 2\n")


def _rand_poly(rng):
    return Poly([Fraction(rng.randint(-9, 9), rng.choice([1, 2, 4])) for _ in range(rng.randint(0, 4))])


@pytest.mark.parametrize("ring", [RationalField(), DVR(3), PowerSeriesRing(5, 12), LayerQuotient(3, 1)])
def test_presentation_roundtrip(ring):
    rng = random.Random(3)
    for _ in range(10):
        r, s = rng.randint(1, 3), rng.randint(1, 4)
        if isinstance(ring, (DVR, RationalField)):
            rows = [[Fraction(rng.randint(-9, 9), rng.choice([1, 2, 4])) for _ in range(s)] for _ in range(r)]
        else:
            rows = [[_rand_poly(rng) for _ in range(s)] for _ in range(r)]
        pres = Presentation(ring, rows)
        text = dump_presentation(pres)
        again = load_presentation(text)
        assert again.entries == pres.entries and again.ring == ring
        assert dump_presentation(again) == text


def test_presentation_format_errors():
    with pytest.raises(FormatError):
        load_presentation("Zp 3 32 64 2 2\n1 2 3\n")
    with pytest.raises(FormatError):
        load_presentation("Zz 3 32 64 1 1\n1\n")
    with pytest.raises(FormatError):
        load_presentation("Binf 3 32 64 1 1\nS^^2\n")


@settings(max_examples=30, deadline=None)
@given(st.lists(rat, min_size=1, max_size=4))
def test_jacobian_and_dvector_roundtrip(d):
    jac, _ = build_consistent_jacobian(d)
    text = dump_jacobian(jac)
    assert load_jacobian(text) == jac and dump_jacobian(load_jacobian(text)) == text
    assert load_dvector(dump_dvector(d)) == d


def test_jacobian_format_errors():
    with pytest.raises(FormatError):
        load_jacobian("1\n1 2 3\n")
    with pytest.raises(FormatError):
        load_jacobian("1\n1 2 3 x\n")


@settings(max_examples=50, deadline=None)
@given(st.lists(rat, min_size=1, max_size=6))
def test_polynomial_roundtrip(c):
    c = c[:-1] + [Fraction(1)]
    text = dump_polynomial(c)
    assert load_polynomial(text) == c
    assert text.splitlines()[0] == str(len(c) - 1)


def test_polynomial_degree_mismatch():
    with pytest.raises(FormatError):
        load_polynomial("2\n1\n1\n")
