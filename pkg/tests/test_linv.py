import random
from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from iwk.errors import DegenerateDirection, DimensionMismatch
from iwk.linv import (
    LogJacobian,
    build_consistent_jacobian,
    compare_check,
    det_ideal_check,
    greenberg_l,
    i_k_ideal,
    l_matrix,
    random_direction,
    scaling_check,
    scaling_factor,
)
from iwk.modules import IdealGens, LayerQuotient
from iwk.poly import Poly

rat = st.fractions(min_value=-20, max_value=20, max_denominator=7)


def test_l_matrix_examples():
    # reduced form with one row: entry is r[1] - r[0]
    mat, value = l_matrix([[Fraction(2), Fraction(7)]])
    assert mat == [[5]] and value == 5
    _, value = l_matrix([[1, 1, 3], [2, 2, 5]])
    assert value == 0  # equal columns
    with pytest.raises(DimensionMismatch):
        l_matrix([[1, 2, 3]])


@settings(max_examples=50, deadline=None)
@given(st.lists(st.lists(st.integers(-9, 9), min_size=4, max_size=4), min_size=3, max_size=3))
def test_l_matrix_against_sympy(rows):
    mat, value = l_matrix(rows)
    diff = sympy.Matrix([[r[3] - r[j] for j in range(3)] for r in rows])
    assert value == diff.det()


def test_full_square_jacobian_drops_last_row():
    g = [[1, 2, 3], [4, 5, 6], [-5, -7, -9]]
    assert l_matrix(LogJacobian.from_rows(g))[1] == l_matrix(g[:2])[1]
    assert LogJacobian.from_rows(g).is_constrained()


def test_i_k_examples():
    a, b, c, d = 2, 3, 5, 7
    lmat = [[a, b], [c, d]]
    ring = LayerQuotient(3, 1)
    s = Poly([0, 1])
    ideal = i_k_ideal(lmat, 1, 3)
    expect = IdealGens(ring, [Poly(a * d - b * c)] + [s * x for x in (a, b, c, d)] + [s * s])
    assert ideal.from_minors == expect and ideal.consistent()
    zero = i_k_ideal([[0, 0], [0, 0]], 2, 3)
    assert zero.from_minors == IdealGens(LayerQuotient(3, 2), [s * s])
    assert det_ideal_check(lmat, 3)


@settings(max_examples=25, deadline=None)
@given(st.integers(1, 4), st.integers(0, 2), st.integers(0, 2 ** 32))
def test_i_k_two_descriptions_agree(n, k, seed):
    rng = random.Random(seed)
    lmat = [[rng.randint(-6, 6) for _ in range(n)] for _ in range(n)]
    assert i_k_ideal(lmat, k, 3).consistent()
    if k == 0:
        assert det_ideal_check(lmat, 3)


def test_i_k_requires_square():
    with pytest.raises(DimensionMismatch):
        i_k_ideal([[1, 2]], 0, 3)


def test_scaling_examples():
    a = [[3, 1], [2, 7]]
    assert scaling_check(a, 0, 3)
    lk, l0 = scaling_factor(a, 1, 3)
    assert l0 != 0 and lk / l0 == Fraction(1, 3)
    a4 = [[1, 2, 0, 1], [0, 1, 3, 2], [2, 0, 1, 1], [1, 1, 1, 0]]
    lk, l0 = scaling_factor(a4, 2, 5)
    if l0:
        assert lk / l0 == Fraction(1, 5 ** 6)
    assert scaling_check(a4, 2, 5)


@settings(max_examples=30, deadline=None)
@given(st.sampled_from([3, 5]), st.integers(0, 3), st.integers(1, 5), st.integers(0, 2 ** 32))
def test_scaling_lemma(p, k, n, seed):
    rng = random.Random(seed)
    a = [[rng.randint(-9, 9) for _ in range(n)] for _ in range(n)]
    assert scaling_check(a, k, p, seed=seed)


def test_greenberg_examples():
    ell = Fraction(7, 3)
    jac, fprime = build_consistent_jacobian([ell])
    assert fprime == [[-ell]]
    assert greenberg_l(1, jac, [1, -1]) == ell
    assert greenberg_l(1, jac, [5, -5]) == ell
    jac0, f0 = build_consistent_jacobian([0, 0, 0])
    assert all(x == 0 for row in f0 for x in row)


def test_greenberg_degenerate_directions():
    jac, _ = build_consistent_jacobian([1, 2])
    with pytest.raises(DegenerateDirection):
        greenberg_l(1, jac, [1, 1, 1])  # does not sum to zero
    with pytest.raises(DegenerateDirection):
        greenberg_l(1, jac, [0, 0, 0])
    with pytest.raises(DimensionMismatch):
        greenberg_l(3, jac, [1, -1, 0])


@settings(max_examples=40, deadline=None)
@given(st.lists(rat, min_size=1, max_size=5), st.integers(0, 2 ** 32))
def test_greenberg_recovers_targets_for_any_direction(d, seed):
    rng = random.Random(seed)
    n = len(d)
    jac, _ = build_consistent_jacobian(d)
    assert jac.is_constrained()
    for j in range(1, n + 1):
        y = random_direction(rng, n, j)
        assert greenberg_l(j, jac, y) == d[j - 1]
        c = rng.choice([2, -3, Fraction(1, 5)])
        assert greenberg_l(j, jac, [c * v for v in y]) == d[j - 1]


def test_compare_examples():
    for n in range(1, 6):
        rep = compare_check([1] * n, n)
        assert rep.ok and rep.product == 1 and rep.l_value == 1
    rep = compare_check([Fraction(-2, 5)])
    assert rep.ok and rep.l_value == Fraction(-2, 5)


@settings(max_examples=40, deadline=None)
@given(st.lists(rat, min_size=1, max_size=5), st.integers(0, 1000))
def test_compare_random(d, seed):
    rep = compare_check(d, directions=5, seed=seed)
    assert rep.ok
    prod = Fraction(1)
    for x in d:
        prod *= x
    # independent intermediate identity
    assert (-1) ** len(d) * rep.det_fprime == prod == rep.l_value


def test_arbitrary_jacobian_shows_direction_dependence():
    g = LogJacobian.from_rows([[1, 2, 0], [3, 1, 0], [-4, -3, 0]])
    vals = {greenberg_l(1, g, y) for y in ([1, -1, 0], [1, 0, -1], [2, 1, -3])}
    assert len(vals) > 1
