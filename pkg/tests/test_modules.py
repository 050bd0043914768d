import random
from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from iwk.errors import NoSectionComponent, NotGorenstein, NotReduced, NotTorsion
from iwk.modules import (
    DVR,
    AlgebraMap,
    FiniteFlatAlgebra,
    IdealGens,
    LayerQuotient,
    PowerSeriesRing,
    Presentation,
    RationalField,
    base_algebra,
    char_from_lengths,
    char_ideal,
    char_mod_S_check,
    congruence_decomposition_check,
    congruence_ideal,
    cubic_chain,
    fitting_ideal,
    fitting_property_suite,
    kahler_fitting,
    monogenic,
    quotient_map,
    ring_from_tag,
    tensor,
)
from iwk.padic import vp
from iwk.poly import Poly

S = Poly([0, 1])
P3 = PowerSeriesRing(3, 16)
Z3 = DVR(3)


# -- Fitting ideals ------------------------------------------------------------

def test_diagonal_fitting_ideals_over_binf():
    f, g = S + 3, S * S + 9
    pres = Presentation.diagonal(P3, [f, g])
    assert fitting_ideal(pres, 0) == IdealGens(P3, [f * g])
    assert fitting_ideal(pres, 1) == IdealGens(P3, [f, g])
    assert fitting_ideal(pres, 2).is_unit()


def test_fitting_of_s_l_block_at_zero():
    lmat = [[2, 1], [1, 5]]
    n1 = len(lmat)
    zero_s = [[0] * n1 + row for row in lmat]
    pres = Presentation(Z3, zero_s)
    assert fitting_ideal(pres, 0) == IdealGens(Z3, [sympy.Matrix(lmat).det()])


def test_fitting_conventions_for_short_presentations():
    pres = Presentation(Z3, [[3], [9]])  # s < r
    assert fitting_ideal(pres, 0).is_unit()
    assert fitting_ideal(Presentation(Z3, [[3, 6]]), 1).is_unit()


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 2 ** 32))
def test_fitting_invariant_under_row_column_operations(seed):
    rng = random.Random(seed)
    r, s = rng.randint(1, 3), rng.randint(1, 4)
    rows = [[rng.randint(-9, 9) for _ in range(s)] for _ in range(r)]
    # unimodular changes of basis (unit diagonal, integral shears)
    a = [list(x) for x in rows]
    for _ in range(4):
        i, j = rng.sample(range(r), 2) if r > 1 else (0, 0)
        if i != j:
            t = rng.randint(-3, 3)
            a[i] = [x + t * y for x, y in zip(a[i], a[j])]
        c1, c2 = rng.sample(range(s), 2) if s > 1 else (0, 0)
        if c1 != c2:
            t = rng.randint(-3, 3)
            for row in a:
                row[c1] += t * row[c2]
        k = rng.randrange(r)
        a[k] = [2 * x for x in a[k]]  # 2 is a unit in Z_(3)
    for i in range(r + 1):
        assert fitting_ideal(Presentation(Z3, rows), i) == fitting_ideal(Presentation(Z3, a), i)


def test_fitting_over_rationals_and_layers():
    q = RationalField()
    assert fitting_ideal(Presentation(q, [[0, 0]]), 0).is_zero()
    assert fitting_ideal(Presentation(q, [[0, 5]]), 0).is_unit()
    b1 = LayerQuotient(3, 1)
    # (1+S)^3 - 1 == 0 in B_1
    assert IdealGens(b1, [Poly([0, 3, 3, 1])]).is_zero() or IdealGens(b1, [Poly([0, 3, 3, 1])]) == IdealGens(b1, [0])
    assert ring_from_tag("B2", 3).rank == 9


# -- characteristic ideals ---------------------------------------------------------

def test_char_ideal_examples():
    c = char_ideal(Presentation.diagonal(P3, [S + 3, S - 3]))
    mod = 3 ** c.precision
    assert (c.mu, c.lam) == (0, 2)
    assert [x % mod for x in c.distinguished_poly] == [(-9) % mod, 0, 1]
    c = char_ideal(Presentation(Z3, [[3]]))
    assert (c.mu, c.lam) == (1, 0)
    with pytest.raises(NotTorsion):
        char_ideal(Presentation(Z3, [[0]]))
    with pytest.raises(NotTorsion):
        char_ideal(Presentation(P3, [[Poly()]]))


def test_char_mod_s_examples():
    assert char_mod_S_check(Presentation.diagonal(P3, [S + 3, S - 3]))
    assert char_mod_S_check(Presentation.diagonal(P3, [Poly([2, 1])]))
    with pytest.raises(NotTorsion):
        char_mod_S_check(Presentation.diagonal(P3, [S]))


def test_char_ideal_of_nonsquare_torsion_presentation():
    # M = Z_p[[S]] / (S - 3, S(S - 3)) has char (S - 3): the extra minor only adds pseudo-null noise
    f = S - 3
    pres = Presentation(P3, [[f, S * f]])
    c = char_ideal(pres)
    assert c.lam == 1 and c.same_as(char_from_lengths(pres))
    # a pseudo-null cokernel Z_p[[S]]/(3, S) has trivial characteristic ideal
    c0 = char_ideal(Presentation(P3, [[Poly(3), S]]))
    assert (c0.mu, c0.lam) == (0, 0)


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 2 ** 32))
def test_char_ideal_multiplicative(seed):
    rng = random.Random(seed)

    def rand_entry():
        return Poly([rng.randint(-9, 9) for _ in range(rng.randint(1, 3))])

    a = Presentation(P3, [[rand_entry()]])
    b = Presentation(P3, [[rand_entry(), rand_entry()], [rand_entry(), rand_entry()]])
    try:
        ca, cb = char_ideal(a), char_ideal(b)
    except NotTorsion:
        return
    cab = char_ideal(a.block_diag(b))
    assert cab.mu == ca.mu + cb.mu and cab.lam == ca.lam + cb.lam


def test_property_suite_small_run_is_green():
    for check in fitting_property_suite(seed=7, count=24):
        assert check.status, check.line()
        assert check.line().startswith(f"item={check.item} status=pass witness=")


def test_property_suite_dvr_example_item5():
    # F(Z_p/p + Z_p/p^2) = (p^3) = char
    pres = Presentation.diagonal(Z3, [3, 9])
    assert fitting_ideal(pres, 0) == IdealGens(Z3, [27])
    assert char_ideal(pres).mu == 3


# -- congruence ideals ---------------------------------------------------------------

@pytest.mark.parametrize("a,b", [(0, 3), (1, 10), (2, 29), (-4, 5), (7, 8)])
def test_two_point_congruence_equals_difference(a, b):
    r = monogenic(Poly([a * b, -(a + b), 1]).c, 3, root=a)
    c = congruence_ideal(r)
    assert c == IdealGens(Z3, [a - b])
    assert c == kahler_fitting(r)


def test_identity_section_has_unit_congruence_ideal():
    assert congruence_ideal(base_algebra(3)).is_unit()


def test_non_reduced_algebra_rejected():
    r = monogenic([0, 0, 1], 3, root=0)  # B[X]/(X^2)
    with pytest.raises(NotReduced):
        congruence_ideal(r)


def test_bad_section_rejected():
    with pytest.raises(NoSectionComponent):
        monogenic([2, -3, 1], 3, root=5)


def test_cubic_chain_example():
    a, b, c = 0, 3, 9
    alpha, beta = cubic_chain(a, b, c, 3)
    assert congruence_decomposition_check(alpha, beta)
    lam = alpha.compose(beta)
    c_lam = congruence_ideal(lam)
    assert c_lam == IdealGens(Z3, [(a - b) * (a - c)])


def test_identity_chain():
    b = base_algebra(5)
    ident = AlgebraMap(b, b, [[1]])
    assert congruence_decomposition_check(ident, ident)


def test_tensor_congruence_is_product():
    # c_phi of a tensor product of sections is the sum-of-ideals product shape; here both are principal
    r1 = monogenic(Poly([0, -3, 1]).c, 3, root=0)
    r2 = monogenic(Poly([0, -9, 1]).c, 3, root=0)
    t = tensor(r1, r2)
    assert t.check_axioms()
    assert congruence_ideal(t) == kahler_fitting(t)


def test_monogenic_needs_positive_degree():
    with pytest.raises(ValueError):
        monogenic([1], 3)


def test_quotient_map_requires_divisibility():
    with pytest.raises(ValueError):
        quotient_map([6, -5, 1], [1, 1], 3)


def test_non_gorenstein_detected():
    # B + m^2-like algebra: Z_p[x, y]/(x, y)^2 is not Gorenstein
    table = [
        [[1, 0, 0], [0, 1, 0], [0, 0, 1]],
        [[0, 1, 0], [0, 0, 0], [0, 0, 0]],
        [[0, 0, 1], [0, 0, 0], [0, 0, 0]],
    ]
    r = FiniteFlatAlgebra(3, table, phi=[1, 0, 0])
    assert not r.is_gorenstein()
    ident = AlgebraMap(r, r, [[1, 0, 0], [0, 1, 0], [0, 0, 1]])
    with pytest.raises(NotGorenstein):
        congruence_decomposition_check(ident, ident)


@settings(max_examples=20, deadline=None)
@given(st.lists(st.integers(-20, 20), min_size=3, max_size=3, unique=True))
def test_random_cubic_chains(roots):
    alpha, beta = cubic_chain(*roots, 3)
    assert congruence_decomposition_check(alpha, beta)
    a, b, c = roots
    assert congruence_ideal(alpha.compose(beta)) == IdealGens(Z3, [(a - b) * (a - c)])
