"""Deterministic acceptance battery shared by the CLI and the test-suite.

Every check returns a :class:`Check` whose witness holds only seed-derived
data, so two runs with the same seed print identical reports.
"""
import random
from fractions import Fraction
from math import factorial

from iwk.hecke import base_change_adams, sym_transfer
from iwk.iwasawa import IwasawaSeries, weierstrass_prepare
from iwk.linv import compare_check, i_k_ideal, det_ideal_check, scaling_check
from iwk.modules import (
    DVR,
    Check,
    IdealGens,
    char_mod_S_check,
    congruence_decomposition_check,
    congruence_ideal,
    cubic_chain,
    fitting_property_suite,
    kahler_fitting,
    monogenic,
    random_char_mod_S_instances,
)
from iwk.padic import PadicContext
from iwk import poly as P
from iwk.sl2 import anchor_scale, cm_relation, decomposition_check, m_coeff, m_prime, m_prime_det_identity
from iwk.linalg import det


def _rng(seed, tag):
    return random.Random(f"{seed}:{tag}")


def _rand_rational(rng, bound=9, den=5):
    return Fraction(rng.randint(-bound, bound), rng.randint(1, den))


def check_m_anchor(seed=0):
    bad = [(n, i) for n in range(1, 13) for i in range(n + 1) if m_coeff(n, 0, i) != factorial(n)]
    return [Check("m_anchor", not bad, f"n=1..12,mismatches={len(bad)}")]


def check_det_identity(seed=0):
    bad = []
    for n in range(1, 11):
        lhs, rhs = m_prime_det_identity(n)
        if lhs != rhs or det(m_prime(n)) == 0:
            bad.append(n)
    return [Check("det_identity", not bad, f"n=1..10,bad={bad}")]


def check_cm_relation(seed=0):
    bad = 0
    scales = []
    for n in range(0, 7):
        scales.append(anchor_scale(n))
        bad += sum(1 for _, _, m, c in cm_relation(n) if m != c)
    ok = bad == 0 and all(s == 1 for s in scales)
    return [Check("cm_relation", ok, f"n=0..6,anchor_scales_all_one={all(s == 1 for s in scales)},mismatches={bad}")]


def check_decomposition(seed=0):
    bad = [n for n in range(2, 9) if not decomposition_check(n, 50, seed)]
    return [Check("decomposition", not bad, f"n=2..8,samples=50,seed={seed},bad={bad}")]


def check_compare(seed=0, count=100):
    bad = []
    for n in range(1, 6):
        rng = _rng(seed, f"compare{n}")
        for t in range(count):
            d = [_rand_rational(rng) for _ in range(n)]
            if not compare_check(d, n, directions=10, seed=rng.randrange(10 ** 9)).ok:
                bad.append((n, t))
    return [Check("compare", not bad, f"n=1..5,instances={5 * count},directions=10,failures={len(bad)}")]


def check_scaling(seed=0):
    bad = []
    total = 0
    for p in (3, 5):
        rng = _rng(seed, f"scaling{p}")
        for k in range(0, 4):
            for n in range(1, 6):
                a = [[rng.randint(-9, 9) for _ in range(n)] for _ in range(n)]
                total += 1
                if not scaling_check(a, k, p, seed=rng.randrange(10 ** 9)):
                    bad.append((p, k, n))
    return [Check("scaling", not bad, f"p=3,5,k=0..3,n=1..5,instances={total},bad={bad}")]


def check_ik(seed=0, count=20, p=3):
    bad = 0
    total = 0
    for n in range(1, 6):
        rng = _rng(seed, f"ik{n}")
        for k in range(0, 3):
            for _ in range(count):
                lmat = [[rng.randint(-6, 6) for _ in range(n)] for _ in range(n)]
                total += 1
                if not i_k_ideal(lmat, k, p).consistent():
                    bad += 1
                if k == 0 and not det_ideal_check(lmat, p):
                    bad += 1
    return [Check("ik_ideal", bad == 0, f"p={p},n=1..5,k=0..2,instances={total},failures={bad}")]


def check_fitting(seed=0, count=200, char_count=50):
    checks = fitting_property_suite(seed, count)
    bad = sum(1 for pres in random_char_mod_S_instances(seed, char_count) if not char_mod_S_check(pres))
    checks.append(Check("char_mod_S", bad == 0, f"seed={seed},instances={char_count},failures={bad}"))
    return checks


def check_congruence(seed=0, count=20, p=3):
    rng = _rng(seed, "congruence")
    bad_two = 0
    for _ in range(count):
        a = rng.randint(-20, 20)
        b = a + rng.choice([1, 2, 3, 6, 9, 18, 27, -9, -3])
        r = monogenic(P.from_roots([a, b]), p, root=a)
        c = congruence_ideal(r)
        if c != IdealGens(DVR(p), [a - b]) or c != kahler_fitting(r):
            bad_two += 1
    bad_chain = 0
    for _ in range(count):
        roots = rng.sample(range(-15, 16), 3)
        alpha, beta = cubic_chain(*roots, p)
        if not congruence_decomposition_check(alpha, beta):
            bad_chain += 1
    return [
        Check("congruence_two_point", bad_two == 0, f"p={p},instances={count},failures={bad_two}"),
        Check("congruence_chain", bad_chain == 0, f"p={p},instances={count},failures={bad_chain}"),
    ]


def weierstrass_roundtrip(f):
    """p**mu * P * U == f modulo (p**N, S**M)."""
    fac = weierstrass_prepare(f)
    ctx = f.context
    pm = ctx.p ** fac.mu
    pser = IwasawaSeries(ctx, [pm * c for c in fac.distinguished_poly], f.truncation_order)
    return pser * fac.unit == f and all(c % ctx.p == 0 for c in fac.distinguished_poly[:-1])


def check_weierstrass(seed=0, count=100, precision=32, truncation=64):
    bad = 0
    for p in (3, 5):
        rng = _rng(seed, f"weierstrass{p}")
        ctx = PadicContext(p, precision)
        mod = p ** precision
        for _ in range(count):
            lam = rng.randint(0, 6)
            c = [rng.randrange(mod) for _ in range(truncation)]
            for i in range(lam):
                c[i] = c[i] * p % mod
            c[lam] = c[lam] * p + rng.randint(1, p - 1)
            if not weierstrass_roundtrip(IwasawaSeries(ctx, c, truncation)):
                bad += 1
    return [Check("weierstrass", bad == 0, f"p=3,5,N={precision},M={truncation},instances={2 * count},failures={bad}")]


def check_hecke(seed=0, count=30):
    rng = _rng(seed, "hecke")
    bad_square = bad_comp = 0
    for _ in range(count):
        alpha, beta = _rand_rational(rng), _rand_rational(rng)
        f, n, norm = rng.randint(1, 4), rng.randint(1, 6), rng.choice([2, 3, 5, 7, 11])
        lhs = base_change_adams(sym_transfer(alpha, beta, n, norm), f)
        rhs = sym_transfer(alpha ** f, beta ** f, n, norm ** f)
        if lhs != rhs:
            bad_square += 1
        g = rng.randint(1, 3)
        poly = sym_transfer(alpha, beta, n, norm).coefficients()
        if base_change_adams(poly, f * g) != base_change_adams(base_change_adams(poly, f), g):
            bad_comp += 1
    return [
        Check("hecke_square", bad_square == 0, f"instances={count},failures={bad_square}"),
        Check("adams_composition", bad_comp == 0, f"instances={count},failures={bad_comp}"),
    ]


BATTERY = (
    ("1", check_m_anchor),
    ("2", check_det_identity),
    ("3", check_cm_relation),
    ("4", check_decomposition),
    ("5", check_compare),
    ("6", check_scaling),
    ("7", check_ik),
    ("8", check_fitting),
    ("9", check_congruence),
    ("10", check_weierstrass),
    ("11", check_hecke),
)


def run_battery(seed=0, only=None):
    """[(criterion, [Check, ...])] in a fixed order."""
    out = []
    for crit, fn in BATTERY:
        if only is None or crit in only:
            out.append((crit, fn(seed)))
    return out


def report_lines(results):
    lines = []
    for crit, checks in results:
        for c in checks:
            lines.append(f"criterion={crit} " + c.line())
    failed = sum(1 for _, checks in results for c in checks if not c.status)
    lines.append("ALL PASS" if failed == 0 else f"FAILED {failed}")
    return lines
