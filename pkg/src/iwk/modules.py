"""Fitting, characteristic and congruence ideals over the desk rings.

Supported coefficient rings (``ring_tag``):

``Q``      the rationals (a field: ideals are 0 or 1),
``Zp``     Z_(p) with exact rational entries (a DVR),
``Binf``   Z_p[[S]], entries polynomials in S with p-integral coefficients,
``B<k>``   Z_p[[S]] / ((1+S)**(p**k) - 1), free of rank p**k over Z_p.

Ideal membership in ``Binf`` works modulo p**N: an ideal p**m * J is
tested through the image of J in Z_p[S]/(P) for the distinguished part P
of a generator of J whose reduction mod p is nonzero.  That quotient is
free of rank deg P, so the image of J is a lattice.
"""
import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product

import sympy

from iwk import kernels, poly as P
from iwk.errors import (
    DimensionMismatch,
    NoSectionComponent,
    NotGorenstein,
    NotReduced,
    NotTorsion,
    PrecisionLoss,
)
from iwk.iwasawa import IwasawaSeries, omega, weierstrass_prepare
from iwk.linalg import (
    ZpLattice,
    det,
    dvr_smith,
    maximal_minors,
    minors,
    nullspace,
    rank,
    saturation,
    solve,
    transpose,
)
from iwk.padic import PadicContext, to_zp_int, vp
from iwk.poly import Poly, RatFunc

DEFAULT_RING_PRECISION = 32


# -- rings -------------------------------------------------------------------

class RationalField:
    tag = "Q"
    p = None

    def coerce(self, x):
        return Fraction(x)

    def ideal_data(self, gens):
        return any(g != 0 for g in gens)

    def ideal_contains(self, data, x):
        return x == 0 or data

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("Q")


@dataclass(frozen=True)
class DVR:
    """Z_(p): rationals with denominator prime to p."""

    p: int
    tag = "Zp"

    def coerce(self, x):
        if isinstance(x, Poly):
            if x.degree > 0:
                raise DimensionMismatch("polynomial entry in a Z_p presentation")
            x = x.c[0] if x.c else 0
        x = Fraction(x)
        if x and vp(x, self.p) < 0:
            raise ValueError(f"{x} is not p-integral")
        return x

    def valuation(self, x):
        return vp(Fraction(x), self.p)

    def ideal_data(self, gens):
        vals = [self.valuation(g) for g in gens if g != 0]
        return min(vals) if vals else None

    def ideal_contains(self, data, x):
        if x == 0:
            return True
        return data is not None and self.valuation(x) >= data


@dataclass(frozen=True)
class PowerSeriesRing:
    """Desk model of Z_p[[S]] with polynomial entries."""

    p: int
    precision: int = DEFAULT_RING_PRECISION
    tag = "Binf"

    def coerce(self, x):
        x = Poly(x)
        if any(c and vp(c, self.p) < 0 for c in x.c):
            raise ValueError(f"{x} is not p-integral")
        return x

    def ideal_data(self, gens):
        return _binf_ideal_data([Poly(g) for g in gens if g != 0], self.p, self.precision)

    def ideal_contains(self, data, x):
        return _binf_contains(data, Poly(x), self.p, self.precision)

    def distinguished(self, g):
        """(mu, P) of a nonzero polynomial, P as integers mod p**(N - mu)."""
        return _weierstrass_of_poly(g, self.p, self.precision)


@dataclass(frozen=True)
class LayerQuotient:
    """B_k = Z_p[[S]]/((1+S)**(p**k) - 1) with exact rational coefficients."""

    p: int
    k: int

    @property
    def tag(self):
        return f"B{self.k}"

    @property
    def rank(self):
        return self.p ** self.k

    def coerce(self, x):
        x = Poly(x)
        w = omega(self.p, self.k)
        if x.degree >= len(w) - 1:
            x = Poly(kernels.poly_rem_monic(list(x.c), w, 0))
        return x

    def vectors(self, g):
        """Z_p-coordinates of g * S**j for j < p**k."""
        w = omega(self.p, self.k)
        n = self.rank
        cur = list(self.coerce(g).c) + [Fraction(0)] * (n - len(self.coerce(g).c))
        out = []
        for _ in range(n):
            out.append(cur[:n])
            top = cur[n - 1]
            cur = [Fraction(0)] + cur[: n - 1]
            if top:
                cur = [c - top * w[i] for i, c in enumerate(cur)]
        return out

    def ideal_data(self, gens):
        lat = ZpLattice(self.p, self.rank)
        for g in gens:
            if g != 0:
                lat.extend(self.vectors(g))
        return lat

    def ideal_contains(self, data, x):
        x = self.coerce(x)
        v = list(x.c) + [Fraction(0)] * (self.rank - len(x.c))
        return data.contains(v)

    def data_subset(self, a, b):
        return a.issubset(b)


def ring_from_tag(tag, p=None, precision=DEFAULT_RING_PRECISION):
    if tag == "Q":
        return RationalField()
    if tag == "Zp":
        return DVR(p)
    if tag == "Binf":
        return PowerSeriesRing(p, precision)
    if tag.startswith("B") and tag[1:].isdigit():
        return LayerQuotient(p, int(tag[1:]))
    raise ValueError(f"unknown ring tag {tag!r}")


# -- B_inf ideal membership ---------------------------------------------------

def _weierstrass_of_poly(g, p, n):
    c = list(Poly(g).c)
    ctx = PadicContext(p, n)
    fac = weierstrass_prepare(IwasawaSeries(ctx, c, len(c) + 1))
    return fac.mu, list(fac.distinguished_poly), fac.precision


def _first_unit_index(c, p):
    for i, x in enumerate(c):
        if x and vp(x, p) == 0:
            return i
    return None


def _content(g, p):
    return P.content_valuation(g.c, p)


def _binf_ideal_data(gens, p, n):
    if not gens:
        return None
    m = min(_content(g, p) for g in gens)
    scale = Fraction(1, p ** m)
    js = [g * scale for g in gens]
    lam, d = min((_first_unit_index(g.c, p), i) for i, g in enumerate(js)
                 if _first_unit_index(g.c, p) is not None)
    if lam == 0:
        return (m, None, None)
    _, dist, _ = _weierstrass_of_poly(js[d], p, n)
    mod = p ** n
    lat = ZpLattice(p, lam, modulus=mod)
    for g in js:
        r = _rem_vec(g, dist, p, mod)
        for _ in range(lam):
            lat.add(r)
            r = _shift_mod(r, dist, mod)
    return (m, dist, lat)


def _rem_vec(g, dist, p, mod):
    lam = len(dist) - 1
    c = [to_zp_int(x, p, mod) for x in g.c]
    r = kernels.poly_rem_monic(c, dist, mod) if len(c) > lam else c + [0] * (lam - len(c))
    return r


def _shift_mod(r, dist, mod):
    lam = len(dist) - 1
    top = r[-1]
    out = [0] + r[:-1]
    return [(x - top * dist[i]) % mod for i, x in enumerate(out)] if top else out


def _binf_contains(data, x, p, n):
    if x == 0:
        return True
    if data is None:
        return False
    m, dist, lat = data
    if _content(x, p) < m:
        return False
    if dist is None:
        return True
    y = x * Fraction(1, p ** m)
    return lat.contains(_rem_vec(y, dist, p, p ** n))


# -- ideals ------------------------------------------------------------------

class IdealGens:
    """Finitely generated ideal with a ring-specific membership test."""

    def __init__(self, ring, generators):
        self.ring = ring
        self.generators = [ring.coerce(g) for g in generators]
        self._data = None
        self._have = False

    @classmethod
    def unit(cls, ring):
        return cls(ring, [1])

    @property
    def data(self):
        if not self._have:
            self._data = self.ring.ideal_data(self.generators)
            self._have = True
        return self._data

    def contains(self, x):
        return self.ring.ideal_contains(self.data, self.ring.coerce(x))

    def issubset(self, other):
        if self.ring == other.ring and hasattr(self.ring, "data_subset"):
            return self.ring.data_subset(self.data, other.data)
        return all(other.contains(g) for g in self.generators)

    def __eq__(self, other):
        if not isinstance(other, IdealGens):
            return NotImplemented
        return self.issubset(other) and other.issubset(self)

    __hash__ = None

    def __add__(self, other):
        return IdealGens(self.ring, self.generators + other.generators)

    def __mul__(self, other):
        return IdealGens(self.ring, [a * b for a in self.generators for b in other.generators])

    def is_zero(self):
        return all(g == 0 for g in self.generators)

    def is_unit(self):
        return self.contains(1)

    def nonzero(self):
        return [g for g in self.generators if g != 0]

    def __repr__(self):
        return f"IdealGens({self.ring.tag}, {self.generators[:6]}{'...' if len(self.generators) > 6 else ''})"


def ideal_sum(ideals, ring):
    gens = []
    for i in ideals:
        gens.extend(i.generators)
    return IdealGens(ring, gens or [0])


# -- presentations -----------------------------------------------------------

class Presentation:
    """r x s matrix whose columns are relations among r generators."""

    def __init__(self, ring, entries):
        self.ring = ring
        self.entries = [[ring.coerce(x) for x in row] for row in entries]
        self.rows = len(self.entries)
        self.cols = len(self.entries[0]) if self.entries else 0
        if any(len(r) != self.cols for r in self.entries):
            raise DimensionMismatch("ragged presentation matrix")

    @classmethod
    def diagonal(cls, ring, values):
        n = len(values)
        return cls(ring, [[values[i] if i == j else 0 for j in range(n)] for i in range(n)])

    def block_diag(self, other):
        r1, s1, r2, s2 = self.rows, self.cols, other.rows, other.cols
        rows = [list(row) + [0] * s2 for row in self.entries]
        rows += [[0] * s1 + list(row) for row in other.entries]
        return Presentation(self.ring, rows) if rows else Presentation(self.ring, [])

    @classmethod
    def extension(cls, a, x, c):
        """[[A, X], [0, C]]: presents an extension of coker C by coker A."""
        if c.rows != c.cols:
            raise DimensionMismatch("the quotient block must be square")
        rows = [list(ra) + list(rx) for ra, rx in zip(a.entries, x)]
        rows += [[0] * a.cols + list(rc) for rc in c.entries]
        return cls(a.ring, rows)

    def map_entries(self, ring, fn):
        return Presentation(ring, [[fn(x) for x in row] for row in self.entries])


def _zero_one(ring):
    if isinstance(ring, (PowerSeriesRing, LayerQuotient)):
        return Poly(), Poly(1)
    return Fraction(0), Fraction(1)


def fitting_ideal(pres, i=0):
    """Ideal of the (r-i) x (r-i) minors; the unit ideal when r <= i or s < r."""
    r, s = pres.rows, pres.cols
    if r <= i or s < r:
        return IdealGens.unit(pres.ring)
    zero, one = _zero_one(pres.ring)
    return IdealGens(pres.ring, minors(pres.entries, r - i, zero, one))


def fitting_minors(pres, i=0):
    return fitting_ideal(pres, i).generators


@dataclass(frozen=True)
class CharIdeal:
    """Principal ideal p**mu * P of Z_p[[S]] (or p**mu of Z_p when P == (1,))."""

    ring_tag: str
    p: int
    mu: int
    distinguished_poly: tuple
    precision: int

    @property
    def lam(self):
        return len(self.distinguished_poly) - 1

    def same_as(self, other):
        if (self.mu, self.lam) != (other.mu, other.lam):
            return False
        mod = self.p ** min(self.precision, other.precision)
        return all((a - b) % mod == 0 for a, b in zip(self.distinguished_poly, other.distinguished_poly))

    def generator(self):
        return Poly([Fraction(self.p ** self.mu) * c for c in self.distinguished_poly])


def char_ideal(pres):
    """Characteristic ideal of a torsion module, in Weierstrass normal form.

    Square presentations give (det); otherwise the reflexive envelope of the
    0th Fitting ideal: p**(min mu) times the distinguished part of the gcd of
    the maximal minors.
    """
    ring = pres.ring
    if pres.rows > pres.cols:
        raise NotTorsion("fewer relations than generators")
    if isinstance(ring, DVR):
        gens = fitting_ideal(pres, 0).nonzero()
        if not gens:
            raise NotTorsion("presentation has rank below the number of generators")
        v = min(ring.valuation(g) for g in gens)
        return CharIdeal("Zp", ring.p, v, (1,), 10 ** 9)
    if not isinstance(ring, PowerSeriesRing):
        raise ValueError("characteristic ideals are implemented over Z_p and Z_p[[S]]")
    if pres.rows == 0:
        return CharIdeal("Binf", ring.p, 0, (1,), ring.precision)
    if pres.rows == pres.cols:
        gens = [det(pres.entries, Poly(), Poly(1))]
    else:
        gens = fitting_ideal(pres, 0).generators
    gens = [g for g in gens if g != 0]
    if not gens:
        raise NotTorsion("all maximal minors vanish")
    mu = min(_content(g, ring.p) for g in gens)
    g = gens[0]
    for h in gens[1:]:
        g = Poly(P.gcd(g.c, h.c))
    return _char_from_parts(ring, mu, g)


def _char_from_parts(ring, mu, g):
    g = Poly(g)
    if g.degree <= 0:
        return CharIdeal("Binf", ring.p, mu, (1,), ring.precision)
    prim = g * Fraction(ring.p) ** (-_content(g, ring.p))
    _, dist, prec = _weierstrass_of_poly(prim, ring.p, ring.precision)
    return CharIdeal("Binf", ring.p, mu, tuple(dist), prec)


def _gauss_val(p):
    def val(x):
        x = RatFunc.coerce(x)
        if not x:
            return None
        return P.content_valuation(x.num, p) - P.content_valuation(x.den, p)
    return val


def _ord_val(q):
    def val(x):
        x = RatFunc.coerce(x)
        if not x:
            return None
        return P.order_at(list(x.num), q) - P.order_at(list(x.den), q)
    return val


def local_length(pres, valuation):
    """Length of the localized module; None when it is not torsion there."""
    mat = [[RatFunc(list(x.c) if isinstance(x, Poly) else [x]) for x in row] for row in pres.entries]
    exps, info = dvr_smith(mat, valuation)
    if info["rank"] < pres.rows:
        return None
    return sum(exps)


def q_irreducible_factors(g):
    """Monic Q-irreducible factors of a rational polynomial."""
    s = sympy.Symbol("S")
    expr = sum(sympy.Rational(c.numerator, c.denominator) * s ** i for i, c in enumerate(Poly(g).c))
    _, facs = sympy.factor_list(expr, s)
    out = []
    for f, _ in facs:
        coeffs = [Fraction(int(sympy.numer(c)), int(sympy.denom(c)))
                  for c in reversed(sympy.Poly(f, s).all_coeffs())]
        lead = coeffs[-1]
        out.append([c / lead for c in coeffs])
    return out


def char_from_lengths(pres):
    """char(M) = prod over height-one primes q of q**length(M_q), over Z_p[[S]]."""
    ring = pres.ring
    gens = fitting_ideal(pres, 0).nonzero()
    if pres.rows > pres.cols or not gens:
        raise NotTorsion("module is not torsion")
    lp = local_length(pres, _gauss_val(ring.p))
    if lp is None:
        raise NotTorsion("module is not torsion at (p)")
    g = gens[0]
    for h in gens[1:]:
        g = Poly(P.gcd(g.c, h.c))
    total = [Fraction(1)]
    for q in q_irreducible_factors(g) if g.degree > 0 else []:
        qq = Poly(q)
        prim = qq * (Fraction(ring.p) ** (-_content(qq, ring.p)))
        if _first_unit_index(prim.c, ring.p) == 0:
            continue  # a unit of Z_p[[S]]
        lq = local_length(pres, _ord_val(q))
        total = P.mul(total, P.power(q, lq))
    return _char_from_parts(ring, lp, Poly(total))


def char_mod_S_check(pres):
    """char(M) at S = 0 versus char of the S = 0 reduction, compared as ideals of Z_p."""
    ring = pres.ring
    if not isinstance(ring, PowerSeriesRing) or pres.rows != pres.cols:
        raise DimensionMismatch("needs a square presentation over Z_p[[S]]")
    c = char_ideal(pres)
    dvr = DVR(ring.p)
    red = pres.map_entries(dvr, lambda x: x(0))
    exps, info = dvr_smith(red.entries, dvr.valuation)
    if info["rank"] < red.rows:
        raise NotTorsion("reduction at S = 0 is not torsion")
    at0 = c.distinguished_poly[0] % ring.p ** c.precision
    if at0 == 0:
        raise PrecisionLoss("distinguished polynomial vanishes at S = 0 to working precision")
    return c.mu + vp(at0, ring.p) == sum(exps)


# -- Fitting over F_p[[S]] ---------------------------------------------------

class _FpSeries:
    """Truncated power series over F_p, enough for Smith form over F_p[[S]]."""

    __slots__ = ("c", "p")
    T = 48

    def __init__(self, c, p):
        c = [x % p for x in c[: self.T]]
        self.c = c + [0] * (self.T - len(c))
        self.p = p

    def ord(self):
        return next((i for i, x in enumerate(self.c) if x), None)

    def __bool__(self):
        return self.ord() is not None

    def __sub__(self, o):
        return _FpSeries([a - b for a, b in zip(self.c, o.c)], self.p)

    def __mul__(self, o):
        return _FpSeries(kernels.series_mul(self.c, o.c, self.T, self.p), self.p)

    def __truediv__(self, o):
        k = o.ord()
        if k is None or (self.ord() is not None and self.ord() < k):
            raise ZeroDivisionError("non-integral quotient")
        a = self.c[k:] + [0] * k
        b = o.c[k:] + [0] * k
        inv0 = pow(b[0], -1, self.p)
        q = [0] * self.T
        for i in range(self.T):
            acc = a[i] - sum(q[j] * b[i - j] for j in range(i))
            q[i] = acc * inv0 % self.p
        return _FpSeries(q, self.p)


def _fitting_val_from_smith(exps, rank_, r, i):
    need = r - i
    if need <= 0:
        return 0
    if need > rank_:
        return None
    return sum(sorted(exps)[:need])


# -- the property suite -------------------------------------------------------

@dataclass
class Check:
    item: str
    status: bool
    witness: str

    def line(self):
        return f"item={self.item} status={'pass' if self.status else 'fail'} witness={self.witness}"


def _rand_dvr_entry(rng, p):
    if rng.random() < 0.25:
        return 0
    return rng.choice([1, -1, 2]) * p ** rng.choice([0, 0, 1, 2]) * rng.choice([1, 1, 1, 2 + p])


def _rand_binf_entry(rng, p):
    r = rng.random()
    if r < 0.2:
        return Poly()
    if r < 0.45:
        return Poly([rng.randint(-2, 2) * p ** rng.choice([0, 1]) or 1])
    if r < 0.8:
        return Poly([p * rng.randint(-2, 2), 1])
    return Poly([rng.randint(-3, 3), rng.randint(-3, 3), rng.choice([1, p])])


def _random_presentation(rng, ring, r, s, entry):
    return Presentation(ring, [[entry(rng, ring.p) for _ in range(s)] for _ in range(r)])


def _random_square_nonsingular(rng, ring, n, entry):
    zero, one = _zero_one(ring)
    for _ in range(100):
        c = _random_presentation(rng, ring, n, n, entry)
        if det(c.entries, zero, one) != 0:
            return c
    return Presentation.diagonal(ring, [ring.coerce(ring.p)] * n)


def fitting_checks_for(m1, x, m3, rng=None):
    """Items (1)-(6) on the extension of coker C by coker A; returns {item: (ok, note)}."""
    ring = m1.ring
    m2 = Presentation.extension(m1, x, m3)
    res = {}

    # (1) base change to B/I
    ok = True
    if isinstance(ring, PowerSeriesRing):
        dvr = DVR(ring.p)
        red = m2.map_entries(dvr, lambda e: e(0))
        for i in range(m2.rows + 1):
            lhs = _dvr_fitting_via_smith(red, i)
            rhs = IdealGens(dvr, [g(0) for g in fitting_ideal(m2, i).generators])
            ok &= lhs == rhs
        # I = (p): B/I = F_p[[S]], a DVR with uniformizer S
        for i in range(m2.rows + 1):
            lhs = _fp_fitting_ord(m2, i, ring.p)
            gens = fitting_ideal(m2, i).generators
            ords = [_FpSeries([to_zp_int(c, ring.p, ring.p) for c in g.c], ring.p).ord() for g in gens]
            ords = [o for o in ords if o is not None]
            ok &= lhs == (min(ords) if ords else None)
    elif isinstance(ring, DVR):
        for e in (1, 2, 3):
            mod = ring.p ** e
            red = m2.map_entries(ring, lambda v: Fraction(to_zp_int(v, ring.p, mod)))
            for i in range(m2.rows + 1):
                lhs = _capped(_dvr_fitting_val(red, i), e)
                rhs = _capped(IdealGens(ring, fitting_ideal(m2, i).generators).data, e)
                ok &= lhs == rhs
    res["1"] = ok

    # (2) direct sums
    ok = True
    s = m1.block_diag(m3)
    for i in range(s.rows + 1):
        lhs = fitting_ideal(s, i)
        rhs = ideal_sum([fitting_ideal(m1, j) * fitting_ideal(m3, i - j) for j in range(i + 1)], ring)
        ok &= lhs == rhs
    res["2"] = ok

    # (3) extensions: containment, and equality of F^(0) for a square quotient
    ok = True
    for i in range(m2.rows + 1):
        big = fitting_ideal(m2, i)
        small = ideal_sum([fitting_ideal(m1, j) * fitting_ideal(m3, i - j) for j in range(i + 1)], ring)
        ok &= small.issubset(big)
    ok &= fitting_ideal(m2, 0) == fitting_ideal(m1, 0) * fitting_ideal(m3, 0)
    res["3"] = ok

    # (4) localization: at the fraction field, and at the height-one prime (p)
    ok = True
    for i in range(m2.rows + 1):
        need = m2.rows - i
        gens = fitting_ideal(m2, i).nonzero()
        if m2.rows <= i or m2.cols < m2.rows:
            continue
        rk = _frac_rank(m2)
        ok &= (rk >= need) == bool(gens)
        if isinstance(ring, PowerSeriesRing):
            val = _gauss_val(ring.p)
            mat = [[RatFunc(list(e.c)) for e in row] for row in m2.entries]
        else:
            val = ring.valuation
            mat = m2.entries
        exps, info = dvr_smith(mat, val)
        lhs = _fitting_val_from_smith(exps, info["rank"], m2.rows, i)
        rhs = min((val(g if not isinstance(g, Poly) else RatFunc(list(g.c))) for g in gens), default=None)
        ok &= lhs == rhs
    res["4"] = ok

    torsion = m2.rows <= m2.cols and _frac_rank(m2) == m2.rows
    if isinstance(ring, DVR):
        # (5) F = char, and multiplicativity along the extension
        ok = True
        if torsion:
            exps, _ = dvr_smith(m2.entries, ring.valuation)
            ok &= IdealGens(ring, [ring.p ** sum(exps)]) == fitting_ideal(m2, 0)
            if _frac_rank(m1) == m1.rows and m1.rows <= m1.cols:
                ok &= fitting_ideal(m1, 0) * fitting_ideal(m3, 0) == fitting_ideal(m2, 0)
        res["5"] = ok
    if isinstance(ring, PowerSeriesRing) and torsion:
        res["6"] = char_ideal(m2).same_as(char_from_lengths(m2))
    return res


def _frac_rank(pres):
    if isinstance(pres.ring, PowerSeriesRing):
        mat = [[RatFunc(list(e.c)) for e in row] for row in pres.entries]
        _, info = dvr_smith(mat, lambda x: 0 if x else None)
        return info["rank"]
    return rank(pres.entries)


def _dvr_fitting_val(pres, i):
    exps, info = dvr_smith(pres.entries, pres.ring.valuation)
    r = pres.rows
    if r <= i or pres.cols < r:
        return 0
    return _fitting_val_from_smith(exps, info["rank"], r, i)


def _dvr_fitting_via_smith(pres, i):
    v = _dvr_fitting_val(pres, i)
    return IdealGens(pres.ring, [0 if v is None else pres.ring.p ** v])


def _capped(v, e):
    return e if v is None else min(v, e)


def _fp_fitting_ord(pres, i, p):
    r = pres.rows
    if r <= i or pres.cols < r:
        return 0
    mat = [[_FpSeries([to_zp_int(c, p, p) for c in e.c], p) for e in row] for row in pres.entries]
    exps, info = dvr_smith(mat, lambda x: x.ord())
    return _fitting_val_from_smith(exps, info["rank"], r, i)


def fitting_property_suite(seed=0, count=200, p=3, precision=16):
    """Randomized verification of the Fitting-ideal properties (1)-(6)."""
    rng = random.Random(seed)
    tallies = {k: [0, 0] for k in "123456"}
    failures = {}
    for t in range(count):
        if t % 2 == 0:
            ring, entry = DVR(p), _rand_dvr_entry
        else:
            ring, entry = PowerSeriesRing(p, precision), _rand_binf_entry
        r3 = rng.randint(1, 2)
        r1 = rng.randint(1, 4 - r3)
        s1 = rng.randint(r1, 4 - r3)
        a = _random_presentation(rng, ring, r1, s1, entry)
        c = _random_square_nonsingular(rng, ring, r3, entry)
        x = [[entry(rng, p) for _ in range(r3)] for _ in range(r1)]
        for item, ok in fitting_checks_for(a, x, c).items():
            tallies[item][0] += 1
            if not ok:
                tallies[item][1] += 1
                failures.setdefault(item, t)
    checks = []
    for item, (n, bad) in tallies.items():
        wit = f"seed={seed},instances={n},failures={bad}"
        if item in failures:
            wit += f",first_failure={failures[item]}"
        checks.append(Check(f"fitting({item})", n > 0 and bad == 0, wit))
    return checks


def random_char_mod_S_instances(seed, count, p=3, precision=16):
    """Square torsion presentations over Z_p[[S]] whose S = 0 reduction stays torsion."""
    rng = random.Random(seed)
    ring = PowerSeriesRing(p, precision)
    out = []
    while len(out) < count:
        n = rng.randint(1, 3)
        pres = _random_presentation(rng, ring, n, n, _rand_binf_entry)
        d = det(pres.entries, Poly(), Poly(1))
        if d == 0 or d(0) == 0:
            continue
        out.append(pres)
    return out


# -- finite flat algebras ----------------------------------------------------

class FiniteFlatAlgebra:
    """Commutative Z_(p)-algebra free of finite rank, by structure constants.

    ``table[i][j]`` is the coordinate vector of e_i * e_j.  ``phi`` (optional)
    lists the images of the basis under a section R -> Z_(p).
    """

    def __init__(self, p, table, phi=None, jacobian=None, name=""):
        self.p = p
        self.rank = len(table)
        self.table = [[[Fraction(x) for x in v] for v in row] for row in table]
        self.phi = None if phi is None else [Fraction(x) for x in phi]
        self.jacobian = jacobian  # Jacobian of complete-intersection relations at phi
        self.name = name
        self.one = self._identity()

    def _identity(self):
        m = self.rank
        # sum_i u_i e_i e_j = e_j for all j
        rows, rhs = [], []
        for j in range(m):
            for k in range(m):
                rows.append([self.table[i][j][k] for i in range(m)])
                rhs.append(Fraction(int(j == k)))
        u = solve(rows, rhs)
        if u is None:
            raise ValueError("structure constants have no identity element")
        return u

    def mul(self, x, y):
        m = self.rank
        out = [Fraction(0)] * m
        for i in range(m):
            if x[i]:
                for j in range(m):
                    if y[j]:
                        c = x[i] * y[j]
                        for k, t in enumerate(self.table[i][j]):
                            if t:
                                out[k] += c * t
        return out

    def mult_matrix(self, x):
        """Matrix of y -> x*y in the basis (columns are images of e_j)."""
        cols = [self.mul(x, [Fraction(int(i == j)) for i in range(self.rank)]) for j in range(self.rank)]
        return transpose(cols)

    def basis(self, i):
        return [Fraction(int(i == j)) for j in range(self.rank)]

    def check_axioms(self):
        m = self.rank
        for i in range(m):
            for j in range(m):
                if self.table[i][j] != self.table[j][i]:
                    return False
                for k in range(m):
                    a = self.mul(self.mul(self.basis(i), self.basis(j)), self.basis(k))
                    b = self.mul(self.basis(i), self.mul(self.basis(j), self.basis(k)))
                    if a != b:
                        return False
        if self.phi is not None:
            for i in range(m):
                for j in range(m):
                    lhs = sum(c * f for c, f in zip(self.table[i][j], self.phi))
                    if lhs != self.phi[i] * self.phi[j]:
                        return False
        return True

    def trace_form_det(self):
        tr = [[sum(self.mult_matrix(self.mul(self.basis(i), self.basis(j)))[k][k] for k in range(self.rank))
               for j in range(self.rank)] for i in range(self.rank)]
        return det(tr)

    def is_reduced(self):
        return self.trace_form_det() != 0

    def is_gorenstein(self):
        """Hom(R, Z_(p)) free of rank one over R: some functional psi with unimodular pairing."""
        return self.gorenstein_witness() is not None

    def gorenstein_witness(self):
        m, p = self.rank, self.p
        for psi in product(range(p), repeat=m):
            if not any(psi):
                continue
            g = [[sum(c * s for c, s in zip(self.table[i][j], psi)) for j in range(m)] for i in range(m)]
            d = det(g)
            if d != 0 and vp(Fraction(d), p) == 0:
                return list(psi)
        return None

    def section_map(self):
        if self.phi is None:
            raise NoSectionComponent("algebra has no section to the base")
        return AlgebraMap(self, base_algebra(self.p), [[v] for v in self.phi])


def base_algebra(p):
    return FiniteFlatAlgebra(p, [[[1]]], phi=[1], jacobian=[], name="B")


def monogenic(f, p, root=None):
    """Z_(p)[X]/(f) with basis 1, X, ..., X**(d-1); section X -> root if given."""
    f = [Fraction(c) for c in P.trim(f)]
    d = len(f) - 1
    if d < 1 or f[-1] != 1:
        raise ValueError("relation must be monic of positive degree")
    table = []
    for i in range(d):
        row = []
        for j in range(d):
            mono = [0] * (i + j) + [1]
            rem = P.divmod_poly(mono, f)[1]
            row.append([Fraction(rem[k]) if k < len(rem) else Fraction(0) for k in range(d)])
        table.append(row)
    phi = jac = None
    if root is not None:
        root = Fraction(root)
        if P.evaluate(f, root) != 0:
            raise NoSectionComponent(f"{root} is not a root of the relation")
        phi = [root ** i for i in range(d)]
        jac = [[P.evaluate(P.derivative(f), root)]]
    return FiniteFlatAlgebra(p, table, phi, jac, name=f"B[X]/({P.format_poly(f)})")


def tensor(a, b):
    """a (x) b over the base, with the product section and block Jacobian."""
    m, n = a.rank, b.rank
    table = []
    for i, j in product(range(m), range(n)):
        row = []
        for k, l in product(range(m), range(n)):
            row.append([x * y for x, y in product(a.table[i][k], b.table[j][l])])
        table.append(row)
    phi = None if a.phi is None or b.phi is None else [x * y for x, y in product(a.phi, b.phi)]
    jac = None
    if a.jacobian is not None and b.jacobian is not None:
        ra, rb = len(a.jacobian), len(b.jacobian)
        jac = [list(r) + [0] * rb for r in a.jacobian] + [[0] * ra + list(r) for r in b.jacobian]
    return FiniteFlatAlgebra(a.p, table, phi, jac, name=f"({a.name})(x)({b.name})")


@dataclass
class AlgebraMap:
    source: FiniteFlatAlgebra
    target: FiniteFlatAlgebra
    images: list  # images[j] = target coordinates of alpha(e_j)

    def __post_init__(self):
        self.images = [[Fraction(x) for x in v] for v in self.images]
        if len(self.images) != self.source.rank or any(len(v) != self.target.rank for v in self.images):
            raise DimensionMismatch("algebra map has the wrong shape")

    def apply(self, x):
        out = [Fraction(0)] * self.target.rank
        for c, v in zip(x, self.images):
            if c:
                out = [o + c * t for o, t in zip(out, v)]
        return out

    def is_homomorphism(self):
        s, t = self.source, self.target
        if self.apply(s.one) != t.one:
            return False
        for i in range(s.rank):
            for j in range(s.rank):
                if self.apply(s.mul(s.basis(i), s.basis(j))) != t.mul(self.images[i], self.images[j]):
                    return False
        return True

    def is_surjective(self):
        lat = ZpLattice(self.source.p, self.target.rank).extend(self.images)
        return all(lat.contains(self.target.basis(i)) for i in range(self.target.rank))

    def compose(self, other):
        """other o self."""
        return AlgebraMap(self.source, other.target, [other.apply(v) for v in self.images])


def quotient_map(f, g, p):
    """B[X]/(f) -> B[X]/(g) for g dividing f."""
    src, dst = monogenic(f, p), monogenic(g, p)
    if P.divmod_poly(f, g)[1]:
        raise ValueError("target relation must divide the source relation")
    d = len(P.trim(g)) - 1
    imgs = []
    for i in range(src.rank):
        rem = P.divmod_poly([0] * i + [1], g)[1]
        imgs.append([rem[k] if k < len(rem) else 0 for k in range(d)])
    return AlgebraMap(src, dst, imgs)


def _component_idempotent(alpha):
    r = alpha.source
    if not r.is_reduced():
        raise NotReduced(f"{r.name or 'algebra'} has a degenerate trace form")
    m = r.rank
    a = transpose(alpha.images)  # target_rank x m
    kernel = nullspace(a, m) if a else [r.basis(i) for i in range(m)]
    rows, rhs = [], []
    for k in kernel:
        for row in r.mult_matrix(k):
            rows.append(row)
            rhs.append(Fraction(0))
    for row, v in zip(a, alpha.target.one):
        rows.append(row)
        rhs.append(v)
    e = solve(rows, rhs)
    if e is None:
        raise NoSectionComponent("the map does not split off a factor of the total ring of fractions")
    if len(nullspace(rows, m)) > 0:
        raise NotReduced("component idempotent is not unique")
    if r.mul(e, e) != e:
        raise NoSectionComponent("solution is not idempotent")
    return e


def congruence_lattice(alpha):
    """alpha(I) for I = ker(R -> X), as a list of target vectors."""
    r = alpha.source
    e = _component_idempotent(alpha)
    span = [r.mul(e, r.basis(i)) for i in range(r.rank)]
    ideal_i = saturation(span, r.p)
    return [alpha.apply(v) for v in ideal_i], e


def congruence_ideal(r):
    """c_phi for the section of ``r``, an ideal of Z_(p)."""
    if isinstance(r, AlgebraMap):
        alpha = r
    else:
        alpha = r.section_map()
    vecs, _ = congruence_lattice(alpha)
    if alpha.target.rank == 1:
        return IdealGens(DVR(r.p if not isinstance(r, AlgebraMap) else r.source.p), [v[0] for v in vecs])
    return AlgebraIdeal(alpha.target, vecs)


@dataclass
class AlgebraIdeal:
    algebra: FiniteFlatAlgebra
    vectors: list

    def lattice(self):
        return ZpLattice(self.algebra.p, self.algebra.rank).extend(self.vectors or [[0] * self.algebra.rank])

    def __mul__(self, other):
        a = self.algebra
        return AlgebraIdeal(a, [a.mul(x, y) for x in self.vectors for y in other.vectors])

    def image(self, alpha):
        return AlgebraIdeal(alpha.target, [alpha.apply(v) for v in self.vectors])

    def __eq__(self, other):
        return self.lattice() == other.lattice()


def congruence_decomposition_check(alpha, beta):
    """c_lambda == c_beta * beta(c_alpha) for R -alpha-> S -beta-> A, lambda = beta o alpha."""
    for alg in (alpha.source, alpha.target, beta.target):
        if not alg.is_gorenstein():
            raise NotGorenstein(f"{alg.name or 'algebra'}: no functional makes the dual free of rank one")
    lam = alpha.compose(beta)
    c_lam = AlgebraIdeal(beta.target, congruence_lattice(lam)[0])
    c_beta = AlgebraIdeal(beta.target, congruence_lattice(beta)[0])
    c_alpha = AlgebraIdeal(alpha.target, congruence_lattice(alpha)[0])
    return c_lam == c_beta * c_alpha.image(beta)


def kahler_fitting(r):
    """Fitting ideal of Omega_{R/B} (x)_R B from the Jacobian of the relations at phi."""
    if r.jacobian is None:
        raise ValueError("algebra was not built from complete-intersection relations")
    jac = r.jacobian
    if not jac:
        return IdealGens.unit(DVR(r.p))
    # generators dX_j, relations df_i = sum_j (df_i/dX_j) dX_j
    pres = Presentation(DVR(r.p), transpose(jac))
    return fitting_ideal(pres, 0)


def cubic_chain(a, b, c, p):
    """B[X]/((X-a)(X-b)(X-c)) -> B[X]/((X-a)(X-b)) -> B[X]/(X-a)."""
    f = P.from_roots([a, b, c])
    g = P.from_roots([a, b])
    h = P.from_roots([a])
    return quotient_map(f, g, p), quotient_map(g, h, p)
