"""The one-variable Iwasawa algebra Z_p[[S]], its layer quotients, and the
multivariate weight algebras Z_p[[V_1..V_n]]/(prod(1+V_j) - 1).

Series coefficients are held internally as integers modulo p**N; the public
``coeffs`` view wraps them as :class:`PadicNumber`.
"""
from dataclasses import dataclass
from fractions import Fraction
from math import comb
import re

from iwk import kernels
from iwk.errors import (
    AllCoefficientsNonUnit,
    ContextMismatch,
    DivisionByZeroAtPrecision,
    TruncationTooSmall,
    UnknownVariable,
)
from iwk.padic import PadicContext, PadicNumber, to_zp_int, vp

DEFAULT_TRUNCATION = 64
DEFAULT_MULTI_TRUNCATION = 8


def _ival(x, p):
    """Valuation of an integer; None for 0."""
    return vp(x, p) if x else None


class IwasawaSeries:
    """Element of Z_p[[S]] known modulo (p**N, S**M)."""

    __slots__ = ("context", "truncation_order", "_c")

    def __init__(self, context, coeffs, truncation_order=DEFAULT_TRUNCATION):
        if truncation_order < 1:
            raise ValueError("truncation order must be >= 1")
        mod = context.modulus
        c = [0] * truncation_order
        for i, x in enumerate(coeffs):
            if i >= truncation_order:
                break
            if isinstance(x, PadicNumber):
                if x.context != context:
                    raise ContextMismatch(f"{x.context} vs {context}")
                c[i] = x.to_int()
            else:
                c[i] = to_zp_int(x, context.p, mod)
        self.context = context
        self.truncation_order = truncation_order
        self._c = c

    @classmethod
    def _raw(cls, context, ints, m):
        s = cls.__new__(cls)
        s.context = context
        s.truncation_order = m
        s._c = list(ints) + [0] * (m - len(ints))
        return s

    # -- views ----------------------------------------------------------------
    @property
    def coeffs(self):
        return [self.context(x) for x in self._c]

    def int_coeffs(self):
        return list(self._c)

    def valuations(self):
        return [_ival(x, self.context.p) for x in self._c]

    def is_zero(self):
        return not any(self._c)

    def is_unit(self):
        return self._c[0] % self.context.p != 0

    # -- arithmetic -----------------------------------------------------------
    def _check(self, other):
        if not isinstance(other, IwasawaSeries):
            other = IwasawaSeries(self.context, [other], self.truncation_order)
        if other.context != self.context:
            raise ContextMismatch(f"{other.context} vs {self.context}")
        return other

    def __add__(self, other):
        other = self._check(other)
        m = min(self.truncation_order, other.truncation_order)
        mod = self.context.modulus
        return IwasawaSeries._raw(self.context, [(a + b) % mod for a, b in zip(self._c[:m], other._c[:m])], m)

    __radd__ = __add__

    def __neg__(self):
        mod = self.context.modulus
        return IwasawaSeries._raw(self.context, [(-a) % mod for a in self._c], self.truncation_order)

    def __sub__(self, other):
        return self + (-self._check(other))

    def __rsub__(self, other):
        return self._check(other) - self

    def __mul__(self, other):
        other = self._check(other)
        m = min(self.truncation_order, other.truncation_order)
        prod = kernels.series_mul(self._c[:m], other._c[:m], m, self.context.modulus)
        return IwasawaSeries._raw(self.context, prod, m)

    __rmul__ = __mul__

    def __pow__(self, e):
        out = IwasawaSeries(self.context, [1], self.truncation_order)
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def inverse(self):
        """Multiplicative inverse; needs a unit constant term."""
        if not self.is_unit():
            raise DivisionByZeroAtPrecision("series with non-unit constant term is not invertible")
        mod = self.context.modulus
        m = self.truncation_order
        c = self._c
        inv0 = pow(c[0], -1, mod)
        out = [inv0] + [0] * (m - 1)
        for i in range(1, m):
            acc = sum(c[j] * out[i - j] for j in range(1, i + 1))
            out[i] = (-acc * inv0) % mod
        return IwasawaSeries._raw(self.context, out, m)

    def __eq__(self, other):
        if not isinstance(other, IwasawaSeries):
            return NotImplemented
        m = min(self.truncation_order, other.truncation_order)
        return self.context == other.context and self._c[:m] == other._c[:m]

    def __hash__(self):
        return hash((self.context, tuple(self._c)))

    def truncate(self, m):
        return IwasawaSeries._raw(self.context, self._c[:m], m)

    def __repr__(self):
        terms = [f"{x}*S^{i}" for i, x in enumerate(self._c) if x]
        return f"IwasawaSeries(p={self.context.p}, N={self.context.precision}, M={self.truncation_order}: " + (
            " + ".join(terms[:8]) + (" + ..." if len(terms) > 8 else "") if terms else "0") + ")"


@dataclass(frozen=True)
class DistinguishedFactorization:
    """``f = p**mu * P * U``; P and U are known modulo ``p**precision``."""

    mu: int
    distinguished_poly: tuple  # integer coefficients, low degree first, monic
    unit: IwasawaSeries
    precision: int

    @property
    def lam(self):
        return len(self.distinguished_poly) - 1

    def poly_padic(self):
        ctx = PadicContext(self.unit.context.p, self.precision)
        return [ctx(x) for x in self.distinguished_poly]

    def agrees_with(self, other, precision=None):
        """Same mu, lambda, and P, U congruent modulo the shared precision."""
        if self.mu != other.mu or self.lam != other.lam:
            return False
        prec = min(self.precision, other.precision, precision or self.precision)
        mod = self.unit.context.p ** prec
        m = min(self.unit.truncation_order, other.unit.truncation_order)
        return all((a - b) % mod == 0 for a, b in zip(self.distinguished_poly, other.distinguished_poly)) and all(
            (a - b) % mod == 0 for a, b in zip(self.unit._c[:m], other.unit._c[:m]))


def weierstrass_prepare(f):
    """Factor ``f = p**mu * P * U`` with P distinguished and U a unit.

    The truncated series is represented by its polynomial lift of degree
    < M; P and U are found by Hensel lifting the factorisation
    ``f / p**mu = S**lam * Q`` modulo p, so U comes out a polynomial and
    ``p**mu * P * U`` matches ``f`` exactly modulo ``(p**N, S**M)``.
    """
    ctx = f.context
    p = ctx.p
    vals = [v for v in f.valuations() if v is not None]
    if not vals:
        raise AllCoefficientsNonUnit(
            "series is zero modulo p^N: no coefficient becomes a unit; raise the precision or truncation")
    mu = min(vals)
    prec = ctx.precision - mu
    mod = p ** prec
    pm = p ** mu
    g = [x // pm % mod for x in f._c]
    lam = next(i for i, x in enumerate(g) if x % p)
    m = f.truncation_order
    qbar = [x % p for x in g[lam:]]  # S**lam * qbar == g (mod p)
    qinv = _series_inverse_mod(qbar, lam, p)  # qbar**-1 mod (p, S**lam)
    P = [0] * lam + [1]
    Q = [x % p for x in qbar]
    for k in range(1, prec):
        pk = p ** k
        pq = kernels.series_mul(P, Q, m, mod)
        err = [(a - b) % mod for a, b in zip(g, pq + [0] * (m - len(pq)))]
        if any(x % pk for x in err):
            raise AssertionError("Hensel invariant broken")  # pragma: no cover
        e1 = [(x // pk) % p for x in err]
        if not any(e1):
            continue
        a = kernels.series_mul(e1[:lam], qinv, lam, p) if lam else []
        aq = kernels.series_mul(a, qbar, m, p) if a else []
        diff = [(x - (aq[i] if i < len(aq) else 0)) % p for i, x in enumerate(e1)]
        if any(diff[:lam]):
            raise AssertionError("division by S^lam failed")  # pragma: no cover
        b = diff[lam:]
        for i, x in enumerate(a):
            P[i] = (P[i] + pk * x) % mod
        for i, x in enumerate(b):
            Q[i] = (Q[i] + pk * x) % mod
    unit = IwasawaSeries._raw(ctx, Q[:m], m)
    return DistinguishedFactorization(mu, tuple(P), unit, prec)


def _series_inverse_mod(c, m, mod):
    """Inverse of the series ``c`` modulo (mod, S**m)."""
    if m == 0:
        return []
    inv0 = pow(c[0], -1, mod)
    out = [inv0] + [0] * (m - 1)
    for i in range(1, m):
        acc = sum(c[j] * out[i - j] for j in range(1, min(i, len(c) - 1) + 1))
        out[i] = (-acc * inv0) % mod
    return out


# -- layer quotients ---------------------------------------------------------

def omega(p, k):
    """Integer coefficients of (1+S)**(p**k) - 1."""
    q = p ** k
    return [0] + [comb(q, i) for i in range(1, q + 1)]


@dataclass(frozen=True)
class LayerRing:
    """B_k = Z_p[[S]] / ((1+S)**(p**k) - 1), a free Z_p-module of rank p**k."""

    context: PadicContext
    k: int

    @property
    def modulus(self):
        return omega(self.context.p, self.k)

    @property
    def rank(self):
        return self.context.p ** self.k

    def element(self, coeffs, precision=None):
        prec = self.context.precision if precision is None else precision
        mod = self.context.p ** prec
        c = [to_zp_int(x, self.context.p, mod) if not isinstance(x, PadicNumber) else x.to_int() % mod
             for x in coeffs]
        c = kernels.poly_rem_monic(c, self.modulus, mod) if len(c) > self.rank else c + [0] * (self.rank - len(c))
        return LayerElement(self, tuple(c), prec)


@dataclass(frozen=True)
class LayerElement:
    ring: LayerRing
    coeffs: tuple  # integers mod p**precision, length p**k
    precision: int

    def _mod(self, other):
        if self.ring != other.ring:
            raise ContextMismatch("elements of different layers")
        prec = min(self.precision, other.precision)
        return prec, self.ring.context.p ** prec

    def __add__(self, other):
        prec, mod = self._mod(other)
        return LayerElement(self.ring, tuple((a + b) % mod for a, b in zip(self.coeffs, other.coeffs)), prec)

    def __sub__(self, other):
        prec, mod = self._mod(other)
        return LayerElement(self.ring, tuple((a - b) % mod for a, b in zip(self.coeffs, other.coeffs)), prec)

    def __mul__(self, other):
        prec, mod = self._mod(other)
        full = kernels.series_mul(list(self.coeffs), list(other.coeffs), 2 * self.ring.rank - 1, mod)
        rem = kernels.poly_rem_monic(full, self.ring.modulus, mod)
        return LayerElement(self.ring, tuple(rem), prec)

    def __eq__(self, other):
        if not isinstance(other, LayerElement):
            return NotImplemented
        prec, mod = self._mod(other)
        return all((a - b) % mod == 0 for a, b in zip(self.coeffs, other.coeffs))

    def __hash__(self):
        return hash((self.ring, self.precision))

    def padic_coeffs(self):
        ctx = PadicContext(self.ring.context.p, max(self.precision, 1))
        return [ctx(x) for x in self.coeffs]


def layer_precision(p, k, m, n):
    """Digits of B_k determined by a series known modulo (p**n, S**m)."""
    tail = kernels.poly_rem_monic([0] * m + [1], omega(p, k), 0)
    vals = [vp(x, p) for x in tail if x]
    return min([n] + vals)


def layer_reduce(f, k):
    """Image of ``f`` in B_k, with precision lowered to what S**M leaves known."""
    p = f.context.p
    q = p ** k
    if f.truncation_order < q:
        raise TruncationTooSmall(
            f"layer {k} needs truncation >= {q}, series has {f.truncation_order}")
    ring = LayerRing(f.context, k)
    prec = layer_precision(p, k, f.truncation_order, f.context.precision)
    mod = p ** prec
    rem = kernels.poly_rem_monic([x % mod for x in f._c], ring.modulus, mod)
    return LayerElement(ring, tuple(rem), prec)


def layer_reduce_poly(coeffs, k, p):
    """Exact reduction of a rational polynomial modulo (1+S)**(p**k) - 1."""
    w = omega(p, k)
    c = [Fraction(x) for x in coeffs]
    if len(c) <= len(w) - 1:
        return c + [Fraction(0)] * (len(w) - 1 - len(c))
    return [Fraction(x) for x in kernels.poly_rem_monic(c, w, 0)]


# -- multivariate weight algebras ---------------------------------------------

_VAR = re.compile(r"^([XT])_?\{?(\d+),(\d+)\}?$")


@dataclass(frozen=True, order=True)
class WeightVar:
    kind: str  # "X" (weight-space variable) or "T" (Hecke-side variable)
    layer: int
    index: int

    @classmethod
    def parse(cls, name):
        m = _VAR.match(name.replace(" ", ""))
        if not m:
            raise UnknownVariable(f"not a weight variable: {name!r}")
        return cls(m.group(1), int(m.group(2)), int(m.group(3)))

    def __str__(self):
        return f"{self.kind}_{{{self.layer},{self.index}}}"


class MultiSeries:
    """Power series in named variables, truncated in total degree."""

    __slots__ = ("vars", "terms", "truncation")

    def __init__(self, variables, terms=None, truncation=DEFAULT_MULTI_TRUNCATION):
        self.vars = tuple(variables)
        self.truncation = truncation
        self.terms = {}
        for e, c in (terms or {}).items():
            if c and sum(e) < truncation:
                self.terms[tuple(e)] = Fraction(c)

    @classmethod
    def constant(cls, variables, c, truncation=DEFAULT_MULTI_TRUNCATION):
        return cls(variables, {(0,) * len(variables): c}, truncation)

    @classmethod
    def variable(cls, variables, i, truncation=DEFAULT_MULTI_TRUNCATION):
        e = [0] * len(variables)
        e[i] = 1
        return cls(variables, {tuple(e): 1}, truncation)

    def _lift(self, other):
        if isinstance(other, MultiSeries):
            if other.vars != self.vars:
                raise UnknownVariable(f"variable sets differ: {self.vars} vs {other.vars}")
            return other
        return MultiSeries.constant(self.vars, other, self.truncation)

    def __add__(self, other):
        other = self._lift(other)
        t = dict(self.terms)
        for e, c in other.terms.items():
            t[e] = t.get(e, 0) + c
        return MultiSeries(self.vars, t, min(self.truncation, other.truncation))

    __radd__ = __add__

    def __neg__(self):
        return MultiSeries(self.vars, {e: -c for e, c in self.terms.items()}, self.truncation)

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        other = self._lift(other)
        d = min(self.truncation, other.truncation)
        t = {}
        for e1, c1 in self.terms.items():
            s1 = sum(e1)
            for e2, c2 in other.terms.items():
                if s1 + sum(e2) >= d:
                    continue
                e = tuple(a + b for a, b in zip(e1, e2))
                t[e] = t.get(e, 0) + c1 * c2
        return MultiSeries(self.vars, t, d)

    __rmul__ = __mul__

    def __pow__(self, n):
        out = MultiSeries.constant(self.vars, 1, self.truncation)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def constant_term(self):
        return self.terms.get((0,) * len(self.vars), Fraction(0))

    def inverse(self):
        """Inverse via the geometric series; needs an invertible constant term."""
        c0 = self.constant_term()
        if c0 == 0:
            raise ZeroDivisionError("series with zero constant term is not invertible")
        h = self / c0 - 1
        out = MultiSeries.constant(self.vars, 1, self.truncation)
        term = out
        for _ in range(1, self.truncation):
            term = term * (-h)
            if not term.terms:
                break
            out = out + term
        return out * (1 / Fraction(c0))

    def __truediv__(self, c):
        return self * (1 / Fraction(c))

    def coefficient(self, exps):
        return self.terms.get(tuple(exps), Fraction(0))

    def linear_coefficients(self):
        n = len(self.vars)
        return [self.coefficient(tuple(int(i == j) for j in range(n))) for i in range(n)]

    def substitute(self, images, new_vars):
        """Replace variable ``i`` with ``images[i]`` (MultiSeries in ``new_vars``)."""
        one = MultiSeries.constant(new_vars, 1, self.truncation)
        powers = [[one] for _ in self.vars]
        out = MultiSeries(new_vars, {}, self.truncation)
        for e, c in self.terms.items():
            mono = one
            for i, k in enumerate(e):
                while len(powers[i]) <= k:
                    powers[i].append(powers[i][-1] * images[i])
                if k:
                    mono = mono * powers[i][k]
            out = out + mono * c
        return out

    def __eq__(self, other):
        if not isinstance(other, MultiSeries):
            return NotImplemented
        d = min(self.truncation, other.truncation)
        a = {e: c for e, c in self.terms.items() if sum(e) < d}
        b = {e: c for e, c in other.terms.items() if sum(e) < d}
        return self.vars == other.vars and a == b

    def __hash__(self):
        return hash(self.vars)

    def __repr__(self):
        names = [str(v) for v in self.vars]
        parts = []
        for e, c in sorted(self.terms.items(), key=lambda t: (sum(t[0]), t[0])):
            mono = "*".join(f"{n}^{k}" if k > 1 else n for n, k in zip(names, e) if k)
            parts.append(f"{c}" + (f"*{mono}" if mono else ""))
        return " + ".join(parts) or "0"


class WeightAlgebraPresentation:
    """Z_p[[V_1..V_n]] / (prod(1+V_j) - 1), presented with V_n eliminated."""

    def __init__(self, n, k, kind="X", truncation=DEFAULT_MULTI_TRUNCATION):
        if n < 1:
            raise ValueError("rank must be >= 1")
        self.n, self.k, self.kind, self.truncation = n, k, kind, truncation
        self.variables = tuple(WeightVar(kind, k, i) for i in range(1, n + 1))
        self.free_variables = self.variables[:-1]

    @property
    def generator_names(self):
        return [str(v) for v in self.variables]

    def generator(self, i):
        """V_i (1-based) as a series in the free variables."""
        fv = self.free_variables
        if i < self.n:
            return MultiSeries.variable(fv, i - 1, self.truncation)
        if i == self.n:
            return self.eliminated()
        raise UnknownVariable(f"generator index {i} outside 1..{self.n}")

    def eliminated(self):
        """V_n = prod_{j<n} (1+V_j)**-1 - 1."""
        fv = self.free_variables
        prod = MultiSeries.constant(fv, 1, self.truncation)
        for i in range(len(fv)):
            prod = prod * (1 + MultiSeries.variable(fv, i, self.truncation))
        return prod.inverse() - 1

    def relation_residual(self):
        """prod(1+V_j) - 1 after substitution; zero to truncation."""
        fv = self.free_variables
        prod = MultiSeries.constant(fv, 1, self.truncation)
        for i in range(1, self.n + 1):
            prod = prod * (1 + self.generator(i))
        return prod - 1

    def reduce(self, g):
        """Rewrite a series in all n generators into the free variables."""
        if tuple(g.vars) != self.variables:
            raise UnknownVariable("series is not written in this presentation's generators")
        return g.substitute([self.generator(i) for i in range(1, self.n + 1)], self.free_variables)


def norm_substitute(g, k, p):
    """Pull a layer-k series back to layer 0.

    ``1 + X_{k,i} -> (1 + X_{0,i})**(p**k)`` and ``1 + T_{k,j} -> 1 + T_{0,j}``.
    """
    new_vars = []
    for v in g.vars:
        if not isinstance(v, WeightVar):
            v = WeightVar.parse(str(v))
        if v.layer != k:
            raise UnknownVariable(f"{v} does not live at layer {k}")
        new_vars.append(WeightVar(v.kind, 0, v.index))
    new_vars = tuple(new_vars)
    if k == 0:
        return MultiSeries(new_vars, g.terms, g.truncation)
    images = []
    for i, v in enumerate(new_vars):
        x = MultiSeries.variable(new_vars, i, g.truncation)
        if v.kind == "X":
            images.append((1 + x) ** (p ** k) - 1)
        else:
            images.append(x)
    return g.substitute(images, new_vars)
