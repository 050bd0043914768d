"""Fixed-precision arithmetic in Z_p and Q_p.

Elements are stored as ``p**valuation * unit`` where the unit is known modulo
``p**(N - valuation)``; in other words every value carries absolute precision
``p**N``.  Anything congruent to 0 modulo ``p**N`` is *zero-at-precision*
(``valuation is None``) and refuses to be inverted.
"""
from dataclasses import dataclass
from fractions import Fraction

from sympy import isprime

from iwk.errors import ContextMismatch, DivisionByZeroAtPrecision, ZeroResidue

DEFAULT_PRECISION = 32


def vp(x, p):
    """p-adic valuation of an int or Fraction; ``None`` for zero."""
    if isinstance(x, Fraction):
        if x == 0:
            return None
        return vp(x.numerator, p) - vp(x.denominator, p)
    x = int(x)
    if x == 0:
        return None
    v = 0
    while x % p == 0:
        x //= p
        v += 1
    return v


def to_zp_int(x, p, modulus):
    """Image of a p-integral rational ``x`` in ``Z/modulus``."""
    if isinstance(x, Fraction):
        if x.denominator % p == 0:
            raise ValueError(f"{x} is not p-integral for p={p}")
        return x.numerator * pow(x.denominator, -1, modulus) % modulus
    return int(x) % modulus


@dataclass(frozen=True)
class PadicContext:
    p: int
    precision: int = DEFAULT_PRECISION

    def __post_init__(self):
        if self.p < 3 or not isprime(self.p):
            raise ValueError(f"p must be an odd prime, got {self.p}")
        if self.precision < 1:
            raise ValueError("precision must be >= 1")

    @property
    def modulus(self):
        return self.p ** self.precision

    def __call__(self, x):
        """Coerce an int, Fraction or PadicNumber into this context."""
        if isinstance(x, PadicNumber):
            if x.context != self:
                raise ContextMismatch(f"{x.context} vs {self}")
            return x
        x = Fraction(x)
        if x == 0:
            return PadicNumber(self, 0, None)
        v = vp(x, self.p)
        num = x.numerator // self.p ** max(vp(x.numerator, self.p) or 0, 0)
        den = x.denominator // self.p ** max(vp(x.denominator, self.p) or 0, 0)
        return PadicNumber._make(self, v, num * pow(den, -1, self.p ** max(self.precision - v, 1)))

    def zero(self):
        return PadicNumber(self, 0, None)

    def one(self):
        return PadicNumber(self, 1, 0)


@dataclass(frozen=True, eq=False)
class PadicNumber:
    context: PadicContext
    unit_part: int
    valuation: object  # int, or None for zero-at-precision

    @staticmethod
    def _make(ctx, v, unit):
        if v is None or v >= ctx.precision:
            return PadicNumber(ctx, 0, None)
        mod = ctx.p ** (ctx.precision - v)
        return PadicNumber(ctx, unit % mod, v)

    @staticmethod
    def _from_shifted(ctx, base_v, s):
        # value p**base_v * s, s an integer known mod p**(N - base_v)
        mod = ctx.p ** max(ctx.precision - base_v, 0)
        if mod == 1 or s % mod == 0:
            return PadicNumber(ctx, 0, None)
        s %= mod
        w = vp(s, ctx.p)
        return PadicNumber._make(ctx, base_v + w, s // ctx.p ** w)

    # -- predicates ---------------------------------------------------------
    def is_zero(self):
        return self.valuation is None

    def is_unit(self):
        return self.valuation == 0

    # -- coercion -----------------------------------------------------------
    def _coerce(self, other):
        if isinstance(other, PadicNumber):
            if other.context != self.context:
                raise ContextMismatch(f"{other.context} vs {self.context}")
            return other
        if isinstance(other, (int, Fraction)):
            return self.context(other)
        return NotImplemented

    def to_int(self):
        """Representative in ``[0, p**N)``; requires non-negative valuation."""
        if self.is_zero():
            return 0
        if self.valuation < 0:
            raise ValueError("element is not integral")
        return self.context.p ** self.valuation * self.unit_part % self.context.modulus

    def to_fraction(self):
        if self.is_zero():
            return Fraction(0)
        return Fraction(self.context.p) ** self.valuation * self.unit_part

    def residue(self):
        if self.is_zero() or self.valuation > 0:
            return 0
        if self.valuation < 0:
            raise ValueError("element is not integral")
        return self.unit_part % self.context.p

    # -- arithmetic ---------------------------------------------------------
    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if self.is_zero():
            return other
        if other.is_zero():
            return self
        p = self.context.p
        m = min(self.valuation, other.valuation)
        s = self.unit_part * p ** (self.valuation - m) + other.unit_part * p ** (other.valuation - m)
        return PadicNumber._from_shifted(self.context, m, s)

    __radd__ = __add__

    def __neg__(self):
        if self.is_zero():
            return self
        return PadicNumber._make(self.context, self.valuation, -self.unit_part)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if self.is_zero() or other.is_zero():
            return self.context.zero()
        return PadicNumber._make(self.context, self.valuation + other.valuation,
                                 self.unit_part * other.unit_part)

    __rmul__ = __mul__

    def inverse(self):
        if self.is_zero():
            raise DivisionByZeroAtPrecision("element is zero modulo p^N")
        ctx = self.context
        v = -self.valuation
        if v >= ctx.precision:
            return ctx.zero()
        return PadicNumber._make(ctx, v, pow(self.unit_part, -1, ctx.p ** (ctx.precision - v)))

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self._coerce(other) * self.inverse()

    def __pow__(self, e):
        if e < 0:
            return self.inverse() ** (-e)
        out = self.context.one()
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    # -- comparison ---------------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.context(other)
        if not isinstance(other, PadicNumber):
            return NotImplemented
        if other.context != self.context:
            return False
        if self.is_zero() or other.is_zero():
            return self.is_zero() and other.is_zero()
        if self.valuation != other.valuation:
            return False
        mod = self.context.p ** (self.context.precision - self.valuation)
        return (self.unit_part - other.unit_part) % mod == 0

    def __hash__(self):
        return hash((self.context, self.valuation, self.unit_part))

    def __repr__(self):
        if self.is_zero():
            return f"O({self.context.p}^{self.context.precision})"
        return f"{self.context.p}^{self.valuation}*{self.unit_part}"


def padic_add(a, b):
    return a + b


def padic_mul(a, b):
    return a * b


def padic_inv(a):
    return a.inverse()


def teichmuller(ctx, a):
    """The (p-1)-st root of unity congruent to ``a`` modulo p."""
    a = int(a) % ctx.p
    if a == 0:
        raise ZeroResidue("Teichmuller lift needs a nonzero residue")
    mod = ctx.modulus
    x = a
    # x -> x**p contracts towards the root by one p-adic digit per step
    for _ in range(ctx.precision):
        x = pow(x, ctx.p, mod)
    return ctx(x)
