"""Exact univariate polynomials over Q (coefficient lists, low degree first).

Also holds :class:`RatFunc` (elements of Q(S)) and the text parser/formatter
for polynomial literals such as ``x2-5x+6``, ``3+S-2S^2`` or ``1/2*S**3``.
"""
import re
from fractions import Fraction

from iwk import kernels


def trim(c):
    c = list(c)
    while c and c[-1] == 0:
        c.pop()
    return c


def degree(c):
    return len(trim(c)) - 1


def add(a, b):
    n = max(len(a), len(b))
    return trim([(a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n)])


def sub(a, b):
    n = max(len(a), len(b))
    return trim([(a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0) for i in range(n)])


def scale(a, c):
    return trim([c * x for x in a])


def mul(a, b):
    a, b = trim(a), trim(b)
    if not a or not b:
        return []
    return trim(kernels.series_mul(a, b, len(a) + len(b) - 1))


def power(a, e):
    out = [1]
    base = trim(a)
    while e:
        if e & 1:
            out = mul(out, base)
        base = mul(base, base)
        e >>= 1
    return out


def divmod_poly(a, b):
    """Quotient and remainder over Q; ``b`` must be nonzero."""
    a, b = [Fraction(x) for x in trim(a)], trim(b)
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    lead = Fraction(b[-1])
    db = len(b) - 1
    if len(a) - 1 < db:
        return [], a
    q = [Fraction(0)] * (len(a) - db)
    for top in range(len(a) - 1, db - 1, -1):
        c = a[top] / lead
        if c:
            q[top - db] = c
            for j in range(db + 1):
                a[top - db + j] -= c * b[j]
    return trim(q), trim(a[:db])


def gcd(a, b):
    """Monic gcd over Q (``[]`` when both vanish)."""
    a, b = trim(a), trim(b)
    while b:
        a, b = b, divmod_poly(a, b)[1]
    if not a:
        return []
    lead = Fraction(a[-1])
    return [Fraction(x) / lead for x in a]


def evaluate(a, x):
    acc = 0
    for c in reversed(a):
        acc = acc * x + c
    return acc


def compose(a, b):
    """a(b(X))."""
    out = []
    for c in reversed(trim(a)):
        out = add(mul(out, b), [c])
    return out


def derivative(a):
    return trim([i * a[i] for i in range(1, len(a))])


def from_roots(roots):
    out = [1]
    for r in roots:
        out = mul(out, [-r, 1])
    return out


def root_multiplicity(a, root):
    """Order of vanishing of ``a`` at a rational ``root``."""
    a = trim(a)
    if not a:
        raise ValueError("zero polynomial vanishes to infinite order")
    m = 0
    lin = [-Fraction(root), 1]
    while True:
        q, r = divmod_poly(a, lin)
        if r:
            return m
        a, m = q, m + 1


def content_valuation(a, p):
    """Gauss valuation: minimum p-adic valuation of the coefficients."""
    from iwk.padic import vp
    vals = [vp(Fraction(c), p) for c in a if c]
    return min(vals) if vals else None


def order_at(a, q):
    """Multiplicity of the irreducible polynomial ``q`` in ``a``."""
    a = trim(a)
    if not a:
        return None
    m = 0
    while True:
        quo, rem = divmod_poly(a, q)
        if rem:
            return m
        a, m = quo, m + 1


class RatFunc:
    """Element of Q(S) kept as num/den with monic, coprime denominator."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=(1,)):
        num = [Fraction(x) for x in trim(num)]
        den = [Fraction(x) for x in trim(den)]
        if not den:
            raise ZeroDivisionError("zero denominator")
        if num:
            g = gcd(num, den)
            if len(g) > 1:
                num = divmod_poly(num, g)[0]
                den = divmod_poly(den, g)[0]
        else:
            den = [Fraction(1)]
        lead = den[-1]
        self.num = tuple(x / lead for x in num)
        self.den = tuple(x / lead for x in den)

    @classmethod
    def coerce(cls, x):
        if isinstance(x, RatFunc):
            return x
        if isinstance(x, (int, Fraction)):
            return cls([x])
        return cls(x)

    def __bool__(self):
        return bool(self.num)

    def __add__(self, o):
        o = RatFunc.coerce(o)
        return RatFunc(add(mul(self.num, o.den), mul(o.num, self.den)), mul(self.den, o.den))

    __radd__ = __add__

    def __neg__(self):
        return RatFunc([-x for x in self.num], self.den)

    def __sub__(self, o):
        return self + (-RatFunc.coerce(o))

    def __rsub__(self, o):
        return RatFunc.coerce(o) - self

    def __mul__(self, o):
        o = RatFunc.coerce(o)
        return RatFunc(mul(self.num, o.num), mul(self.den, o.den))

    __rmul__ = __mul__

    def __truediv__(self, o):
        o = RatFunc.coerce(o)
        if not o.num:
            raise ZeroDivisionError("division by zero rational function")
        return RatFunc(mul(self.num, o.den), mul(self.den, o.num))

    def __eq__(self, o):
        o = RatFunc.coerce(o)
        return self.num == o.num and self.den == o.den

    def __hash__(self):
        return hash((self.num, self.den))

    def __repr__(self):
        return f"({format_poly(self.num, 'S')})/({format_poly(self.den, 'S')})"


_TERM = re.compile(
    r"([+-]?)\s*(\d+(?:/\d+)?)?\s*\*?\s*(?:([a-zA-Z])\s*(?:(?:\^|\*\*)?\s*(\d+))?)?"
)


def parse_poly(text, var=None):
    """Parse a polynomial literal in one variable into Fraction coefficients.

    Accepts ``x2-5x+6``, ``X^2 - 13X + 36``, ``3+S-2*S**2`` and ``-1/2``.
    Variable letters are case-insensitive; mixing two letters is an error.
    """
    s = text.replace(" ", "")
    if not s:
        raise ValueError("empty polynomial literal")
    coeffs = {}
    pos = 0
    seen = var.lower() if var else None
    while pos < len(s):
        m = _TERM.match(s, pos)
        if not m or m.end() == pos:
            raise ValueError(f"cannot parse polynomial near {s[pos:]!r}")
        sign, num, letter, exp = m.groups()
        if num is None and letter is None:
            raise ValueError(f"cannot parse polynomial near {s[pos:]!r}")
        c = Fraction(num) if num else Fraction(1)
        if sign == "-":
            c = -c
        if letter:
            if seen is None:
                seen = letter.lower()
            elif letter.lower() != seen:
                raise ValueError(f"unexpected variable {letter!r} in {text!r}")
            e = int(exp) if exp else 1
        else:
            e = 0
        coeffs[e] = coeffs.get(e, 0) + c
        pos = m.end()
        if pos < len(s) and s[pos] not in "+-":
            raise ValueError(f"cannot parse polynomial near {s[pos:]!r}")
    if not coeffs:
        return []
    out = [Fraction(0)] * (max(coeffs) + 1)
    for e, c in coeffs.items():
        out[e] += c
    return trim(out)


def _fmt_rational(c):
    c = Fraction(c)
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def format_poly(coeffs, var="X"):
    """Human-readable form, highest degree first: ``X^2 - 13X + 36``."""
    coeffs = trim(coeffs)
    if not coeffs:
        return "0"
    parts = []
    for e in range(len(coeffs) - 1, -1, -1):
        c = Fraction(coeffs[e])
        if c == 0:
            continue
        mag = abs(c)
        if e == 0:
            body = _fmt_rational(mag)
        else:
            mono = var if e == 1 else f"{var}^{e}"
            body = mono if mag == 1 else f"{_fmt_rational(mag)}{mono}"
        if not parts:
            parts.append(("-" if c < 0 else "") + body)
        else:
            parts.append(("- " if c < 0 else "+ ") + body)
    return " ".join(parts)


class Poly:
    """Immutable polynomial over Q with operator support, for generic matrix code."""

    __slots__ = ("c",)

    def __init__(self, coeffs=()):
        if isinstance(coeffs, Poly):
            coeffs = coeffs.c
        elif isinstance(coeffs, (int, Fraction)):
            coeffs = [coeffs]
        self.c = tuple(Fraction(x) for x in trim(coeffs))

    @staticmethod
    def _lift(x):
        return x if isinstance(x, Poly) else Poly(x)

    def __bool__(self):
        return bool(self.c)

    def __add__(self, o):
        return Poly(add(self.c, Poly._lift(o).c))

    __radd__ = __add__

    def __neg__(self):
        return Poly([-x for x in self.c])

    def __sub__(self, o):
        return Poly(sub(self.c, Poly._lift(o).c))

    def __rsub__(self, o):
        return Poly._lift(o) - self

    def __mul__(self, o):
        if isinstance(o, (int, Fraction)):
            return Poly(scale(self.c, o))
        return Poly(mul(self.c, o.c))

    __rmul__ = __mul__

    def __pow__(self, e):
        return Poly(power(self.c, e))

    def __eq__(self, o):
        if isinstance(o, (int, Fraction)):
            o = Poly(o)
        if not isinstance(o, Poly):
            return NotImplemented
        return self.c == o.c

    def __hash__(self):
        return hash(self.c)

    def __call__(self, x):
        return evaluate(self.c, x)

    @property
    def degree(self):
        return len(self.c) - 1

    def __repr__(self):
        return format_poly(self.c, "S")
