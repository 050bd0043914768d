"""Line-oriented text formats for series, presentations, Jacobians, D-vectors and polynomials.

Rationals are written ``num/den`` (``num`` alone when the denominator is 1).
A zero-at-precision series coefficient is written with valuation ``inf``.
"""
from fractions import Fraction

from iwk.iwasawa import IwasawaSeries
from iwk.linv import LogJacobian
from iwk.modules import Presentation, ring_from_tag
from iwk.padic import PadicContext, PadicNumber
from iwk.poly import Poly, format_poly, parse_poly, trim


class FormatError(ValueError):
    """Malformed input file."""


def fmt_rational(x):
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def parse_rational(tok):
    try:
        return Fraction(tok)
    except (ValueError, ZeroDivisionError) as exc:
        raise FormatError(f"bad rational {tok!r}") from exc


def _lines(text):
    return [ln.strip() for ln in text.splitlines() if ln.strip() and not ln.lstrip().startswith("#")]


def _ints(line, count, what):
    parts = line.split()
    if len(parts) != count:
        raise FormatError(f"{what} header needs {count} fields, got {line!r}")
    try:
        return [int(x) for x in parts]
    except ValueError as exc:
        raise FormatError(f"non-integer field in {what} header {line!r}") from exc


# -- series --------------------------------------------------------------------

def dump_series(f):
    ctx = f.context
    out = [f"{ctx.p} {ctx.precision} {f.truncation_order}"]
    for i, c in enumerate(f.coeffs):
        v = "inf" if c.valuation is None else str(c.valuation)
        out.append(f"{i} {v} {c.unit_part}")
    return "\n".join(out) + "\n"


def load_series(text):
    lines = _lines(text)
    if not lines:
        raise FormatError("empty series file")
    p, n, m = _ints(lines[0], 3, "series")
    try:
        ctx = PadicContext(p, n)
    except ValueError as exc:
        raise FormatError(str(exc)) from exc
    coeffs = [ctx.zero()] * m
    for ln in lines[1:]:
        parts = ln.split()
        if len(parts) != 3:
            raise FormatError(f"series line needs `index valuation unit_part`: {ln!r}")
        try:
            idx, unit = int(parts[0]), int(parts[2])
            val = None if parts[1] == "inf" else int(parts[1])
        except ValueError as exc:
            raise FormatError(f"bad series line {ln!r}") from exc
        if not 0 <= idx < m:
            raise FormatError(f"coefficient index {idx} outside 0..{m - 1}")
        if val is None:
            coeffs[idx] = ctx.zero()
        else:
            if val < 0 or unit % p == 0:
                raise FormatError(f"line {ln!r} is not a p-adic integer in normal form")
            coeffs[idx] = PadicNumber._make(ctx, val, unit)
    return IwasawaSeries(ctx, coeffs, m)


# -- presentations ---------------------------------------------------------------

def _fmt_entry(x, polynomial):
    if not polynomial:
        return fmt_rational(x)
    return format_poly(list(Poly(x).c), "S").replace(" ", "")


def dump_presentation(pres, truncation=64):
    ring = pres.ring
    p = getattr(ring, "p", None) or 0
    n = getattr(ring, "precision", None) or 0
    polynomial = ring.tag not in ("Q", "Zp")
    out = [f"{ring.tag} {p} {n} {truncation} {pres.rows} {pres.cols}"]
    for row in pres.entries:
        out.append(" ".join(_fmt_entry(x, polynomial) for x in row))
    return "\n".join(out) + "\n"


def load_presentation(text):
    lines = _lines(text)
    if not lines:
        raise FormatError("empty presentation file")
    head = lines[0].split()
    if len(head) != 6:
        raise FormatError("presentation header is `ring p N M rows cols`")
    tag = head[0]
    p, n, _m, rows, cols = _ints(" ".join(head[1:]), 5, "presentation")
    try:
        ring = ring_from_tag(tag, p or None, n or 32)
    except (ValueError, TypeError) as exc:
        raise FormatError(str(exc)) from exc
    tokens = " ".join(lines[1:]).split()
    if len(tokens) != rows * cols:
        raise FormatError(f"expected {rows * cols} entries, found {len(tokens)}")
    polynomial = tag not in ("Q", "Zp")
    vals = []
    for t in tokens:
        try:
            vals.append(Poly(parse_poly(t)) if polynomial else Fraction(t))
        except (ValueError, ZeroDivisionError) as exc:
            raise FormatError(f"bad entry {t!r}") from exc
    entries = [vals[i * cols:(i + 1) * cols] for i in range(rows)]
    try:
        return Presentation(ring, entries)
    except ValueError as exc:
        raise FormatError(str(exc)) from exc


# -- Jacobians and D-vectors ----------------------------------------------------------

def dump_jacobian(jac):
    out = [str(jac.n)]
    for row in jac.entries:
        out.append(" ".join(fmt_rational(x) for x in row))
    return "\n".join(out) + "\n"


def load_jacobian(text):
    lines = _lines(text)
    if not lines:
        raise FormatError("empty Jacobian file")
    (n,) = _ints(lines[0], 1, "Jacobian")
    if n < 1:
        raise FormatError("Jacobian size n must be >= 1")
    tokens = " ".join(lines[1:]).split()
    size = n + 1
    if len(tokens) != size * size:
        raise FormatError(f"expected {size * size} entries, found {len(tokens)}")
    vals = [parse_rational(t) for t in tokens]
    return LogJacobian.from_rows([vals[i * size:(i + 1) * size] for i in range(size)])


def dump_dvector(d):
    return "".join(fmt_rational(x) + "\n" for x in d)


def load_dvector(text):
    return [parse_rational(t) for t in _lines(text)]


# -- polynomials ---------------------------------------------------------------

def dump_polynomial(coeffs):
    c = trim(list(coeffs))
    out = [str(len(c) - 1)]
    out.extend(fmt_rational(x) for x in c)
    return "\n".join(out) + "\n"


def load_polynomial(text):
    lines = _lines(text)
    if not lines:
        raise FormatError("empty polynomial file")
    (deg,) = _ints(lines[0], 1, "polynomial")
    coeffs = [parse_rational(t) for t in " ".join(lines[1:]).split()]
    if len(coeffs) != deg + 1:
        raise FormatError(f"degree {deg} needs {deg + 1} coefficients, found {len(coeffs)}")
    return coeffs
