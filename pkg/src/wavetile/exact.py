"""Exact numbers: rationals (``fractions.Fraction``) and the field Q(sqrt 2).

Rationals are plain :class:`fractions.Fraction` values; this module only adds
parsing/formatting in the ``"p/q"`` wire format.  :class:`QuadExt` represents
``a + b*sqrt(2)`` with rational ``a`` and ``b``; it is closed under the affine
maps ``x -> 2**j * x + q`` and has a decidable total order, which is all the
orbit machinery needs.
"""

from __future__ import annotations

import math
from decimal import Decimal, localcontext
from fractions import Fraction
from functools import total_ordering
from numbers import Rational as _RationalABC

from .errors import FormatError

Rational = Fraction

_DECIMAL_DIGITS = 80


def as_rational(value) -> Fraction:
    """Coerce ints, Fractions and strings ("3/4", "-2", "0.15") to a Fraction.

    Floats are rejected: they would silently import binary rounding error.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise FormatError(f"not a rational: {value!r}")
    if isinstance(value, (int, _RationalABC)):
        return Fraction(value)
    if isinstance(value, str):
        return parse_rational(value)
    raise FormatError(f"not an exact rational: {value!r}")


def parse_rational(text: str) -> Fraction:
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise FormatError(f"cannot parse rational {text!r}") from exc


def format_rational(x) -> str:
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def pow2(j: int) -> Fraction:
    return Fraction(2) ** j


def to_decimal(x: Fraction) -> Decimal:
    with localcontext() as ctx:
        ctx.prec = _DECIMAL_DIGITS
        return Decimal(x.numerator) / Decimal(x.denominator)


def _sign(x) -> int:
    return (x > 0) - (x < 0)


def _sign_quad(a: Fraction, b: Fraction) -> int:
    sa, sb = _sign(a), _sign(b)
    if sb == 0:
        return sa
    if sa == 0 or sa == sb:
        return sb
    # opposite signs: the larger of |a| and |b|*sqrt(2) wins
    return sa if a * a > 2 * b * b else sb


@total_ordering
class QuadExt:
    """The exact real number ``a + b*sqrt(2)``.  Immutable and hashable."""

    __slots__ = ("a", "b")

    def __init__(self, a=0, b=0):
        object.__setattr__(self, "a", as_rational(a))
        object.__setattr__(self, "b", as_rational(b))

    def __setattr__(self, name, value):
        raise AttributeError("QuadExt is immutable")

    @classmethod
    def coerce(cls, x) -> QuadExt:
        if isinstance(x, QuadExt):
            return x
        return cls(as_rational(x), 0)

    @property
    def is_rational(self) -> bool:
        return self.b == 0

    def __repr__(self):
        return f"QuadExt({format_rational(self.a)}, {format_rational(self.b)})"

    def __str__(self):
        if self.b == 0:
            return format_rational(self.a)
        sign = "-" if self.b < 0 else "+"
        return f"{format_rational(self.a)}{sign}{format_rational(abs(self.b))}√2"

    def __hash__(self):
        if self.b == 0:
            return hash(self.a)
        return hash((self.a, self.b))

    def __eq__(self, other):
        if isinstance(other, QuadExt):
            return self.a == other.a and self.b == other.b
        if isinstance(other, (int, Fraction)):
            return self.b == 0 and self.a == other
        return NotImplemented

    def __lt__(self, other):
        try:
            other = QuadExt.coerce(other)
        except FormatError:
            return NotImplemented
        return quad_compare(self, other) < 0

    def __neg__(self):
        return QuadExt(-self.a, -self.b)

    def __add__(self, other):
        other = QuadExt.coerce(other)
        return QuadExt(self.a + other.a, self.b + other.b)

    __radd__ = __add__

    def __sub__(self, other):
        other = QuadExt.coerce(other)
        return QuadExt(self.a - other.a, self.b - other.b)

    def __rsub__(self, other):
        return QuadExt.coerce(other) - self

    def __mul__(self, other):
        other = QuadExt.coerce(other)
        return QuadExt(self.a * other.a + 2 * self.b * other.b,
                       self.a * other.b + self.b * other.a)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = as_rational(other)
        return QuadExt(self.a / other, self.b / other)

    def __abs__(self):
        return -self if self.sign() < 0 else self

    def sign(self) -> int:
        return _sign_quad(self.a, self.b)

    def __floor__(self):
        if self.b == 0:
            return math.floor(self.a)
        # write self = (p + s*sqrt(2*m*m)) / d with integers, then bracket the root
        d = math.lcm(self.a.denominator, self.b.denominator)
        p = self.a.numerator * (d // self.a.denominator)
        m = self.b.numerator * (d // self.b.denominator)
        r = math.isqrt(2 * m * m)  # sqrt(2 m^2) is irrational, so it lies in (r, r+1)
        return (p + r) // d if m > 0 else (p - r - 1) // d

    def __ceil__(self):
        return -math.floor(-self)

    def to_decimal(self) -> Decimal:
        with localcontext() as ctx:
            ctx.prec = _DECIMAL_DIGITS
            return to_decimal(self.a) + to_decimal(self.b) * Decimal(2).sqrt()

    def __float__(self):
        return float(self.to_decimal())

    def to_dict(self):
        return {"a": format_rational(self.a), "b": format_rational(self.b)}

    @classmethod
    def from_dict(cls, data) -> QuadExt:
        try:
            return cls(parse_rational(data["a"]), parse_rational(data["b"]))
        except (KeyError, TypeError) as exc:
            raise FormatError(f"bad QuadExt object: {data!r}") from exc


def quad_compare(x, y) -> int:
    """Return -1, 0 or 1 as ``x`` is less than, equal to, or greater than ``y``."""
    x, y = QuadExt.coerce(x), QuadExt.coerce(y)
    return _sign_quad(x.a - y.a, x.b - y.b)


def quad_affine(x, j: int, q) -> QuadExt:
    """``2**j * x + q`` computed exactly."""
    return QuadExt.coerce(x) * pow2(j) + as_rational(q)


def parse_quad(text: str) -> QuadExt:
    """Parse strings such as ``"1/2√2"``, ``"3/4+1/2√2"``, ``"-1+sqrt2"``, ``"5/8"``."""
    s = text.replace(" ", "").replace("sqrt(2)", "√2").replace("sqrt2", "√2")
    if not s:
        raise FormatError("empty number")
    if "√2" not in s:
        return QuadExt(parse_rational(s), 0)
    if not s.endswith("√2") or s.count("√2") != 1:
        raise FormatError(f"cannot parse {text!r} as a + b√2")
    body = s[:-2]
    # split off the coefficient of √2: the last +/- not at position 0 separates a from b
    cut = max(body.rfind("+"), body.rfind("-"))
    if cut > 0:
        a_txt, b_txt = body[:cut], body[cut:]
    else:
        a_txt, b_txt = "0", body
    if b_txt in ("", "+"):
        b_txt = "1"
    elif b_txt == "-":
        b_txt = "-1"
    b_txt = b_txt.rstrip("*")
    return QuadExt(parse_rational(a_txt), parse_rational(b_txt))
