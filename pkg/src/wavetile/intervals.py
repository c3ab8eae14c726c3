"""Finite unions of half-open rational intervals ``(lo, hi]``.

All sets in the library are :class:`IntervalSet` values in canonical form:
sorted, pairwise disjoint, non-adjacent intervals with rational endpoints.
Statements about tilings hold modulo null sets, so the half-open convention
turns them into exact partitions.
"""

from __future__ import annotations

import bisect
import math
from dataclasses import dataclass, field
from decimal import Decimal, localcontext
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Iterator

from .errors import FormatError, MalformedInterval
from .exact import QuadExt, as_rational, format_rational, parse_rational, pow2

_LOG_DIGITS = 60
_EXPONENT_BUDGET = 20000  # bit budget for collapsing a log-sum into one rational


# --------------------------------------------------------------------------
# measure values


def _canonical_terms(terms):
    acc = {}
    for coef, ratio in terms:
        coef, ratio = Fraction(coef), Fraction(ratio)
        if ratio <= 0:
            raise ValueError("log argument must be positive")
        if ratio < 1:
            coef, ratio = -coef, 1 / ratio
        if coef == 0 or ratio == 1:
            continue
        acc[ratio] = acc.get(ratio, Fraction(0)) + coef
    return tuple(sorted((c, r) for r, c in acc.items() if c != 0))


def _power_of_two_exponent(x: Fraction):
    """Return e with x == 2**e, or None."""
    n, d = x.numerator, x.denominator
    if n > 0 and d == 1 and n & (n - 1) == 0:
        return n.bit_length() - 1
    if n == 1 and d & (d - 1) == 0:
        return -(d.bit_length() - 1)
    return None


@dataclass(frozen=True)
class MeasureValue:
    """A value of Lebesgue-or-log measure: possibly infinite, kept symbolically.

    Finite values are the formal sum ``sum(coef * log2(ratio))`` over ``terms``
    plus an exact rational ``offset``.  :attr:`exact` collapses the sum to a
    Fraction whenever the combined log argument is a power of two; otherwise
    :attr:`approx` evaluates it to 60 significant digits.
    """

    terms: tuple = ()
    offset: Fraction = Fraction(0)
    infinite: bool = False
    error_bound: Decimal = field(default=Decimal("1e-40"), compare=False)

    @classmethod
    def from_log_terms(cls, terms, offset=0) -> MeasureValue:
        return cls(_canonical_terms(terms), Fraction(offset))

    @classmethod
    def exact_value(cls, value) -> MeasureValue:
        return cls((), Fraction(value))

    @classmethod
    def inf(cls) -> MeasureValue:
        return cls(infinite=True)

    @property
    def kind(self) -> str:
        return "infinite" if self.infinite else "finite"

    @cached_property
    def exact(self):
        """The value as a Fraction, or None when it is irrational/unresolved."""
        if self.infinite:
            return None
        if not self.terms:
            return self.offset
        denom = math.lcm(*(c.denominator for c, _ in self.terms))
        bits = sum(abs(c.numerator) * (denom // c.denominator)
                   * (r.numerator.bit_length() + r.denominator.bit_length())
                   for c, r in self.terms)
        if bits > _EXPONENT_BUDGET:
            return None
        product = Fraction(1)
        for c, r in self.terms:
            product *= r ** (c.numerator * (denom // c.denominator))
        e = _power_of_two_exponent(product)
        if e is None:
            return None
        return self.offset + Fraction(e, denom)

    @property
    def is_exact(self) -> bool:
        return self.exact is not None

    @cached_property
    def approx(self) -> Decimal:
        if self.infinite:
            return Decimal("Infinity")
        with localcontext() as ctx:
            ctx.prec = _LOG_DIGITS
            ln2 = Decimal(2).ln()
            total = Decimal(self.offset.numerator) / Decimal(self.offset.denominator)
            for c, r in self.terms:
                ln_r = Decimal(r.numerator).ln() - Decimal(r.denominator).ln()
                total += Decimal(c.numerator) / Decimal(c.denominator) * ln_r / ln2
            return +total

    def bound(self) -> Decimal:
        return Decimal(0) if self.is_exact else self.error_bound

    def __float__(self):
        if self.infinite:
            return math.inf
        return float(self.exact) if self.is_exact else float(self.approx)

    def __add__(self, other):
        if not isinstance(other, MeasureValue):
            other = MeasureValue.exact_value(as_rational(other))
        if self.infinite or other.infinite:
            return MeasureValue.inf()
        return MeasureValue.from_log_terms(self.terms + other.terms,
                                           self.offset + other.offset)

    __radd__ = __add__

    def __neg__(self):
        if self.infinite:
            raise ValueError("cannot negate an infinite measure")
        return MeasureValue(tuple((-c, r) for c, r in self.terms), -self.offset)

    def __sub__(self, other):
        if not isinstance(other, MeasureValue):
            other = MeasureValue.exact_value(as_rational(other))
        return self + (-other)

    def scale(self, factor) -> MeasureValue:
        factor = as_rational(factor)
        if self.infinite:
            return MeasureValue.exact_value(0) if factor == 0 else self
        return MeasureValue.from_log_terms(((c * factor, r) for c, r in self.terms),
                                           self.offset * factor)

    def as_decimal(self) -> Decimal:
        if self.infinite:
            return Decimal("Infinity")
        ex = self.exact
        if ex is not None:
            with localcontext() as ctx:
                ctx.prec = _LOG_DIGITS
                return Decimal(ex.numerator) / Decimal(ex.denominator)
        return self.approx

    def to_dict(self):
        if self.infinite:
            return {"kind": "infinite"}
        ex = self.exact
        return {
            "kind": "finite",
            "exact": None if ex is None else format_rational(ex),
            "approx": f"{self.as_decimal():.30f}",
            "error_bound": "0" if ex is not None else str(self.error_bound),
            "log2_terms": [[format_rational(c), format_rational(r)] for c, r in self.terms],
            "offset": format_rational(self.offset),
        }

    def __str__(self):
        if self.infinite:
            return "inf"
        ex = self.exact
        return format_rational(ex) if ex is not None else f"{self.approx:.20f}"


def measure_to_decimal(x) -> Decimal:
    if isinstance(x, MeasureValue):
        return x.as_decimal()
    if isinstance(x, float):
        return Decimal(repr(x))
    if isinstance(x, Decimal):
        return x
    f = as_rational(x)
    with localcontext() as ctx:
        ctx.prec = _LOG_DIGITS
        return Decimal(f.numerator) / Decimal(f.denominator)


# --------------------------------------------------------------------------
# interval sets


def _normalize(raw) -> tuple:
    cleaned = []
    for pair in raw:
        lo, hi = (as_rational(v) for v in pair)
        if lo >= hi:
            raise MalformedInterval(f"need lo < hi, got ({lo}, {hi}]")
        cleaned.append((lo, hi))
    cleaned.sort()
    merged = []
    for lo, hi in cleaned:
        if merged and lo <= merged[-1][1]:
            if hi > merged[-1][1]:
                merged[-1] = (merged[-1][0], hi)
        else:
            merged.append((lo, hi))
    return tuple(merged)


class IntervalSet:
    """Canonical finite union of half-open intervals ``(lo, hi]``."""

    __slots__ = ("_iv", "_los")

    def __init__(self, intervals: Iterable = ()):
        self._iv = _normalize(intervals)
        self._los = [lo for lo, _ in self._iv]

    @classmethod
    def _trusted(cls, canonical) -> IntervalSet:
        obj = cls.__new__(cls)
        obj._iv = tuple(canonical)
        obj._los = [lo for lo, _ in obj._iv]
        return obj

    @classmethod
    def interval(cls, lo, hi) -> IntervalSet:
        return cls([(lo, hi)])

    @property
    def intervals(self) -> tuple:
        return self._iv

    def __iter__(self) -> Iterator:
        return iter(self._iv)

    def __len__(self):
        return len(self._iv)

    def __bool__(self):
        return bool(self._iv)

    def __eq__(self, other):
        if not isinstance(other, IntervalSet):
            return NotImplemented
        return self._iv == other._iv

    def __hash__(self):
        return hash(self._iv)

    def __repr__(self):
        if not self._iv:
            return "IntervalSet(∅)"
        body = " ∪ ".join(f"({format_rational(lo)}, {format_rational(hi)}]" for lo, hi in self._iv)
        return f"IntervalSet({body})"

    def endpoints(self) -> list:
        return [x for pair in self._iv for x in pair]

    @property
    def inf(self):
        return self._iv[0][0] if self._iv else None

    @property
    def sup(self):
        return self._iv[-1][1] if self._iv else None

    # -- membership --------------------------------------------------------

    def contains_point(self, x) -> bool:
        """Exact half-open membership for rationals and ``QuadExt`` points."""
        if isinstance(x, QuadExt):
            if x.is_rational:
                x = x.a
        else:
            x = as_rational(x)
        i = bisect.bisect_left(self._los, x) - 1
        if i < 0:
            return False
        lo, hi = self._iv[i]
        return lo < x <= hi

    __contains__ = contains_point

    def closure_contains(self, x) -> bool:
        x = as_rational(x)
        return any(lo <= x <= hi for lo, hi in self._iv)

    def issubset(self, other: IntervalSet) -> bool:
        return not (self - other)

    # -- set algebra -------------------------------------------------------

    def _combine(self, other: IntervalSet, keep) -> IntervalSet:
        points = sorted(set(self.endpoints()) | set(other.endpoints()))
        out = []
        for p, q in zip(points, points[1:]):
            mid = (p + q) / 2
            if keep(mid in self, mid in other):
                if out and out[-1][1] == p:
                    out[-1] = (out[-1][0], q)
                else:
                    out.append((p, q))
        return IntervalSet._trusted(out)

    def union(self, other: IntervalSet) -> IntervalSet:
        return IntervalSet(self._iv + other._iv)

    def intersection(self, other: IntervalSet) -> IntervalSet:
        return self._combine(other, lambda a, b: a and b)

    def difference(self, other: IntervalSet) -> IntervalSet:
        return self._combine(other, lambda a, b: a and not b)

    __or__ = union
    __and__ = intersection
    __sub__ = difference

    # -- group actions -----------------------------------------------------

    def act(self, j: int = 0, k=0) -> IntervalSet:
        """The image ``2**j * E + k``."""
        s, k = pow2(j), as_rational(k)
        return IntervalSet._trusted((s * lo + k, s * hi + k) for lo, hi in self._iv)

    def shift(self, k) -> IntervalSet:
        return self.act(0, k)

    def dilate(self, j: int) -> IntervalSet:
        return self.act(j, 0)

    def scale(self, factor) -> IntervalSet:
        factor = as_rational(factor)
        if factor <= 0:
            raise ValueError("scale factor must be positive")
        return IntervalSet._trusted((factor * lo, factor * hi) for lo, hi in self._iv)

    def reflect(self) -> IntervalSet:
        """``-E``; the half-open orientation flips, which only moves null sets."""
        return IntervalSet((-hi, -lo) for lo, hi in self._iv)

    # -- measures ----------------------------------------------------------

    def lebesgue(self) -> Fraction:
        return sum((hi - lo for lo, hi in self._iv), Fraction(0))

    def nu(self) -> MeasureValue:
        return nu(self)

    def touches_origin(self) -> bool:
        return self.closure_contains(0)

    # -- serialization -----------------------------------------------------

    def to_dict(self):
        return {"intervals": [{"lo": format_rational(lo), "hi": format_rational(hi)}
                              for lo, hi in self._iv]}

    @classmethod
    def from_dict(cls, data) -> IntervalSet:
        try:
            items = data["intervals"]
            return cls((parse_rational(d["lo"]), parse_rational(d["hi"])) for d in items)
        except (KeyError, TypeError) as exc:
            raise FormatError(f"bad interval-set object: {exc}") from exc


EMPTY = IntervalSet()


def normalize(raw) -> IntervalSet:
    return IntervalSet(raw)


def set_algebra(a: IntervalSet, b: IntervalSet, op: str) -> IntervalSet:
    ops = {"union": a.union, "intersect": a.intersection, "difference": a.difference}
    try:
        return ops[op](b)
    except KeyError:
        raise ValueError(f"unknown set operation {op!r}") from None


def act(e: IntervalSet, j: int, k) -> IntervalSet:
    return e.act(j, k)


def lebesgue(e: IntervalSet) -> Fraction:
    return e.lebesgue()


def nu(e: IntervalSet) -> MeasureValue:
    """Logarithmic measure ``integral over E of dx / (|x| log 4)``.

    Infinite when 0 lies in the closure of ``E``; otherwise the exact sum of
    ``log2(hi/lo) / 2`` over the intervals.
    """
    if e.touches_origin():
        return MeasureValue.inf()
    half = Fraction(1, 2)
    terms = [(half, hi / lo) if lo > 0 else (half, lo / hi) for lo, hi in e]
    return MeasureValue.from_log_terms(terms)


def contains_point(e: IntervalSet, x) -> bool:
    return e.contains_point(x)


def closed_sets_meet(a: IntervalSet, b: IntervalSet) -> bool:
    """Whether the closures of ``a`` and ``b`` intersect."""
    i = j = 0
    A, B = a.intervals, b.intervals
    while i < len(A) and j < len(B):
        (alo, ahi), (blo, bhi) = A[i], B[j]
        if alo <= bhi and blo <= ahi:
            return True
        if ahi < bhi:
            i += 1
        else:
            j += 1
    return False
