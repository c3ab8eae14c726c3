"""Certification of piecewise-constant Fourier profiles as orthonormal wavelets.

A :class:`ComplexProfile` is ``psi_hat`` given cellwise by exact complex values
``re + i*im``.  The four characterizing identities are checked cell by cell:
every sum involved is a finite sum of step functions, so evaluating each
elementary cell at its midpoint is exact.

* ``check_eq1`` -- ``sum_k |psi(x + k)|^2 == 1``
* ``check_eq2`` -- ``sum_j |psi(2^j x)|^2 == 1``
* ``check_eq3`` -- ``t_q(x) = sum_{j>=0} psi(2^j x) conj(psi(2^j (x + q))) == 0`` (windowed)
* ``check_eq4`` -- ``sum_k psi(2^j (x + k)) conj(psi(x + k)) == 0`` for all j >= 1 (complete)
"""

from __future__ import annotations

import bisect
import math
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import ContainsOrigin, EvenShift, FormatError, MalformedInterval
from .exact import as_rational, format_rational, parse_rational, pow2
from .intervals import IntervalSet
from .stepfunc import StepFunction
from .tiling import UNIT, W, ceil_log2, periodize_dilation, periodize_translation

ZERO = (Fraction(0), Fraction(0))


def _conj_mul(u, v):
    """``u * conj(v)`` for exact complex pairs."""
    (a, b), (c, d) = u, v
    return (a * c + b * d, b * c - a * d)


class ComplexProfile:
    """Exact piecewise-constant complex function, zero outside its cells."""

    __slots__ = ("_cells", "_los")

    def __init__(self, cells=()):
        raw = sorted((as_rational(lo), as_rational(hi), as_rational(re), as_rational(im))
                     for lo, hi, re, im in cells)
        merged = []
        for lo, hi, re, im in raw:
            if lo >= hi:
                raise MalformedInterval(f"need lo < hi, got ({lo}, {hi}]")
            if merged and lo < merged[-1][1]:
                raise MalformedInterval("profile cells overlap")
            if re == 0 and im == 0:
                continue
            if merged and merged[-1][1] == lo and merged[-1][2:] == (re, im):
                merged[-1] = (merged[-1][0], hi, re, im)
            else:
                merged.append((lo, hi, re, im))
        for lo, hi, _, _ in merged:
            if lo <= 0 <= hi:
                raise ContainsOrigin(f"profile support cell ({lo}, {hi}] touches 0")
        self._cells = tuple(merged)
        self._los = [c[0] for c in merged]

    @classmethod
    def indicator(cls, e: IntervalSet, re=1, im=0) -> ComplexProfile:
        return cls((lo, hi, re, im) for lo, hi in e)

    @property
    def cells(self) -> tuple:
        return self._cells

    def __call__(self, x):
        i = bisect.bisect_left(self._los, x) - 1
        if i >= 0:
            lo, hi, re, im = self._cells[i]
            if lo < x <= hi:
                return (re, im)
        return ZERO

    def __eq__(self, other):
        if not isinstance(other, ComplexProfile):
            return NotImplemented
        return self._cells == other._cells

    def __hash__(self):
        return hash(self._cells)

    def __repr__(self):
        return f"ComplexProfile({len(self._cells)} cells)"

    def is_zero(self) -> bool:
        return not self._cells

    def support(self) -> IntervalSet:
        return IntervalSet((lo, hi) for lo, hi, _, _ in self._cells)

    def abs2(self) -> StepFunction:
        return StepFunction.from_cells((lo, hi, re * re + im * im) for lo, hi, re, im in self._cells)

    def breakpoints(self) -> list:
        return sorted({x for lo, hi, _, _ in self._cells for x in (lo, hi)})

    @property
    def s_min(self):
        if not self._cells:
            return None
        return min(lo if lo > 0 else -hi for lo, hi, _, _ in self._cells)

    @property
    def s_max(self):
        if not self._cells:
            return None
        return max(hi if lo > 0 else -lo for lo, hi, _, _ in self._cells)

    def times_phase(self, re, im) -> ComplexProfile:
        """Multiply every value by the constant ``re + i*im``."""
        re, im = as_rational(re), as_rational(im)
        return ComplexProfile((lo, hi, a * re - b * im, a * im + b * re)
                              for lo, hi, a, b in self._cells)

    def to_dict(self):
        return {"cells": [{"lo": format_rational(lo), "hi": format_rational(hi),
                           "re": format_rational(re), "im": format_rational(im)}
                          for lo, hi, re, im in self._cells]}

    @classmethod
    def from_dict(cls, data) -> ComplexProfile:
        try:
            return cls((parse_rational(c["lo"]), parse_rational(c["hi"]),
                        parse_rational(c.get("re", "0")), parse_rational(c.get("im", "0")))
                       for c in data["cells"])
        except (KeyError, TypeError, AttributeError) as exc:
            raise FormatError(f"bad profile object: {exc}") from exc


# --------------------------------------------------------------------------
# reports


@dataclass(frozen=True)
class EquationReport:
    equation: int
    status: str  # holds | fails | holds-in-window
    window: dict = field(default_factory=dict)
    witnesses: tuple = ()
    detail: dict = field(default_factory=dict)

    @property
    def holds(self) -> bool:
        return self.status != "fails"

    def to_dict(self):
        def fmt(v):
            if isinstance(v, tuple):
                return {"re": format_rational(v[0]), "im": format_rational(v[1])}
            return format_rational(v)
        return {
            "equation": self.equation,
            "status": self.status,
            "window": {k: (format_rational(v) if isinstance(v, Fraction) else v)
                       for k, v in self.window.items()},
            "witnesses": [{"lo": format_rational(lo), "hi": format_rational(hi),
                           "residual": fmt(r)} for lo, hi, r in self.witnesses],
            "detail": self.detail,
        }


def _partition(domain: IntervalSet, points):
    points = sorted(set(points))
    cells = []
    for dlo, dhi in domain:
        lo_i = bisect.bisect_right(points, dlo)
        hi_i = bisect.bisect_left(points, dhi)
        edges = [dlo, *points[lo_i:hi_i], dhi]
        cells.extend(zip(edges, edges[1:]))
    return cells


def _frac_points(points):
    """Reduce points mod 1 into [0, 1)."""
    return {p - math.floor(p) for p in points}


def _unit_report(equation, periodized: StepFunction, domain: IntervalSet) -> EquationReport:
    bad = [(lo, hi, v - 1) for lo, hi, v in periodized.cells_on(domain) if v != 1]
    status = "holds" if not bad else "fails"
    return EquationReport(equation, status, {}, tuple(bad[:3]),
                          {"violating_cells": len(bad)})


def check_eq1(psi: ComplexProfile) -> EquationReport:
    return _unit_report(1, periodize_translation(psi.abs2()), UNIT)


def check_eq2(psi: ComplexProfile) -> EquationReport:
    return _unit_report(2, periodize_dilation(psi.abs2()), W)


def check_eq3(psi: ComplexProfile, q: int = 1, window_J: int = 20) -> EquationReport:
    """``t_q == 0`` on every cell with ``|x| >= s_min * 2**-window_J``.

    For ``|x| > s_max`` every term vanishes, so the window is the only gap.
    """
    if q % 2 == 0:
        raise EvenShift(f"q must be odd, got {q}")
    if window_J < 1:
        raise ValueError("window_J must be positive")
    window = {"q": q, "window_J": window_J}
    if psi.is_zero():
        return EquationReport(3, "holds-in-window", window)
    s_min, s_max = psi.s_min, psi.s_max
    lower = s_min * pow2(-window_J)
    window["lower"] = lower
    domain = IntervalSet([(-s_max, -lower), (lower, s_max)])
    top = ceil_log2(s_max / lower)
    bps = psi.breakpoints()
    points = set()
    for j in range(top + 1):
        s = pow2(-j)
        for b in bps:
            points.add(b * s)
            points.add(b * s - q)
    bad = []
    for lo, hi in _partition(domain, points):
        m = (lo + hi) / 2
        total = ZERO
        for j in range(top + 1):
            s = pow2(j)
            u = psi(s * m)
            if u == ZERO:
                continue
            p = _conj_mul(u, psi(s * (m + q)))
            total = (total[0] + p[0], total[1] + p[1])
        if total != ZERO:
            bad.append((lo, hi, total))
    status = "holds-in-window" if not bad else "fails"
    return EquationReport(3, status, window, tuple(bad[:3]), {"violating_cells": len(bad)})


def eq4_bound(psi: ComplexProfile) -> int:
    """Largest j for which ``supp ∩ 2**-j supp`` can be nonempty."""
    if psi.is_zero():
        return 0
    return ceil_log2(psi.s_max / psi.s_min)


def check_eq4(psi: ComplexProfile, j_max: int | None = None) -> EquationReport:
    """Complete check of the j >= 1 cross-correlations, periodized on (0, 1].

    Past :func:`eq4_bound` no product of factors can be nonzero, so the default
    range is exhaustive.  ``detail["nonzero_products"][j]`` counts the
    (cell, k) pairs whose product was nonzero at level j.
    """
    bound = eq4_bound(psi)
    top = bound if j_max is None else j_max
    window = {"j_bound": bound, "j_checked": top}
    if psi.is_zero():
        return EquationReport(4, "holds", window)
    s_max = psi.s_max
    bps = psi.breakpoints()
    k_lo, k_hi = math.floor(-s_max) - 1, math.ceil(s_max) + 1
    bad, nonzero = [], {}
    for j in range(1, top + 1):
        s = pow2(j)
        points = _frac_points(bps) | _frac_points(b / s for b in bps)
        count = 0
        for lo, hi in _partition(UNIT, points):
            m = (lo + hi) / 2
            total = ZERO
            for k in range(k_lo, k_hi + 1):
                v = psi(m + k)
                if v == ZERO:
                    continue
                u = psi(s * (m + k))
                if u == ZERO:
                    continue
                count += 1
                p = _conj_mul(u, v)
                total = (total[0] + p[0], total[1] + p[1])
            if total != ZERO:
                bad.append((lo, hi, total))
        nonzero[j] = count
    status = "holds" if not bad else "fails"
    return EquationReport(4, status, window, tuple(bad[:3]),
                          {"violating_cells": len(bad), "nonzero_products": nonzero})


@dataclass(frozen=True)
class Certification:
    verdict: str  # wavelet | not-wavelet
    reports: tuple

    @property
    def is_wavelet(self) -> bool:
        return self.verdict == "wavelet"

    def report(self, equation: int) -> EquationReport:
        return next(r for r in self.reports if r.equation == equation)

    def to_dict(self):
        return {"verdict": self.verdict, "equations": [r.to_dict() for r in self.reports]}


def certify_wavelet(psi: ComplexProfile, window_J: int = 20, q: int = 1) -> Certification:
    """Sound certification from (1), (2) and the complete (4); (3) is informational."""
    r1, r2, r4 = check_eq1(psi), check_eq2(psi), check_eq4(psi)
    r3 = check_eq3(psi, q, window_J)
    ok = r1.holds and r2.holds and r4.holds
    return Certification("wavelet" if ok else "not-wavelet", (r1, r2, r3, r4))


# --------------------------------------------------------------------------
# necessary support geometry


@dataclass(frozen=True)
class GeomViolation:
    condition: int  # 1: integer-congruent pair, 2: dyadic-congruent pair
    shift: int  # k for condition 1, j for condition 2
    cells: IntervalSet  # the x at which no companion pair exists

    def to_dict(self):
        return {"condition": self.condition, "shift": self.shift,
                "message": "necessary condition violated (within window)",
                "cells": self.cells.to_dict()}


@dataclass(frozen=True)
class GeomReport:
    window_J: int
    violations: tuple

    @property
    def ok(self) -> bool:
        return not self.violations

    def to_dict(self):
        return {"window_J": self.window_J,
                "status": "no violation found" if self.ok else "necessary condition violated (within window)",
                "violations": [v.to_dict() for v in self.violations]}


def _two_adic_valuation(k: int) -> int:
    return (k & -k).bit_length() - 1


def geom_support_check(e: IntervalSet, window_J: int = 20) -> GeomReport:
    """Scan for points violating the companion-pair conditions wavelet supports obey.

    (1) x, x+k in E (k != 0) needs some j != 0, 2^j k integral, with 2^j x and
        2^j (x+k) in E.
    (2) x, 2^j x in E (j != 0) needs some k != 0, 2^j k integral, with x+k and
        2^j (x+k) in E.

    Only necessary conditions: an empty report never certifies a wavelet.
    """
    if e.touches_origin():
        raise ContainsOrigin("geometry scan needs 0 outside the closure of E")
    violations = []
    if not e:
        return GeomReport(window_J, ())
    width = math.ceil(e.sup - e.inf)
    for k in range(-width, width + 1):
        if k == 0:
            continue
        pairs = e & e.shift(-k)
        if not pairs:
            continue
        v = _two_adic_valuation(k)
        cover = IntervalSet()
        for j in range(max(-window_J, -v), window_J + 1):
            if j == 0:
                continue
            kk = k * pow2(j)
            cover = cover | (e & e.shift(-kk)).dilate(-j)
        missing = pairs - cover
        if missing:
            violations.append(GeomViolation(1, k, missing))
    s_min = min(lo if lo > 0 else -hi for lo, hi in e)
    s_max = max(hi if lo > 0 else -lo for lo, hi in e)
    span = min(window_J, ceil_log2(s_max / s_min) + 1)
    for j in range(-span, span + 1):
        if j == 0:
            continue
        pairs = e & e.dilate(-j)
        if not pairs:
            continue
        step = 1 if j >= 0 else 2 ** (-j)
        cover = IntervalSet()
        for k in range(-width - step, width + step + 1):
            if k == 0 or k % step:
                continue
            cover = cover | pairs.shift(-k)
        missing = pairs - cover
        if missing:
            violations.append(GeomViolation(2, j, missing))
    return GeomReport(window_J, tuple(violations))


# --------------------------------------------------------------------------
# dimension function


@dataclass(frozen=True)
class DimensionResult:
    function: StepFunction
    domain: IntervalSet
    complete: bool
    scales: int

    def to_dict(self):
        return {"domain": self.domain.to_dict(), "complete": self.complete,
                "scales": self.scales, "function": self.function.to_dict()}


def compute_dimension_function(psi: ComplexProfile, window_J: int = 20,
                               max_scale: int | None = None) -> DimensionResult:
    """``D(x) = sum_{j>=1} sum_k |psi(2^j (x + k))|^2`` on ``(2^-J, 1 - 2^-J]``.

    On that window every contributing scale satisfies ``2^j <= s_max * 2^J``,
    so summing up to that scale is exhaustive and ``complete`` is True unless
    ``max_scale`` cuts it short.
    """
    eta = pow2(-window_J)
    domain = IntervalSet([(eta, 1 - eta)])
    if psi.is_zero():
        return DimensionResult(StepFunction(), domain, True, 0)
    s_max = psi.s_max
    needed = ceil_log2(s_max / eta)
    scales = needed if max_scale is None else min(needed, max_scale)
    bps = psi.breakpoints()
    points = set()
    for j in range(1, scales + 1):
        points |= _frac_points(b * pow2(-j) for b in bps)
    cells = []
    for lo, hi in _partition(domain, points):
        m = (lo + hi) / 2
        total = Fraction(0)
        for j in range(1, scales + 1):
            s = pow2(j)
            reach = s_max / s
            for k in range(math.ceil(-reach - m), math.floor(reach - m) + 1):
                re, im = psi(s * (m + k))
                total += re * re + im * im
        cells.append((lo, hi, total))
    return DimensionResult(StepFunction.from_cells(cells), domain, scales >= needed, scales)
