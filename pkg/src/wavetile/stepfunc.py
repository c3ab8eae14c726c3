"""Piecewise-constant nonnegative functions with rational breakpoints."""

from __future__ import annotations

import bisect
from fractions import Fraction
from typing import Iterable

from .errors import FormatError
from .exact import QuadExt, as_rational, format_rational, parse_rational
from .intervals import IntervalSet, MeasureValue, nu


class StepFunction:
    """``f(x) = values[i]`` for ``x`` in ``(breakpoints[i], breakpoints[i+1]]``, 0 outside.

    Instances are canonical: adjacent cells with equal values are merged and
    zero cells at either end are dropped, so ``==`` is equality of functions.
    """

    __slots__ = ("_bp", "_vals")

    def __init__(self, breakpoints: Iterable = (), values: Iterable = ()):
        bp = [as_rational(b) for b in breakpoints]
        vals = [as_rational(v) for v in values]
        if bp and len(vals) != len(bp) - 1:
            raise ValueError("need exactly one value per cell")
        if not bp and vals:
            raise ValueError("values given without breakpoints")
        if any(b >= c for b, c in zip(bp, bp[1:])):
            raise ValueError("breakpoints must be strictly increasing")
        if any(v < 0 for v in vals):
            raise ValueError("step function values must be nonnegative")
        self._bp, self._vals = _canonical(bp, vals)

    @classmethod
    def from_cells(cls, cells: Iterable) -> StepFunction:
        """Sum of ``value * 1_(lo, hi]`` over possibly overlapping cells."""
        cells = [(as_rational(lo), as_rational(hi), as_rational(v)) for lo, hi, v in cells]
        cells = [c for c in cells if c[2] != 0]
        for lo, hi, _ in cells:
            if lo >= hi:
                raise ValueError(f"empty cell ({lo}, {hi}]")
        if not cells:
            return cls()
        points = sorted({lo for lo, _, _ in cells} | {hi for _, hi, _ in cells})
        index = {p: i for i, p in enumerate(points)}
        delta = [Fraction(0)] * len(points)
        for lo, hi, v in cells:
            delta[index[lo]] += v
            delta[index[hi]] -= v
        vals, running = [], Fraction(0)
        for d in delta[:-1]:
            running += d
            vals.append(running)
        return cls(points, vals)

    @classmethod
    def indicator(cls, e: IntervalSet, value=1) -> StepFunction:
        value = as_rational(value)
        return cls.from_cells((lo, hi, value) for lo, hi in e)

    @property
    def breakpoints(self) -> tuple:
        return self._bp

    @property
    def values(self) -> tuple:
        return self._vals

    def __call__(self, x) -> Fraction:
        if not isinstance(x, QuadExt):
            x = as_rational(x)
        i = bisect.bisect_left(self._bp, x) - 1
        if 0 <= i < len(self._vals):
            return self._vals[i]
        return Fraction(0)

    def cells(self, include_zero: bool = False) -> list:
        out = []
        for lo, hi, v in zip(self._bp, self._bp[1:], self._vals):
            if v != 0 or include_zero:
                out.append((lo, hi, v))
        return out

    def cells_on(self, domain: IntervalSet) -> list:
        """Partition ``domain`` into maximal cells of constancy, zeros included."""
        out = []
        for dlo, dhi in domain:
            inner = [b for b in self._bp if dlo < b < dhi]
            edges = [dlo, *inner, dhi]
            for lo, hi in zip(edges, edges[1:]):
                out.append((lo, hi, self((lo + hi) / 2)))
        return out

    def support(self) -> IntervalSet:
        return IntervalSet((lo, hi) for lo, hi, _ in self.cells())

    def is_zero(self) -> bool:
        return not self._vals

    def max(self) -> Fraction:
        return max(self._vals, default=Fraction(0))

    def integral(self) -> Fraction:
        return sum(((hi - lo) * v for lo, hi, v in self.cells()), Fraction(0))

    def nu_integral(self) -> MeasureValue:
        total = MeasureValue.exact_value(0)
        for lo, hi, v in self.cells():
            total = total + nu(IntervalSet.interval(lo, hi)).scale(v)
        return total

    def restrict(self, e: IntervalSet) -> StepFunction:
        return StepFunction.from_cells(
            (lo, hi, v) for lo, hi, v in self.cells_on(e) if v != 0)

    def scale(self, factor) -> StepFunction:
        factor = as_rational(factor)
        return StepFunction(self._bp, (v * factor for v in self._vals)) if self._bp else StepFunction()

    def __add__(self, other: StepFunction) -> StepFunction:
        return StepFunction.from_cells(self.cells() + other.cells())

    def __eq__(self, other):
        if not isinstance(other, StepFunction):
            return NotImplemented
        return self._bp == other._bp and self._vals == other._vals

    def __hash__(self):
        return hash((self._bp, self._vals))

    def __repr__(self):
        if not self._vals:
            return "StepFunction(0)"
        body = ", ".join(f"({format_rational(lo)}, {format_rational(hi)}]→{format_rational(v)}"
                         for lo, hi, v in self.cells())
        return f"StepFunction({body})"

    def to_dict(self):
        return {"cells": [{"lo": format_rational(lo), "hi": format_rational(hi),
                           "value": format_rational(v)} for lo, hi, v in self.cells()]}

    @classmethod
    def from_dict(cls, data) -> StepFunction:
        try:
            return cls.from_cells((parse_rational(c["lo"]), parse_rational(c["hi"]),
                                   parse_rational(c["value"])) for c in data["cells"])
        except (KeyError, TypeError) as exc:
            raise FormatError(f"bad step-function object: {exc}") from exc


def _canonical(bp, vals):
    if not vals:
        return (), ()
    merged_bp, merged_vals = [bp[0]], []
    for hi, v in zip(bp[1:], vals):
        if merged_vals and merged_vals[-1] == v:
            merged_bp[-1] = hi
        else:
            merged_vals.append(v)
            merged_bp.append(hi)
    # drop zero cells at the ends
    start, stop = 0, len(merged_vals)
    while start < stop and merged_vals[start] == 0:
        start += 1
    while stop > start and merged_vals[stop - 1] == 0:
        stop -= 1
    if start == stop:
        return (), ()
    return tuple(merged_bp[start:stop + 1]), tuple(merged_vals[start:stop])
