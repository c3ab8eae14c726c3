"""Named example objects used by the CLI and the tests."""

from __future__ import annotations

from fractions import Fraction as Fr

from .errors import UnknownFixture
from .intervals import IntervalSet
from .stepfunc import StepFunction

SHANNON = IntervalSet([(-1, Fr(-1, 2)), (Fr(1, 2), 1)])
JOURNE = IntervalSet([(Fr(-16, 7), -2), (Fr(-1, 2), Fr(-2, 7)), (Fr(2, 7), Fr(1, 2)), (2, Fr(16, 7))])
EXAMPLE2 = IntervalSet([(Fr(-2, 3), Fr(-1, 3)), (Fr(2, 3), Fr(4, 3))])
# Lebesgue measure 1, yet not a wavelet set
TOOSTRONG = IntervalSet([(Fr(-1, 3), Fr(-1, 6)), (Fr(1, 3), Fr(1, 2)), (Fr(4, 3), 2)])
X_POINTS = (Fr(1, 5), Fr(12, 5), Fr(34, 5))


def h_cells(radius=Fr(1, 100)) -> StepFunction:
    """Value 1/2 on G, G+1, 4G, 2(G+1), 2(G+1)+1, 4G+6 with G the ball around 1/5."""
    g = IntervalSet([(Fr(1, 5) - radius, Fr(1, 5) + radius)])
    g1 = g.shift(1)
    parts = [g, g1, g.dilate(2), g1.dilate(1), g1.dilate(1).shift(1), g.dilate(2).shift(6)]
    return StepFunction.indicator(_union(parts), Fr(1, 2))


def _union(sets) -> IntervalSet:
    out = IntervalSet()
    for s in sets:
        out = out | s
    return out


def mix() -> StepFunction:
    half = Fr(1, 2)
    return StepFunction.indicator(SHANNON, half) + StepFunction.indicator(EXAMPLE2, half)


_FIXTURES = {
    "shannon": lambda: SHANNON,
    "journe": lambda: JOURNE,
    "example2": lambda: EXAMPLE2,
    "toostrong": lambda: TOOSTRONG,
    "paper-X": lambda: list(X_POINTS),
    "h-cells": h_cells,
    "mix": mix,
}

FIXTURE_NAMES = tuple(_FIXTURES)


def load_fixture(name: str):
    try:
        return _FIXTURES[name]()
    except KeyError:
        raise UnknownFixture(f"unknown fixture {name!r}; choose from {', '.join(FIXTURE_NAMES)}") from None
