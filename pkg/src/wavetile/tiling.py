"""Projections onto ``W = (-1,-1/2] ∪ (1/2,1]``, multiplicity functions, tiling verdicts.

Translation multiplicities ``sum_k 1_E(x + k)`` live on ``(0, 1]``; dilation
multiplicities ``sum_j 1_E(2**j x)`` live on ``W``.  Both are exact
:class:`StepFunction` values, so "tiles a.e." becomes "is identically 1 on the
half-open fundamental domain".
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from decimal import Decimal
from fractions import Fraction

from .errors import ContainsOrigin, ZeroPoint
from .exact import QuadExt, as_rational, format_rational, pow2
from .intervals import IntervalSet
from .stepfunc import StepFunction

HALF = Fraction(1, 2)
UNIT = IntervalSet([(0, 1)])
W = IntervalSet([(-1, -HALF), (HALF, 1)])

TRANSLATION = "translation"
DILATION = "dilation"
_ACTION_ALIASES = {"translation": TRANSLATION, "trans": TRANSLATION, "tau": TRANSLATION,
                   "dilation": DILATION, "dil": DILATION, "d": DILATION}


def normalize_action(action: str) -> str:
    try:
        return _ACTION_ALIASES[action]
    except KeyError:
        raise ValueError(f"unknown action {action!r}") from None


# --------------------------------------------------------------------------
# points


def ceil_log2(x) -> int:
    """Smallest integer k with ``x <= 2**k`` (x > 0, rational or QuadExt)."""
    if isinstance(x, QuadExt) and not x.is_rational:
        if x <= 0:
            raise ValueError("ceil_log2 needs a positive argument")
        k = math.ceil(x.to_decimal().ln() / Decimal(2).ln())
    else:
        x = as_rational(x.a if isinstance(x, QuadExt) else x)
        if x <= 0:
            raise ValueError("ceil_log2 needs a positive argument")
        k = x.numerator.bit_length() - x.denominator.bit_length()
    while x > pow2(k):
        k += 1
    while x <= pow2(k - 1):
        k -= 1
    return k


def dyadic_exponent(x) -> int:
    """The unique j with ``2**j * x`` in W."""
    if x == 0:
        raise ZeroPoint("0 has no dilation representative in W")
    return -ceil_log2(abs(x))


def tau_point(x):
    """Representative of ``x + Z`` in W (type-preserving for Fraction/QuadExt)."""
    if not isinstance(x, QuadExt):
        x = as_rational(x)
    u = x - (math.ceil(x) - 1)  # in (0, 1]
    return u if u > HALF else u - 1


def d_point(x):
    """Representative of ``{2**j x}`` in W; raises ZeroPoint for 0."""
    if not isinstance(x, QuadExt):
        x = as_rational(x)
    return x * pow2(dyadic_exponent(x))


# --------------------------------------------------------------------------
# periodization


def periodize_translation(f: StepFunction) -> StepFunction:
    """``x -> sum_k f(x + k)`` restricted to (0, 1]."""
    pieces = []
    for lo, hi, v in f.cells():
        for k in range(math.floor(lo), math.ceil(hi)):
            a, b = max(lo, k), min(hi, k + 1)
            if a < b:
                pieces.append((a - k, b - k, v))
    return StepFunction.from_cells(pieces)


def periodize_dilation(f: StepFunction) -> StepFunction:
    """``x -> sum_j f(2**j x)`` restricted to W; ContainsOrigin if supp f touches 0."""
    pieces = []
    for lo, hi, v in f.cells():
        if lo <= 0 <= hi:
            raise ContainsOrigin(f"cell ({lo}, {hi}] has 0 in its closure")
        if lo > 0:
            for k in range(ceil_log2(lo), ceil_log2(hi) + 1):
                a, b = max(lo, pow2(k - 1)), min(hi, pow2(k))
                if a < b:
                    pieces.append((a / pow2(k), b / pow2(k), v))
        else:
            for k in range(ceil_log2(-hi) - 1, ceil_log2(-lo) + 2):
                a, b = max(lo, -pow2(k)), min(hi, -pow2(k - 1))
                if a < b:
                    pieces.append((a / pow2(k), b / pow2(k), v))
    return StepFunction.from_cells(pieces)


def translation_multiplicity(e: IntervalSet) -> StepFunction:
    return periodize_translation(StepFunction.indicator(e))


def dilation_multiplicity(e: IntervalSet) -> StepFunction:
    return periodize_dilation(StepFunction.indicator(e))


def multiplicity(e: IntervalSet, action: str) -> StepFunction:
    if normalize_action(action) == TRANSLATION:
        return translation_multiplicity(e)
    return dilation_multiplicity(e)


def domain_of(action: str) -> IntervalSet:
    return UNIT if normalize_action(action) == TRANSLATION else W


def unit_to_w(s: IntervalSet) -> IntervalSet:
    """Move a subset of (0, 1] to its translation-congruent copy in W."""
    low = s & IntervalSet([(0, HALF)])
    return low.shift(-1) | (s & IntervalSet([(HALF, 1)]))


def project_set(e: IntervalSet, which: str) -> IntervalSet:
    """``tau(E)`` or ``d(E)``: the image of E in W under the chosen action."""
    if normalize_action(which) == TRANSLATION:
        return unit_to_w(translation_multiplicity(e).support())
    return dilation_multiplicity(e).support()


# --------------------------------------------------------------------------
# verdicts


@dataclass(frozen=True)
class TilingReport:
    action: str
    domain: IntervalSet
    multiplicity: StepFunction
    verdict: str
    witnesses: tuple = field(default=())

    @property
    def tiles(self) -> bool:
        return self.verdict == "tiles"

    @property
    def packs(self) -> bool:
        return self.verdict in ("tiles", "packs-strictly")

    @property
    def covers(self) -> bool:
        return self.verdict in ("tiles", "overlaps")

    def to_dict(self):
        return {
            "action": self.action,
            "verdict": self.verdict,
            "domain": self.domain.to_dict(),
            "multiplicity": self.multiplicity.to_dict(),
            "witnesses": [{"lo": format_rational(lo), "hi": format_rational(hi),
                           "multiplicity": format_rational(v)} for lo, hi, v in self.witnesses],
        }


def classify(mult: StepFunction, domain: IntervalSet):
    cells = mult.cells_on(domain)
    values = [v for _, _, v in cells]
    witnesses = tuple(c for c in cells if c[2] != 1)[:3]
    if all(v == 1 for v in values):
        verdict = "tiles"
    elif all(v <= 1 for v in values):
        verdict = "packs-strictly"
    elif all(v >= 1 for v in values):
        verdict = "overlaps"
    else:
        verdict = "mixed"
    return verdict, witnesses


def tiling_verdict(e: IntervalSet, action: str) -> TilingReport:
    action = normalize_action(action)
    mult = multiplicity(e, action)
    domain = domain_of(action)
    verdict, witnesses = classify(mult, domain)
    return TilingReport(action, domain, mult, verdict, witnesses)


def packs(e: IntervalSet, action: str) -> bool:
    return tiling_verdict(e, action).packs


def tiles(e: IntervalSet, action: str) -> bool:
    return tiling_verdict(e, action).tiles


@dataclass(frozen=True)
class WaveletSetVerdict:
    is_wavelet_set: bool
    translation: TilingReport
    dilation: TilingReport | None
    diagnostic: str = ""

    def __bool__(self):
        return self.is_wavelet_set

    def to_dict(self):
        return {
            "is_wavelet_set": self.is_wavelet_set,
            "translation": self.translation.to_dict(),
            "dilation": None if self.dilation is None else self.dilation.to_dict(),
            "diagnostic": self.diagnostic,
        }


def is_wavelet_set(e: IntervalSet) -> WaveletSetVerdict:
    """Both tilings at once; a set touching 0 is reported as not a wavelet set."""
    trans = tiling_verdict(e, TRANSLATION)
    try:
        dil = tiling_verdict(e, DILATION)
    except ContainsOrigin as exc:
        return WaveletSetVerdict(False, trans, None, f"ContainsOrigin: {exc}")
    ok = trans.tiles and dil.tiles
    diag = "" if ok else "; ".join(f"{r.action}: {r.verdict}" for r in (trans, dil) if not r.tiles)
    return WaveletSetVerdict(ok, trans, dil, diag)
