"""Constructive extraction of tiling subsets, and the (F, U, V) witnesses for subsets of wavelet sets."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import count
from typing import Iterator

from .errors import ContainsOrigin, EmptyInput, EpsilonTooLarge, Undercovered, ZeroElement
from .exact import as_rational, format_rational, pow2
from .intervals import IntervalSet, closed_sets_meet
from .tiling import (
    DILATION, TRANSLATION, UNIT, W, ceil_log2, dilation_multiplicity, project_set,
    tiling_verdict, translation_multiplicity,
)

DELTA_MAX_T = 40
MAX_SEARCH = 200


def zigzag() -> Iterator[int]:
    """0, 1, -1, 2, -2, ..."""
    yield 0
    for n in count(1):
        yield n
        yield -n


def _translation_hull(e: IntervalSet) -> set:
    return set(range(math.floor(e.inf), math.ceil(e.sup)))


def _dilation_hull(e: IntervalSet) -> set:
    abs_lo = min(lo if lo > 0 else -hi for lo, hi in e)
    abs_hi = max(hi if lo > 0 else -lo for lo, hi in e)
    return set(range(ceil_log2(abs_lo) - 1, ceil_log2(abs_hi) + 2))


def _first_gap(mult, domain):
    for lo, hi, v in mult.cells_on(domain):
        if v < 1:
            return (lo, hi, v)
    return None


def iter_greedy_translation(e: IntervalSet) -> Iterator[IntervalSet]:
    """Yield ``G_1, G_2, ...``: each window ``(k, k+1]`` adds what is not yet covered mod 1."""
    gap = _first_gap(translation_multiplicity(e), UNIT)
    if gap is not None:
        raise Undercovered("translation multiplicity drops below 1", witness=gap)
    pending = _translation_hull(e)
    g = IntervalSet()
    for k in zigzag():
        if not pending:
            return
        if k not in pending:
            continue
        pending.discard(k)
        window = IntervalSet([(k, k + 1)])
        covered = translation_multiplicity(g).support().shift(k)
        g = g | ((e & window) - covered)
        yield g


def greedy_translation_subset(e: IntervalSet) -> IntervalSet:
    g = IntervalSet()
    for g in iter_greedy_translation(e):
        pass
    return g


def iter_greedy_dilation(e: IntervalSet) -> Iterator[IntervalSet]:
    """Dilation analogue over the windows ``2**j W``."""
    if e.touches_origin():
        raise ContainsOrigin("dilation extraction needs 0 outside the closure of E")
    gap = _first_gap(dilation_multiplicity(e), W)
    if gap is not None:
        raise Undercovered("dilation multiplicity drops below 1", witness=gap)
    # x in 2^j W iff ceil_log2|x| == j
    pending = _dilation_hull(e)
    g = IntervalSet()
    for j in zigzag():
        if not pending:
            return
        if j not in pending:
            continue
        pending.discard(j)
        window = W.dilate(j)
        covered = dilation_multiplicity(g).support().dilate(j) if g else IntervalSet()
        g = g | ((e & window) - covered)
        yield g


def greedy_dilation_subset(e: IntervalSet) -> IntervalSet:
    g = IntervalSet()
    for g in iter_greedy_dilation(e):
        pass
    return g


# --------------------------------------------------------------------------
# finite point sets contained in wavelet sets


def balls(x, eps) -> IntervalSet:
    """``union of (x_i - eps_i, x_i + eps_i]``; ``eps`` may be a scalar."""
    x = [as_rational(v) for v in x]
    if not isinstance(eps, (list, tuple)):
        eps = [eps] * len(x)
    eps = [as_rational(v) for v in eps]
    return IntervalSet((p - r, p + r) for p, r in zip(x, eps))


def _periodized_closure(f: IntervalSet) -> IntervalSet:
    """Support of the translation multiplicity; its closure is the closure of F + Z mod 1."""
    return translation_multiplicity(f).support()


def _avoids_integers(f: IntervalSet) -> bool:
    unit = _periodized_closure(f)
    return not (unit.closure_contains(0) or unit.closure_contains(1))


def _has_dilation_gap(f: IntervalSet) -> bool:
    return bool(W - dilation_multiplicity(f).support())


def _speegle_ball_ok(f: IntervalSet) -> bool:
    if f.touches_origin():
        return False
    return (tiling_verdict(f, TRANSLATION).packs
            and tiling_verdict(f, DILATION).packs
            and _avoids_integers(f)
            and _has_dilation_gap(f))


@dataclass(frozen=True)
class SpeegleCheck:
    ok: bool
    delta: Fraction | None
    reasons: tuple = ()

    def __bool__(self):
        return self.ok

    def to_dict(self):
        return {"ok": self.ok,
                "delta": None if self.delta is None else format_rational(self.delta),
                "reasons": list(self.reasons)}


def check_speegle_conditions(x) -> SpeegleCheck:
    """Point conditions on X, plus the largest dyadic radius making the balls behave.

    X must avoid the integers, contain no two points differing by a nonzero
    integer, and no two points with ratio ``2**j`` (j != 0).  The returned
    ``delta = 2**-t`` is the first t in 1..40 for which the balls pack both
    ways, their translates stay away from Z, and their dilates miss part of W.
    """
    pts = sorted({as_rational(v) for v in x})
    if not pts:
        raise EmptyInput("X must be nonempty")
    if any(p == 0 for p in pts):
        raise ZeroElement("X must not contain 0")
    reasons = []
    for p in pts:
        if p.denominator == 1:
            reasons.append(f"{format_rational(p)} is an integer")
    for i, p in enumerate(pts):
        for r in pts[i + 1:]:
            d = r - p
            if d.denominator == 1:
                reasons.append(f"{format_rational(r)} - {format_rational(p)} = {d} is an integer")
            ratio = r / p
            if ratio > 0:
                for big, small in ((r, p), (p, r)):
                    q = big / small
                    if q.denominator == 1 and q > 1 and q.numerator & (q.numerator - 1) == 0:
                        reasons.append(f"{format_rational(big)} = {q.numerator} * {format_rational(small)}")
    if reasons:
        return SpeegleCheck(False, None, tuple(reasons))
    for t in range(1, DELTA_MAX_T + 1):
        delta = pow2(-t)
        if _speegle_ball_ok(balls(pts, delta)):
            return SpeegleCheck(True, delta)
    return SpeegleCheck(False, None, (f"no dyadic delta >= 2^-{DELTA_MAX_T} works",))


@dataclass(frozen=True)
class UVTriple:
    f: IntervalSet
    u: IntervalSet
    v: IntervalSet
    dilation_exponent: int  # J in U = 2^J U1 ∪ F
    shift: int  # k in V = F ∪ (V2 + k)
    delta: Fraction

    def to_dict(self):
        return {"F": self.f.to_dict(), "U": self.u.to_dict(), "V": self.v.to_dict(),
                "J": self.dilation_exponent, "k": self.shift,
                "delta": format_rational(self.delta)}


def build_U_V(x, eps) -> UVTriple:
    """Witnesses U ⊇ F (packs by translations, tiles by dilations) and V ⊇ F (the reverse).

    F is the union of balls ``(x_i - eps_i, x_i + eps_i]``.  U adds a dilated
    copy of what F's dilates miss in ``[-2,-1] ∪ [1,2]``, shrunk toward 0
    until it stays clear of F + Z; V adds the part of (0, 1] not covered by
    F + Z, translated into a long gap of F's dilation orbit.
    """
    check = check_speegle_conditions(x)
    if not check.ok:
        raise ValueError("X fails the point conditions: " + "; ".join(check.reasons))
    pts = [as_rational(v) for v in x]
    if not isinstance(eps, (list, tuple)):
        eps = [eps] * len(pts)
    eps = [as_rational(e) for e in eps]
    if len(eps) != len(pts):
        raise ValueError("need one epsilon per point")
    for e in eps:
        if not 0 < e < check.delta:
            raise EpsilonTooLarge(f"need 0 < eps < delta = {check.delta}, got {e}")
    f = balls(pts, eps)

    u1 = W.dilate(1) - dilation_multiplicity(f).support().dilate(1)
    f_periodic = _periodized_closure(f)
    for big_j in range(0, -MAX_SEARCH, -1):
        candidate = u1.dilate(big_j)
        f_near = IntervalSet()
        for k in range(math.floor(candidate.inf) - 1, math.ceil(candidate.sup) + 1):
            f_near = f_near | f_periodic.shift(k)
        if closed_sets_meet(candidate, f_near):
            continue
        u = candidate | f
        if tiling_verdict(u, TRANSLATION).packs and tiling_verdict(u, DILATION).tiles:
            break
    else:
        raise RuntimeError("no dilation exponent found for U")

    v2 = UNIT - f_periodic
    gaps = W - dilation_multiplicity(f).support()
    shift = _find_shift(v2, gaps, f)
    v = f | v2.shift(shift)
    return UVTriple(f, u, v, big_j, shift, check.delta)


def _find_shift(v2: IntervalSet, gaps: IntervalSet, f: IntervalSet) -> int:
    """Smallest-scale integer k with ``(k, k+1]`` inside a dilate of a gap of d(F)."""
    for j in count(0):
        s = pow2(j)
        for lo, hi in gaps:
            a, b = s * lo, s * hi
            k = math.ceil(a)
            if k + 1 <= b and (k >= 1 or k <= -2):
                candidate = f | v2.shift(k)
                if tiling_verdict(candidate, DILATION).packs and tiling_verdict(candidate, TRANSLATION).tiles:
                    return k
        if j > MAX_SEARCH:
            raise RuntimeError("no translation shift found for V")


@dataclass(frozen=True)
class IPConditions:
    f_packs_translations: bool
    f_packs_dilations: bool
    u_ok: bool
    v_ok: bool
    notes: tuple = ()

    @property
    def all_hold(self) -> bool:
        return self.f_packs_translations and self.f_packs_dilations and self.u_ok and self.v_ok

    def to_dict(self):
        return {"1_F_packs_by_translations": self.f_packs_translations,
                "2_F_packs_by_dilations": self.f_packs_dilations,
                "3_U_contains_F_packs_translations_tiles_dilations": self.u_ok,
                "4_V_contains_F_packs_dilations_tiles_translations": self.v_ok,
                "all_hold": self.all_hold, "notes": list(self.notes)}


def _safe(check, notes, label):
    try:
        return check()
    except ContainsOrigin as exc:
        notes.append(f"{label}: {exc}")
        return False


def check_ip_conditions(f: IntervalSet, u: IntervalSet, v: IntervalSet) -> IPConditions:
    """The four conditions characterizing subsets of wavelet sets."""
    notes = []
    c1 = tiling_verdict(f, TRANSLATION).packs
    c2 = _safe(lambda: tiling_verdict(f, DILATION).packs, notes, "F")
    c3 = f.issubset(u) and tiling_verdict(u, TRANSLATION).packs and _safe(
        lambda: tiling_verdict(u, DILATION).tiles, notes, "U")
    c4 = f.issubset(v) and tiling_verdict(v, TRANSLATION).tiles and _safe(
        lambda: tiling_verdict(v, DILATION).packs, notes, "V")
    return IPConditions(c1, c2, c3, c4, tuple(notes))


__all__ = [
    "zigzag", "iter_greedy_translation", "greedy_translation_subset",
    "iter_greedy_dilation", "greedy_dilation_subset", "balls",
    "check_speegle_conditions", "SpeegleCheck", "build_U_V", "UVTriple",
    "check_ip_conditions", "IPConditions", "project_set",
]
