"""Sets with prescribed Lebesgue and log measure inside the support of a step function.

``find_set_with_measures(f)`` returns W ⊆ supp f with ``m(W) = ∫ f dm``
exactly and ``ν(W) = ∫ f dν`` up to a tolerance.  The Lebesgue side is always
solved in rationals; only the log side uses bisection.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from decimal import Decimal
from fractions import Fraction

from .errors import ContainsOrigin, TargetOutOfRange, ValueOutOfRange, ZeroMass
from .exact import as_rational, format_rational, pow2
from .intervals import IntervalSet, MeasureValue, measure_to_decimal
from .stepfunc import StepFunction

DEFAULT_TOL = Decimal("1e-9")
MAX_BISECTIONS = 200


def integrals(f: StepFunction):
    """``(∫ f dm, ∫ f dν)``; the second is infinite when supp f reaches 0."""
    c1 = f.integral()
    if f.support().touches_origin():
        return c1, MeasureValue.inf()
    return c1, f.nu_integral()


def fold(e: IntervalSet) -> StepFunction:
    """Multiplicity of ``|x|`` over E, as a step function on (0, ∞).

    Both m and ν of any ``E ∩ {a < |x| <= b}`` can be read off this function,
    which is why the constructions below never need to move E to one side.
    """
    if not e:
        return StepFunction()
    positive = IntervalSet([(0, max(abs(e.inf), abs(e.sup)))])
    pos = e & positive
    neg = (e - positive).reflect()
    return StepFunction.indicator(pos) + StepFunction.indicator(neg)


def abs_window(lo, hi) -> IntervalSet:
    """``{x : lo < |x| <= hi}`` (lo >= 0), up to the null set of endpoints."""
    lo, hi = as_rational(lo), as_rational(hi)
    if hi <= lo:
        return IntervalSet()
    return IntervalSet([(-hi, -lo), (lo, hi)])


def _cut_from_below(e: IntervalSet, mass: Fraction) -> Fraction:
    """Smallest x with ``m(E ∩ {|x| <= x}) = mass``."""
    acc = Fraction(0)
    for lo, hi, dens in fold(e).cells():
        piece = (hi - lo) * dens
        if acc + piece >= mass:
            return lo + (mass - acc) / dens
        acc += piece
    raise ValueError("not enough mass")


def _cut_from_above(e: IntervalSet, mass: Fraction) -> Fraction:
    """Largest g with ``m(E ∩ {|x| > g}) = mass``."""
    acc = Fraction(0)
    for lo, hi, dens in reversed(fold(e).cells()):
        piece = (hi - lo) * dens
        if acc + piece >= mass:
            return hi - (mass - acc) / dens
        acc += piece
    if mass == acc:
        return Fraction(0)
    raise ValueError("not enough mass")


def _nu_dec(e: IntervalSet) -> Decimal:
    return e.nu().as_decimal()


def _trim_infinite(u: IntervalSet, v: IntervalSet, target: Decimal) -> IntervalSet:
    """Replace V (infinite ν) by V1 ∪ V2 with finite ν above target and the same mass."""
    for n in range(1, 2000):
        eps = pow2(-n)
        v1 = v - abs_window(0, eps)
        if _nu_dec(v1) > target:
            break
    else:
        raise TargetOutOfRange("could not trim V below infinite log measure")
    missing = v.lebesgue() - v1.lebesgue()
    spare = u - v1
    if missing == 0:
        return v1
    g = _cut_from_above(spare, missing)
    return v1 | (spare - abs_window(0, g))


@dataclass
class _Family:
    """``W_t = U_t ∪ ((V \\ U_t) \\ [-g, g])`` with g solved so that m(W_t) = m(U)."""

    u: IntervalSet
    v: IntervalSet
    c1: Fraction

    def at(self, t: Fraction) -> IntervalSet:
        u_t = self.u & abs_window(0, t)
        rest = self.v - u_t
        need = self.c1 - u_t.lebesgue()
        if need == 0:
            return u_t
        g = _cut_from_above(rest, need)
        return u_t | (rest - abs_window(0, g))


def interpolate_sets(u: IntervalSet, v: IntervalSet, target, tol=DEFAULT_TOL, trace=None) -> IntervalSet:
    """A set W ⊆ U ∪ V with ``m(W) = m(U) = m(V)`` and ``|ν(W) - target| <= tol``.

    ``ν(U) <= target <= ν(V)`` is required.  ``trace`` (a list) receives the
    ``(t, ν(W_t))`` samples from the grid scan and the bisection.
    """
    c1 = u.lebesgue()
    if v.lebesgue() != c1:
        raise ValueError(f"U and V must have equal Lebesgue measure ({c1} vs {v.lebesgue()})")
    if c1 == 0:
        raise ZeroMass("cannot interpolate between null sets")
    tol = measure_to_decimal(tol)
    target = measure_to_decimal(target)
    if trace is None:
        trace = []
    if u.touches_origin():
        raise TargetOutOfRange("nu(U) is infinite, so no target can lie above it")
    lo_nu = _nu_dec(u)
    if v.touches_origin():
        v = _trim_infinite(u, v, target)
    hi_nu = _nu_dec(v)
    if not lo_nu - tol <= target <= hi_nu + tol:
        raise TargetOutOfRange(f"target {target:.12f} outside [nu(U), nu(V)] = [{lo_nu:.12f}, {hi_nu:.12f}]")

    family = _Family(u, v, c1)

    def h(t):
        w = family.at(t)
        val = _nu_dec(w)
        trace.append((t, val))
        return w, val - target

    grid = sorted({Fraction(0)} | {abs(p) for p in u.endpoints()})
    prev_t = grid[0]
    w_prev, h_prev = h(prev_t)
    if abs(h_prev) <= tol:
        return w_prev
    for b in grid[1:]:
        w_b, h_b = h(b)
        if abs(h_b) <= tol:
            return w_b
        if (h_prev > 0) != (h_b > 0):
            a = prev_t
            break
        prev_t, h_prev = b, h_b
    else:
        raise TargetOutOfRange("no sign change of nu(W_t) - target on the grid")
    lo_t, hi_t, h_lo = a, b, h_prev
    for _ in range(MAX_BISECTIONS):
        mid = (lo_t + hi_t) / 2
        w_mid, h_mid = h(mid)
        if abs(h_mid) <= tol:
            return w_mid
        if (h_mid > 0) == (h_lo > 0):
            lo_t, h_lo = mid, h_mid
        else:
            hi_t = mid
    raise TargetOutOfRange("bisection did not reach the tolerance")


@dataclass
class MeasureMatch:
    c1: Fraction
    c2: MeasureValue
    peeled: IntervalSet  # {f = 1}
    rest: IntervalSet  # {0 < f < 1}
    x0: Fraction | None
    x1: Fraction | None
    u: IntervalSet
    v: IntervalSet
    chain_holds: bool
    result: IntervalSet
    trace: list = field(default_factory=list)

    @property
    def achieved_m(self) -> Fraction:
        return self.result.lebesgue()

    @property
    def achieved_nu(self) -> MeasureValue:
        return self.result.nu()

    def nu_error(self) -> Decimal:
        return abs(self.achieved_nu.as_decimal() - self.c2.as_decimal())

    def to_dict(self):
        fmt = lambda x: None if x is None else format_rational(x)
        return {
            "c1": format_rational(self.c1),
            "c2": self.c2.to_dict(),
            "peeled": self.peeled.to_dict(),
            "x0": fmt(self.x0),
            "x1": fmt(self.x1),
            "U": self.u.to_dict(),
            "V": self.v.to_dict(),
            "inequality_chain_holds": self.chain_holds,
            "result": self.result.to_dict(),
            "achieved_lebesgue": format_rational(self.achieved_m),
            "achieved_nu": self.achieved_nu.to_dict(),
            "nu_error": f"{self.nu_error():.3e}",
            "bracket_trace": [[format_rational(t), f"{v:.15f}"] for t, v in self.trace],
        }


def measure_match(f: StepFunction, tol=DEFAULT_TOL) -> MeasureMatch:
    """Full construction with its intermediate objects; see :func:`find_set_with_measures`."""
    for lo, hi, val in f.cells():
        if not 0 <= val <= 1:
            raise ValueOutOfRange(f"f = {val} on ({lo}, {hi}] is outside [0, 1]")
    support = f.support()
    if support.touches_origin():
        raise ContainsOrigin("closure of supp f must avoid 0")
    c1, c2 = integrals(f)
    peeled = IntervalSet([(lo, hi) for lo, hi, val in f.cells() if val == 1])
    rest = support - peeled
    r1 = c1 - peeled.lebesgue()
    if r1 == 0:
        return MeasureMatch(c1, c2, peeled, rest, None, None, IntervalSet(), IntervalSet(), True, peeled)
    r2 = c2 - peeled.nu()
    # bathtub: mass r1 packed nearest 0 maximizes nu, packed farthest minimizes it
    x0 = _cut_from_below(rest, r1)
    x1 = _cut_from_above(rest, r1)
    v = rest & abs_window(0, x0)
    u = rest - abs_window(0, x1)
    target = r2.as_decimal()
    chain = _nu_dec(v) >= target - r2.bound() and _nu_dec(u) <= target + r2.bound()
    assert chain, "nu(U) <= residual <= nu(V) must hold for 0 < f < 1"
    trace = []
    w = interpolate_sets(u, v, target, tol, trace)
    return MeasureMatch(c1, c2, peeled, rest, x0, x1, u, v, chain, w | peeled, trace)


def find_set_with_measures(f: StepFunction, tol=DEFAULT_TOL) -> IntervalSet:
    """W ⊆ supp f with ``m(W) = ∫ f dm`` exactly and ``|ν(W) - ∫ f dν| <= tol``.

    Requires ``0 <= f <= 1`` and supp f bounded away from 0.
    """
    return measure_match(f, tol).result
