from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from wavetile.errors import EpsilonTooLarge, Undercovered
from wavetile.extraction import (
    balls, build_U_V, check_ip_conditions, check_speegle_conditions, greedy_dilation_subset,
    greedy_translation_subset, iter_greedy_translation, zigzag,
)
from wavetile.fixtures import X_POINTS, SHANNON
from wavetile.intervals import IntervalSet
from wavetile.tiling import W, tiling_verdict, translation_multiplicity

from conftest import rationals


def test_zigzag_order():
    it = zigzag()
    assert [next(it) for _ in range(5)] == [0, 1, -1, 2, -2]


def test_greedy_translation_examples():
    assert greedy_translation_subset(IntervalSet([(0, 2)])) == IntervalSet([(0, 1)])
    assert greedy_translation_subset(SHANNON | SHANNON.shift(5)) == SHANNON
    with pytest.raises(Undercovered) as info:
        greedy_translation_subset(IntervalSet([(0, F(1, 2))]))
    assert info.value.witness[2] == 0


def test_greedy_dilation_examples():
    e = SHANNON | IntervalSet([(1, 2)])
    assert greedy_dilation_subset(e) == SHANNON
    assert greedy_dilation_subset(SHANNON) == SHANNON
    with pytest.raises(Undercovered):
        greedy_dilation_subset(IntervalSet([(1, 2)]))


@st.composite
def cut_points(draw, lo, hi, n_max=3):
    inner = draw(st.lists(rationals(0, 1, 12), max_size=n_max))
    pts = sorted({lo + (hi - lo) * t for t in inner if 0 < t < 1} | {lo, hi})
    return list(zip(pts, pts[1:]))


@st.composite
def jittered_translation_tiling(draw):
    """Cut (a, a+1] into pieces and push each by a random integer."""
    a = draw(rationals(-2, 2, 8))
    pieces = draw(cut_points(a, a + 1))
    return IntervalSet((lo + k, hi + k) for (lo, hi), k in
                       zip(pieces, draw(st.lists(st.integers(-3, 3), min_size=len(pieces), max_size=len(pieces)))))


@st.composite
def jittered_dilation_tiling(draw):
    """Cut W into pieces and dilate each by a random power of 2."""
    pieces = draw(cut_points(-1, F(-1, 2))) + draw(cut_points(F(1, 2), 1))
    js = draw(st.lists(st.integers(-3, 3), min_size=len(pieces), max_size=len(pieces)))
    return IntervalSet((lo * F(2) ** j, hi * F(2) ** j) for (lo, hi), j in zip(pieces, js))


def _union(sets):
    out = IntervalSet()
    for s in sets:
        out = out | s
    return out


@settings(max_examples=100)
@given(st.lists(jittered_translation_tiling(), min_size=2, max_size=4))
def test_greedy_translation_on_random_covers(tilings):
    e = _union(tilings)
    stages = list(iter_greedy_translation(e))
    for g in stages:  # loop invariant: never overlaps itself
        assert translation_multiplicity(g).max() <= 1
    g = stages[-1]
    assert g.issubset(e)
    assert tiling_verdict(g, "translation").tiles


@settings(max_examples=100)
@given(st.lists(jittered_dilation_tiling(), min_size=2, max_size=4))
def test_greedy_dilation_on_random_covers(tilings):
    e = _union(tilings)
    g = greedy_dilation_subset(e)
    assert g.issubset(e)
    assert tiling_verdict(g, "dilation").tiles


def test_speegle_examples():
    check = check_speegle_conditions(X_POINTS)
    assert check.ok and check.delta == F(1, 128)
    assert not check_speegle_conditions([F(1, 3), F(2, 3)])
    assert not check_speegle_conditions([F(1, 2), F(3, 2)])
    assert check_speegle_conditions([F(1, 5)]).delta == F(1, 16)


def test_speegle_reason_mentions_ratio():
    check = check_speegle_conditions([F(1, 3), F(2, 3)])
    assert any("2 * 1/3" in r for r in check.reasons)


@pytest.mark.parametrize("x,eps", [(X_POINTS, F(1, 200)), ([F(1, 5)], F(1, 100))])
def test_build_uv_passes_all_conditions(x, eps):
    t = build_U_V(x, eps)
    assert t.f == balls(x, eps)
    assert check_ip_conditions(t.f, t.u, t.v).all_hold


def test_eps_must_be_below_delta():
    delta = check_speegle_conditions(X_POINTS).delta
    with pytest.raises(EpsilonTooLarge):
        build_U_V(X_POINTS, delta)


def test_ip_examples():
    assert check_ip_conditions(SHANNON, SHANNON, SHANNON).all_hold
    res = check_ip_conditions(IntervalSet([(0, 2)]), SHANNON, SHANNON)
    assert not res.f_packs_translations


@settings(max_examples=15)
@given(st.lists(rationals(-6, 6, 13), min_size=1, max_size=3, unique=True))
def test_build_uv_on_random_admissible_points(x):
    check = check_speegle_conditions(x) if 0 not in x else None
    if not check:
        return
    t = build_U_V(x, check.delta / 2)
    assert check_ip_conditions(t.f, t.u, t.v).all_hold
