from fractions import Fraction

from hypothesis import settings, strategies as st

from wavetile.intervals import IntervalSet

settings.register_profile("default", deadline=None, max_examples=100)
settings.load_profile("default")


def rationals(lo=-8, hi=8, max_den=12):
    return st.builds(
        lambda n, d: Fraction(n, d),
        st.integers(lo * max_den, hi * max_den),
        st.integers(1, max_den),
    ).filter(lambda x: lo <= x <= hi)


@st.composite
def interval_sets(draw, lo=-6, hi=6, max_den=8, max_parts=4, avoid_origin=False):
    parts = []
    for _ in range(draw(st.integers(0, max_parts))):
        a = draw(rationals(lo, hi, max_den))
        w = draw(st.integers(1, 3 * max_den).map(lambda n: Fraction(n, max_den)))
        parts.append((a, a + w))
    e = IntervalSet(parts)
    if avoid_origin:
        e = e - IntervalSet([(Fraction(-1, 16), Fraction(1, 16))])
    return e


@st.composite
def origin_free_sets(draw, **kw):
    e = draw(interval_sets(avoid_origin=True, **kw))
    return e
