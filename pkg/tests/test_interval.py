import math
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from ladder_asym import IntervalValue

finite = st.floats(-1e6, 1e6, allow_nan=False)


def test_empty_interval_rejected():
    with pytest.raises(ValueError):
        IntervalValue(1.0, 0.0)


def test_exact_operations_stay_tight():
    a = IntervalValue.point(0.5)
    assert (a + 0.25) == IntervalValue(0.75, 0.75)
    assert (a * 4.0) == IntervalValue(2.0, 2.0)
    assert IntervalValue.point(0.0).reflect() == IntervalValue(1.0, 1.0)


@given(finite, finite, finite, finite)
def test_sum_and_product_contain_exact(a, b, c, d):
    x = IntervalValue(min(a, b), max(a, b))
    y = IntervalValue(min(c, d), max(c, d))
    s = x + y
    p = x * y
    for u in (x.lo, x.hi):
        for v in (y.lo, y.hi):
            exact_s = Fraction(u) + Fraction(v)
            exact_p = Fraction(u) * Fraction(v)
            assert Fraction(s.lo) <= exact_s <= Fraction(s.hi)
            assert Fraction(p.lo) <= exact_p <= Fraction(p.hi)


@given(st.floats(-700, 700))
def test_exp_contains_libm_value(x):
    box = IntervalValue.point(x).exp()
    assert box.lo <= math.exp(x) <= box.hi
    assert box.lo >= 0.0


@given(finite, finite, st.floats(1e-3, 1e3))
def test_division_by_positive_scalar(a, b, q):
    x = IntervalValue(min(a, b), max(a, b))
    y = x / q
    assert Fraction(y.lo) <= Fraction(x.lo) / Fraction(q)
    assert Fraction(x.hi) / Fraction(q) <= Fraction(y.hi)
