import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from smallw.errors import InvalidArgument, OutOfRange
from smallw.oracle import reference_dawson
from smallw.realfun import (
    ERF_SMALL_MAX,
    dawson,
    dawson_defect,
    erf_real_small,
    erf_real_small_tail,
)

SQRT_PI = math.sqrt(math.pi)
finite_x = st.floats(min_value=-1e6, max_value=1e6, allow_nan=False)


class TestDawsonExamples:
    def test_zero(self):
        assert dawson(0.0) == 0.0

    def test_tiny(self):
        x = 1e-8
        assert abs(dawson(x) - (x - 2 * x**3 / 3)) < 1e-23

    def test_one(self):
        assert dawson(1.0) == pytest.approx(0.538079506912768, rel=1e-14)

    def test_minus_one(self):
        assert dawson(-1.0) == pytest.approx(-0.538079506912768, rel=1e-14)

    @pytest.mark.parametrize("bad", [math.nan, math.inf, -math.inf])
    def test_non_finite(self, bad):
        with pytest.raises(InvalidArgument):
            dawson(bad)


@pytest.mark.parametrize("x", [1e-300, 1e-5, 0.3, 0.49999, 0.5, 0.924, 3.0, 6.99, 7.0, 12.5, 15.0, 30.0])
def test_dawson_matches_oracle(x):
    ref = float(reference_dawson(x, 30))
    assert abs(dawson(x) - ref) <= 5e-14 * ref


@pytest.mark.parametrize("x", [0.1, 0.7, 0.9241, 2.0, 6.9, 7.0, 10.0, 15.0, 30.0])
def test_defect_matches_oracle(x, hp):
    f = hp.mpf(reference_dawson(x, 40))
    ref = float(1 - 2 * hp.mpf(x) * f)
    assert abs(dawson_defect(x) - ref) <= 1e-13 * abs(ref) + 1e-16


@given(finite_x)
def test_oddness_exact(x):
    assert dawson(-x) == -dawson(x)


@given(st.floats(min_value=1e-300, max_value=1e6))
def test_bound_and_sign(x):
    f = dawson(x)
    assert 0.0 < f < 0.55


@given(st.floats(min_value=5.0, max_value=1e6))
def test_asymptotic_bound(x):
    assert abs(dawson(x) - 0.5 / x) < x**-3


@pytest.mark.parametrize("x", [0.5, 1.0, 2.0, 5.0, 10.0])
def test_ode_residual(x):
    h = 1e-5
    deriv = (dawson(x + h) - dawson(x - h)) / (2 * h)
    assert abs(deriv - (1.0 - 2.0 * x * dawson(x))) <= 1e-6


def test_branch_seams_continuous():
    for seam in (0.5, 7.0):
        lo, hi = dawson(math.nextafter(seam, 0)), dawson(seam)
        assert abs(lo - hi) <= 1e-14 * hi


class TestErfRealSmall:
    def test_zero(self):
        assert erf_real_small(0.0) == 0.0

    def test_leading_term(self):
        assert erf_real_small(1e-6) == pytest.approx(2e-6 / SQRT_PI, rel=1e-12)

    def test_upper_end(self):
        assert erf_real_small(1e-3) == pytest.approx(0.0011283787909692363, rel=1e-15)

    @pytest.mark.parametrize("y", [-1e-9, 1.0001e-3, 1.0])
    def test_out_of_range(self, y):
        with pytest.raises(OutOfRange):
            erf_real_small(y)

    def test_non_finite(self):
        with pytest.raises(InvalidArgument):
            erf_real_small(math.nan)

    @pytest.mark.parametrize("y", [1e-300, 1e-12, 3e-7, 1e-4, 5e-4, ERF_SMALL_MAX])
    def test_against_math_erf(self, y, hp):
        ref = float(hp.erf(hp.mpf(y)))
        assert abs(erf_real_small(y) - ref) <= 1e-15 * ref

    def test_slope_and_monotone(self):
        ys = np.linspace(0.0, ERF_SMALL_MAX, 2001)
        vals = [erf_real_small(float(y)) for y in ys]
        assert all(b > a for a, b in zip(vals, vals[1:]))
        assert erf_real_small(1e-15) / 1e-15 == pytest.approx(2 / SQRT_PI, rel=1e-15)

    def test_tail_is_the_difference(self, hp):
        y = 1e-3
        ref = float(hp.erf(hp.mpf(y)) - 2 * hp.mpf(y) / hp.sqrt(hp.pi))
        assert erf_real_small_tail(y) == pytest.approx(ref, rel=1e-12)
