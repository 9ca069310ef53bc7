import math
from concurrent.futures import ThreadPoolExecutor

import mpmath
import numpy as np
import pytest

from conftest import agree_digits
from smallw.errors import InvalidArgument, OutOfRange, PrecisionExhausted
from smallw.oracle import (
    OracleValue,
    reference_dawson,
    reference_erf_complex,
    reference_w_quadrature,
    reference_w_series,
)
from smallw.realfun import dawson, erf_real_small
from smallw.values import ComplexPoint


def P(x, y):
    return ComplexPoint(x, y)


@pytest.fixture(scope="module")
def hp100():
    ctx = mpmath.MPContext()
    ctx.dps = 100
    return ctx


def w_mp(ctx, x, y):
    z = ctx.mpc(x, y)
    return ctx.exp(-z * z) * ctx.erfc(-1j * z)


class TestSeries:
    def test_origin(self):
        v = reference_w_series(P(0.0, 0.0), 30)
        assert v.k == 1 and v.l == 0 and v.digits >= 25

    def test_imaginary_unit(self, hp100):
        v = reference_w_series(P(0.0, 1.0), 30)
        assert v.l == 0
        assert agree_digits(v.k, hp100.e * hp100.erfc(1)) >= 30
        assert float(v.k) == pytest.approx(0.42758357615580700, rel=1e-16)

    def test_real_axis_matches_dawson(self):
        v = reference_w_series(P(1.0, 0.0), 30)
        assert agree_digits(v.k, mpmath.exp(-1)) >= 14
        assert agree_digits(v.l, 2 * dawson(1.0) / math.sqrt(math.pi)) >= 14

    @pytest.mark.parametrize(
        "x,y",
        [(15.0, 1e-12), (15.0, 1e-6), (7.3, 3e-9), (1e-4, 1e-12), (0.0, 30.0), (21.0, 20.0), (-4.0, -2.5), (3.0, -1e-8)],
    )
    def test_claimed_digits_are_honest(self, x, y, hp100):
        v = reference_w_series(P(x, y), 30)
        ref = w_mp(hp100, x, y)
        assert v.digits >= 30
        assert agree_digits(v.k, ref.real) >= v.digits
        if ref.imag != 0:
            assert agree_digits(v.l, ref.imag) >= v.digits

    @pytest.mark.parametrize("digits", [24, 201, 30.5])
    def test_bad_digits(self, digits):
        with pytest.raises(InvalidArgument):
            reference_w_series(P(1.0, 1e-7), digits)

    def test_radius_limit(self):
        with pytest.raises(PrecisionExhausted):
            reference_w_series(P(25.0, 25.0), 30)

    def test_value_type(self):
        v = reference_w_series(P(2.0, 1e-7), 40)
        assert isinstance(v, OracleValue)
        assert isinstance(v.k, mpmath.mpf)
        assert v.as_complex() == complex(v.k_float, v.l_float)

    def test_high_digits(self, hp100):
        v = reference_w_series(P(15.0, 1e-6), 90)
        assert v.digits >= 90
        assert agree_digits(v.k, w_mp(hp100, 15.0, 1e-6).real) >= 90


class TestQuadrature:
    def test_imaginary_unit(self):
        a = reference_w_quadrature(P(0.0, 1.0), 30)
        b = reference_w_series(P(0.0, 1.0), 30)
        assert agree_digits(a.k, b.k) >= 25

    def test_small_y(self):
        a = reference_w_quadrature(P(1.0, 1e-6), 30)
        b = reference_w_series(P(1.0, 1e-6), 30)
        assert agree_digits(a.k, b.k) >= 25 and agree_digits(a.l, b.l) >= 25

    def test_large_y_asymptotics(self):
        v = reference_w_quadrature(P(0.0, 10.0), 25)
        approx = 1 / (10 * math.sqrt(math.pi)) * (1 - 1 / 200)
        assert float(v.k) == pytest.approx(approx, rel=1e-3)
        assert agree_digits(v.k, reference_w_series(P(0.0, 10.0), 30).k) >= 25

    @pytest.mark.parametrize("y", [0.0, -1e-7])
    def test_needs_positive_y(self, y):
        with pytest.raises(OutOfRange):
            reference_w_quadrature(P(1.0, y), 30)


class TestErfComplex:
    def test_zero(self):
        assert reference_erf_complex(0j, 30) == 0

    def test_small_real(self):
        v = reference_erf_complex(1e-6, 30)
        assert v.imag == 0
        assert agree_digits(v.real, erf_real_small(1e-6)) >= 14

    def test_imaginary_unit(self):
        v = reference_erf_complex(1j, 30)
        erfi = 2 / math.sqrt(math.pi) * math.e * dawson(1.0)
        assert v.real == 0
        assert agree_digits(v.imag, erfi) >= 14

    @pytest.mark.parametrize("q", [complex(-1e-7, 2.0), complex(3.0, -4.0), complex(0.0, 14.9), 1e-300j])
    def test_against_mpmath(self, q, hp100):
        v = reference_erf_complex(q, 40)
        ref = hp100.erf(hp100.mpc(q.real, q.imag))
        assert abs(hp100.mpc(v) - ref) <= hp100.mpf(10) ** -40 * abs(ref)


@pytest.mark.parametrize("x", [1e-300, 1e-9, 0.5, 1.0, 5.0, 15.0, 30.0, -2.0])
def test_reference_dawson(x, hp100):
    xm = hp100.mpf(x)
    ref = hp100.sqrt(hp100.pi) / 2 * hp100.exp(-xm * xm) * hp100.erfi(xm)
    assert agree_digits(reference_dawson(x, 40), ref) >= 40


def test_dual_oracle_agreement_sample():
    rng = np.random.default_rng([21, 0])
    for x, y in zip(rng.uniform(1e-4, 15, 8), 10 ** rng.uniform(-12, -6, 8)):
        p = P(float(x), float(y))
        a, b = reference_w_series(p, 40), reference_w_quadrature(p, 40)
        assert agree_digits(a.k, b.k) >= 30 and agree_digits(a.l, b.l) >= 30


def test_precision_monotonicity():
    rng = np.random.default_rng([22, 0])
    for x, y in zip(rng.uniform(1e-4, 15, 20), 10 ** rng.uniform(-12, -6, 20)):
        p = P(float(x), float(y))
        lo, hi = reference_w_series(p, 30), reference_w_series(p, 60)
        assert agree_digits(lo.k, hi.k) >= lo.digits
        assert agree_digits(lo.l, hi.l) >= lo.digits


def test_high_precision_reflection(hp100):
    rng = np.random.default_rng([23, 0])
    for x, y in zip(rng.uniform(-15, 15, 20), rng.uniform(-10, 10, 20)):
        x, y = float(x), float(y)
        if math.hypot(x, y) > 30:
            continue
        a, b = reference_w_series(P(x, y), 40), reference_w_series(P(-x, -y), 40)
        z = hp100.mpc(x, y)
        two_e = 2 * hp100.exp(-z * z)
        s = hp100.mpc(a.k, a.l) + hp100.mpc(b.k, b.l)
        digits = min(a.digits, b.digits)
        assert abs(s - two_e) <= hp100.mpf(10) ** (-(digits - 3)) * max(abs(two_e), abs(hp100.mpc(a.k, a.l)))


def test_no_global_precision_side_effects():
    before = mpmath.mp.prec
    reference_w_series(P(3.0, 1e-8), 50)
    reference_w_quadrature(P(3.0, 1e-8), 30)
    reference_erf_complex(1 + 1j, 40)
    assert mpmath.mp.prec == before


def test_thread_safety():
    pts = [P(0.1 * i + 0.05, 1e-8) for i in range(40)]
    serial = [reference_w_series(p, 40) for p in pts]
    with ThreadPoolExecutor(4) as pool:
        threaded = list(pool.map(lambda p: reference_w_series(p, 40), pts))
    assert serial == threaded
