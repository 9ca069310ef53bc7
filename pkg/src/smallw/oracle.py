"""Arbitrary-precision reference values of ``w(z)``.

Two independent routes:

* :func:`reference_w_series` sums the Maclaurin series of ``erf(-iz)`` in
  fixed-point integer arithmetic and forms ``w = exp(-z^2) (1 - erf(-iz))``.
* :func:`reference_w_quadrature` integrates
  ``(1/sqrt(pi)) int_0^T exp(-t^2/4 - yt + ixt) dt`` with mpmath's adaptive
  quadrature (``y > 0`` only).

Both report the number of decimal digits they certify for each part, and
retry at higher precision until the request is met.  No global precision
state is touched: the series uses explicit-precision ``mpmath.libmp``
primitives and the quadrature builds a private context per call.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import mpmath
from mpmath import libmp

from .errors import InvalidArgument, OutOfRange, PrecisionExhausted
from .values import ComplexPoint

__all__ = [
    "OracleValue",
    "reference_w_series",
    "reference_w_quadrature",
    "reference_erf_complex",
    "reference_dawson",
    "MIN_DIGITS",
    "MAX_DIGITS",
    "MAX_ABS_Z",
]

MIN_DIGITS = 25
MAX_DIGITS = 200
MAX_ABS_Z = 30.0

_LN10 = math.log(10.0)
_LOG2_10 = math.log2(10.0)
_RETRIES = 4
_RND = libmp.round_nearest


@dataclass(frozen=True)
class OracleValue:
    """Reference ``K + iL`` with the digits certified for both parts.

    ``k`` and ``l`` are exact ``mpmath.mpf`` values; arithmetic on them
    follows whatever precision the caller's mpmath context is set to.
    """

    k: mpmath.mpf
    l: mpmath.mpf
    digits: int

    @property
    def k_float(self) -> float:
        return float(self.k)

    @property
    def l_float(self) -> float:
        return float(self.l)

    def as_complex(self) -> complex:
        return complex(float(self.k), float(self.l))


def _check_digits(target_digits: int) -> int:
    if int(target_digits) != target_digits or not (
        MIN_DIGITS <= target_digits <= MAX_DIGITS
    ):
        raise InvalidArgument(
            f"target_digits must be an integer in [{MIN_DIGITS}, {MAX_DIGITS}], "
            f"got {target_digits!r}"
        )
    return int(target_digits)


def _check_point(x: float, y: float) -> None:
    if not (math.isfinite(x) and math.isfinite(y)):
        raise InvalidArgument(f"non-finite argument ({x!r}, {y!r})")
    if math.hypot(x, y) > MAX_ABS_Z:
        raise PrecisionExhausted(
            f"|z| = {math.hypot(x, y):.3g} exceeds the series oracle limit {MAX_ABS_Z}"
        )


def _erf_sum_fixed(qr: int, qi: int, frac_bits: int, q_norm: float):
    """Sum ``q - q^3/3 + q^5/10 - ...`` in fixed point with ``frac_bits`` bits.

    ``-q^2`` is kept exact (``2 * frac_bits`` fractional bits).  Returns
    ``(sr, si, n_terms, peak_bits)`` where ``peak_bits`` is the bit length of
    the largest term; truncation errors committed on small early terms are
    amplified by the growth up to that peak.
    """
    b2 = 2 * frac_bits
    mr = qi * qi - qr * qr
    mi = -2 * qr * qi
    ar, ai = qr, qi
    sr, si = qr, qi
    peak = max(abs(ar), abs(ai)).bit_length()
    n = 0
    n_min = 2.0 * q_norm + 2.0
    # Terms grow until n ~ |q|^2, so the peak is settled once n passes n_min.
    while n <= n_min:
        n += 1
        ar, ai = ((ar * mr - ai * mi) >> b2) // n, ((ar * mi + ai * mr) >> b2) // n
        d = 2 * n + 1
        sr += ar // d
        si += ai // d
        peak = max(peak, ar.bit_length(), ai.bit_length())
    while ar > 4 or ar < -4 or ai > 4 or ai < -4:
        n += 1
        ar, ai = ((ar * mr - ai * mi) >> b2) // n, ((ar * mi + ai * mr) >> b2) // n
        d = 2 * n + 1
        sr += ar // d
        si += ai // d
    return sr, si, n, peak


def _sum_error_log10(n: int, peak_bits: int, frac_bits: int) -> float:
    """log10 of the absolute error bound of :func:`_erf_sum_fixed`."""
    growth = max(0, peak_bits - frac_bits)
    return math.log10(4 * n + 16) + (growth - frac_bits) / _LOG2_10


def _small_scale(v: float) -> float:
    """Extra fractional digits so that a value of size ``|v| < 1`` keeps its
    relative precision in fixed point."""
    v = abs(v)
    return max(0.0, -math.log10(v)) if v != 0.0 else 0.0


def _to_fixed(v: float, bits: int) -> int:
    return libmp.to_fixed(libmp.from_float(v), bits)


def _log10_raw(v) -> float:
    """log10 |v| for a raw mpf; -inf for zero."""
    if v == libmp.fzero:
        return -math.inf
    man, exp, bc = v[1], v[2], v[3]
    if bc > 60:
        man, exp = man >> (bc - 53), exp + bc - 53
    return (math.log2(man) + exp) / _LOG2_10


def _series_w_raw(x: float, y: float, frac_bits: int):
    """One pass of the series route.  Returns raw (K, L) and log10 of the
    absolute error bound on ``1 - erf(-iz)`` and of its magnitude."""
    b = frac_bits
    prec = b + 64
    # q = -iz = y - ix
    qr = _to_fixed(y, b)
    qi = _to_fixed(-x, b)
    sr, si, n, peak = _erf_sum_fixed(qr, qi, b, x * x + y * y)

    two_over_sqrtpi = libmp.mpf_div(
        libmp.from_int(2), libmp.mpf_sqrt(libmp.mpf_pi(prec), prec), prec
    )
    er = libmp.mpf_mul(libmp.from_man_exp(sr, -b), two_over_sqrtpi, prec)
    ei = libmp.mpf_mul(libmp.from_man_exp(si, -b), two_over_sqrtpi, prec)
    om_r = libmp.mpf_sub(libmp.fone, er, prec)
    om_i = libmp.mpf_neg(ei)

    fx, fy = libmp.from_float(x), libmp.from_float(y)
    mag = libmp.mpf_exp(
        libmp.mpf_mul(libmp.mpf_sub(fy, fx, prec), libmp.mpf_add(fy, fx, prec), prec),
        prec,
    )
    c, s = libmp.mpf_cos_sin(libmp.mpf_shift(libmp.mpf_mul(fx, fy, prec), 1), prec)
    # exp(-z^2) = mag (c - i s)
    er2 = libmp.mpf_mul(mag, c, prec)
    ei2 = libmp.mpf_neg(libmp.mpf_mul(mag, s, prec))
    k = libmp.mpf_sub(libmp.mpf_mul(er2, om_r, prec), libmp.mpf_mul(ei2, om_i, prec), prec)
    l = libmp.mpf_add(libmp.mpf_mul(er2, om_i, prec), libmp.mpf_mul(ei2, om_r, prec), prec)

    err_log = _sum_error_log10(n, peak, b) + math.log10(2.0 / math.sqrt(math.pi))
    om_log = max(_log10_raw(om_r), _log10_raw(om_i))
    return k, l, err_log, om_log


def _component_digits(k, l, err_log: float, om_log: float) -> int:
    rel_log = err_log - om_log
    lk, ll = _log10_raw(k), _log10_raw(l)
    w_log = max(lk, ll)
    digits = math.inf
    for part in (lk, ll):
        if part == -math.inf:
            continue
        digits = min(digits, -rel_log - (w_log - part))
    return int(math.floor(digits - 1.0)) if math.isfinite(digits) else 10**6


def reference_w_series(p: ComplexPoint, target_digits: int = 30) -> OracleValue:
    """Reference ``w(z)`` from the Maclaurin series of ``erf(-iz)``.

    Works on any ``|z| <= 30``.  Terms of the series grow like
    ``exp(x^2)``; the sum keeps ``target + 10`` decimal digits below that
    scale (``target + 10 + x^2/ln 10`` significant digits overall), more when
    ``1 - erf(-iz)`` is exponentially small, and the precision is raised
    until both parts carry ``target_digits`` certified digits.
    """
    target = _check_digits(target_digits)
    x, y = float(p.x), float(p.y)
    _check_point(x, y)
    r2 = x * x + y * y
    # Fixed point: the float rule "target + 10 + x^2/ln10 significant digits"
    # leaves target + 10 digits after the largest term (~exp(x^2)), which is
    # the fractional precision used here; exponentially small 1 - erf(-iz)
    # (large y) needs its magnitude on top.
    om_floor = (x * x - y * y) / _LN10 - math.log10(2.0 + 2.0 * math.sqrt(r2))
    # The error bound carries a factor 4n + 16; the sum stops near n = e r^2.
    n_est = math.e * r2 + 10.0
    digits = target + 10 + max(0.0, -om_floor) + _small_scale(x) + math.log10(4 * n_est + 16)
    bits = int(math.ceil(digits * _LOG2_10)) + 16
    for _ in range(_RETRIES):
        k, l, err_log, om_log = _series_w_raw(x, y, bits)
        got = _component_digits(k, l, err_log, om_log)
        if got >= target:
            return OracleValue(mpmath.mp.make_mpf(k), mpmath.mp.make_mpf(l), got)
        bits += int(math.ceil((target - got + 10) * _LOG2_10))
    raise PrecisionExhausted(
        f"series oracle reached {got} < {target} digits at ({x!r}, {y!r})"
    )


def reference_erf_complex(q: complex, target_digits: int = 30) -> mpmath.mpc:
    """``erf(q)`` from its Maclaurin series, for ``|q| <= 30``.

    The result is an exact ``mpmath.mpc`` carrying at least
    ``target_digits`` correct digits relative to ``|erf(q)|``.
    """
    target = _check_digits(target_digits)
    q = complex(q)
    _check_point(q.real, q.imag)
    if q == 0:
        return mpmath.mp.make_mpc((libmp.fzero, libmp.fzero))
    r2 = abs(q) ** 2
    bits = int(math.ceil((target + 10 + r2 / _LN10 + _small_scale(abs(q))) * _LOG2_10)) + 16
    for _ in range(_RETRIES):
        prec = bits + 64
        sr, si, n, peak = _erf_sum_fixed(
            _to_fixed(q.real, bits), _to_fixed(q.imag, bits), bits, r2
        )
        scale = libmp.mpf_div(
            libmp.from_int(2), libmp.mpf_sqrt(libmp.mpf_pi(prec), prec), prec
        )
        er = libmp.mpf_mul(libmp.from_man_exp(sr, -bits), scale, prec)
        ei = libmp.mpf_mul(libmp.from_man_exp(si, -bits), scale, prec)
        err_log = _sum_error_log10(n, peak, bits)
        got = -err_log + max(_log10_raw(er), _log10_raw(ei)) - 1.0
        if got >= target:
            return mpmath.mp.make_mpc((er, ei))
        bits += int(math.ceil((target - got + 10) * _LOG2_10))
    raise PrecisionExhausted(f"erf series reached {got:.1f} < {target} digits at {q!r}")


def reference_dawson(x: float, target_digits: int = 30) -> mpmath.mpf:
    """Dawson's integral as ``(sqrt(pi)/2) exp(-x^2) erfi(x)``, ``|x| <= 30``.

    ``erfi(x) = -i erf(ix)``; every term of that series has the same sign,
    so the sum is free of cancellation.
    """
    target = _check_digits(target_digits)
    x = float(x)
    _check_point(x, 0.0)
    if x == 0.0:
        return mpmath.mp.make_mpf(libmp.fzero)
    bits = int(math.ceil((target + 10 + _small_scale(x)) * _LOG2_10)) + 16
    prec = bits + 64
    _, si, _, _ = _erf_sum_fixed(0, _to_fixed(x, bits), bits, x * x)
    # (sqrt(pi)/2) * (2/sqrt(pi)) * sum = sum; F = exp(-x^2) * Im(sum)
    fx = libmp.from_float(x)
    e = libmp.mpf_exp(libmp.mpf_neg(libmp.mpf_mul(fx, fx, prec)), prec)
    return mpmath.mp.make_mpf(libmp.mpf_mul(e, libmp.from_man_exp(si, -bits), prec))


def reference_w_quadrature(p: ComplexPoint, target_digits: int = 30) -> OracleValue:
    """Reference ``w`` by quadrature of its Fourier-type integral, ``y > 0``.

    The integral is cut at ``T`` with ``exp(-T^2/4)`` below the requested
    accuracy of the smaller part and split into pieces no longer than one
    half-period of ``exp(ixt)``.
    """
    target = _check_digits(target_digits)
    x, y = float(p.x), float(p.y)
    if not (math.isfinite(x) and math.isfinite(y)):
        raise InvalidArgument(f"non-finite argument ({x!r}, {y!r})")
    if not y > 0.0:
        raise OutOfRange(f"quadrature oracle needs y > 0, got {y!r}")

    # rough sizes of the parts, only used to budget precision
    r2 = 1.0 + x * x + y * y
    k_size = max(math.exp(-x * x) if x < 26 else 0.0, y / (math.sqrt(math.pi) * r2))
    l_size = abs(x) / (math.sqrt(math.pi) * r2) if x != 0.0 else 1.0
    extra = max(0.0, -math.log10(min(k_size, l_size)))

    for _ in range(_RETRIES):
        ctx = mpmath.MPContext()
        ctx.dps = int(target + 15 + extra)
        cut = 2.0 * math.sqrt((target + 8 + extra) * _LN10)
        pieces = int(math.ceil(cut * max(1.0, abs(x) / math.pi))) + 1
        xm, ym = ctx.mpf(x), ctx.mpf(y)

        def integrand(t, xm=xm, ym=ym, ctx=ctx):
            return ctx.exp(-t * t / 4 - ym * t) * ctx.expj(xm * t)

        val, err = ctx.quad(integrand, ctx.linspace(0, cut, pieces + 1), error=True)
        scale = 1 / ctx.sqrt(ctx.pi)
        val *= scale
        err = max(ctx.mpf(err) * scale, ctx.mpf(10) ** (-ctx.dps + 2))
        got = math.inf
        for part in (val.real, val.imag):
            if part == 0:
                continue
            got = min(got, float(ctx.log10(abs(part) / err)))
        got = int(math.floor(got)) if math.isfinite(got) else ctx.dps
        if got >= target:
            return OracleValue(
                mpmath.mp.make_mpf(val.real._mpf_), mpmath.mp.make_mpf(val.imag._mpf_), got
            )
        extra += target - got + 5
    raise PrecisionExhausted(
        f"quadrature oracle reached {got} < {target} digits at ({x!r}, {y!r})"
    )
