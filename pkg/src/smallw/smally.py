"""Small-y approximations of the Faddeeva function built on Dawson's integral.

Every formula here is a choice of approximation ``S`` for the short boundary
integral in

    w(x, y) = exp(y^2 - 2ixy)/sqrt(pi) * (exp(-x^2) sqrt(pi) + 2i F(x) - S),
    S = integral_0^{2y} exp(-u^2/4) exp(ixu) du.

Evaluation never forms ``exp(x**2)``.  With ``theta = 2xy``,
``c = cos(theta)``, ``s = sin(theta)`` and ``S`` split as
``S = S0 + R`` where ``S0 = (exp(i theta) - 1)/(ix)`` is the one-term
(basic) integral, the real and imaginary parts are

    K = exp(y^2) * (c exp(-x^2) - (2y sinc(theta) G(x) + c Re R + s Im R)/sqrt(pi))
    L = exp(y^2) * (-s exp(-x^2)
                    + (2cF(x) + (1 - c)/x - c Im R + s Re R)/sqrt(pi))

with ``G(x) = 1 - 2xF(x)`` from :func:`smallw.realfun.dawson_defect`.
``(1 - c)/x`` is evaluated as ``2y sin(theta/2) sinc(theta/2)``.  These are
exact rearrangements; they remove both the ``exp(x^2)`` overflow and the
``1 - exp(2ixy)`` / ``1/x - 2F`` cancellations.
"""

from __future__ import annotations

import cmath
import math

from .errors import DivisionHazard, InvalidArgument
from .realfun import (
    ERF_SMALL_MAX,
    dawson,
    dawson_defect,
    erf_real_small_tail,
)
from .values import ComplexPoint, FunctionValue

__all__ = [
    "second_integral_midpoint",
    "second_integral_trapezoid",
    "second_integral_erf_form",
    "eq5_compose",
    "basic_eq6",
    "main_eq7",
    "supplement_eq8",
    "maclaurin_a4",
    "maclaurin_a5",
    "b2_eq",
    "X_SWITCH",
    "Y_MAX",
    "X_MAX",
]

SQRT_PI = math.sqrt(math.pi)
_TWO_OVER_SQRT_PI = 2.0 / SQRT_PI

X_SWITCH = 1e-4
Y_MAX = 1e-6
X_MAX = 15.0


def _sinc(t: float) -> float:
    if abs(t) < 1e-4:
        t2 = t * t
        return 1.0 - t2 / 6.0 * (1.0 - t2 / 20.0)
    return math.sin(t) / t


def _basic_integral(x: float, y: float) -> complex:
    """``(exp(2ixy) - 1)/(ix)`` written without the 1/x factor."""
    theta = 2.0 * x * y
    half = 0.5 * theta
    return complex(2.0 * y * _sinc(theta), 2.0 * y * math.sin(half) * _sinc(half))


def _quadratic_moment(theta: float) -> complex:
    """``theta**-3 * integral_0^theta v^2 exp(iv) dv`` (1/3 at theta = 0)."""
    if abs(theta) < 1.0:
        total = 0j
        term = 1 + 0j
        k = 0
        while True:
            piece = term / (k + 3)
            total += piece
            if abs(piece) < 1e-18:
                return total
            k += 1
            term *= 1j * theta / k
    e = cmath.exp(1j * theta)
    return (e * complex(2.0 * theta, 2.0 - theta * theta) - 2j) / theta**3


def _compose(x: float, y: float, r: complex) -> FunctionValue:
    theta = 2.0 * x * y
    c = math.cos(theta)
    s = math.sin(theta)
    half = 0.5 * theta
    ey2 = math.exp(y * y)
    ex2 = math.exp(-x * x)
    f = dawson(x)
    g = dawson_defect(x)
    s_over_x = 2.0 * y * _sinc(theta)
    one_minus_c_over_x = 2.0 * y * math.sin(half) * _sinc(half)
    k = ey2 * (c * ex2 - (s_over_x * g + c * r.real + s * r.imag) / SQRT_PI)
    l = ey2 * (
        -s * ex2
        + (2.0 * c * f + one_minus_c_over_x - c * r.imag + s * r.real) / SQRT_PI
    )
    return FunctionValue(k, l)


def _require_positive_x(p: ComplexPoint, name: str) -> None:
    if not p.x > 0.0:
        raise DivisionHazard(
            f"{name} divides by x; x = {p.x!r} must be routed to supplement_eq8"
        )


def second_integral_midpoint(p: ComplexPoint) -> complex:
    """Midpoint-rule estimate ``2y exp(-y^2/4) exp(ixy)`` of the boundary integral."""
    x, y = p.x, p.y
    return 2.0 * y * math.exp(-0.25 * y * y) * cmath.exp(1j * x * y)


def second_integral_trapezoid(p: ComplexPoint) -> complex:
    """Trapezoidal estimate ``y (1 + exp(-y^2) exp(2ixy))``."""
    x, y = p.x, p.y
    return y * (1.0 + math.exp(-y * y) * cmath.exp(2j * x * y))


def second_integral_erf_form(p: ComplexPoint, ref_erf, digits: int | None = None):
    """Boundary integral as ``sqrt(pi) exp(-x^2) (erf(ix) - erf(ix - y))``.

    ``ref_erf`` is ``erf(ix - y)`` supplied by the caller.  ``erf(ix)`` is
    rebuilt from Dawson's integral, ``erf(ix) = 2i/sqrt(pi) exp(x^2) F(x)``,
    so the result is ``2iF(x) - sqrt(pi) exp(-x^2) erf(ix - y)``.

    A Python ``complex`` selects double precision with
    :func:`smallw.realfun.dawson`; that path cannot resolve the O(y) result
    below about 1e-16 * F(x) absolute.  An ``mpmath.mpc`` selects high
    precision: the arithmetic runs in a private context carrying ``digits``
    significant digits (default 50) and the Dawson value comes from
    :mod:`smallw.oracle`.  The result loses about ``log10(1/y)`` digits to
    cancellation, so ``ref_erf`` should carry that many extra.
    """
    x = p.x
    if isinstance(ref_erf, complex | float | int):
        ref_erf = complex(ref_erf)
        return 2j * dawson(x) - SQRT_PI * math.exp(-x * x) * ref_erf
    import mpmath

    from . import oracle

    digits = 50 if digits is None else int(digits)
    ctx = mpmath.MPContext()
    ctx.dps = digits + 10
    f = ctx.make_mpf(oracle.reference_dawson(x, max(oracle.MIN_DIGITS, digits + 5))._mpf_)
    raw = getattr(ref_erf, "_mpc_", None)
    q = ctx.make_mpc(raw) if raw is not None else ctx.mpc(ref_erf)
    xm = ctx.mpf(x)
    return ctx.mpc(0, 2) * f - ctx.sqrt(ctx.pi) * ctx.exp(-xm * xm) * q


def eq5_compose(p: ComplexPoint, second_integral: complex) -> FunctionValue:
    """Assemble ``w`` from a boundary-integral value via the identity above."""
    x, y = p.x, p.y
    si = complex(second_integral)
    if not (math.isfinite(si.real) and math.isfinite(si.imag)):
        raise InvalidArgument(f"non-finite second integral {second_integral!r}")
    return _compose(x, y, si - _basic_integral(x, y))


def basic_eq6(p: ComplexPoint) -> FunctionValue:
    """One-term approximation: ``S`` replaced by ``integral exp(ixu) du``."""
    _require_positive_x(p, "basic_eq6")
    return _compose(p.x, p.y, 0j)


def main_eq7(p: ComplexPoint) -> FunctionValue:
    """Two-term approximation: ``S`` from ``(1 - u^2/4) exp(ixu)``.

    The extra term contributes ``-2y^3 M(2xy)`` with ``M`` the normalised
    quadratic moment.  Expanding ``M`` in closed form gives the familiar
    expression with an ``x**-3`` prefactor, minus the cancelling powers of x.
    """
    _require_positive_x(p, "main_eq7")
    x, y = p.x, p.y
    r = -2.0 * y**3 * _quadratic_moment(2.0 * x * y)
    return _compose(x, y, r)


def b2_eq(p: ComplexPoint) -> FunctionValue:
    """Integration-by-parts variant using ``erf(y)``.

    Relative to the basic integral the correction is
    ``exp(2ixy) (sqrt(pi) erf(y) - 2y)``; the bracket is the series tail
    ``-2y^3/3 + y^5/5`` for ``y <= 1e-3`` and ``math.erf`` beyond.
    """
    _require_positive_x(p, "b2_eq")
    x, y = p.x, p.y
    if 0.0 <= y <= ERF_SMALL_MAX:
        bracket = SQRT_PI * erf_real_small_tail(y)
    else:
        bracket = SQRT_PI * math.erf(y) - 2.0 * y
    r = cmath.exp(2j * x * y) * bracket
    return _compose(x, y, r)


def supplement_eq8(p: ComplexPoint) -> FunctionValue:
    """Polynomial ``(1 - z^2)(1 + 2iz/sqrt(pi))`` for ``z`` near 0."""
    z = p.z
    return FunctionValue.from_complex((1.0 - z * z) * (1.0 + _TWO_OVER_SQRT_PI * 1j * z))


def _real_line(x: float) -> complex:
    """``exp(-x^2) (1 + erf(ix)) = exp(-x^2) + 2iF(x)/sqrt(pi)``."""
    return complex(math.exp(-x * x), _TWO_OVER_SQRT_PI * dawson(x))


def maclaurin_a4(p: ComplexPoint) -> FunctionValue:
    """First-order expansion in y, ``(1 - 2ixy)(w(x, 0) - 2y/sqrt(pi))``."""
    x, y = p.x, p.y
    w0 = _real_line(x)
    return FunctionValue.from_complex(complex(1.0, -2.0 * x * y) * (w0 - _TWO_OVER_SQRT_PI * y))


def maclaurin_a5(p: ComplexPoint) -> FunctionValue:
    """First-order expansion in y, ``w(x, 0)(1 - 2ixy) - 2y/sqrt(pi)``."""
    x, y = p.x, p.y
    w0 = _real_line(x)
    return FunctionValue.from_complex(w0 * complex(1.0, -2.0 * x * y) - _TWO_OVER_SQRT_PI * y)
