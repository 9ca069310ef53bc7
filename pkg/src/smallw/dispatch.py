"""Symmetry reduction and the automatic method selection.

Automatic selection on the closed first quadrant:

* ``y <= 1e-6`` and ``x <= 15``: ``supplement_eq8`` for ``x <= 1e-4``,
  otherwise ``main_eq7``;
* ``|z| > 15``: Laplace continued fraction at default depth;
* anything else raises :class:`OutOfDomain`.

Other quadrants use ``w(-x + iy) = conj(w(x + iy))`` and
``w(z) = 2 exp(-z^2) - w(-z)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from . import smally
from .cfrac import ContinuedFractionConfig, laplace_cfrac
from .errors import InvalidArgument, OutOfDomain
from .values import ComplexPoint, FunctionValue, MethodKind

__all__ = ["Transform", "extend_symmetry", "evaluate", "exp_minus_z2"]

_DIRECT = {
    MethodKind.BASIC6: smally.basic_eq6,
    MethodKind.MAIN7: smally.main_eq7,
    MethodKind.SUPPLEMENT8: smally.supplement_eq8,
    MethodKind.A4: smally.maclaurin_a4,
    MethodKind.A5: smally.maclaurin_a5,
    MethodKind.B2: smally.b2_eq,
    MethodKind.CFRAC: laplace_cfrac,
}


@dataclass(frozen=True, slots=True)
class Transform:
    conjugate_l: bool
    reflect: bool
    canonical: ComplexPoint
    original: ComplexPoint

    def apply(self, v: FunctionValue) -> FunctionValue:
        """Map a value at :attr:`canonical` back to :attr:`original`."""
        if self.conjugate_l:
            v = FunctionValue(v.k, -v.l)
        if self.reflect:
            e = exp_minus_z2(self.original)
            v = FunctionValue(2.0 * e.real - v.k, 2.0 * e.imag - v.l)
        return v


def exp_minus_z2(p: ComplexPoint) -> complex:
    """``exp(-z^2)`` as ``exp(y^2 - x^2) (cos 2xy - i sin 2xy)``."""
    x, y = p.x, p.y
    m = math.exp((y - x) * (y + x))
    if m == 0.0:
        return 0j
    t = 2.0 * x * y
    if not (math.isfinite(m) and math.isfinite(t)):
        raise OverflowError(f"exp(-z^2) is not representable at z = {x!r} + {y!r}i")
    return complex(m * math.cos(t), -m * math.sin(t))


def extend_symmetry(p: ComplexPoint) -> Transform:
    x, y = p.x, p.y
    reflect = y < 0.0
    if reflect:
        x, y = -x, -y
    conjugate = x < 0.0
    if conjugate:
        x = -x
    return Transform(conjugate, reflect, ComplexPoint(x, y), p)


def _auto(p: ComplexPoint) -> FunctionValue:
    x, y = p.x, p.y
    if y <= smally.Y_MAX and x <= smally.X_MAX:
        if x <= smally.X_SWITCH:
            return smally.supplement_eq8(p)
        return smally.main_eq7(p)
    if math.hypot(x, y) > 15.0:
        return laplace_cfrac(p, ContinuedFractionConfig())
    raise OutOfDomain(
        f"no certified method for z = {x!r} + {y!r}i: 1e-6 < y and |z| <= 15"
    )


def evaluate(
    p: ComplexPoint,
    method: MethodKind | str = MethodKind.AUTO,
    oracle_digits: int | None = None,
) -> FunctionValue:
    """Evaluate ``w`` at ``p``.

    ``AUTO`` reduces ``p`` to the first quadrant and picks a certified
    method.  An explicit method is applied to ``p`` as given, with no domain
    checks.  ``ORACLE_REF`` needs ``oracle_digits`` and returns the
    reference value rounded to double.
    """
    method = MethodKind.parse(method)
    if method is MethodKind.ORACLE_REF:
        if oracle_digits is None:
            raise InvalidArgument("ORACLE_REF needs oracle_digits")
        from .oracle import reference_w_series

        ref = reference_w_series(p, oracle_digits)
        return FunctionValue(float(ref.k), float(ref.l))
    if method is not MethodKind.AUTO:
        return _DIRECT[method](p)

    t = extend_symmetry(p)
    try:
        v = t.apply(_auto(t.canonical))
    except (OverflowError, ZeroDivisionError) as exc:
        raise OutOfDomain(f"w({p.x!r} + {p.y!r}i) is not representable: {exc}") from exc
    if not v.is_finite():
        raise OutOfDomain(f"w({p.x!r} + {p.y!r}i) is not representable in double precision")
    return v
