"""Faddeeva function ``w(z)`` for small ``Im z`` via Dawson's integral.

Typical use::

    from smallw import ComplexPoint, evaluate
    w = evaluate(ComplexPoint(3.0, 1e-8)).w
"""

from .cfrac import ContinuedFractionConfig, laplace_cfrac
from .dispatch import Transform, evaluate, extend_symmetry
from .errors import (
    DegenerateEvaluation,
    DivisionHazard,
    InvalidArgument,
    OutOfDomain,
    OutOfRange,
    PrecisionExhausted,
    SmallWError,
)
from .realfun import dawson, dawson_defect, erf_real_small
from .smally import (
    b2_eq,
    basic_eq6,
    eq5_compose,
    maclaurin_a4,
    maclaurin_a5,
    main_eq7,
    second_integral_erf_form,
    second_integral_midpoint,
    second_integral_trapezoid,
    supplement_eq8,
)
from .values import ComplexPoint, FunctionValue, MethodKind

__version__ = "0.1.0"

__all__ = [
    "ComplexPoint",
    "FunctionValue",
    "MethodKind",
    "Transform",
    "ContinuedFractionConfig",
    "evaluate",
    "extend_symmetry",
    "laplace_cfrac",
    "dawson",
    "dawson_defect",
    "erf_real_small",
    "basic_eq6",
    "main_eq7",
    "supplement_eq8",
    "maclaurin_a4",
    "maclaurin_a5",
    "b2_eq",
    "eq5_compose",
    "second_integral_midpoint",
    "second_integral_trapezoid",
    "second_integral_erf_form",
    "SmallWError",
    "InvalidArgument",
    "OutOfRange",
    "DivisionHazard",
    "OutOfDomain",
    "DegenerateEvaluation",
    "PrecisionExhausted",
]
