"""Small value types passed between the evaluators."""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

from .errors import InvalidArgument


@dataclass(frozen=True, slots=True)
class ComplexPoint:
    """Argument ``z = x + iy`` of the Faddeeva function."""

    x: float
    y: float

    def __post_init__(self) -> None:
        if not (math.isfinite(self.x) and math.isfinite(self.y)):
            raise InvalidArgument(f"non-finite argument ({self.x!r}, {self.y!r})")

    @classmethod
    def from_complex(cls, z: complex) -> ComplexPoint:
        return cls(float(z.real), float(z.imag))

    @property
    def z(self) -> complex:
        return complex(self.x, self.y)

    @property
    def canonical(self) -> bool:
        return self.x >= 0.0 and self.y >= 0.0


@dataclass(frozen=True, slots=True)
class FunctionValue:
    """Double-precision value ``w = K + iL``."""

    k: float
    l: float

    @classmethod
    def from_complex(cls, w: complex) -> FunctionValue:
        return cls(w.real, w.imag)

    @property
    def w(self) -> complex:
        return complex(self.k, self.l)

    def is_finite(self) -> bool:
        return math.isfinite(self.k) and math.isfinite(self.l)


class MethodKind(enum.Enum):
    """Which formula evaluates a point."""

    AUTO = "auto"
    BASIC6 = "basic6"
    MAIN7 = "main7"
    SUPPLEMENT8 = "eq8"
    A4 = "a4"
    A5 = "a5"
    B2 = "b2"
    CFRAC = "cfrac"
    ORACLE_REF = "oracle"

    @classmethod
    def parse(cls, name: str | MethodKind) -> MethodKind:
        if isinstance(name, cls):
            return name
        key = name.strip().lower()
        for member in cls:
            if member.value == key or member.name.lower() == key:
                return member
        raise InvalidArgument(f"unknown method {name!r}")
