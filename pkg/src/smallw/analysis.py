"""Error analysis against the arbitrary-precision oracle.

Relative errors follow the usual componentwise definition
``|Re w - Re w_ref| / |Re w_ref|`` (same for Im).  Grids and random
campaigns compute oracle values once per point, optionally in a process
pool; the order of results never depends on the number of workers.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from multiprocessing import get_context
from typing import Iterable, NamedTuple, Sequence

import mpmath
import numpy as np
from mpmath import libmp

from .dispatch import evaluate
from .errors import InvalidArgument, SmallWError
from .oracle import OracleValue, reference_w_series
from .values import ComplexPoint, FunctionValue, MethodKind

__all__ = [
    "ErrorCore",
    "ErrorSample",
    "GridSpec",
    "SampleStats",
    "relative_errors",
    "reference_values",
    "error_grid",
    "sample_points",
    "random_accuracy",
    "clear_reference_cache",
    "DEFAULT_ORACLE_DIGITS",
]

DEFAULT_ORACLE_DIGITS = 30
SAMPLE_X_RANGE = (1e-4, 15.0)
SAMPLE_LOG10_Y_RANGE = (-12.0, -6.0)

_DELTA_PREC = 96
_REF_CACHE: dict[tuple[float, float, int], OracleValue | str] = {}


class ErrorCore(NamedTuple):
    delta_re: float
    delta_im: float
    absolute_fallback: bool


@dataclass(frozen=True, slots=True)
class ErrorSample:
    x: float
    y: float
    k: float
    l: float
    k_ref: float
    l_ref: float
    delta_re: float
    delta_im: float
    absolute_fallback: bool = False
    flag: str = ""

    @property
    def ok(self) -> bool:
        return not self.flag or self.flag == "absolute"


@dataclass(frozen=True, slots=True)
class GridSpec:
    x_min: float
    x_max: float
    nx: int
    y_min: float
    y_max: float
    ny: int
    log_y: bool = False

    def __post_init__(self) -> None:
        if self.nx < 1 or self.ny < 1:
            raise InvalidArgument("nx and ny must be >= 1")
        if not (self.x_min <= self.x_max and self.y_min <= self.y_max):
            raise InvalidArgument("grid bounds must satisfy min <= max")
        if self.log_y and not self.y_min > 0:
            raise InvalidArgument("a logarithmic y axis needs y_min > 0")
        for v in (self.x_min, self.x_max, self.y_min, self.y_max):
            if not math.isfinite(v):
                raise InvalidArgument("grid bounds must be finite")

    def xs(self) -> np.ndarray:
        return np.linspace(self.x_min, self.x_max, self.nx)

    def ys(self) -> np.ndarray:
        if self.log_y:
            return np.logspace(math.log10(self.y_min), math.log10(self.y_max), self.ny)
        return np.linspace(self.y_min, self.y_max, self.ny)

    def points(self) -> list[tuple[float, float]]:
        """Row-major: one row per y value, x varying fastest."""
        xs = [float(v) for v in self.xs()]
        return [(x, float(y)) for y in self.ys() for x in xs]


@dataclass(frozen=True, slots=True)
class SampleStats:
    method: str
    n: int
    seed: int
    mean_delta_re: float
    max_delta_re: float
    p50_delta_re: float
    p99_delta_re: float
    mean_delta_im: float
    max_delta_im: float
    p50_delta_im: float
    p99_delta_im: float
    n_flagged: int = 0

    def to_json_dict(self) -> dict:
        return {
            "method": self.method,
            "n": self.n,
            "seed": self.seed,
            "mean_delta_re": self.mean_delta_re,
            "max_delta_re": self.max_delta_re,
            "p50_delta_re": self.p50_delta_re,
            "p99_delta_re": self.p99_delta_re,
            "mean_delta_im": self.mean_delta_im,
            "max_delta_im": self.max_delta_im,
            "p50_delta_im": self.p50_delta_im,
            "p99_delta_im": self.p99_delta_im,
        }


def _delta(approx: float, ref) -> tuple[float, bool]:
    a = libmp.from_float(approx)
    r = ref._mpf_ if isinstance(ref, mpmath.mpf) else libmp.from_float(float(ref))
    diff = libmp.mpf_abs(libmp.mpf_sub(a, r, _DELTA_PREC))
    if r == libmp.fzero:
        return libmp.to_float(diff), True
    return libmp.to_float(libmp.mpf_div(diff, libmp.mpf_abs(r), _DELTA_PREC)), False


def relative_errors(approx: FunctionValue, ref: OracleValue) -> ErrorCore:
    """Componentwise relative errors of ``approx`` against ``ref``.

    A reference part that is exactly zero (``L`` at ``x = 0``) yields the
    absolute error for that part and sets ``absolute_fallback``.
    """
    d_re, fb_re = _delta(approx.k, ref.k)
    d_im, fb_im = _delta(approx.l, ref.l)
    return ErrorCore(d_re, d_im, fb_re or fb_im)


def clear_reference_cache() -> None:
    _REF_CACHE.clear()


def _reference_chunk(args):
    points, digits = args
    out = []
    for x, y in points:
        try:
            ref = reference_w_series(ComplexPoint(x, y), digits)
            out.append((ref.k._mpf_, ref.l._mpf_, ref.digits))
        except SmallWError as exc:
            out.append(f"oracle:{type(exc).__name__}")
    return out


def _chunks(seq: Sequence, size: int) -> list:
    return [seq[i : i + size] for i in range(0, len(seq), size)]


def reference_values(
    points: Sequence[tuple[float, float]],
    digits: int = DEFAULT_ORACLE_DIGITS,
    workers: int = 1,
) -> list[OracleValue | str]:
    """Oracle values for ``points`` in order; failures come back as strings.

    Results are memoised per process, keyed by ``(x, y, digits)``.
    """
    missing = []
    seen = set()
    for x, y in points:
        key = (x, y, digits)
        if key not in _REF_CACHE and key not in seen:
            seen.add(key)
            missing.append((x, y))
    if missing:
        chunk = max(1, min(256, math.ceil(len(missing) / max(1, 4 * workers))))
        jobs = [(c, digits) for c in _chunks(missing, chunk)]
        if workers > 1 and len(jobs) > 1:
            with ProcessPoolExecutor(workers, mp_context=get_context("spawn")) as pool:
                results = list(pool.map(_reference_chunk, jobs))
        else:
            results = [_reference_chunk(j) for j in jobs]
        flat = [r for chunk_res in results for r in chunk_res]
        for (x, y), r in zip(missing, flat):
            if isinstance(r, str):
                _REF_CACHE[(x, y, digits)] = r
            else:
                k, l, d = r
                _REF_CACHE[(x, y, digits)] = OracleValue(
                    mpmath.mp.make_mpf(k), mpmath.mp.make_mpf(l), d
                )
    return [_REF_CACHE[(x, y, digits)] for x, y in points]


def _score(
    points: Iterable[tuple[float, float]],
    refs: Iterable[OracleValue | str],
    method: MethodKind,
) -> list[ErrorSample]:
    nan = math.nan
    out = []
    for (x, y), ref in zip(points, refs):
        if isinstance(ref, str):
            out.append(ErrorSample(x, y, nan, nan, nan, nan, nan, nan, False, ref))
            continue
        kr, lr = float(ref.k), float(ref.l)
        try:
            v = evaluate(ComplexPoint(x, y), method)
        except SmallWError as exc:
            out.append(
                ErrorSample(x, y, nan, nan, kr, lr, nan, nan, False, f"eval:{type(exc).__name__}")
            )
            continue
        core = relative_errors(v, ref)
        out.append(
            ErrorSample(
                x,
                y,
                v.k,
                v.l,
                kr,
                lr,
                core.delta_re,
                core.delta_im,
                core.absolute_fallback,
                "absolute" if core.absolute_fallback else "",
            )
        )
    return out


def error_grid(
    spec: GridSpec,
    method: MethodKind | str,
    oracle_digits: int = DEFAULT_ORACLE_DIGITS,
    workers: int = 1,
) -> list[ErrorSample]:
    """Errors of ``method`` on every grid node, row-major (y outer, x inner).

    ``AUTO`` is accepted and maps the eq8/eq7 seam.  Points where the oracle
    or the method fails are kept as flagged samples with NaN deltas.
    """
    method = MethodKind.parse(method)
    if method is MethodKind.ORACLE_REF:
        raise InvalidArgument("the oracle cannot be scored against itself")
    points = spec.points()
    refs = reference_values(points, oracle_digits, workers)
    return _score(points, refs, method)


def sample_points(n: int, seed: int) -> list[tuple[float, float]]:
    """``n`` points with x uniform on [1e-4, 15] and log10 y uniform on [-12, -6].

    x and y come from two generators seeded with ``(seed, 0)`` and
    ``(seed, 1)``, so point ``i`` is the same for every ``n > i``.
    """
    if n < 1:
        raise InvalidArgument(f"n must be >= 1, got {n!r}")
    rx = np.random.default_rng([seed, 0])
    ry = np.random.default_rng([seed, 1])
    xs = rx.uniform(*SAMPLE_X_RANGE, size=n)
    ys = 10.0 ** ry.uniform(*SAMPLE_LOG10_Y_RANGE, size=n)
    return [(float(x), float(y)) for x, y in zip(xs, ys)]


def _summary(values: list[float]) -> tuple[float, float, float, float]:
    arr = np.asarray(values, dtype=float)
    mean = math.fsum(values) / len(values)
    p50, p99 = np.percentile(arr, [50.0, 99.0])
    return mean, float(arr.max()), float(p50), float(p99)


def summarize(samples: Sequence[ErrorSample], method: str, n: int, seed: int) -> SampleStats:
    good = [s for s in samples if s.ok and math.isfinite(s.delta_re) and math.isfinite(s.delta_im)]
    if not good:
        nan = math.nan
        return SampleStats(method, n, seed, nan, nan, nan, nan, nan, nan, nan, nan, len(samples))
    re = _summary([s.delta_re for s in good])
    im = _summary([s.delta_im for s in good])
    return SampleStats(method, n, seed, *re, *im, n_flagged=len(samples) - len(good))


def random_accuracy(
    n: int,
    seed: int,
    method: MethodKind | str,
    oracle_digits: int = DEFAULT_ORACLE_DIGITS,
    workers: int = 1,
) -> SampleStats:
    """Average/max/median/99th-percentile errors over ``n`` random points."""
    method = MethodKind.parse(method)
    points = sample_points(n, seed)
    refs = reference_values(points, oracle_digits, workers)
    samples = _score(points, refs, method)
    return summarize(samples, method.value, n, seed)
