"""Invariant checks behind ``smallw selftest``.

Each check returns ``(passed, detail)``.  Checks tagged as known
limitations are reported but do not affect the exit status.  They cover
properties that do not hold mathematically for the formulas involved: the
near-origin polynomial is only first-order accurate in ``z`` in its
imaginary part, and the first-order y expansions are more accurate in K
than the one-term integral at large x.  Both are documented in the README.
"""

from __future__ import annotations

import math
import sys
import time
from dataclasses import dataclass
from typing import Callable

import numpy as np

from . import smally
from .analysis import GridSpec, error_grid, random_accuracy, relative_errors
from .cfrac import ContinuedFractionConfig, laplace_cfrac
from .dispatch import evaluate, exp_minus_z2, extend_symmetry
from .errors import OutOfDomain
from .oracle import reference_w_quadrature, reference_w_series
from .realfun import dawson, erf_real_small
from .values import ComplexPoint, MethodKind

SQRT_PI = math.sqrt(math.pi)


@dataclass(frozen=True)
class Check:
    name: str
    fn: Callable[[bool], tuple[bool, str]]
    known_limitation: bool = False


def ulp_diff(a: float, b: float) -> float:
    if a == b:
        return 0.0
    return abs(a - b) / math.ulp(max(abs(a), abs(b)))


def _rng(tag: int) -> np.random.Generator:
    return np.random.default_rng([20140901, tag])


def _dawson_properties(quick: bool) -> tuple[bool, str]:
    xs = np.linspace(0.01, 15.0, 200 if quick else 2000)
    worst_ode = 0.0
    for x in (0.5, 1.0, 2.0, 5.0, 10.0):
        h = 1e-5
        d = (dawson(x + h) - dawson(x - h)) / (2 * h)
        worst_ode = max(worst_ode, abs(d - (1.0 - 2.0 * x * dawson(x))))
    for x in xs:
        x = float(x)
        f = dawson(x)
        if dawson(-x) != -f or not 0.0 < f < 0.55:
            return False, f"oddness or bound fails at x={x!r}"
        if x >= 5.0 and abs(f - 0.5 / x) >= x**-3:
            return False, f"asymptotic bound fails at x={x!r}"
    return worst_ode <= 1e-6, f"max ODE residual {worst_ode:.2e}"


def _erf_small(quick: bool) -> tuple[bool, str]:
    ys = np.linspace(0.0, 1e-3, 1001)
    vals = [erf_real_small(float(y)) for y in ys]
    mono = all(b > a for a, b in zip(vals, vals[1:]))
    ratio = erf_real_small(1e-12) / 1e-12
    return mono and abs(ratio - 2 / SQRT_PI) < 1e-15, f"monotone={mono} ratio={ratio!r}"


_REDUCING = {
    "basic6": smally.basic_eq6,
    "main7": smally.main_eq7,
    "b2": smally.b2_eq,
    "a4": smally.maclaurin_a4,
    "a5": smally.maclaurin_a5,
}


def _y_zero_exactness(quick: bool) -> tuple[bool, str]:
    worst = 0.0
    for x in np.linspace(1e-3, 15.0, 50 if quick else 500):
        x = float(x)
        k0, l0 = math.exp(-x * x), 2.0 * dawson(x) / SQRT_PI
        for fn in _REDUCING.values():
            v = fn(ComplexPoint(x, 0.0))
            worst = max(worst, ulp_diff(v.k, k0), ulp_diff(v.l, l0))
    return worst <= 2.0, f"max {worst:.1f} ulp"


def _second_integral_bound(quick: bool) -> tuple[bool, str]:
    rng = _rng(1)
    n = 200 if quick else 2000
    for x, y in zip(rng.uniform(0, 15, n), 10 ** rng.uniform(-12, -3, n)):
        p = ComplexPoint(float(x), float(y))
        for s in (smally.second_integral_midpoint(p), smally.second_integral_trapezoid(p)):
            if abs(s) > 2.0 * p.y * (1 + 1e-15):
                return False, f"|S| > 2y at {p}"
    return True, f"{n} points"


def _agreement_chain(quick: bool) -> tuple[bool, str]:
    rng = _rng(2)
    n = 100 if quick else 1000
    worst = 0.0
    for x, y in zip(rng.uniform(1e-4, 15, n), 10 ** rng.uniform(-12, -6, n)):
        p = ComplexPoint(float(x), float(y))
        b = smally.basic_eq6(p).w
        for s in (smally.second_integral_midpoint(p), smally.second_integral_trapezoid(p)):
            worst = max(worst, abs(smally.eq5_compose(p, s).w - b))
    return worst <= 1e-11, f"max |diff| {worst:.2e}"


def _cfrac_properties(quick: bool) -> tuple[bool, str]:
    for y in np.linspace(15.5, 100, 20):
        v = laplace_cfrac(ComplexPoint(0.0, float(y)))
        if abs(v.l) > 1e-16 * v.k:
            return False, f"L not zero at z={y}i"
    rng = _rng(3)
    n = 20 if quick else 50
    r = rng.uniform(15, 100, n)
    a = rng.uniform(0, math.pi / 2, n)
    pts = [ComplexPoint(float(ri * math.cos(ai)), float(ri * math.sin(ai))) for ri, ai in zip(r, a)]
    refs = [reference_w_series(p, 30) if abs(p.z) <= 30 else None for p in pts]
    pairs = [(p, ref) for p, ref in zip(pts, refs) if ref is not None]
    worst = {}
    for d in (4, 8, 12, 16):
        cfg = ContinuedFractionConfig(depth=d)
        errs = [max(relative_errors(laplace_cfrac(p, cfg), ref)[:2]) for p, ref in pairs]
        worst[d] = max(errs)
    mono = all(worst[d + 4] <= worst[d] for d in (4, 8, 12))
    return mono, "max err by depth " + ", ".join(f"{d}:{e:.1e}" for d, e in worst.items())


def _auto_total(quick: bool) -> tuple[bool, str]:
    rng = _rng(4)
    n = 500 if quick else 5000
    mags = 10 ** rng.uniform(-300, 300, (n, 2))
    signs = rng.choice([-1.0, 1.0], (n, 2))
    pts = [(float(a), float(b)) for a, b in mags * signs] + [(0.0, 0.0), (-0.0, -0.0), (1e308, -1e308)]
    for x, y in pts:
        try:
            v = evaluate(ComplexPoint(x, y))
        except OutOfDomain:
            continue
        if not v.is_finite():
            return False, f"non-finite value at {(x, y)}"
    return True, f"{len(pts)} points"


def _seam(part: str) -> Callable[[bool], tuple[bool, str]]:
    def check(quick: bool) -> tuple[bool, str]:
        lo = evaluate(ComplexPoint(1e-4 - 1e-9, 1e-7))
        hi = evaluate(ComplexPoint(1e-4 + 1e-9, 1e-7))
        a, b = (lo.k, hi.k) if part == "k" else (lo.l, hi.l)
        rel = abs(a - b) / abs(b)
        return rel <= 1e-12, f"relative jump {rel:.2e}"

    return check


def _reflection(quick: bool) -> tuple[bool, str]:
    rng = _rng(5)
    n = 30 if quick else 100
    worst = 0.0
    for x, y in zip(rng.uniform(1e-3, 15, n), 10 ** rng.uniform(-12, -6, n)):
        p = ComplexPoint(float(x), float(y))
        direct = evaluate(p)
        t = extend_symmetry(ComplexPoint(-p.x, -p.y))
        mirrored = t.apply(evaluate(t.canonical))
        two_e = 2.0 * exp_minus_z2(ComplexPoint(-p.x, -p.y))
        worst = max(worst, abs(direct.w + mirrored.w - two_e) / abs(direct.w))
        ref = reference_w_series(ComplexPoint(-p.x, -p.y), 30)
        worst = max(worst, abs(mirrored.w - ref.as_complex()) / abs(ref.as_complex()))
    return worst <= 1e-13, f"max relative residual {worst:.2e}"


def _dual_oracle(quick: bool) -> tuple[bool, str]:
    import mpmath

    rng = _rng(6)
    n = 3 if quick else 10
    worst = math.inf
    for x, y in zip(rng.uniform(1e-4, 15, n), 10 ** rng.uniform(-12, -6, n)):
        p = ComplexPoint(float(x), float(y))
        a = reference_w_series(p, 40)
        b = reference_w_quadrature(p, 40)
        for u, v in ((a.k, b.k), (a.l, b.l)):
            diff = abs(u - v)
            agree = math.inf if diff == 0 else float(-mpmath.log10(diff / abs(u)))
            worst = min(worst, agree)
    return worst >= 30, f"min agreement {worst:.1f} digits"


def _fidelity_order(pair: tuple[str, str]) -> Callable[[bool], tuple[bool, str]]:
    def check(quick: bool) -> tuple[bool, str]:
        spec = GridSpec(1e-4, 15.0, 30 if quick else 100, 1e-12, 1e-6, 5 if quick else 10, True)
        m = {name: max(s.delta_re for s in error_grid(spec, name)) for name in pair}
        better, worse = pair
        return m[better] <= m[worse], ", ".join(f"{k}={v:.1e}" for k, v in m.items())

    return check


def _eq8_grid(part: str) -> Callable[[bool], tuple[bool, str]]:
    def check(quick: bool) -> tuple[bool, str]:
        spec = GridSpec(0.0, 1e-4, 20 if quick else 100, 1e-12, 1e-6, 5 if quick else 20, True)
        samples = error_grid(spec, MethodKind.SUPPLEMENT8)
        if part == "k":
            worst = max(s.delta_re for s in samples)
            return worst <= 1e-13, f"max delta_re {worst:.2e}"
        worst = max(s.delta_im for s in samples if not s.absolute_fallback)
        return worst <= 1e-12, f"max delta_im {worst:.2e}"

    return check


def _determinism(quick: bool) -> tuple[bool, str]:
    a = random_accuracy(200, 7, "main7")
    b = random_accuracy(200, 7, "main7")
    return a == b, "repeat runs identical" if a == b else "runs differ"


CHECKS = [
    Check("dawson oddness, bound, ODE residual", _dawson_properties),
    Check("erf_real_small monotone and 2/sqrt(pi) slope", _erf_small),
    Check("y=0 exactness within 2 ulp", _y_zero_exactness),
    Check("second-integral bound |S| <= 2y", _second_integral_bound),
    Check("midpoint/trapezoid composition vs basic6", _agreement_chain),
    Check("continued fraction: real on imaginary axis, depth monotone", _cfrac_properties),
    Check("auto returns a value or OutOfDomain", _auto_total),
    Check("eq8/eq7 seam continuity in K", _seam("k")),
    Check("eq8/eq7 seam continuity in L", _seam("l"), known_limitation=True),
    Check("reflection round trip", _reflection),
    Check("series and quadrature oracles agree", _dual_oracle),
    Check("fidelity order main7 <= basic6", _fidelity_order(("main7", "basic6"))),
    Check("fidelity order basic6 <= a4", _fidelity_order(("basic6", "a4")), known_limitation=True),
    Check("eq8 grid: delta_re <= 1e-13", _eq8_grid("k")),
    Check("eq8 grid: delta_im <= 1e-12", _eq8_grid("l"), known_limitation=True),
    Check("random sampling is deterministic", _determinism),
]


def run_selftest(quick: bool = False, stream=None) -> bool:
    """Run every check, print one line each, return overall success."""
    stream = stream or sys.stdout
    all_ok = True
    for check in CHECKS:
        t0 = time.perf_counter()
        try:
            ok, detail = check.fn(quick)
        except Exception as exc:  # noqa: BLE001 - a crashing check is a failed check
            ok, detail = False, f"{type(exc).__name__}: {exc}"
        if ok:
            tag = "PASS"
        elif check.known_limitation:
            tag = "XFAIL"
        else:
            tag = "FAIL"
            all_ok = False
        print(f"{tag:5} {check.name}: {detail} ({time.perf_counter() - t0:.1f}s)", file=stream)
    print("selftest " + ("passed" if all_ok else "FAILED"), file=stream)
    return all_ok


__all__ = ["CHECKS", "Check", "run_selftest", "ulp_diff"]
