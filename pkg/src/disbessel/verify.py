"""Invariant suites behind ``disbessel verify``.

Each suite returns a :class:`SuiteReport`; a failure records the instance and
the measured quantity so it can be reproduced by hand.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from . import bessel, laplace, oracle, wave
from .bessel import BesselSpec, Direction, Kind

SUITES = ("bessel", "laplace", "wave", "oracle")


@dataclass
class SuiteReport:
    suite: str
    checks_run: int = 0
    failures: list = field(default_factory=list)

    def check(self, ok: bool, **instance):
        self.checks_run += 1
        if not ok:
            self.failures.append(instance)

    def merge(self, other: "SuiteReport"):
        self.checks_run += other.checks_run
        self.failures.extend(other.failures)


def _c_values(kind: str, grid) -> list:
    return [c for c in grid if kind == "J" or abs(c) < 1]


def suite_bessel(tol: float = 1e-10, seed: int = 0) -> SuiteReport:
    rep = SuiteReport("bessel")
    cs = [0.2, -0.2, 0.5, -0.5, 0.9, -0.9, 2.0, -2.0]
    for kind in "JI":
        for c in cs:
            for n in range(11):
                for t in range(0, 51):
                    r = bessel.residual_forward(kind, n, t, c)
                    rep.check(r.relative < tol, check="residual_forward", kind=kind, n=n, t=t, c=c, rel=r.relative)
                    if kind == "I" and abs(c) >= 1:
                        continue
                    if t >= 1:
                        r = bessel.residual_backward(kind, n, t, c)
                        rep.check(r.relative < tol, check="residual_backward", kind=kind, n=n, t=t, c=c, rel=r.relative)
                    for tt in (t, -t):
                        r = bessel.reflection_check(kind, n, tt, c)
                        rep.check(r.relative < tol / 100, check="reflection", kind=kind, n=n, t=tt, c=c, rel=r.relative)
                    if kind == "J":
                        for part, r in bessel.lemma_residuals(n, t, c).items():
                            rep.check(r.relative < tol, check=f"lemma_{part}", n=n, t=t, c=c, rel=r.relative)
    # vanishing below the diagonal
    for kind in "JI":
        for n in range(1, 9):
            for t in range(0, n):
                v = bessel.evaluate(BesselSpec(kind, "forward", n, 0.5), t)
                w = bessel.evaluate(BesselSpec(kind, "backward", n, 0.5), -t)
                rep.check(v == 0 and w == 0, check="vanishing", kind=kind, n=n, t=t)
    for n in range(0, 9):
        for t in range(-12, 13):
            rep.check(bessel.imaginary_identity_coeffs(n, t) if n <= abs(t) else True,
                      check="imaginary_identity", n=n, t=t)
    return rep


def _laplace_points(spec: BesselSpec, count: int, rng: random.Random) -> list:
    c = abs(float(spec.c))
    if spec.direction is Direction.FORWARD:
        radius = math.sqrt(1 + c * c) if spec.kind is Kind.J else 1 + c
        pts = []
        for _ in range(count):
            d = radius * rng.uniform(1.3, 3.0)
            pts.append(d - 1 if rng.random() < 0.7 else -1 - d)
        return pts
    radius = math.sqrt(1 + c * c) if spec.kind is Kind.J else 1 - c
    return [1 + rng.choice((-1, 1)) * radius * rng.uniform(0.05, 0.7) for _ in range(count)]


def suite_laplace(tol: float = 1e-10, seed: int = 0, points: int = 12) -> SuiteReport:
    rep = SuiteReport("laplace")
    rng = random.Random(seed)
    for kind in "JI":
        for direction in ("forward", "backward"):
            cs = [0.3, 1.0, 2.0] if direction == "forward" else [0.3, 0.6]
            for c in cs:
                for n in range(0, 4):
                    spec = BesselSpec(kind, direction, n, c)
                    for z in _laplace_points(spec, points, rng):
                        e = laplace.laplace_series(spec, z)
                        gap = e.series - e.closed - laplace.constant_term_offset(spec, z)
                        rel = abs(gap) / max(1.0, abs(e.closed))
                        name = "discrepancy_law" if (direction == "backward" and n == 0) else "transform"
                        rep.check(rel < tol, check=name, kind=kind, direction=direction, n=n, c=c, z=z, gap=gap)
                    r = laplace.genfun_radius(spec)
                    for z in (-0.6 * r, 0.0, 0.4 * r, 0.8 * r):
                        s = laplace.genfun_series(spec, z).value
                        cl = laplace.genfun_closed(spec, z) + laplace.constant_term_offset(spec, z, "genfun")
                        rep.check(abs(s - cl) < tol * max(1.0, abs(cl)), check="genfun", kind=kind,
                                  direction=direction, n=n, c=c, z=z, gap=s - cl)
                    if direction == "forward":
                        for z in _laplace_points(spec, 3, rng):
                            lhs = laplace.genfun_closed(spec, 1 / (1 + z)) / (1 + z)
                            rhs = laplace.laplace_closed(spec, z)
                            rep.check(abs(lhs - rhs) < 1e-12 * max(1.0, abs(rhs)), check="genfun_laplace_identity",
                                      kind=kind, n=n, c=c, z=z)
    return rep


def suite_wave(tol: float = 1e-10, seed: int = 0) -> SuiteReport:
    rep = SuiteReport("wave")
    c = 0.5
    fwd = wave.simulate(wave.WaveConfig("forward", c, 40, 60))
    for t in range(0, 61):
        scale = float(np.abs(fwd.row(t)).max())
        for n in range(-20, 21):
            d = abs(fwd.at(n, t) - wave.fundamental1("forward", n, t, c))
            rep.check(d <= 1e-12 * scale, check="forward_stepper", n=n, t=t, diff=d)
    exact = wave.simulate(wave.WaveConfig("forward", Fraction(1, 2), 20, 30))
    rep.check(all(exact.at(n, t) == wave.fundamental1("forward", n, t, Fraction(1, 2))
                  for n in range(-20, 21) for t in range(31)), check="forward_stepper_exact")
    bwd = wave.simulate(wave.WaveConfig("backward", c, 120, 40))
    for t in range(0, 41):
        for n in range(-20, 21):
            d = abs(bwd.at(n, t) - wave.fundamental1("backward", n, t, c))
            rep.check(d <= 1e-12 + tol, check="backward_stepper", n=n, t=t, diff=d)
    rep.check(wave.scheme_residual(fwd) < 1e-12, check="forward_scheme_residual")
    rep.check(wave.scheme_residual(bwd) < tol, check="backward_scheme_residual")
    rng = np.random.default_rng(seed)
    a = wave.SequenceWindow(-3, tuple(rng.normal(size=7)))
    b = wave.SequenceWindow(-2, tuple(rng.normal(size=5)))
    cfg_a = wave.WaveConfig("backward", c, 60, 10, init_u0=a, init_v0=b)
    cfg_b = wave.WaveConfig("backward", c, 60, 10, init_u0=b, init_v0=a)
    cfg_ab = wave.WaveConfig("backward", c, 60, 10, init_u0=a.scale(2.0) + b.scale(-0.5),
                             init_v0=b.scale(2.0) + a.scale(-0.5))
    for t in range(0, 11):
        for n in range(-8, 9):
            lhs = wave.general_solution(n, t, cfg_ab)
            rhs = 2.0 * wave.general_solution(n, t, cfg_a) - 0.5 * wave.general_solution(n, t, cfg_b)
            rep.check(abs(lhs - rhs) < 1e-12 * max(1.0, abs(rhs)), check="linearity", n=n, t=t)
    grid = wave.simulate(cfg_a)
    for t in range(0, 11):
        for n in range(-8, 9):
            d = abs(grid.at(n, t) - wave.general_solution(n, t, cfg_a))
            rep.check(d < 1e-10, check="convolution_vs_stepper", n=n, t=t, diff=d)
    for n in range(-6, 7):
        rep.check(wave.fundamental2_backward(n, 0, Fraction(1, 2)) == 0, check="u2_initial", n=n)
        step = wave.fundamental2_backward(n, 0, Fraction(1, 2)) - wave.fundamental2_backward(n, -1, Fraction(1, 2))
        rep.check(step == (1 if n == 0 else 0), check="u2_velocity", n=n)
    return rep


def suite_oracle(tol: float = 1e-10, seed: int = 0, samples: int = 150) -> SuiteReport:
    rep = SuiteReport("oracle")
    rng = random.Random(seed)
    cs = [Fraction(s * p, q) for s in (1, -1) for p, q in ((1, 4), (1, 2), (3, 4), (3, 2))]
    for _ in range(samples):
        kind = rng.choice("JI")
        c = rng.choice(_c_values(kind, cs))
        n = rng.randint(0, 8)
        t = rng.randint(-20, 40)
        spec = BesselSpec(kind, "backward", n, float(c))
        got = bessel.evaluate(spec, t)
        ref = oracle.oracle_poly_eval(kind, "backward", n, t, c) if t < 0 else oracle.oracle_backward_series(kind, n, t, c)
        ok = got == ref == 0 or (ref != 0 and abs(got - float(ref)) <= 2.0 ** -45 * abs(float(ref)))
        rep.check(ok, check="oracle_agreement", kind=kind, n=n, t=t, c=str(c), got=got, ref=float(ref))
        if t >= 0:
            fspec = BesselSpec(kind, "forward", n, c)
            rep.check(bessel.evaluate(fspec, t) == oracle.oracle_poly_eval(kind, "forward", n, t, c),
                      check="poly_exact", kind=kind, n=n, t=t, c=str(c))
    for kind, c in (("J", Fraction(1)), ("I", Fraction(1, 2)), ("J", Fraction(3, 2))):
        for n in (0, 3, 6):
            bits = 160
            series = [oracle.oracle_backward_series(kind, n, t, c, bits) for t in range(1, 51)]
            rec = oracle.oracle_recurrence_extend(kind, n, c, series[:2], 50)
            for t, (a, b) in enumerate(zip(series, rec), start=1):
                err = abs(a - b) / abs(a) if a else abs(b)
                rep.check(err <= Fraction(1, 2 ** (bits - 20)), check="route_independence", kind=kind, n=n,
                          t=t, c=str(c))
    return rep


_RUNNERS = {
    "bessel": suite_bessel,
    "laplace": suite_laplace,
    "wave": suite_wave,
    "oracle": suite_oracle,
}


def run(suite: str = "all", tol: float = 1e-10, seed: int = 0) -> SuiteReport:
    names = SUITES if suite == "all" else (suite,)
    report = SuiteReport(suite)
    for name in names:
        report.merge(_RUNNERS[name](tol=tol, seed=seed))
    return report
