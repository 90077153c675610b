"""Discrete Laplace transforms and generating functions of the four families.

Forward transform:  ``sum_{t>=0} x(t) (1+z)^(-t-1)``.
Backward transform: ``sum_{t>=0} x(t) (1-z)^(t-1)``.
Generating function: ``sum_{t>=0} x(t) z^t``.

Closed forms are evaluated in rationalised form, e.g. ``s - z = c^2/(s + z)``,
so no difference of nearly equal square roots is ever taken.

Square-root branches on the real line:

* forward transforms use ``s = sign(z) sqrt(z^2 +- c^2)``; the convergence
  region has a component at ``z < -1`` and this is the continuation of the
  series there (the principal root would give the other sheet);
* backward transforms and generating functions use the principal root.

For ``n = 0`` the backward closed forms miss the ``t = 0`` term of the
series: ``series - closed`` is exactly ``(1 - z)^(-1)`` for the transform and
``1`` for the generating function. :func:`constant_term_offset` returns that
amount and the verification suites check it.
"""

from __future__ import annotations

import math
from typing import NamedTuple

from . import scaled
from .bessel import BesselSpec, Direction, Kind, evaluate_scaled, theta_of
from .errors import ConvergenceError, DomainError, RegionError
from .hyper import SeriesResult

GUARD = 1e-9
DEFAULT_TOL = 1e-15
DEFAULT_MAX_TERMS = 20_000


class LaplaceEval(NamedTuple):
    spec: BesselSpec
    z: float
    closed: float
    series: float
    terms_used: int
    in_region: bool

    @property
    def abs_diff(self) -> float:
        return abs(self.series - self.closed)


# ---------------------------------------------------------------------------
# regions


def laplace_in_region(spec: BesselSpec, z: float) -> bool:
    c = abs(float(spec.c))
    if spec.direction is Direction.FORWARD:
        radius = math.sqrt(1 + c * c) if spec.kind is Kind.J else 1 + c
        return abs(1 + z) > radius + GUARD
    radius = math.sqrt(1 + c * c) if spec.kind is Kind.J else 1 - c
    d = abs(1 - z)
    return GUARD < d < radius - GUARD


def genfun_radius(spec: BesselSpec) -> float:
    c = abs(float(spec.c))
    if spec.direction is Direction.FORWARD:
        return 1 / math.sqrt(1 + c * c) if spec.kind is Kind.J else 1 / (1 + c)
    return math.sqrt(1 + c * c) if spec.kind is Kind.J else 1 - c


def genfun_in_region(spec: BesselSpec, z: float) -> bool:
    return abs(z) < genfun_radius(spec) - GUARD


def _laplace_ratio(spec: BesselSpec, z: float) -> float:
    """Geometric rate of the transform terms, below 1 inside the region."""
    c = abs(float(spec.c))
    if spec.direction is Direction.FORWARD:
        growth = math.sqrt(1 + c * c) if spec.kind is Kind.J else 1 + c
        return growth / abs(1 + z)
    radius = math.sqrt(1 + c * c) if spec.kind is Kind.J else 1 - c
    return abs(1 - z) / radius


# ---------------------------------------------------------------------------
# closed forms


def laplace_closed(spec: BesselSpec, z: float) -> float:
    """Closed form of the transform.

    J: ``c^-n (s - z)^n / s`` with ``s^2 = z^2 + c^2``;
    I: ``c^-n (z - s)^n / s`` with ``s^2 = z^2 - c^2`` (needs ``|z| > |c|``).
    """
    c = float(spec.c)
    z = float(z)
    n = spec.n
    if spec.kind is Kind.J:
        root = math.hypot(z, c)
    else:
        if abs(z) <= abs(c):
            raise DomainError(f"I transform is not real for |z| <= |c| (z={z}, c={c})")
        root = math.sqrt((z - c) * (z + c))
    s = -root if (spec.direction is Direction.FORWARD and z < 0) else root
    if spec.kind is Kind.J:
        # (s - z)/c, rationalised when s and z share a sign
        bracket = c / (s + z) if s * z > 0 else (s - z) / c
    else:
        bracket = c / (z + s) if s * z > 0 else (z - s) / c
    return bracket ** n / s


def genfun_closed(spec: BesselSpec, z: float) -> float:
    """Closed form of the generating function (``f``, ``g``, ``fbar``, ``gbar``).

    forward J:  ``(cz/(s + 1 - z))^n / s``,  ``s^2 = (1-z)^2 + c^2 z^2``
    forward I:  ``(cz/((1 - z) + s))^n / s``, ``s^2 = (1-z)^2 - c^2 z^2``
    backward J: ``z (c/(s + 1 - z))^n / s``, ``s^2 = (1-z)^2 + c^2``
    backward I: ``z (c/((1 - z) + s))^n / s``, ``s^2 = (1-z)^2 - c^2``
    """
    c = float(spec.c)
    z = float(z)
    n = spec.n
    u = 1 - z
    if spec.direction is Direction.FORWARD:
        q, lead = c * z, 1.0
    else:
        q, lead = c, z
    if spec.kind is Kind.J:
        s2 = u * u + q * q
    else:
        s2 = (u - q) * (u + q)
    if s2 <= 0:
        raise DomainError(f"branch point or complex value at z={z}")
    s = math.sqrt(s2)
    den = s + u
    if den == 0:
        raise DomainError(f"pole at z={z}")
    return lead * (q / den) ** n / s


def constant_term_offset(spec: BesselSpec, z: float, what: str = "laplace") -> float:
    """``series - closed`` implied by the missing ``t = 0`` term (0 unless backward, n = 0)."""
    if spec.direction is Direction.FORWARD or spec.n != 0:
        return 0.0
    return 1.0 / (1 - z) if what == "laplace" else 1.0


# ---------------------------------------------------------------------------
# series


def _window(spec: BesselSpec) -> int:
    # J terms oscillate; look at a full period before trusting small terms
    if spec.kind is Kind.J:
        return int(math.ceil(2 * math.pi / theta_of(spec.c))) + 2
    return 2


def _sum_weighted(spec: BesselSpec, first_weight: scaled.Scaled, step: scaled.Scaled,
                  rho: float, tol: float, max_terms: int) -> tuple[float, int]:
    """Sum ``x(t) * first_weight * step^t`` over ``t >= 0``."""
    window = _window(spec)
    recent: list[float] = []
    weight = first_weight
    total = 0.0
    comp = 0.0  # Neumaier compensation
    for t in range(max_terms):
        term = (evaluate_scaled(spec, t) * weight).value
        y = total + term
        if abs(total) >= abs(term):
            comp += (total - y) + term
        else:
            comp += (term - y) + total
        total = y
        recent.append(abs(term))
        if len(recent) > window:
            recent.pop(0)
        s = abs(total + comp)
        if t >= window and s > 0 and rho < 1:
            if max(recent) / (1 - rho) <= tol * s:
                return total + comp, t + 1
        weight = weight * step
    raise ConvergenceError(f"series not converged within {max_terms} terms",
                           partial=SeriesResult(total + comp, max_terms, math.inf))


def laplace_series(spec: BesselSpec, z: float, tol: float = DEFAULT_TOL,
                   max_terms: int = DEFAULT_MAX_TERMS) -> LaplaceEval:
    z = float(z)
    if not laplace_in_region(spec, z):
        raise RegionError(f"z={z} is outside the convergence region")
    if spec.direction is Direction.FORWARD:
        step = scaled.from_float(1.0 / (1 + z))
        first = step
    else:
        step = scaled.from_float(1 - z)
        first = scaled.from_float(1.0 / (1 - z))
    rho = _laplace_ratio(spec, z)
    value, used = _sum_weighted(spec, first, step, rho, tol, max_terms)
    return LaplaceEval(spec, z, laplace_closed(spec, z), value, used, True)


def laplace_eval(spec: BesselSpec, z: float, tol: float = DEFAULT_TOL,
                 max_terms: int = DEFAULT_MAX_TERMS) -> LaplaceEval:
    """Like :func:`laplace_series` but flags out-of-region points instead of raising."""
    try:
        closed = laplace_closed(spec, z)
    except DomainError:
        closed = math.nan
    if not laplace_in_region(spec, z):
        return LaplaceEval(spec, float(z), closed, math.nan, 0, False)
    return laplace_series(spec, z, tol, max_terms)


def genfun_series(spec: BesselSpec, z: float, tol: float = DEFAULT_TOL,
                  max_terms: int = DEFAULT_MAX_TERMS) -> SeriesResult:
    z = float(z)
    if not genfun_in_region(spec, z):
        raise RegionError(f"|z|={abs(z)} is not inside radius {genfun_radius(spec)}")
    if z == 0:
        return SeriesResult(evaluate_scaled(spec, 0).value, 1, 0.0)
    rho = abs(z) / genfun_radius(spec)
    value, used = _sum_weighted(spec, scaled.from_float(1.0), scaled.from_float(z), rho, tol, max_terms)
    return SeriesResult(value, used, tol * abs(value))
