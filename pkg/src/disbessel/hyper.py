"""Gauss hypergeometric 2F1 on the real line, plus Pochhammer and log-gamma helpers.

Three evaluation routes are used:

* terminating parameters: the finite sum is computed exactly in integer
  arithmetic (floats are exact binary rationals), then rounded once;
* ``z < 0``: the Pfaff transformation
  ``F(a, b; g; z) = (1 - z)**(-a) * F(a, g - b; g; z / (z - 1))`` maps the
  argument into ``(0, 1)``; when ``g - b`` (or ``g - a`` after swapping) is a
  nonpositive integer the transformed series terminates and is summed exactly;
* ``0 <= z < 1``: the defining power series.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational
from typing import Iterator

import mpmath

from .errors import ConvergenceError, DomainError, PreconditionError

DEFAULT_TOL = 1e-14
DEFAULT_MAX_TERMS = 100_000

# private context: global mpmath precision is never touched, so calls are thread-safe
_LG = mpmath.MPContext()
_LG.prec = 160


def _is_nonpositive_int(x) -> bool:
    if isinstance(x, Rational):
        return x.denominator == 1 and x <= 0
    return float(x).is_integer() and x <= 0


def _exact(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, Rational):
        return Fraction(x.numerator, x.denominator)
    xf = float(x)
    if not math.isfinite(xf):
        raise DomainError(f"non-finite parameter {x!r}")
    return Fraction(xf)


@dataclass(frozen=True)
class Hyp2F1Request:
    a: float
    b: float
    gamma: float
    z: float
    tol: float = DEFAULT_TOL
    max_terms: int = DEFAULT_MAX_TERMS

    def __post_init__(self):
        if _is_nonpositive_int(self.gamma):
            raise DomainError(f"gamma={self.gamma} is a nonpositive integer")
        if not self.tol > 0:
            raise DomainError("tol must be positive")
        if self.max_terms < 1:
            raise DomainError("max_terms must be at least 1")


@dataclass(frozen=True)
class SeriesResult:
    value: float
    terms_used: int
    truncation_bound: float


def pochhammer(x, k: int):
    """Rising factorial ``x (x+1) ... (x+k-1)``; exact zeros survive for x <= 0."""
    if k < 0:
        raise PreconditionError("k must be nonnegative")
    out = 1
    for j in range(k):
        out *= x + j
    return out


def ln_gamma_ratio(num, den) -> float:
    """``sum(lnGamma(num)) - sum(lnGamma(den))`` for positive arguments.

    Differences of large log-gammas cancel badly in double precision, so the
    sum is formed at 160 bits and rounded once.
    """
    args = list(num) + list(den)
    if any(not (float(x) > 0) for x in args):
        raise DomainError("ln_gamma_ratio needs positive arguments")
    ctx = _LG
    total = ctx.mpf(0)
    for x in num:
        total += ctx.loggamma(ctx.mpf(x))
    for x in den:
        total -= ctx.loggamma(ctx.mpf(x))
    return float(total)


def _terminating_parts(a: Fraction, b: Fraction, g: Fraction, z: Fraction, m: int):
    """Unreduced ``(num, den)`` of ``sum_{k<=m} (a)_k (b)_k / ((g)_k k!) z**k``.

    Nested Horner form ``1 + r_0 z (1 + r_1 z (1 + ...))`` keeps every step an
    integer multiply-add, so no gcd is taken until the caller wants one.
    """
    an, ad = a.numerator, a.denominator
    bn, bd = b.numerator, b.denominator
    gn, gd = g.numerator, g.denominator
    zn, zd = z.numerator, z.denominator
    sn, sd = 1, 1
    for k in range(m - 1, -1, -1):
        rn = (an + k * ad) * (bn + k * bd) * gd * zn
        rd = (gn + k * gd) * (k + 1) * ad * bd * zd
        if rd == 0:
            raise DomainError("gamma + k vanishes inside the terminating range")
        sn, sd = rd * sd + rn * sn, rd * sd
    return sn, sd


def _termination_order(a, b) -> int:
    orders = [-int(x) for x in (a, b) if _is_nonpositive_int(x)]
    if not orders:
        raise PreconditionError("neither a nor b is a nonpositive integer")
    return min(orders)


def hyp2f1_terminating(a, b, gamma, z):
    """Finite 2F1 sum; returns a Fraction for rational input, else a float."""
    m = _termination_order(a, b)
    exact_in = all(isinstance(x, Rational) for x in (a, b, gamma, z))
    fa, fb, fg, fz = (_exact(x) for x in (a, b, gamma, z))
    if any(_is_nonpositive_int(fg + k) for k in range(m)):
        raise DomainError("(gamma)_k vanishes before the series terminates")
    num, den = _terminating_parts(fa, fb, fg, fz, m)
    if exact_in:
        return Fraction(num, den)
    return num / den


def _direct_terms(a: float, b: float, g: float, z: float) -> Iterator[tuple[float, float]]:
    """Yield ``(term_k, ratio_k)`` where ``ratio_k = term_{k+1} / term_k``."""
    term = 1.0
    k = 0
    while True:
        r = (a + k) * (b + k) / ((g + k) * (k + 1)) * z
        yield term, r
        term *= r
        k += 1


def partial_sums(a: float, b: float, g: float, z: float, count: int) -> list[float]:
    """First ``count`` partial sums of the defining series (diagnostics)."""
    out = []
    s = 0.0
    for k, (term, _) in enumerate(_direct_terms(a, b, g, z)):
        if k >= count:
            break
        s += term
        out.append(s)
    return out


def _sum_series(a: float, b: float, g: float, z: float, tol: float, max_terms: int) -> SeriesResult:
    s = 0.0
    quiet = 0
    used = 0
    for term, r in _direct_terms(a, b, g, z):
        s += term
        used += 1
        if term == 0.0:
            return SeriesResult(s, used, 0.0)
        if abs(term) < tol * abs(s):
            quiet += 1
        else:
            quiet = 0
        if quiet >= 2:
            # ratios approach |z| monotonically once k exceeds the parameters
            rho = max(abs(r), abs(z))
            if rho < 1.0:
                return SeriesResult(s, used, abs(term) * rho / (1.0 - rho))
        if used >= max_terms:
            break
    raise ConvergenceError(
        f"2F1({a}, {b}; {g}; {z}) not converged after {max_terms} terms",
        partial=SeriesResult(s, used, math.inf),
    )


def _pfaff_log_prefactor(a: float, z: float) -> float:
    return -float(a) * math.log1p(-float(z))


def hyp2f1_pfaff(request: Hyp2F1Request) -> SeriesResult:
    """Evaluate at ``z < 0`` through the Pfaff transformation."""
    a, b, g, z = request.a, request.b, request.gamma, request.z
    if not z < 0:
        raise PreconditionError("Pfaff route needs z < 0")
    if _is_nonpositive_int(g - b) or _is_nonpositive_int(a):
        lead, paired = a, b
    elif _is_nonpositive_int(g - a) or _is_nonpositive_int(b):
        lead, paired = b, a
    else:
        lead, paired = a, b
    other = g - paired
    fz = _exact(z)
    w = fz / (fz - 1)
    scale = math.exp(_pfaff_log_prefactor(lead, z))
    if _is_nonpositive_int(lead) or _is_nonpositive_int(other):
        # g - paired formed exactly; the inner sum cancels heavily
        shifted = _exact(g) - _exact(paired)
        inner = hyp2f1_terminating(_exact(lead), shifted, _exact(g), w)
        m = _termination_order(lead, other)
        return SeriesResult(float(inner) * scale, m + 1, 0.0)
    inner = _sum_series(float(lead), float(other), float(g), float(w),
                        request.tol, request.max_terms)
    return SeriesResult(inner.value * scale, inner.terms_used, inner.truncation_bound * scale)


def hyp2f1(request: Hyp2F1Request) -> SeriesResult:
    """Dispatch to the terminating, Pfaff or direct route."""
    a, b, g, z = request.a, request.b, request.gamma, request.z
    if _is_nonpositive_int(a) or _is_nonpositive_int(b):
        value = hyp2f1_terminating(a, b, g, z)
        return SeriesResult(float(value), _termination_order(a, b) + 1, 0.0)
    if z < 0:
        return hyp2f1_pfaff(request)
    if z < 1:
        return _sum_series(float(a), float(b), float(g), float(z), request.tol, request.max_terms)
    raise DomainError(f"nonterminating 2F1 at z={z} >= 1 is not supported")
