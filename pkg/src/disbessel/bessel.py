"""The four discrete Bessel families and their identities.

``J_n^c(t)`` and ``I_n^c(t)`` (forward) solve the forward-difference Bessel
equation, ``Jbar_n^c(t)`` and ``Ibar_n^c(t)`` (backward) the backward one.

Evaluation strategy, by regime:

=========================  =====================================================
forward, ``t >= 0``        polynomial in ``c``, summed exactly (``polynomial``)
backward, ``t < 0``        ``(-1)**n`` times the forward polynomial at ``-t``
                           (``reflection``)
backward, ``t > n``        Pfaff-transformed 2F1, which terminates; summed
                           exactly and multiplied by one square root
                           (``pfaff-series``)
backward, ``1 <= t <= n``  convergent positive series on ``(0, 1)``
                           (``pfaff-series``)
forward, ``t < 0``         ``(-1)**n`` times the backward value at ``-t``
                           (``reflection``)
=========================  =====================================================

Vanishing values are tagged ``zero``. A float ``c`` is an exact binary
rational, so the exact routes return correctly rounded doubles; a
``Fraction`` ``c`` in a polynomial regime returns an exact ``Fraction``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import lru_cache
from numbers import Rational
from typing import NamedTuple, Optional

from . import hyper, scaled
from .errors import DomainError, PreconditionError
from .scaled import Scaled

_ULP = 2.0 ** -52
# all-positive series: keep adding until terms fall below the last bit
_SERIES_TOL = 2.0 ** -60


class Kind(str, Enum):
    J = "J"
    I = "I"


class Direction(str, Enum):
    FORWARD = "forward"
    BACKWARD = "backward"


class FormulaId(str, Enum):
    FWD_J = "FwdJ"
    BWD_J = "BwdJ"
    BWD_I = "BwdI"
    FWD_I = "FwdI"
    LARGE_N_J = "LargeN_J"
    LARGE_N_I = "LargeN_I"


def _as_kind(k) -> Kind:
    return k if isinstance(k, Kind) else Kind(str(k).upper())


def _as_direction(d) -> Direction:
    return d if isinstance(d, Direction) else Direction(str(d).lower())


@dataclass(frozen=True)
class BesselSpec:
    kind: Kind
    direction: Direction
    n: int
    c: float

    def __post_init__(self):
        object.__setattr__(self, "kind", _as_kind(self.kind))
        object.__setattr__(self, "direction", _as_direction(self.direction))
        if int(self.n) != self.n or self.n < 0:
            raise DomainError(f"order n={self.n} must be a nonnegative integer")
        object.__setattr__(self, "n", int(self.n))
        if not isinstance(self.c, Rational):
            object.__setattr__(self, "c", float(self.c))
            if not math.isfinite(self.c):
                raise DomainError("c must be finite")
        if self.c == 0:
            raise DomainError("c must be nonzero")
        if self.kind is Kind.I and self.direction is Direction.BACKWARD and abs(self.c) >= 1:
            raise DomainError(f"backward I needs |c| < 1, got c={self.c}")


class Evaluation(NamedTuple):
    value: object  # float, or Fraction on the rational path
    method: str
    est_error: float
    scaled: Scaled


class Residual(NamedTuple):
    value: object
    scale: float

    @property
    def relative(self) -> float:
        v = abs(float(self.value))
        return v / self.scale if self.scale else v


@dataclass(frozen=True)
class RationalPoly:
    """Exact coefficients of a family member as a polynomial in ``c``."""

    coefficients: dict
    n: int
    t: int

    def __post_init__(self):
        ell = (abs(self.t) - self.n) // 2
        for e in self.coefficients:
            if (e - self.n) % 2 or not self.n <= e <= self.n + 2 * ell:
                raise PreconditionError(f"exponent {e} outside the polynomial pattern")

    def __call__(self, c):
        return sum(coef * c ** e for e, coef in self.coefficients.items())


class AsympEval(NamedTuple):
    value: float
    theta: Optional[float]
    formula_id: FormulaId
    log_abs: float
    sign: int

    @property
    def scaled(self) -> Scaled:
        return scaled.from_log(self.log_abs, self.sign)


# ---------------------------------------------------------------------------
# exact building blocks


def _frac(c) -> Fraction:
    return c if isinstance(c, Fraction) else Fraction(c)


def _poly_parts(kind: Kind, n: int, t: int, c: Fraction) -> tuple[int, int]:
    """``(num, den)`` of the forward family at ``0 <= n <= t``."""
    ell = (t - n) // 2
    p, q = c.numerator, c.denominator
    big_p, big_q = p * p, 4 * q * q
    coef = math.comb(t, n)
    coeffs = [coef]
    for k in range(ell):
        j = t - 2 * k - n
        coef = coef * j * (j - 1) // ((k + 1) * (n + k + 1))
        coeffs.append(coef)
    alternate = kind is Kind.J
    acc, qpow = 0, 1
    for k in range(ell, -1, -1):
        a_k = -coeffs[k] if alternate and k % 2 else coeffs[k]
        acc = a_k * qpow + big_p * acc
        qpow *= big_q
    return acc * p ** n, big_q ** ell * (2 * q) ** n


def _sqrt_scaled(s: Scaled, base: Fraction, power_half: bool) -> Scaled:
    if not power_half:
        return s
    return scaled.normalize(s.mantissa / math.sqrt(float(base)), s.exp2)


def _backward_terminating(kind: Kind, n: int, t: int, c: Fraction) -> Scaled:
    """Backward family at ``t > n`` via the terminating Pfaff form."""
    sigma = 1 if kind is Kind.J else -1
    c2 = c * c
    base = 1 + sigma * c2
    w = sigma * c2 / base
    if (t - n) % 2:
        lead, m = Fraction(n + t, 2), (t - n - 1) // 2
    else:
        lead, m = Fraction(n + t + 1, 2), (t - n - 2) // 2
    h = lead.numerator // 2  # lead = h + 1/2
    fn, fd = hyper._terminating_parts(lead, Fraction(-m), Fraction(n + 1), w, m)
    binom = math.comb(t + n - 1, n)
    num = fn * c.numerator ** n * binom * base.denominator ** h
    den = fd * (2 * c.denominator) ** n * base.numerator ** h
    # value = (num/den) / sqrt(base), rounded once
    root = scaled.sqrt_ratio(num * num * base.denominator, den * den * base.numerator)
    return -root if (num < 0) != (den < 0) else root


def _backward_series(kind: Kind, n: int, t: int, c: Fraction) -> tuple[Scaled, float]:
    """Backward family at ``1 <= t <= n``; all series terms are positive."""
    c2 = c * c
    binom = math.comb(t + n - 1, n)
    pre_num = c.numerator ** n * binom
    pre_den = (2 * c.denominator) ** n
    if kind is Kind.J:
        base = 1 + c2
        lead = Fraction(n + t, 2)
        other = Fraction(n - t + 1, 2)
        w = c2 / base
        h, half = divmod(n + t, 2)
        pre_num *= base.denominator ** h
        pre_den *= base.numerator ** h
        res = hyper._sum_series(float(lead), float(other), n + 1.0, float(w),
                                _SERIES_TOL, hyper.DEFAULT_MAX_TERMS)
        pre = _sqrt_scaled(scaled.from_ratio(pre_num, pre_den), base, bool(half))
    else:
        lead = Fraction(n + t, 2)
        res = hyper._sum_series(float(lead), float(lead) + 0.5, n + 1.0, float(c2),
                                _SERIES_TOL, hyper.DEFAULT_MAX_TERMS)
        pre = scaled.from_ratio(pre_num, pre_den)
    value = pre * res.value
    rel = res.truncation_bound / abs(res.value) + 4 * res.terms_used * _ULP
    return value, rel


def _backward_nonnegative(kind: Kind, n: int, t: int, c: Fraction) -> tuple[Scaled, str, float]:
    if t == 0:
        return (scaled.from_float(1.0) if n == 0 else scaled.ZERO), "zero" if n else "pfaff-series", 0.0
    if t > n:
        return _backward_terminating(kind, n, t, c), "pfaff-series", _ULP
    value, rel = _backward_series(kind, n, t, c)
    return value, "pfaff-series", rel


@lru_cache(maxsize=1 << 16, typed=True)
def _core(kind: Kind, direction: Direction, n: int, c, t: int):
    """Returns ``(Scaled, method, relative error estimate, exact Fraction or None)``."""
    rational_c = isinstance(c, Rational)
    fc = _frac(c)
    sign = -1 if n % 2 else 1
    forward = direction is Direction.FORWARD
    if (forward and t >= 0) or (not forward and t < 0):
        tt = abs(t)
        if n > tt:
            return scaled.ZERO, "zero", 0.0, (Fraction(0) if rational_c else None)
        num, den = _poly_parts(kind, n, tt, fc)
        if not forward:
            num = sign * num
        exact = Fraction(num, den) if rational_c else None
        return scaled.from_ratio(num, den), ("polynomial" if forward else "reflection"), _ULP, exact
    if not forward:
        value, method, rel = _backward_nonnegative(kind, n, t, fc)
        return value, method, rel, None
    # forward family at negative t
    if kind is Kind.I and abs(fc) >= 1:
        raise DomainError(f"I_n^c(t) for t < 0 needs |c| < 1, got c={c}")
    value, method, rel = _backward_nonnegative(kind, n, -t, fc)
    if method == "zero":
        return value, method, rel, None
    return value * sign, "reflection", rel, None


def _check_t(t) -> int:
    if int(t) != t:
        raise DomainError(f"t={t} must be an integer")
    return int(t)


def evaluate_detailed(spec: BesselSpec, t: int) -> Evaluation:
    value, method, rel, exact = _core(spec.kind, spec.direction, spec.n, spec.c, _check_t(t))
    plain = value.value
    err = abs(plain) * rel if math.isfinite(plain) else math.inf
    return Evaluation(exact if exact is not None else plain, method, err, value)


def evaluate(spec: BesselSpec, t: int):
    """Value of the family member ``spec`` at integer ``t``.

    Returns a float, or an exact ``Fraction`` when ``spec.c`` is rational and
    ``t`` is in a polynomial regime. Values beyond the double range saturate;
    use :func:`evaluate_scaled` there.
    """
    return evaluate_detailed(spec, t).value


def evaluate_scaled(spec: BesselSpec, t: int) -> Scaled:
    return _core(spec.kind, spec.direction, spec.n, spec.c, _check_t(t))[0]


def clear_cache() -> None:
    _core.cache_clear()


# ---------------------------------------------------------------------------
# polynomial forms


def poly_coeffs(kind, direction, n: int, t: int) -> RationalPoly:
    kind, direction = _as_kind(kind), _as_direction(direction)
    if direction is Direction.FORWARD and 0 <= n <= t:
        tt = t
    elif direction is Direction.BACKWARD and t < 0 and n <= -t:
        tt = -t
    else:
        raise PreconditionError(f"({kind.value}, {direction.value}, n={n}, t={t}) is not a polynomial regime")
    ell = (tt - n) // 2
    out = {}
    for k in range(ell + 1):
        mag = Fraction(math.factorial(tt),
                       math.factorial(k) * math.factorial(tt - 2 * k - n) * math.factorial(n + k))
        mag /= 2 ** (2 * k + n)
        if direction is Direction.FORWARD:
            s = (-1) ** k if kind is Kind.J else 1
        else:
            s = (-1) ** (k + n) if kind is Kind.J else (-1) ** n
        out[2 * k + n] = s * mag
    return RationalPoly(out, n, t)


def imaginary_identity_coeffs(n: int, t: int) -> bool:
    """Coefficient-level check of ``I_n^c = (-i)^n J_n^{ic}``."""
    direction = Direction.FORWARD if t >= 0 else Direction.BACKWARD
    pj = poly_coeffs(Kind.J, direction, n, t).coefficients
    pi = poly_coeffs(Kind.I, direction, n, t).coefficients
    if pj.keys() != pi.keys():
        return False
    return all(pi[e] == (-1) ** ((e - n) // 2) * pj[e] for e in pj)


# ---------------------------------------------------------------------------
# defining equations and identities


def _spec(kind, direction, n, c) -> BesselSpec:
    return BesselSpec(_as_kind(kind), _as_direction(direction), n, c)


def residual_forward(kind, n: int, t: int, c) -> Residual:
    """Residual of the forward-difference Bessel equation at ``t >= 0``."""
    if t < 0:
        raise PreconditionError("residual_forward needs t >= 0")
    spec = _spec(kind, Direction.FORWARD, n, c)
    sigma = 1 if spec.kind is Kind.J else -1
    y0 = evaluate(spec, t)
    terms = [-(n * n) * y0]
    if t >= 1:
        y1 = evaluate(spec, t - 1)
        terms.append(t * (y0 - y1))
    if t >= 2:
        y2 = evaluate(spec, t - 2)
        terms.append(t * (t - 1) * (y0 - 2 * y1 + y2))
        terms.append(sigma * spec.c * spec.c * t * (t - 1) * y2)
        scale = max(abs(float(x)) for x in (t * t * y0, n * n * y0, t * (2 * t - 1) * y1,
                                            t * (t - 1) * (1 + abs(float(spec.c)) ** 2) * y2))
    else:
        scale = max(abs(float(x)) for x in terms)
    return Residual(sum(terms), scale)


def residual_backward(kind, n: int, t: int, c) -> Residual:
    """Residual of the expanded backward equation at ``t >= 1``."""
    if t < 1:
        raise PreconditionError("residual_backward needs t >= 1")
    spec = _spec(kind, Direction.BACKWARD, n, c)
    sigma = 1 if spec.kind is Kind.J else -1
    y0, y1, y2 = (evaluate(spec, t + j) for j in range(3))
    parts = (t * (t + 1) * (1 + sigma * spec.c * spec.c) * y2,
             -t * (2 * t + 1) * y1,
             (t * t - n * n) * y0)
    return Residual(sum(parts), max(abs(float(p)) for p in parts))


def lemma_residuals(n: int, t: int, c) -> dict:
    """Residuals of the backward-J transformation laws that apply at ``(n, t)``."""
    def jb(order, s):
        return evaluate(_spec(Kind.J, Direction.BACKWARD, order, c), s)

    out = {}
    if t == 0 and n == 0:
        out["i"] = Residual(jb(0, 0) - 1, 1.0)
    if t >= 1:
        parts = (jb(0, t) - jb(0, t - 1), c * jb(1, t))
        out["ii"] = Residual(parts[0] + parts[1], max(abs(float(x)) for x in (*parts, jb(0, t))))
    if t >= 0:
        d = t * (jb(n, t + 1) - jb(n, t))
        parts = (d, -n * jb(n, t), c * t * jb(n + 1, t + 1))
        out["iii"] = Residual(sum(parts), max(abs(float(x)) for x in (*parts, t * jb(n, t))))
        if n >= 1:
            parts = (d, n * jb(n, t), -c * t * jb(n - 1, t + 1))
            out["iv"] = Residual(sum(parts), max(abs(float(x)) for x in (*parts, t * jb(n, t))))
    if n >= 1 and t >= 1:
        lhs = jb(n, t) - jb(n, t - 1)
        a, b = jb(n - 1, t), jb(n + 1, t)
        out["v"] = Residual(lhs - c / 2 * (a - b), max(abs(float(x)) for x in (lhs, jb(n, t), c * a, c * b)))
    return out


def definition_value(kind, direction, n: int, t: int, c) -> float:
    """Value straight from the hypergeometric definition, via the generic 2F1 dispatcher.

    Independent of the regime dispatch in :func:`evaluate`; used to cross-check
    the reflection identities.
    """
    spec = _spec(kind, direction, n, c)
    fc = _frac(spec.c)
    z = -fc * fc if spec.kind is Kind.J else fc * fc
    if spec.direction is Direction.FORWARD:
        pre = (-fc / 2) ** n * hyper.pochhammer(Fraction(-t), n) / math.factorial(n)
        a = Fraction(n - t, 2)
    else:
        pre = (fc / 2) ** n * hyper.pochhammer(Fraction(t), n) / math.factorial(n)
        a = Fraction(n + t, 2)
    if pre == 0:
        return 0.0
    res = hyper.hyp2f1(hyper.Hyp2F1Request(a, a + Fraction(1, 2), Fraction(n + 1), z))
    return float(pre) * res.value


def reflection_check(kind, n: int, t: int, c) -> Residual:
    """``|Xbar_n^c(t) - (-1)^n X_n^c(-t)|`` with each side from its own route."""
    lhs = float(evaluate(_spec(kind, Direction.BACKWARD, n, c), t))
    rhs = (-1) ** n * definition_value(kind, Direction.FORWARD, n, -t, c)
    return Residual(abs(lhs - rhs), max(abs(lhs), abs(rhs)))


# ---------------------------------------------------------------------------
# asymptotics


def theta_of(c: float) -> float:
    """Angle in (0, pi/2) with ``cos(theta) = (1 + c^2)^(-1/2)``."""
    return math.atan(abs(float(c)))


def _signed_exp(log_abs: float, sign: int) -> float:
    try:
        return sign * math.exp(log_abs)
    except OverflowError:
        return math.copysign(math.inf, sign)


def asymp_value(spec: BesselSpec, t: int) -> AsympEval:
    """Leading large-``t`` behaviour of the family member ``spec``.

    For the oscillatory J families the phase carries ``-n*pi/2``; with
    ``+n*pi/2`` every odd order comes out with the wrong sign.
    """
    if t <= 0:
        raise DomainError("asymptotic formulas need t > 0")
    c = float(spec.c)
    ac = abs(c)
    n = spec.n
    sign = -1 if (c < 0 and n % 2) else 1
    if spec.kind is Kind.J:
        theta = theta_of(c)
        if spec.direction is Direction.FORWARD:
            fid, expo, phase = FormulaId.FWD_J, t / 2 + 0.25, (t + 0.5) * theta
        else:
            fid, expo, phase = FormulaId.BWD_J, -t / 2 + 0.25, (t - 0.5) * theta
        cos_phase = math.cos(phase - math.pi / 4 - n * math.pi / 2)
        if cos_phase == 0.0:
            return AsympEval(0.0, theta, fid, -math.inf, 0)
        log_abs = (0.5 * math.log(2.0 / (math.pi * t * ac)) + expo * math.log1p(c * c)
                   + math.log(abs(cos_phase)))
        sign *= 1 if cos_phase > 0 else -1
        return AsympEval(_signed_exp(log_abs, sign), theta, fid, log_abs, sign)
    if spec.direction is Direction.FORWARD:
        fid = FormulaId.FWD_I
        log_abs = (t + 0.5) * math.log1p(ac)
    else:
        fid = FormulaId.BWD_I
        log_abs = (-t + 0.5) * math.log1p(-ac)
    log_abs -= 0.5 * math.log(2 * math.pi * t * ac)
    return AsympEval(_signed_exp(log_abs, sign), None, fid, log_abs, sign)


def asymp_cos_phase(spec: BesselSpec, t: int) -> float:
    """Cosine factor of the oscillatory formulas (1.0 for the I families)."""
    if spec.kind is Kind.I:
        return 1.0
    theta = theta_of(spec.c)
    shift = 0.5 if spec.direction is Direction.FORWARD else -0.5
    return math.cos((t + shift) * theta - math.pi / 4 - spec.n * math.pi / 2)


def large_n_log_abs(kind, t: int, n: int, c: float) -> float:
    """Natural log of the magnitude of the large-order formula."""
    kind = _as_kind(kind)
    c = float(c)
    sigma = 1 if kind is Kind.J else -1
    base = 1 + sigma * c * c
    rate = math.log((1 + math.sqrt(base)) / abs(c))
    return ((t - 1) * math.log(n) - 0.5 * t * math.log(base)
            + hyper.ln_gamma_ratio([], [t]) - n * rate)


def asymp_large_n(spec: BesselSpec, t: int) -> float:
    """Large-order behaviour of a backward family at fixed ``t >= 1`` (order ``spec.n``)."""
    if spec.direction is not Direction.BACKWARD:
        raise PreconditionError("large-order asymptotics are for the backward families")
    if t < 1:
        raise DomainError("large-order formula needs t >= 1")
    if spec.n == 0:
        return 0.0
    sign = -1 if (spec.c < 0 and spec.n % 2) else 1
    return _signed_exp(large_n_log_abs(spec.kind, t, spec.n, spec.c), sign)


# name used throughout the documentation and the command line
eval = evaluate  # noqa: A001
