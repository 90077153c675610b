"""Floating values carried as ``mantissa * 2**exp2``.

Discrete Bessel values grow or decay geometrically in ``t``; at the horizons
used for asymptotic checks (``t`` in the thousands) they leave the IEEE double
range. Keeping a separate binary exponent lets exact integer results be rounded
once and compared in log space without overflow.
"""

from __future__ import annotations

import math
from typing import NamedTuple

_LN2 = math.log(2.0)


class Scaled(NamedTuple):
    mantissa: float
    exp2: int

    @property
    def value(self) -> float:
        """Plain float; saturates to +-inf / 0 outside the double range."""
        if self.mantissa == 0.0:
            return 0.0
        try:
            return math.ldexp(self.mantissa, self.exp2)
        except OverflowError:
            return math.copysign(math.inf, self.mantissa)

    @property
    def sign(self) -> int:
        return (self.mantissa > 0) - (self.mantissa < 0)

    @property
    def log_abs(self) -> float:
        if self.mantissa == 0.0:
            return -math.inf
        return math.log(abs(self.mantissa)) + self.exp2 * _LN2

    def __mul__(self, other):  # type: ignore[override]
        if isinstance(other, Scaled):
            return normalize(self.mantissa * other.mantissa, self.exp2 + other.exp2)
        return normalize(self.mantissa * float(other), self.exp2)

    __rmul__ = __mul__

    def __neg__(self):
        return Scaled(-self.mantissa, self.exp2)


ZERO = Scaled(0.0, 0)


def normalize(mantissa: float, exp2: int = 0) -> Scaled:
    if mantissa == 0.0 or not math.isfinite(mantissa):
        return Scaled(mantissa, 0 if mantissa == 0.0 else exp2)
    m, e = math.frexp(mantissa)
    return Scaled(m, exp2 + e)


def from_float(x: float) -> Scaled:
    return normalize(float(x), 0)


def from_ratio(num: int, den: int) -> Scaled:
    """Correctly rounded ``num/den`` for arbitrarily large integers."""
    if den == 0:
        raise ZeroDivisionError("zero denominator")
    if num == 0:
        return ZERO
    negative = (num < 0) != (den < 0)
    num, den = abs(num), abs(den)
    shift = num.bit_length() - den.bit_length()
    # quotient lands in (1/2, 2) so int true division is exact-rounded and finite
    if shift >= 0:
        q = num / (den << shift)
    else:
        q = (num << -shift) / den
    return normalize(-q if negative else q, shift)


def sqrt_ratio(num: int, den: int) -> Scaled:
    """Correctly rounded ``sqrt(num/den)`` for nonnegative integer ratios."""
    if den <= 0 or num < 0:
        raise ValueError("sqrt_ratio needs num >= 0 and den > 0")
    if num == 0:
        return ZERO
    # scale by 4**k so the integer root carries about 64 bits
    k = (128 - (num.bit_length() - den.bit_length())) // 2 + 1
    if k >= 0:
        top, bottom = num << (2 * k), den
    else:
        top, bottom = num, den << (-2 * k)
    root = math.isqrt(top // bottom)
    if root * root * bottom != top:
        root |= 1  # sticky bit; int -> float then rounds once, half to even
    return normalize(float(root), -k)


def from_log(log_abs: float, sign: int = 1) -> Scaled:
    """Build from a natural-log magnitude; precision limited by ``log_abs``."""
    if sign == 0 or log_abs == -math.inf:
        return ZERO
    e = math.floor(log_abs / _LN2)
    return normalize(sign * math.exp(log_abs - e * _LN2), e)


def ratio(a: Scaled, b: Scaled) -> float:
    """``a / b`` as a float, computed without forming either value."""
    if b.mantissa == 0.0:
        raise ZeroDivisionError("division by a zero Scaled value")
    q = a.mantissa / b.mantissa
    try:
        return math.ldexp(q, a.exp2 - b.exp2)
    except OverflowError:
        return math.copysign(math.inf, q)
