"""Reference values for the test suite.

Nothing here calls into :mod:`disbessel.bessel` or :mod:`disbessel.hyper`.
Polynomial values are summed term by term with big-integer factorials; the
backward families at ``t >= 0`` are summed in mpmath at a caller-chosen
precision with a rigorous geometric tail bound; and a third route marches the
backward recurrence in exact rational arithmetic from two seeds.

Exact rationals are ``fractions.Fraction`` (always reduced, positive
denominator). High-precision reals are returned as dyadic ``Fraction``\\ s too,
so they can be compared across threads without sharing an mpmath context.
"""

from __future__ import annotations

import math
from fractions import Fraction

import mpmath

from .errors import ConvergenceError, DomainError, PreconditionError

Rat = Fraction


def _kind(kind) -> str:
    k = getattr(kind, "value", kind)
    k = str(k).upper()
    if k not in ("J", "I"):
        raise DomainError(f"unknown kind {kind!r}")
    return k


def _direction(direction) -> str:
    d = str(getattr(direction, "value", direction)).lower()
    if d not in ("forward", "backward"):
        raise DomainError(f"unknown direction {direction!r}")
    return d


def oracle_poly_eval(kind, direction, n: int, t: int, c) -> Fraction:
    """Finite sum in exact rational arithmetic (forward ``t >= 0`` or backward ``t < 0``)."""
    kind, direction = _kind(kind), _direction(direction)
    c = Fraction(c)
    if direction == "forward" and t >= 0:
        tt, outer = t, 1
    elif direction == "backward" and t < 0:
        tt, outer = -t, (-1) ** n
    else:
        raise PreconditionError("not a polynomial regime")
    if n > tt:
        return Fraction(0)
    total = Fraction(0)
    for k in range((tt - n) // 2 + 1):
        coef = Fraction(math.factorial(tt),
                        math.factorial(k) * math.factorial(tt - 2 * k - n) * math.factorial(n + k))
        term = coef * (c / 2) ** (2 * k + n)
        total += -term if kind == "J" and k % 2 else term
    return outer * total


def _to_fraction(x) -> Fraction:
    sign, man, exp, _ = x._mpf_
    if not man:
        return Fraction(0)
    value = Fraction(man) * Fraction(2) ** exp
    return -value if sign else value


def _series(ctx, a, b, g, z, target_bits: int, max_terms: int):
    """Sum 2F1(a, b; g; z) for 0 <= z < 1; returns (sum, largest |term|)."""
    s = ctx.mpf(0)
    term = ctx.mpf(1)
    biggest = ctx.mpf(0)
    eps = ctx.ldexp(1, -target_bits)
    for k in range(max_terms):
        s += term
        biggest = max(biggest, abs(term))
        if term == 0:
            return s, biggest
        r = (a + k) * (b + k) / ((g + k) * (k + 1)) * z
        # once b + j >= 0, every later ratio is below rho (each factor is monotone in j)
        if b + k >= 0:
            rho = z * max(1, (a + k) / (k + 1)) * max(1, abs(b + k) / (g + k))
            if rho < 1 and abs(term) * rho / (1 - rho) <= eps * abs(s):
                return s, biggest
        term *= r
    raise ConvergenceError(f"oracle series not converged in {max_terms} terms")


def oracle_backward_series(kind, n: int, t: int, c, precision_bits: int = 100,
                           max_terms: int = 200_000) -> Fraction:
    """Backward family at ``t >= 0`` to about ``precision_bits`` relative bits.

    J: ``(c/2)^n (t)_n/n! (1+c^2)^(-a) F(a, (n-t+1)/2; n+1; c^2/(1+c^2))``,
    I: ``(c/2)^n (t)_n/n! F(a, a+1/2; n+1; c^2)``, with ``a = (n+t)/2``.
    Working precision is raised until the cancellation inside the sum is covered.
    """
    kind = _kind(kind)
    c = Fraction(c)
    if t < 0:
        raise PreconditionError("oracle_backward_series needs t >= 0")
    if c == 0:
        raise DomainError("c must be nonzero")
    if kind == "I" and abs(c) >= 1:
        raise DomainError("backward I needs |c| < 1")
    if t == 0:
        return Fraction(1 if n == 0 else 0)
    ctx = mpmath.MPContext()
    guard = 32
    while True:
        ctx.prec = precision_bits + guard
        cc = ctx.mpf(c.numerator) / c.denominator
        a = ctx.mpf(n + t) / 2
        pre = (cc / 2) ** n * ctx.rf(t, n) / ctx.factorial(n)
        if kind == "J":
            z = cc * cc / (1 + cc * cc)
            s, big = _series(ctx, a, ctx.mpf(n - t + 1) / 2, n + 1, z, precision_bits + 8, max_terms)
            value = pre * (1 + cc * cc) ** (-a) * s
        else:
            s, big = _series(ctx, a, a + ctx.mpf(1) / 2, n + 1, cc * cc, precision_bits + 8, max_terms)
            value = pre * s
        lost = int(ctx.log(big / abs(s), 2)) + 1 if s != 0 else ctx.prec
        if lost + 16 <= guard:
            return _to_fraction(value)
        guard = lost + 48


def oracle_recurrence_extend(kind, n: int, c, seeds, T: int) -> list:
    """March the backward recurrence in exact arithmetic.

    ``seeds`` are ``(y(1), y(2))``; the returned list is ``[y(1), ..., y(T)]``.
    The step at t = 0 has a vanishing leading coefficient, so marching starts
    at t = 1:
    ``t(t+1)(1 + s c^2) y(t+2) = t(2t+1) y(t+1) + (n^2 - t^2) y(t)``,
    ``s = +1`` for J and ``-1`` for I.
    """
    kind = _kind(kind)
    c = Fraction(c)
    sigma = 1 if kind == "J" else -1
    base = 1 + sigma * c * c
    if base == 0:
        raise DomainError("1 - c^2 vanishes")
    ys = [Fraction(seeds[0]), Fraction(seeds[1])]
    for t in range(1, T - 1):
        nxt = (t * (2 * t + 1) * ys[t] + (n * n - t * t) * ys[t - 1]) / (t * (t + 1) * base)
        ys.append(nxt)
    return ys[:max(T, 0)]
