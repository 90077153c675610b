"""Discrete wave equation on the integers.

Forward time differences give an explicit scheme with finite propagation
speed; backward time differences give an implicit scheme solved by a
tridiagonal sweep each step. Fundamental solutions are discrete Bessel
functions with order ``2|n|`` and parameter ``2c``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Iterable, NamedTuple, Optional, Sequence

import numpy as np

from .bessel import BesselSpec, Direction, Kind, evaluate, large_n_log_abs
from .errors import ConfigurationError, FitError, PreconditionError

SAFETY = 10.0


class Scheme(str, Enum):
    FORWARD = "forward"
    BACKWARD = "backward"


def _as_scheme(s) -> Scheme:
    return s if isinstance(s, Scheme) else Scheme(str(getattr(s, "value", s)).lower())


@dataclass(frozen=True)
class SequenceWindow:
    """Finitely supported sequence: ``values[i]`` sits at index ``offset + i``."""

    offset: int
    values: tuple

    def __post_init__(self):
        vals = tuple(self.values)
        if not vals:
            raise ConfigurationError("a sequence window needs at least one value")
        if not all(math.isfinite(float(v)) for v in vals):
            raise ConfigurationError("sequence values must be finite")
        object.__setattr__(self, "values", vals)
        object.__setattr__(self, "offset", int(self.offset))

    @classmethod
    def delta(cls, at: int = 0, weight=1.0) -> "SequenceWindow":
        return cls(at, (weight,))

    @classmethod
    def zeros(cls) -> "SequenceWindow":
        return cls(0, (0.0,))

    @classmethod
    def from_mapping(cls, items: dict) -> "SequenceWindow":
        if not items:
            return cls.zeros()
        lo, hi = min(items), max(items)
        return cls(lo, tuple(items.get(k, 0.0) for k in range(lo, hi + 1)))

    def __getitem__(self, k: int):
        i = k - self.offset
        return self.values[i] if 0 <= i < len(self.values) else 0.0

    def items(self):
        """Nonzero ``(index, value)`` pairs."""
        return [(self.offset + i, v) for i, v in enumerate(self.values) if v != 0]

    @property
    def support_radius(self) -> int:
        idx = [k for k, _ in self.items()]
        return max((abs(k) for k in idx), default=0)

    def scale(self, alpha) -> "SequenceWindow":
        return SequenceWindow(self.offset, tuple(alpha * v for v in self.values))

    def __add__(self, other: "SequenceWindow") -> "SequenceWindow":
        lo = min(self.offset, other.offset)
        hi = max(self.offset + len(self.values), other.offset + len(other.values))
        return SequenceWindow(lo, tuple(self[k] + other[k] for k in range(lo, hi)))


def backward_tail_bound(c: float, order: int, horizon: int) -> float:
    """Bound on ``sum_{m >= order} |Jbar_m^{2c}(t)|`` over ``1 <= t <= horizon``.

    Uses the large-order asymptotic with ``SAFETY`` as a margin and sums the
    geometric tail in the order.
    """
    if order < 1:
        return math.inf
    rate = math.log((1 + math.sqrt(1 + 4 * c * c)) / (2 * c))
    worst = max(large_n_log_abs(Kind.J, t, order, 2 * c) for t in range(1, horizon + 1))
    return SAFETY * math.exp(worst) / -math.expm1(-rate)


def backward_radius_needed(c: float, horizon: int, support: int, tol: float) -> int:
    """Smallest radius whose truncation tail is below ``tol``."""
    k = max(1, math.ceil(horizon / 2))
    while backward_tail_bound(c, 2 * k, horizon) >= tol:
        k *= 2
    lo, hi = k // 2, k
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if backward_tail_bound(c, 2 * mid, horizon) < tol:
            hi = mid
        else:
            lo = mid
    return support + hi


@dataclass(frozen=True)
class WaveConfig:
    scheme: Scheme
    c: float
    radius: int
    horizon: int
    truncation_tol: float = 1e-12
    init_u0: SequenceWindow = field(default_factory=SequenceWindow.delta)
    init_v0: SequenceWindow = field(default_factory=SequenceWindow.zeros)

    def __post_init__(self):
        object.__setattr__(self, "scheme", _as_scheme(self.scheme))
        if not self.c > 0:
            raise ConfigurationError("propagation speed c must be positive")
        if self.radius < 1 or self.horizon < 1:
            raise ConfigurationError("radius and horizon must be at least 1")
        if not self.truncation_tol > 0:
            raise ConfigurationError("truncation_tol must be positive")
        support = self.support
        if support > self.radius:
            raise ConfigurationError("initial data lies outside the spatial window")
        need = self.radius_needed()
        if self.radius < need:
            raise ConfigurationError(
                f"radius {self.radius} too small for the {self.scheme.value} scheme; need >= {need}")

    @property
    def support(self) -> int:
        return max(self.init_u0.support_radius, self.init_v0.support_radius)

    def radius_needed(self) -> int:
        if self.scheme is Scheme.FORWARD:
            return math.ceil(self.horizon / 2) + self.support
        return backward_radius_needed(float(self.c), self.horizon, self.support, self.truncation_tol)


class WaveGrid:
    """Field ``u(n; t)`` for ``n`` in ``[-N, N]`` and ``t`` in ``[-1, T]``.

    ``last_t`` is the latest populated row. The forward scheme never uses
    row ``-1``; it holds NaN there (zero in exact mode). With a ``Fraction``
    speed the forward scheme runs on ``Fraction`` entries.
    """

    def __init__(self, config: WaveConfig):
        self.config = config
        N, T = config.radius, config.horizon
        # rational c on the explicit scheme: step in exact arithmetic
        self.exact = config.scheme is Scheme.FORWARD and isinstance(config.c, Fraction)
        conv = Fraction if self.exact else float
        self.values = np.zeros((2 * N + 1, T + 2), dtype=object if self.exact else float)
        u0 = np.array([conv(config.init_u0[n]) for n in range(-N, N + 1)])
        v0 = np.array([conv(config.init_v0[n]) for n in range(-N, N + 1)])
        self.values[:, 1] = u0
        if config.scheme is Scheme.FORWARD:
            self.values[:, 0] = Fraction(0) if self.exact else np.nan
            self.values[:, 2] = u0 + v0
            self.last_t = 1
        else:
            self.values[:, 0] = u0 - v0
            self.last_t = 0

    def row(self, t: int) -> np.ndarray:
        return self.values[:, t + 1]

    def at(self, n: int, t: int):
        v = self.values[n + self.config.radius, t + 1]
        return v if self.exact else float(v)

    @property
    def ns(self) -> range:
        return range(-self.config.radius, self.config.radius + 1)


def _laplacian(u: np.ndarray) -> np.ndarray:
    out = -2 * u
    out[1:] += u[:-1]
    out[:-1] += u[1:]
    return out


def step_forward(grid: WaveGrid) -> WaveGrid:
    """Fill row ``last_t + 1`` from the two rows before it (in place)."""
    if grid.config.scheme is not Scheme.FORWARD:
        raise PreconditionError("step_forward needs a forward-scheme grid")
    t = grid.last_t - 1
    if t + 2 > grid.config.horizon:
        raise PreconditionError("grid is already at the horizon")
    c2 = grid.config.c ** 2 if grid.exact else float(grid.config.c) ** 2
    u_t, u_t1 = grid.row(t), grid.row(t + 1)
    grid.values[:, t + 3] = 2 * u_t1 - u_t + c2 * _laplacian(u_t)
    grid.last_t = t + 2
    return grid


def thomas_constant(diag: float, off: float, rhs: np.ndarray) -> np.ndarray:
    """Solve the symmetric Toeplitz tridiagonal system ``off*x[i-1] + diag*x[i] + off*x[i+1] = rhs``.

    Plain Gaussian elimination without pivoting; safe because
    ``|diag| > 2|off|``.
    """
    m = len(rhs)
    cp = np.empty(m)
    dp = np.empty(m)
    cp[0] = off / diag
    dp[0] = rhs[0] / diag
    for i in range(1, m):
        denom = diag - off * cp[i - 1]
        cp[i] = off / denom
        dp[i] = (rhs[i] - off * dp[i - 1]) / denom
    x = np.empty(m)
    x[-1] = dp[-1]
    for i in range(m - 2, -1, -1):
        x[i] = dp[i] - cp[i] * x[i + 1]
    return x


def step_backward(grid: WaveGrid) -> WaveGrid:
    """Fill row ``last_t + 1`` by one implicit solve (in place)."""
    if grid.config.scheme is not Scheme.BACKWARD:
        raise PreconditionError("step_backward needs a backward-scheme grid")
    t = grid.last_t + 1
    if t > grid.config.horizon:
        raise PreconditionError("grid is already at the horizon")
    c2 = float(grid.config.c) ** 2
    rhs = 2 * grid.row(t - 1) - grid.row(t - 2)
    grid.values[:, t + 1] = thomas_constant(1 + 2 * c2, -c2, rhs)
    grid.last_t = t
    return grid


def simulate(config: WaveConfig) -> WaveGrid:
    grid = WaveGrid(config)
    step = step_forward if config.scheme is Scheme.FORWARD else step_backward
    while grid.last_t < config.horizon:
        step(grid)
    return grid


def scheme_residual(grid: WaveGrid) -> float:
    """Largest interior residual of the scheme's difference equation, relative to the row scale."""
    c2 = float(grid.config.c) ** 2
    worst = 0.0
    lo = 0 if grid.config.scheme is Scheme.FORWARD else 1
    for t in range(lo, grid.last_t + (1 if lo else -1)):
        if grid.config.scheme is Scheme.FORWARD:
            a, b, d = grid.row(t), grid.row(t + 1), grid.row(t + 2)
            r = d - 2 * b + a - c2 * _laplacian(a)
            scale = max(np.abs(a).max(), np.abs(b).max(), np.abs(d).max(), 1e-300)
            inner = r[1:-1]
        else:
            a, b, d = grid.row(t - 2), grid.row(t - 1), grid.row(t)
            r = d - 2 * b + a - c2 * _laplacian(d)
            scale = max(np.abs(a).max(), np.abs(b).max(), np.abs(d).max(), 1e-300)
            inner = r[1:-1]
        worst = max(worst, float(np.abs(inner).max()) / scale)
    return worst


# ---------------------------------------------------------------------------
# closed-form solutions


def fundamental1(scheme, n: int, t: int, c):
    """Solution for delta displacement and zero velocity."""
    scheme = _as_scheme(scheme)
    if not c > 0:
        raise ConfigurationError("c must be positive")
    if t < 0:
        raise PreconditionError("fundamental1 needs t >= 0")
    direction = Direction.FORWARD if scheme is Scheme.FORWARD else Direction.BACKWARD
    return evaluate(BesselSpec(Kind.J, direction, 2 * abs(n), 2 * c), t)


def fundamental2_backward(n: int, t: int, c):
    """Backward-scheme solution for zero displacement and delta velocity."""
    if t < -1:
        raise PreconditionError("fundamental2_backward needs t >= -1")
    if not c > 0:
        raise ConfigurationError("c must be positive")
    spec = BesselSpec(Kind.J, Direction.BACKWARD, 2 * abs(n), 2 * c)
    total = sum((evaluate(spec, s) for s in range(t + 1)), 0 * c)
    return total - evaluate(spec, -1)


def general_solution(n: int, t: int, cfg: WaveConfig):
    """Backward-scheme solution for the configured initial data, by convolution.

    Initial data are finitely supported, so the convolution sum is finite.
    """
    if cfg.scheme is not Scheme.BACKWARD:
        raise PreconditionError("the convolution formula is for the backward scheme")
    if t < 0:
        raise PreconditionError("general_solution needs t >= 0")
    total = 0.0
    for k, u in cfg.init_u0.items():
        total += u * fundamental1(Scheme.BACKWARD, n - k, t, cfg.c)
    for k, v in cfg.init_v0.items():
        total += v * fundamental2_backward(n - k, t, cfg.c)
    return total


# ---------------------------------------------------------------------------
# envelopes


class Reference(str, Enum):
    FORWARD_GROWTH = "ForwardGrowth"
    BACKWARD_DECAY = "BackwardDecay"


class EnvelopeFit(NamedTuple):
    times: list
    amplitudes: list
    fitted_rate: float
    reference_rate: float

    @property
    def relative_error(self) -> float:
        return abs(self.fitted_rate / self.reference_rate - 1)


def envelope_rate(c: float) -> float:
    """Log growth per step of the fundamental solution's envelope: ``ln(1+4c^2)/2``.

    The kernel has parameter ``2c``, so its envelope is ``(1 + (2c)^2)^(t/2)``.
    """
    return 0.5 * math.log1p(4 * c * c)


def half_parameter_rate(c: float) -> float:
    """``ln(1 + c^2/4)/2``, the envelope rate a kernel with parameter ``c/2`` would have.

    Kept for comparison; the fundamental solution does not follow it.
    """
    return 0.5 * math.log1p(c * c / 4)


def local_extrema(series: Sequence) -> tuple[list, list]:
    ts = [float(t) for t, _ in series]
    vs = [float(v) for _, v in series]
    times, amps = [], []
    for i in range(1, len(vs) - 1):
        if (vs[i] - vs[i - 1]) * (vs[i + 1] - vs[i]) < 0 and vs[i] != 0:
            times.append(ts[i])
            amps.append(abs(vs[i]))
    return times, amps


def envelope_fit(series: Iterable, reference, c: float) -> EnvelopeFit:
    """Least-squares slope of log |local extrema| against t."""
    series = list(series)
    ref = reference if isinstance(reference, Reference) else Reference(reference)
    times, amps = local_extrema(series)
    if len(times) < 5:
        raise FitError(f"need at least 5 extrema, found {len(times)}")
    slope, _ = np.polyfit(np.array(times), np.log(np.array(amps)), 1)
    rate = envelope_rate(c)
    return EnvelopeFit(times, amps, float(slope), rate if ref is Reference.FORWARD_GROWTH else -rate)
