"""Generalised rolling-origin evaluation and theta selection.

A GROE schedule places p forecast origins n1, n1+m, ..., n1+(p-1)m inside a
series; at each origin the candidate is re-fit on the prefix and scored on
up to H subsequent observations with a symmetric cost. Fixed-origin
evaluation (p = 1), rolling-origin evaluation (m = 1, H >= n - n1) and the
in-sample one-step loss (n1 = 2, m = H = 1) are all special cases. The
theta coefficient is selected by brute force over a small grid, which is
both robust and fast compared to continuous optimisation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .series import TimeSeries
from .smoothing import ForecasterSpec
from .theta import SES, otm_forecast

DEFAULT_THETA_GRID = (1.0, 1.5, 2.0, 2.5, 3.0, 3.5, 4.0, 4.5, 5.0)
APPROACHES = ("a", "b", "c", "d", "e", "f", "g", "h")
MIN_FIRST_ORIGIN = 4

Candidate = Callable[[np.ndarray, int], np.ndarray]


class EvaluationError(RuntimeError):
    """A forecast candidate failed during rolling-origin evaluation."""


def se(a, b):
    """Squared error."""
    return (np.asarray(a, dtype=np.float64) - b) ** 2


def ae(a, b):
    """Absolute error."""
    return np.abs(np.asarray(a, dtype=np.float64) - b)


def sape(a, b):
    """Symmetric absolute percentage error 2|a-b| / (|a|+|b|), with 0/0 -> 0."""
    a = np.asarray(a, dtype=np.float64)
    b = np.asarray(b, dtype=np.float64)
    num = 2.0 * np.abs(a - b)
    denom = np.abs(a) + np.abs(b)
    out = np.divide(num, denom, out=np.zeros_like(num), where=denom != 0)
    return out if out.ndim else float(out)


COST_FUNCTIONS = {"se": se, "ae": ae, "sape": sape}


def _resolve_cost(cost) -> Callable:
    if callable(cost):
        return cost
    try:
        return COST_FUNCTIONS[cost]
    except KeyError:
        raise ValueError(
            f"unknown cost {cost!r}; expected one of {tuple(COST_FUNCTIONS)}"
        ) from None


@dataclass(frozen=True)
class GroeConfig:
    """Validation schedule: p origins, spaced m apart, H predictions each, first at n1."""

    p: int
    m: int
    H: int
    n1: int

    def __post_init__(self) -> None:
        for name in ("p", "m", "H"):
            if int(getattr(self, name)) < 1:
                raise ValueError(f"{name} must be a positive integer, got {getattr(self, name)}")
        if int(self.n1) < 2:
            raise ValueError(f"first origin must leave a fittable prefix (n1 >= 2), got {self.n1}")
        for name in ("p", "m", "H", "n1"):
            object.__setattr__(self, name, int(getattr(self, name)))


def p_max(n: int, n1: int, m: int) -> int:
    """Maximum number of origin updates: 1 + floor((n - n1) / m)."""
    if not 1 < n1 < n:
        raise ValueError(f"need 1 < n1 < n, got n1={n1}, n={n}")
    if m < 1:
        raise ValueError(f"origin step m must be >= 1, got {m}")
    return 1 + (n - n1) // m


def origin_schedule(config: GroeConfig, n: int) -> list[int]:
    """Origins n1, n1+m, ..., n1+(p-1)m; the last may equal n (zero-length test window)."""
    limit = p_max(n, config.n1, config.m)
    if config.p > limit:
        raise ValueError(f"p={config.p} exceeds p_max={limit} for n={n}, n1={config.n1}, m={config.m}")
    return [config.n1 + i * config.m for i in range(config.p)]


def groe_loss(series: TimeSeries, candidate: Candidate, config: GroeConfig, cost="se") -> float:
    """Accumulated prediction cost over all origins of the schedule.

    At each origin n_i the candidate is called with the training prefix
    y_1..y_{n_i} and the inner horizon min(H, n - n_i); its forecasts are
    scored against the observations immediately after the origin. Origins
    with no room left contribute zero terms. Candidate exceptions are
    re-raised as :class:`EvaluationError` tagged with the origin.
    """
    g = _resolve_cost(cost)
    y = series.values
    n = series.n
    total = 0.0
    for ni in origin_schedule(config, n):
        horizon = min(config.H, n - ni)
        if horizon <= 0:
            continue
        try:
            fx = np.asarray(candidate(y[:ni], horizon), dtype=np.float64)
        except Exception as exc:
            raise EvaluationError(f"candidate failed at origin {ni}: {exc}") from exc
        if fx.shape != (horizon,):
            raise EvaluationError(
                f"candidate at origin {ni} returned shape {fx.shape}, expected ({horizon},)"
            )
        total += float(np.sum(g(y[ni : ni + horizon], fx)))
    return total


def approach_config(approach: str, n: int, h: int) -> GroeConfig:
    """The standard GROE schedules (a)-(h) for a series of length n and horizon h.

    Approaches (a)-(d) validate on the last h observations (n1 = n - h) with
    p = 1, 2, 3, h origins; (e)-(h) mirror them from n1 = n - 2h with
    p = 2, 4, 6, h. In every case H = h, the first origin is clamped to at
    least ``MIN_FIRST_ORIGIN`` and p to min(p, p_max, h).
    """
    key = str(approach).lower()
    if key not in APPROACHES:
        raise ValueError(f"unknown approach {approach!r}; expected one of {APPROACHES}")
    if h < 1:
        raise ValueError(f"horizon must be >= 1, got {h}")
    if n <= h:
        raise ValueError(f"series too short for a training prefix: n={n} <= h={h}")
    half = math.ceil(h / 2)
    third = math.ceil(h / 3)
    table = {
        "a": (1, h, n - h),
        "b": (2, half, n - h),
        "c": (3, third, n - h),
        "d": (h, 1, n - h),
        "e": (2, h, n - 2 * h),
        "f": (4, half, n - 2 * h),
        "g": (6, third, n - 2 * h),
        "h": (h, 1, n - 2 * h),
    }
    p, m, n1 = table[key]
    n1 = max(n1, MIN_FIRST_ORIGIN)
    if n1 >= n:
        raise ValueError(f"degenerate validation window: first origin {n1} >= n={n}")
    p = min(p, p_max(n, n1, m), h)
    return GroeConfig(p=p, m=m, H=h, n1=n1)


def otm_candidate(theta: float, extrapolator: ForecasterSpec = SES) -> Candidate:
    """A closure that re-fits the optimised-theta forecaster on each training prefix."""

    def candidate(prefix: np.ndarray, horizon: int) -> np.ndarray:
        return otm_forecast(TimeSeries("groe-prefix", prefix), theta, horizon, extrapolator)

    return candidate


def _check_grid(grid) -> tuple[float, ...]:
    values = tuple(float(v) for v in grid)
    if not values:
        raise ValueError("theta grid must be non-empty")
    if any(v < 1.0 for v in values):
        raise ValueError(f"theta grid values must be >= 1, got {values}")
    if any(b <= a for a, b in zip(values, values[1:])):
        raise ValueError(f"theta grid must be strictly ascending, got {values}")
    return values


def estimate_theta(
    series: TimeSeries,
    grid=DEFAULT_THETA_GRID,
    config: GroeConfig | None = None,
    cost="se",
    extrapolator: ForecasterSpec = SES,
) -> float:
    """Grid-search theta minimising the GROE loss; ties go to the smallest theta.

    A candidate that fails at some origin is skipped; if every candidate
    fails an :class:`EvaluationError` is raised.
    """
    values = _check_grid(grid)
    if config is None:
        raise ValueError("a GroeConfig is required; build one with approach_config()")
    best_theta: float | None = None
    best_loss = math.inf
    failures: list[str] = []
    for theta in values:
        try:
            loss = groe_loss(series, otm_candidate(theta, extrapolator), config, cost)
        except EvaluationError as exc:
            failures.append(f"theta={theta}: {exc}")
            continue
        if loss < best_loss:
            best_theta = theta
            best_loss = loss
    if best_theta is None:
        raise EvaluationError(
            f"series {series.id!r}: every theta candidate failed ({'; '.join(failures)})"
        )
    return best_theta
