import numpy as np
import pytest

from optitheta import TimeSeries


@pytest.fixture
def make_rw():
    """Factory for seeded random-walk series."""

    def _make(seed, n, level=100.0, scale=2.0, drift=0.0, period=1, sid="rw"):
        rng = np.random.default_rng(seed)
        values = level + np.cumsum(rng.normal(drift, scale, n))
        return TimeSeries(sid, values, period)

    return _make


@pytest.fixture
def make_seasonal():
    """Factory for positive trending series with an exact multiplicative pattern."""

    def _make(seed, n, pattern, level=200.0, slope=1.5, noise=0.0, sid="seas"):
        rng = np.random.default_rng(seed)
        pattern = np.asarray(pattern, dtype=np.float64)
        t = np.arange(1, n + 1)
        base = level + slope * t
        y = base * pattern[(t - 1) % pattern.size]
        if noise:
            y = y * np.exp(rng.normal(0.0, noise, n))
        return TimeSeries(sid, y, period=pattern.size)

    return _make
