import numpy as np
import pytest

from optitheta import TimeSeries
from optitheta.smoothing import FAMILIES, ForecasterSpec, fit, forecast


def run(family, values, h=3, period=1, **pins):
    fitted = fit(ForecasterSpec(family, **pins), TimeSeries("s", values, period))
    return fitted, forecast(fitted, h)


# ---------------------------------------------------------------------------
# SES
# ---------------------------------------------------------------------------


def test_ses_constant_series_flat():
    fitted, fx = run("ses", [5.0, 5.0, 5.0, 5.0])
    assert np.allclose(fx, 5.0)
    assert fitted.sse == 0.0


def test_ses_alpha_one_is_random_walk():
    _, fx = run("ses", [2.0, 9.0, 4.0], alpha=1.0)
    assert np.allclose(fx, 4.0)


def test_ses_hand_unrolled_recursion():
    # alpha=0.5, l0=y1 on [2,4,3]: levels 2, 3, 3
    fitted, fx = run("ses", [2.0, 4.0, 3.0], alpha=0.5)
    assert fitted.level == pytest.approx(3.0, abs=0)
    assert np.allclose(fx, 3.0)


def test_ses_forecasts_flat_across_steps(make_rw):
    _, fx = run("ses", make_rw(0, 30).values, h=8)
    assert np.all(fx == fx[0])


def test_ses_picks_alpha_one_on_ramp():
    fitted, fx = run("ses", np.arange(1.0, 11.0))
    assert fitted.alpha == 1.0
    assert fitted.sse == pytest.approx(9.0, abs=1e-12)
    assert np.allclose(fx, 10.0)


# ---------------------------------------------------------------------------
# Holt and damped
# ---------------------------------------------------------------------------


def test_holt_exact_line_continues_it():
    # every grid point reproduces a perfect line; tie-break picks (0, 0)
    fitted, fx = run("holt", np.arange(1.0, 13.0), h=4)
    assert fitted.sse == 0.0
    assert (fitted.alpha, fitted.beta) == (0.0, 0.0)
    assert np.array_equal(fx, np.array([13.0, 14.0, 15.0, 16.0]))


def test_damped_with_phi_one_reproduces_holt(make_rw):
    series = make_rw(7, 40, drift=0.4)
    holt_fit = fit(ForecasterSpec("holt"), series)
    damped_fit = fit(ForecasterSpec("damped", phi=1.0), series)
    assert np.array_equal(forecast(holt_fit, 6), forecast(damped_fit, 6))


def test_damped_forecast_formula():
    fitted, fx = run("damped", np.arange(1.0, 13.0), h=3, alpha=1.0, beta=0.0, phi=0.9)
    # level tracks y exactly at alpha=1; the trend decays through the eleven
    # updates after initialization: b_n = phi^11 * (y_2 - y_1)
    b = 0.9 ** 11
    expected = 12.0 + np.cumsum(0.9 ** np.arange(1, 4)) * b
    assert np.allclose(fx, expected, atol=1e-12)


def test_trended_families_need_three_points():
    with pytest.raises(ValueError, match="n >= 3"):
        run("holt", [1.0, 2.0])


# ---------------------------------------------------------------------------
# Naive and Naive2
# ---------------------------------------------------------------------------


def test_naive_repeats_last_value():
    _, fx = run("naive", [3.0, 5.0, 9.0], h=3)
    assert np.allclose(fx, 9.0)


def test_naive2_on_nonseasonal_equals_naive(make_rw):
    series = make_rw(1, 25)
    naive_fit = fit(ForecasterSpec("naive"), series)
    naive2_fit = fit(ForecasterSpec("naive2"), series)
    assert naive2_fit.family_used == "naive"
    assert not naive2_fit.seasonal
    assert np.array_equal(forecast(naive_fit, 5), forecast(naive2_fit, 5))


def test_naive2_continues_exact_pattern():
    values = np.tile([0.8, 1.2], 8)
    fitted, fx = run("naive2", values, h=4, period=2)
    assert fitted.seasonal
    # deseasonalized last value is 1.0; the pattern continues from position n
    assert np.allclose(fx, [0.8, 1.2, 0.8, 1.2], atol=1e-12)


# ---------------------------------------------------------------------------
# Seasonal variants and dispatch
# ---------------------------------------------------------------------------


def test_holt_winters_differs_from_holt_on_seasonal_data(make_seasonal):
    series = make_seasonal(5, 48, [0.7, 1.3, 0.9, 1.1])
    hw = fit(ForecasterSpec("holt_winters"), series)
    holt = fit(ForecasterSpec("holt"), series)
    assert hw.family_used == "holt_winters" and hw.seasonal
    assert not np.allclose(forecast(hw, 4), forecast(holt, 4))


def test_holt_winters_falls_back_to_holt_on_period_one(make_rw):
    series = make_rw(2, 30)
    hw = fit(ForecasterSpec("holt_winters"), series)
    holt = fit(ForecasterSpec("holt"), series)
    assert hw.family_used == "holt"
    assert np.array_equal(forecast(hw, 5), forecast(holt, 5))


def test_seasonal_damped_falls_back_to_damped(make_rw):
    series = make_rw(3, 30)
    sd = fit(ForecasterSpec("seasonal_damped"), series)
    damped = fit(ForecasterSpec("damped"), series)
    assert sd.family_used == "damped"
    assert np.array_equal(forecast(sd, 5), forecast(damped, 5))


def test_seasonal_damped_tracks_pattern(make_seasonal):
    series = make_seasonal(6, 48, [0.7, 1.3, 0.9, 1.1])
    sd = fit(ForecasterSpec("seasonal_damped"), series)
    assert sd.family_used == "seasonal_damped" and sd.seasonal
    fx = forecast(sd, 4)
    # forecast alternation follows the seasonal pattern ordering
    assert fx[1] > fx[0] and fx[1] > fx[2]


# ---------------------------------------------------------------------------
# Shared properties
# ---------------------------------------------------------------------------


@pytest.mark.parametrize("family", ["naive", "ses", "holt", "damped"])
def test_shift_equivariance(family, make_rw):
    series = make_rw(11, 35, drift=0.2)
    shifted = series.with_values(series.values + 250.0)
    base = forecast(fit(ForecasterSpec(family), series), 6)
    moved = forecast(fit(ForecasterSpec(family), shifted), 6)
    assert np.allclose(moved, base + 250.0, rtol=1e-9, atol=1e-7)


@pytest.mark.parametrize("family", FAMILIES)
def test_degenerate_constant_series(family):
    values = np.full(24, 7.0)
    fitted, fx = run(family, values, h=4, period=4)
    assert np.allclose(fx, 7.0)


@pytest.mark.parametrize("family", FAMILIES)
def test_fit_is_deterministic(family, make_seasonal):
    series = make_seasonal(9, 48, [0.9, 1.1, 0.8, 1.2], noise=0.1)
    first = fit(ForecasterSpec(family), series)
    second = fit(ForecasterSpec(family), series)
    params = lambda f: (f.alpha, f.beta, f.gamma, f.phi, f.sse)  # noqa: E731
    assert params(first) == params(second)
    assert np.array_equal(forecast(first, 6), forecast(second, 6))


def test_unknown_family_rejected():
    with pytest.raises(ValueError, match="unknown family"):
        ForecasterSpec("arima")


def test_horizon_must_be_positive(make_rw):
    fitted = fit(ForecasterSpec("ses"), make_rw(0, 10))
    with pytest.raises(ValueError, match="horizon"):
        forecast(fitted, 0)
