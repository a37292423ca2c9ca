import math

import pytest
from hypothesis import given, settings, strategies as st

import numpy as np

from gammagen import core_special
from gammagen.core_special import (
    EULER_GAMMA,
    DomainError,
    EvalResult,
    SeriesControl,
    default_series_control,
    gamma,
    log_gamma,
    psi,
    psi_series,
)
from gammagen import oracle


def test_gamma_integer_values():
    assert gamma(1.0) == 1.0
    assert gamma(5.0) == 24.0


def test_gamma_half_is_sqrt_pi():
    assert math.isclose(gamma(0.5), 1.7724538509055159, rel_tol=1e-14)
    assert math.isclose(gamma(0.5), math.sqrt(math.pi), rel_tol=1e-14)


@pytest.mark.parametrize("t", [0.0, -1.0, -0.5])
def test_gamma_domain_error(t):
    with pytest.raises(DomainError):
        gamma(t)
    with pytest.raises(DomainError):
        log_gamma(t)


def test_gamma_overflow():
    with pytest.raises(OverflowError):
        gamma(200.0)


def test_psi_series_at_one_matches_vanishing_prefactor_form():
    # The (t-1)-prefactor form of the series is exactly -gamma_E at t = 1.
    first_form = -EULER_GAMMA + (1.0 - 1.0) * 0.0
    r = psi_series(1.0, SeriesControl(tol=1e-12))
    assert abs(r.value - first_form) < 1e-13


def test_psi_series_at_two_telescopes_to_one_minus_gamma():
    r = psi_series(2.0, SeriesControl(tol=1e-12))
    assert abs(r.value - (1.0 - EULER_GAMMA)) < 1e-13


def test_psi_series_at_half():
    r = psi_series(0.5, SeriesControl(tol=1e-12))
    assert abs(r.value - (-1.9635100260214235)) < 5e-13
    assert abs(r.value + EULER_GAMMA + 2.0 * math.log(2.0)) < 5e-13


def test_psi_at_ten():
    assert abs(psi(10.0) - 2.2517525890667211) < 1e-12


def test_psi_series_reports_budget_and_bound():
    ctrl = SeriesControl(max_terms=1000, tol=1e-12)
    r = psi_series(3.7, ctrl)
    assert isinstance(r, EvalResult)
    assert r.err_bound >= 0.0
    assert r.terms_used <= ctrl.max_terms
    assert r.converged
    assert r.err_bound <= ctrl.tol


def test_psi_series_tolerance_not_met_is_nonfatal():
    ctrl = SeriesControl(max_terms=4, tol=1e-15)
    r = psi_series(50.0, ctrl)
    assert not r.converged
    assert r.terms_used == 4
    assert r.err_bound > ctrl.tol


@pytest.mark.parametrize("bad", [0, -3])
def test_series_control_rejects_bad_budget(bad):
    with pytest.raises(ValueError):
        SeriesControl(max_terms=bad)


@pytest.mark.parametrize("bad", [0.0, -1e-9])
def test_series_control_rejects_bad_tol(bad):
    with pytest.raises(ValueError):
        SeriesControl(tol=bad)


def test_eval_result_rejects_negative_bound():
    with pytest.raises(ValueError):
        EvalResult(1.0, -1e-16, 10)


def test_psi_domain_error():
    with pytest.raises(DomainError):
        psi(0.0)
    with pytest.raises(DomainError):
        psi_series(-2.0)


@given(t=st.floats(min_value=0.1, max_value=50.0))
@settings(max_examples=120, deadline=None)
def test_psi_recurrence(t):
    assert abs(psi(t + 1.0) - psi(t) - 1.0 / t) < 1e-10


def test_psi_strictly_increasing_on_grid():
    grid = [0.1 * i for i in range(1, 201)]
    values = [psi(t) for t in grid]
    assert all(v2 > v1 for v1, v2 in zip(values, values[1:]))


def test_psi_consistency_against_oracle():
    rng = np.random.default_rng(11)
    tol = default_series_control().tol
    for t in rng.uniform(1e-3, 100.0, size=1000):
        t = float(t)
        diff = abs(psi(t) - float(oracle.psi_hp(t).value))
        assert diff <= 10.0 * tol, f"psi({t}) off by {diff}"


def test_log_gamma_derivative_matches_psi():
    h = 1e-5
    for t in (0.3, 0.9, 1.5, 4.0, 12.0, 40.0):
        fd = (log_gamma(t + h) - log_gamma(t - h)) / (2.0 * h)
        assert abs(fd - psi(t)) < 1e-6


def test_default_series_control_env_override(monkeypatch):
    monkeypatch.setenv(core_special.MAX_TERMS_ENV_VAR, "123")
    assert default_series_control().max_terms == 123
    monkeypatch.delenv(core_special.MAX_TERMS_ENV_VAR)
    assert default_series_control().max_terms == core_special.DEFAULT_MAX_TERMS
