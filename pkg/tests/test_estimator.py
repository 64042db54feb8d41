import numpy as np
import pytest
from sklearn.base import clone
from sklearn.exceptions import NotFittedError

from srs_sdof import estimator as est_mod
from srs_sdof.channel import DEFAULT_SNR_GRID, ScenarioConfig
from srs_sdof.estimator import (
    ResampleLimitError,
    SdofEstimator,
    cell_seed,
    estimate_sdof,
    sweep,
)
from srs_sdof.precoders import InfeasibleDesignError


def cfg(M=3, alpha=0.5, trials=100, seed=1, grid=DEFAULT_SNR_GRID):
    return ScenarioConfig(M, 2, 4, alpha, snr_grid=grid, trials=trials, seed=seed)


@pytest.mark.slow
@pytest.mark.parametrize(
    "M, scheme, want", [(2, "SRS", 2.0), (3, "ZF", 1.0), (6, "SRS", 3.0)]
)
def test_examples(M, scheme, want):
    e = estimate_sdof(cfg(M), scheme)
    assert abs(e.sum_sdof_slope - want) <= 0.15
    assert e.sum_sdof_slope >= -0.05
    assert e.stderr >= 0 and e.trials == 100


@pytest.mark.parametrize(
    "kw, match",
    [
        (dict(grid=(1e6, 1e7, 1e8, 1e9)), "5 points"),
        (dict(grid=(1e6, 1e6 * 2, 1e6 * 4, 1e6 * 8, 1e7)), "4 decades"),
        (dict(trials=99), "100 trials"),
    ],
)
def test_preconditions(kw, match):
    with pytest.raises(ValueError, match=match):
        estimate_sdof(cfg(**kw))


def test_unknown_scheme():
    with pytest.raises(ValueError):
        estimate_sdof(cfg(), "MMSE")


def test_reproducible_and_scheduler_independent():
    a = estimate_sdof(cfg(4, 0.5, seed=9))
    b = estimate_sdof(cfg(4, 0.5, seed=9))
    c = estimate_sdof(cfg(4, 0.5, seed=9), n_jobs=2)
    for other in (b, c):
        assert other.per_message_slopes == a.per_message_slopes
        assert other.stderr == a.stderr
        for k in a.mean_rates:
            np.testing.assert_array_equal(other.mean_rates[k], a.mean_rates[k])


def test_mean_trial_slope_close_to_pooled():
    e = estimate_sdof(cfg(3, 0.5))
    assert e.mean_trial_slope == pytest.approx(e.sum_sdof_slope, abs=1e-9)


@pytest.mark.slow
def test_grid_sensitivity():
    grid = DEFAULT_SNR_GRID
    doubled = grid[:-1] + (2 * grid[-1],)
    for M in (2, 3, 4):
        a = estimate_sdof(cfg(M, 0.5, grid=grid)).per_message_slopes
        b = estimate_sdof(cfg(M, 0.5, grid=doubled)).per_message_slopes
        for k in ("sum_secure_rate", "common_rate", "private_rate_1"):
            assert abs(a[k] - b[k]) <= 0.05


def test_resampling_counted(monkeypatch):
    real_design = est_mod.design_srs
    state = {"failed": False}

    def fail_once(csit, real):
        if not state["failed"]:
            state["failed"] = True
            raise InfeasibleDesignError("synthetic")
        return real_design(csit, real)

    monkeypatch.setattr(est_mod, "design_srs", fail_once)
    e = estimate_sdof(cfg())
    assert e.resampled == 1


def test_resampling_limit(monkeypatch):
    real_design = est_mod.design_srs

    def bad_half(csit, real):
        if real.H1[0, 0].real > 0:
            raise InfeasibleDesignError("synthetic")
        return real_design(csit, real)

    monkeypatch.setattr(est_mod, "design_srs", bad_half)
    with pytest.raises(ResampleLimitError):
        estimate_sdof(cfg())


def test_sweep_shape_and_duplicates():
    base = cfg(trials=100)
    out = sweep(base, {"alpha": [0.0, 0.5, 1.0], "M": [3, 3]})
    assert len(out) == 6
    keyed = [k for k, _ in out]
    assert keyed.count((3, 2, 0.5, "SRS")) == 2
    dup = [e for k, e in out if k == (3, 2, 0.5, "SRS")]
    assert dup[0].per_message_slopes == dup[1].per_message_slopes


def test_sweep_validation():
    with pytest.raises(ValueError):
        sweep(cfg(), {})
    with pytest.raises(ValueError):
        sweep(cfg(), {"seed": [1, 2]})


def test_cell_seed():
    assert cell_seed(1, 3, 2, 4, 0.5) == cell_seed(1, 3, 2, 4, 0.5)
    assert cell_seed(1, 3, 2, 4, 0.5) != cell_seed(1, 4, 2, 4, 0.5)
    assert 0 <= cell_seed(2**63, 8, 4, 8, 1.0) < 2**64


class TestSklearnApi:
    def test_params_roundtrip(self):
        m = SdofEstimator(M=4, alpha=0.25, scheme="ZF")
        p = m.get_params()
        assert p["M"] == 4 and p["alpha"] == 0.25 and p["scheme"] == "ZF"
        c = clone(m).set_params(alpha=0.75)
        assert c.alpha == 0.75 and m.alpha == 0.25

    def test_fit_predict(self):
        m = SdofEstimator(M=3, alpha=0.5, trials=100, seed=2).fit()
        assert abs(m.slope_ - 2.5) <= 0.15
        assert m.leakage_slope_ <= 0.1
        P = np.array([1e8, 1e10])
        pred = m.predict(P)
        assert pred[1] - pred[0] == pytest.approx(m.slope_ * np.log2(100))
        assert set(m.per_message_slopes_) >= {"common_rate", "private_rate_1"}

    def test_fit_on_custom_grid(self):
        X = np.logspace(5, 11, 6)[::-1]  # unsorted input is sorted
        m = SdofEstimator(M=2, trials=100).fit(X)
        np.testing.assert_allclose(m.snr_grid_, np.sort(X))

    def test_not_fitted(self):
        with pytest.raises(NotFittedError):
            SdofEstimator().predict([1e6])

    @pytest.mark.parametrize(
        "kw", [dict(M=0), dict(alpha=2.0), dict(trials=1.5), dict(scheme="foo"), dict(seed=-1)]
    )
    def test_invalid_params(self, kw):
        with pytest.raises((ValueError, TypeError)):
            SdofEstimator(**kw).fit()

    def test_rejects_small_powers(self):
        with pytest.raises(ValueError):
            SdofEstimator(trials=100).fit([0.1, 1, 10, 100, 1e5])
