"""Monte Carlo estimation of sum-SDoF and leakage slopes.

For every trial the channel is drawn once; for every grid power the CSIT
error is rescaled, precoders are redesigned from the new estimate and the
rates are evaluated. Rates are averaged over trials per grid point and a
line is fitted against ``log2 P``.
"""

import logging
import numbers
from dataclasses import dataclass, field, replace

import numpy as np
from joblib import Parallel, delayed
from sklearn.base import BaseEstimator, RegressorMixin
from sklearn.model_selection import ParameterGrid
from sklearn.utils import check_array, check_scalar
from sklearn.utils.validation import check_is_fitted

from .channel import DEFAULT_SNR_GRID, ScenarioConfig, csit_rng, sample_realization, split_csit
from .numerics import fit_rate_slope
from .precoders import InfeasibleDesignError, design_srs
from .rates import load_powers, load_zf_powers, rate_breakdown, receive_model
from .zf import design_zf

__all__ = (
    "SCHEMES",
    "RATE_KEYS",
    "LEAK_KEYS",
    "ResampleLimitError",
    "SdofEstimate",
    "estimate_sdof",
    "cell_seed",
    "sweep",
    "SdofEstimator",
)

log = logging.getLogger(__name__)

SCHEMES = ("SRS", "ZF")
RATE_KEYS = (
    "common_rate_r1",
    "common_rate_r2",
    "private_rate_1",
    "private_rate_2",
    "common_leak_at_1",
    "common_leak_at_2",
    "private_leak_at_1",
    "private_leak_at_2",
    "common_rate",
    "sum_secure_rate",
)
LEAK_KEYS = ("common_leak_at_1", "common_leak_at_2", "private_leak_at_1", "private_leak_at_2")
MAX_RESAMPLE_FRACTION = 0.01
_MAX_ATTEMPTS = 20


class ResampleLimitError(RuntimeError):
    """Too many degenerate channel draws had to be resampled."""


@dataclass
class SdofEstimate:
    scheme: str
    sum_sdof_slope: float
    leakage_slope: float
    per_message_slopes: dict
    stderr: float
    trials: int
    cfg: ScenarioConfig | None = None
    mean_rates: dict = field(default_factory=dict, repr=False)
    mean_trial_slope: float = float("nan")
    resampled: int = 0
    intercept: float = 0.0


def _evaluate(real, cfg, P, rng, scheme, opts):
    csit = split_csit(real, cfg.alpha, P, rng)
    if scheme == "SRS":
        ps = design_srs(csit, real)
        _, loaded = load_powers(
            ps,
            P,
            cfg.alpha,
            private_exponent=opts.get("private_exponent"),
            jamming_exponent=opts.get("jamming_exponent", 1.0),
        )
    else:
        ps = design_zf(csit).as_precoder_set(cfg.J)
        _, loaded = load_zf_powers(ps, P, cfg.alpha, opts.get("private_exponent"))
    rb = rate_breakdown(receive_model(loaded, real, cfg.noise_diag), opts.get("genie", False))
    d = rb.as_dict()
    return [d[k] for k in RATE_KEYS]


def _trial(cfg, t, scheme, opts):
    for attempt in range(_MAX_ATTEMPTS):
        real = sample_realization(cfg, t, attempt)
        try:
            rows = [
                _evaluate(real, cfg, P, csit_rng(cfg, t, attempt), scheme, opts)
                for P in cfg.snr_grid
            ]
        except (InfeasibleDesignError, np.linalg.LinAlgError) as exc:
            log.debug("trial %d attempt %d degenerate: %s", t, attempt, exc)
            continue
        return np.asarray(rows), attempt
    raise ResampleLimitError(f"trial {t}: {_MAX_ATTEMPTS} consecutive degenerate draws")


def _check_grid(cfg):
    grid = np.asarray(cfg.snr_grid)
    if grid.size < 5:
        raise ValueError(f"SNR grid needs >= 5 points, got {grid.size}")
    if np.log10(grid[-1] / grid[0]) < 4.0 - 1e-9:
        raise ValueError("SNR grid must span at least 4 decades")
    if cfg.trials < 100:
        raise ValueError(f"slope estimation needs >= 100 trials, got {cfg.trials}")


def estimate_sdof(cfg, scheme="SRS", n_jobs=None, **opts):
    """Fit sum-rate, per-message and leakage slopes for one scenario.

    Parameters
    ----------
    cfg : ScenarioConfig
    scheme : {'SRS', 'ZF'}
    n_jobs : int, optional
        Trials are spread over joblib workers; results are reduced in trial
        order so they do not depend on scheduling.
    **opts
        ``private_exponent``, ``jamming_exponent`` (None switches the jammer
        off) and ``genie`` for ablations.

    Returns
    -------
    SdofEstimate
    """
    if scheme not in SCHEMES:
        raise ValueError(f"scheme must be one of {SCHEMES}, got {scheme!r}")
    _check_grid(cfg)
    if n_jobs in (None, 1):
        results = [_trial(cfg, t, scheme, opts) for t in range(cfg.trials)]
    else:
        results = Parallel(n_jobs=n_jobs)(
            delayed(_trial)(cfg, t, scheme, opts) for t in range(cfg.trials)
        )
    resampled = sum(1 for _, attempt in results if attempt > 0)
    if resampled > MAX_RESAMPLE_FRACTION * cfg.trials:
        raise ResampleLimitError(
            f"{resampled} of {cfg.trials} trials were degenerate (limit 1%)"
        )
    rates = np.stack([r for r, _ in results])  # trials x grid x keys
    x = np.log2(cfg.snr_grid)
    mean = rates.mean(axis=0)
    fits = {k: fit_rate_slope(np.column_stack([x, mean[:, i]])) for i, k in enumerate(RATE_KEYS)}
    slopes = {k: f.slope for k, f in fits.items()}

    isum = RATE_KEYS.index("sum_secure_rate")
    xc = x - x.mean()
    trial_slopes = (rates[:, :, isum] - rates[:, :, isum].mean(axis=1, keepdims=True)) @ xc / (xc @ xc)
    stderr = float(trial_slopes.std(ddof=1) / np.sqrt(cfg.trials))
    return SdofEstimate(
        scheme=scheme,
        sum_sdof_slope=slopes["sum_secure_rate"],
        leakage_slope=max(slopes[k] for k in LEAK_KEYS),
        per_message_slopes=slopes,
        stderr=stderr,
        trials=cfg.trials,
        cfg=cfg,
        mean_rates={k: mean[:, i] for i, k in enumerate(RATE_KEYS)},
        mean_trial_slope=float(trial_slopes.mean()),
        resampled=resampled,
        intercept=fits["sum_secure_rate"].intercept,
    )


def cell_seed(seed, M, N, J, alpha):
    """Seed derived from the cell contents, so duplicate cells coincide.

    The scheme is deliberately left out: S-RS and ZF see the same draws.
    """
    key = [int(seed), int(M), int(N), int(J), int(round(float(alpha) * 10**9))]
    return int(np.random.SeedSequence(key).generate_state(1, dtype=np.uint64)[0])


_SWEEPABLE = {"M", "N", "J", "alpha", "scheme", "trials"}


def sweep(cfg_base, grid, n_jobs=None, **opts):
    """Cartesian sweep of `cfg_base` over `grid`.

    `grid` maps any of ``M, N, J, alpha, scheme, trials`` to a list of
    values. Returns a list of ``((M, N, alpha, scheme), SdofEstimate)``
    pairs in grid order; duplicate cells reproduce identical estimates.
    """
    cells = list(ParameterGrid(grid))
    if not cells or not grid:
        raise ValueError("sweep grid is empty")
    unknown = set(grid) - _SWEEPABLE
    if unknown:
        raise ValueError(f"cannot sweep over {sorted(unknown)}")
    out = []
    for cell in cells:
        scheme = cell.pop("scheme", "SRS")
        cfg = replace(cfg_base, **cell)
        cfg = replace(cfg, seed=cell_seed(cfg_base.seed, cfg.M, cfg.N, cfg.J, cfg.alpha))
        est = estimate_sdof(cfg, scheme, n_jobs=n_jobs, **opts)
        out.append(((cfg.M, cfg.N, cfg.alpha, scheme), est))
    return out


class SdofEstimator(RegressorMixin, BaseEstimator):
    """Monte Carlo sum-SDoF estimator with a scikit-learn interface.

    ``fit`` runs the simulation over the SNR powers in ``X`` (or the default
    grid); ``predict`` evaluates the fitted line ``intercept_ + slope_ *
    log2(P)``, the high-SNR approximation of the mean sum secure rate.

    Parameters
    ----------
    M, N, J : int
        Transmit, per-receiver and jammer antenna counts.
    alpha : float
        CSIT quality in [0, 1].
    scheme : {'SRS', 'ZF'}
    trials : int
    seed : int
    jamming_exponent : float or None
        Jammer stream power exponent; None disables the jammer.
    private_exponent : float or None
        Private stream power exponent; defaults to ``alpha``.
    n_jobs : int or None
    """

    def __init__(
        self,
        M=2,
        N=2,
        J=4,
        alpha=0.5,
        scheme="SRS",
        trials=200,
        seed=0,
        jamming_exponent=1.0,
        private_exponent=None,
        n_jobs=None,
    ):
        self.M = M
        self.N = N
        self.J = J
        self.alpha = alpha
        self.scheme = scheme
        self.trials = trials
        self.seed = seed
        self.jamming_exponent = jamming_exponent
        self.private_exponent = private_exponent
        self.n_jobs = n_jobs

    def _validate_params(self):
        for name in ("M", "N", "J", "trials"):
            check_scalar(getattr(self, name), name, numbers.Integral, min_val=1)
        check_scalar(self.alpha, "alpha", numbers.Real, min_val=0.0, max_val=1.0)
        check_scalar(self.seed, "seed", numbers.Integral, min_val=0)
        if self.scheme not in SCHEMES:
            raise ValueError(f"scheme must be one of {SCHEMES}, got {self.scheme!r}")

    @staticmethod
    def _powers(X):
        P = check_array(X, ensure_2d=False, dtype=float).ravel()
        if np.any(P < 1.0):
            raise ValueError("SNR powers must be >= 1")
        return P

    def fit(self, X=None, y=None):
        """Run the Monte Carlo simulation; `y` is ignored."""
        self._validate_params()
        grid = DEFAULT_SNR_GRID if X is None else tuple(np.sort(self._powers(X)))
        cfg = ScenarioConfig(
            self.M, self.N, self.J, float(self.alpha), grid, self.trials, self.seed
        )
        est = estimate_sdof(
            cfg,
            self.scheme,
            n_jobs=self.n_jobs,
            jamming_exponent=self.jamming_exponent,
            private_exponent=self.private_exponent,
        )
        self.estimate_ = est
        self.snr_grid_ = np.asarray(grid)
        self.slope_ = est.sum_sdof_slope
        self.intercept_ = est.intercept
        self.leakage_slope_ = est.leakage_slope
        self.per_message_slopes_ = dict(est.per_message_slopes)
        self.stderr_ = est.stderr
        self.mean_rates_ = dict(est.mean_rates)
        return self

    def predict(self, X):
        check_is_fitted(self, "slope_")
        return self.intercept_ + self.slope_ * np.log2(self._powers(X))
