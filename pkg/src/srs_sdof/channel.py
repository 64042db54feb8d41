"""Random channel draws and the imperfect-CSIT split ``H = H_hat + H_err``."""

from dataclasses import dataclass, field

import numpy as np

__all__ = (
    "ScenarioConfig",
    "ChannelRealization",
    "CsitView",
    "DEFAULT_SNR_GRID",
    "complex_gaussian",
    "trial_rng",
    "sample_realization",
    "csit_rng",
    "split_csit",
    "perfect_csit",
)

DEFAULT_SNR_GRID = tuple(10.0 ** e for e in (6.0, 7.5, 9.0, 10.5, 12.0))

# stream tags keep realization and CSIT-error draws independent
_STREAM_CHANNEL = 0
_STREAM_CSIT = 1


@dataclass(frozen=True)
class ScenarioConfig:
    """Antenna counts, CSIT quality and Monte Carlo settings.

    ``M`` transmit antennas, ``N`` antennas at each of the two receivers,
    ``J`` jammer antennas, CSIT quality ``alpha``.
    """

    M: int
    N: int
    J: int
    alpha: float
    snr_grid: tuple = DEFAULT_SNR_GRID
    trials: int = 200
    seed: int = 0
    noise_diag: tuple | None = None

    def __post_init__(self):
        for name in ("M", "N", "J"):
            v = getattr(self, name)
            if int(v) != v or v < 1:
                raise ValueError(f"{name} must be a positive integer, got {v!r}")
            object.__setattr__(self, name, int(v))
        if self.J < 2 * self.N:
            raise ValueError(
                f"jammer needs J >= 2N antennas (J={self.J}, N={self.N})"
            )
        if not 0.0 <= self.alpha <= 1.0:
            raise ValueError(f"alpha must lie in [0, 1], got {self.alpha}")
        grid = tuple(float(p) for p in self.snr_grid)
        if not grid:
            raise ValueError("snr_grid is empty")
        if any(p < 1.0 for p in grid):
            raise ValueError("every SNR grid power must be >= 1")
        if any(b <= a for a, b in zip(grid, grid[1:])):
            raise ValueError("snr_grid must be strictly increasing")
        object.__setattr__(self, "snr_grid", grid)
        if int(self.trials) != self.trials or self.trials < 1:
            raise ValueError(f"trials must be a positive integer, got {self.trials!r}")
        object.__setattr__(self, "trials", int(self.trials))
        if not 0 <= int(self.seed) < 2**64:
            raise ValueError("seed must be a 64-bit unsigned integer")
        object.__setattr__(self, "seed", int(self.seed))
        if self.noise_diag is not None:
            nd = tuple(float(v) for v in self.noise_diag)
            if len(nd) != self.N or any(v <= 0 for v in nd):
                raise ValueError("noise_diag needs N positive entries")
            object.__setattr__(self, "noise_diag", nd)


@dataclass(frozen=True)
class ChannelRealization:
    """True channels: ``H1, H2`` are N x M, ``G1, G2`` are N x J."""

    H1: np.ndarray
    H2: np.ndarray
    G1: np.ndarray
    G2: np.ndarray

    def __post_init__(self):
        N, M = self.H1.shape
        if self.H2.shape != (N, M):
            raise ValueError("H1 and H2 must share a shape")
        if self.G1.shape[0] != N or self.G2.shape != self.G1.shape:
            raise ValueError("G1, G2 must both be N x J")
        for m in (self.H1, self.H2, self.G1, self.G2):
            if not np.all(np.isfinite(m)):
                raise ValueError("channel entries must be finite")

    @property
    def H(self):
        return (self.H1, self.H2)

    @property
    def G(self):
        return (self.G1, self.G2)


@dataclass(frozen=True)
class CsitView:
    """Transmitter-side estimates and the unknown errors at power ``P``."""

    H1_hat: np.ndarray
    H2_hat: np.ndarray
    H1_err: np.ndarray
    H2_err: np.ndarray
    power_level: float = field(default=1.0)

    @property
    def H_hat(self):
        return (self.H1_hat, self.H2_hat)

    @property
    def H_err(self):
        return (self.H1_err, self.H2_err)


def complex_gaussian(rng, shape, var=1.0):
    """i.i.d. circularly-symmetric CN(0, var) samples."""
    scale = np.sqrt(var / 2.0)
    return scale * (rng.standard_normal(shape) + 1j * rng.standard_normal(shape))


def trial_rng(seed, trial_index, stream=_STREAM_CHANNEL, attempt=0):
    """Independent generator for one (seed, trial, stream, attempt) cell."""
    ss = np.random.SeedSequence([int(seed), int(trial_index), int(stream), int(attempt)])
    return np.random.default_rng(ss)


def sample_realization(cfg, trial_index, attempt=0):
    """Rayleigh draw of ``H1, H2, G1, G2`` for one trial.

    The same ``(cfg.seed, trial_index, attempt)`` always reproduces the same
    matrices. `attempt` is bumped when a degenerate draw is resampled.
    """
    if not 0 <= trial_index < cfg.trials:
        raise IndexError(f"trial_index {trial_index} outside [0, {cfg.trials})")
    rng = trial_rng(cfg.seed, trial_index, _STREAM_CHANNEL, attempt)
    N, M, J = cfg.N, cfg.M, cfg.J
    return ChannelRealization(
        H1=complex_gaussian(rng, (N, M)),
        H2=complex_gaussian(rng, (N, M)),
        G1=complex_gaussian(rng, (N, J)),
        G2=complex_gaussian(rng, (N, J)),
    )


def csit_rng(cfg, trial_index, attempt=0):
    """Generator for the CSIT error of one trial (shared by all grid powers)."""
    return trial_rng(cfg.seed, trial_index, _STREAM_CSIT, attempt)


def split_csit(real, alpha, P, rng):
    """Draw ``H_err ~ CN(0, P^-alpha)`` per entry and set ``H_hat = H - H_err``.

    Errors are drawn at unit variance and then scaled, so passing generators
    in the same state at different `P` yields the same error direction.
    """
    if P < 1.0:
        raise ValueError(f"P must be >= 1, got {P}")
    if not 0.0 <= alpha <= 1.0:
        raise ValueError(f"alpha must lie in [0, 1], got {alpha}")
    std = P ** (-alpha / 2.0)
    shape = real.H1.shape
    E1 = std * complex_gaussian(rng, shape)
    E2 = std * complex_gaussian(rng, shape)
    return CsitView(
        H1_hat=real.H1 - E1,
        H2_hat=real.H2 - E2,
        H1_err=E1,
        H2_err=E2,
        power_level=float(P),
    )


def perfect_csit(real, P=1.0):
    """CSIT with zero error; the ``alpha -> 1, P -> inf`` limit."""
    zero = np.zeros_like(real.H1)
    return CsitView(real.H1.copy(), real.H2.copy(), zero, zero.copy(), float(P))
