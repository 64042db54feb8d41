import numpy as np
import pytest

from srs_sdof.channel import ScenarioConfig, csit_rng, sample_realization, split_csit


@pytest.fixture
def draw():
    """Factory: ``draw(M, N, J, alpha=0.5, P=1e6, seed=0, t=0) -> (cfg, real, csit)``."""

    def make(M, N, J, alpha=0.5, P=1e6, seed=0, t=0, trials=1000):
        cfg = ScenarioConfig(M, N, J, alpha, trials=trials, seed=seed)
        real = sample_realization(cfg, t)
        csit = split_csit(real, alpha, P, csit_rng(cfg, t))
        return cfg, real, csit

    return make


def crandn(rng, *shape):
    return (rng.standard_normal(shape) + 1j * rng.standard_normal(shape)) / np.sqrt(2)
