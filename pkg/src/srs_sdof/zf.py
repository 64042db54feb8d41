"""Zero-forcing baseline: private streams only, no common message, no jammer."""

from dataclasses import dataclass

import numpy as np

from .numerics import RANK_TOL, null_space_basis
from .precoders import InfeasibleDesignError, PrecoderSet

__all__ = ("ZfPrecoderSet", "zf_streams", "design_zf")


def zf_streams(M, N):
    """Streams per user, ``min([M - N]^+, N)``."""
    return min(max(M - N, 0), N)


@dataclass(frozen=True)
class ZfPrecoderSet:
    P1: np.ndarray
    P2: np.ndarray

    @property
    def d_z(self):
        return self.P1.shape[1]

    def as_precoder_set(self, J):
        """View as a :class:`PrecoderSet` with empty common and jammer parts."""
        M = self.P1.shape[0]
        no_common = np.zeros((M, 0), dtype=complex)
        no_jam = np.zeros((J, 0), dtype=complex)
        return PrecoderSet(
            no_common, no_common.copy(), self.P1, self.P2, no_jam, no_jam.copy(), "zf", M
        )


def design_zf(csit):
    """``P1`` in ``null(H2_hat)`` and ``P2`` in ``null(H1_hat)``, ``d_z`` columns each."""
    N, M = csit.H1_hat.shape
    d = zf_streams(M, N)
    for k, Hh in enumerate(csit.H_hat, start=1):
        s = np.linalg.svd(Hh, compute_uv=False)
        if np.sum(s > RANK_TOL * s[0]) < min(M, N):
            raise InfeasibleDesignError(f"H{k}_hat is rank deficient")
    if d == 0:
        empty = np.zeros((M, 0), dtype=complex)
        return ZfPrecoderSet(empty, empty.copy())
    P1 = null_space_basis(csit.H2_hat)[:, :d]
    P2 = null_space_basis(csit.H1_hat)[:, :d]
    return ZfPrecoderSet(P1, P2)
