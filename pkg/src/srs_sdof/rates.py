"""Power loading, receive covariances and finite-SNR rate/leakage proxies.

Per-stream powers scale as ``P**exponent``: the common message at exponent
1, private streams at ``alpha``, and the jammer at the common-message
exponent so the aligned jamming masks the common signal at the eavesdropper.
Receiver-side covariances always use the true channels.
"""

from dataclasses import dataclass

import numpy as np

from .numerics import logdet_capacity

__all__ = (
    "PowerPolicy",
    "LoadedPrecoders",
    "ReceiverCovariances",
    "RateBreakdown",
    "load_powers",
    "load_zf_powers",
    "receive_model",
    "common_rate",
    "common_leakage_rate",
    "private_rate",
    "private_leakage_rate",
    "sum_secure_rate",
    "rate_breakdown",
)


@dataclass(frozen=True)
class PowerPolicy:
    """Per-stream powers after normalization to the total budget."""

    total_power: float
    common_exponent: float
    private_exponent: float
    jamming_exponent: float | None
    common_power: float
    private_power: float
    jamming_power: float
    transmit_power: float

    def ratio(self, a="common", b="private"):
        """Ratio of two per-stream powers (unaffected by normalization)."""
        return getattr(self, f"{a}_power") / getattr(self, f"{b}_power")


@dataclass(frozen=True)
class LoadedPrecoders:
    """Precoders pre-multiplied by the square root of their stream power."""

    Pc: np.ndarray  # Pc1 + Pc2, both carry the same common stream vector
    Pp: tuple
    Wc: tuple


def _stream_power(P, exponent):
    return 0.0 if exponent is None else float(P) ** exponent


def _fro2(X):
    return float(np.vdot(X, X).real)


def load_powers(
    ps,
    P,
    alpha,
    common_exponent=1.0,
    private_exponent=None,
    jamming_exponent=1.0,
):
    """Load the S-RS precoders and normalize total power (transmitter plus jammer) to `P`.

    `private_exponent` defaults to `alpha`. Pass ``jamming_exponent=None``
    to switch the jammer off (ablation).
    """
    if P < 1.0:
        raise ValueError(f"P must be >= 1, got {P}")
    if private_exponent is None:
        private_exponent = alpha
    pc = _stream_power(P, common_exponent)
    pp = _stream_power(P, private_exponent)
    pj = _stream_power(P, jamming_exponent)
    Pc_sum = ps.Pc1 + ps.Pc2
    total = (
        pc * _fro2(Pc_sum)
        + pp * (_fro2(ps.P1) + _fro2(ps.P2))
        + pj * (_fro2(ps.Wc1) + _fro2(ps.Wc2))
    )
    scale = P / total if total > 0 else 0.0
    return _finish(P, common_exponent, private_exponent, jamming_exponent,
                   pc * scale, pp * scale, pj * scale, ps, Pc_sum)


def load_zf_powers(ps, P, alpha, private_exponent=None):
    """Each zero-forcing stream at order ``P**alpha``; scaled down only if over budget."""
    if P < 1.0:
        raise ValueError(f"P must be >= 1, got {P}")
    if private_exponent is None:
        private_exponent = alpha
    pp = _stream_power(P, private_exponent)
    total = pp * (_fro2(ps.P1) + _fro2(ps.P2))
    if total > P:
        pp *= P / total
    return _finish(P, 0.0, private_exponent, None, 0.0, pp, 0.0, ps, ps.Pc1 + ps.Pc2)


def _finish(P, ce, pe, je, pc, pp, pj, ps, Pc_sum):
    loaded = LoadedPrecoders(
        Pc=np.sqrt(pc) * Pc_sum,
        Pp=(np.sqrt(pp) * ps.P1, np.sqrt(pp) * ps.P2),
        Wc=(np.sqrt(pj) * ps.Wc1, np.sqrt(pj) * ps.Wc2),
    )
    tx = _fro2(loaded.Pc) + sum(map(_fro2, loaded.Pp)) + sum(map(_fro2, loaded.Wc))
    return PowerPolicy(float(P), ce, pe, je, pc, pp, pj, tx), loaded


@dataclass(frozen=True)
class ReceiverCovariances:
    """Noise-whitened covariances seen by one receiver."""

    common: np.ndarray
    jam_aligned: np.ndarray
    jam_residual: np.ndarray
    private_own: np.ndarray
    private_cross: np.ndarray

    @property
    def N(self):
        return self.common.shape[0]


def _cov(X):
    C = X @ X.conj().T
    return 0.5 * (C + C.conj().T)


def receive_model(loaded, real, noise_diag=None):
    """Covariance bundle ``(rx1, rx2)`` from loaded precoders and the true channels.

    `noise_diag` is the diagonal of the receiver noise covariance (identity
    when omitted); every covariance is whitened by it.
    """
    N = real.H1.shape[0]
    w = np.ones(N) if noise_diag is None else 1.0 / np.sqrt(np.asarray(noise_diag, float))
    out = []
    for i, j in ((0, 1), (1, 0)):
        H = w[:, None] * real.H[i]
        G = w[:, None] * real.G[i]
        out.append(
            ReceiverCovariances(
                common=_cov(H @ loaded.Pc),
                jam_aligned=_cov(G @ loaded.Wc[i]),
                jam_residual=_cov(G @ loaded.Wc[j]),
                private_own=_cov(H @ loaded.Pp[i]),
                private_cross=_cov(H @ loaded.Pp[j]),
            )
        )
    return tuple(out)


def common_rate(bundle, i):
    """Common-message rate at receiver `i` (0-based); aligned jamming is decoded with it."""
    rx = bundle[i]
    return logdet_capacity(rx.common, rx.private_own + rx.private_cross + rx.jam_residual)


def common_leakage_rate(bundle, i, genie=False):
    """Rate at which receiver `i` could read the common signal meant for the other user.

    The receiver's own aligned jamming masks it. ``genie=True`` drops the
    private-stream interference (diagnostic only).
    """
    rx = bundle[i]
    interference = rx.jam_aligned + rx.jam_residual
    if not genie:
        interference = interference + rx.private_own + rx.private_cross
    return logdet_capacity(rx.common, interference)


def private_rate(bundle, i):
    """Own private rate at receiver `i` after the common stream is cancelled."""
    rx = bundle[i]
    return logdet_capacity(rx.private_own, rx.private_cross)


def private_leakage_rate(bundle, i):
    """Rate of the other user's private stream at receiver `i`, noise-only interference."""
    rx = bundle[i]
    return logdet_capacity(rx.private_cross, np.zeros_like(rx.private_cross))


@dataclass(frozen=True)
class RateBreakdown:
    common_rate_r1: float
    common_rate_r2: float
    private_rate_1: float
    private_rate_2: float
    common_leak_at_1: float
    common_leak_at_2: float
    private_leak_at_1: float
    private_leak_at_2: float

    @property
    def common_rate(self):
        return min(self.common_rate_r1, self.common_rate_r2)

    @property
    def sum_secure_rate(self):
        return sum_secure_rate(self)

    def as_dict(self):
        d = {k: getattr(self, k) for k in self.__dataclass_fields__}
        d["common_rate"] = self.common_rate
        d["sum_secure_rate"] = self.sum_secure_rate
        return d


def sum_secure_rate(rb):
    """Positive-part secrecy combination of a :class:`RateBreakdown`.

    The common message must be decodable by both receivers, so its rate is
    the minimum over them; a private message leaks at the other receiver.
    """
    common = max(rb.common_rate - rb.common_leak_at_1 - rb.common_leak_at_2, 0.0)
    p1 = max(rb.private_rate_1 - rb.private_leak_at_2, 0.0)
    p2 = max(rb.private_rate_2 - rb.private_leak_at_1, 0.0)
    return common + p1 + p2


def rate_breakdown(bundle, genie=False):
    return RateBreakdown(
        common_rate_r1=common_rate(bundle, 0),
        common_rate_r2=common_rate(bundle, 1),
        private_rate_1=private_rate(bundle, 0),
        private_rate_2=private_rate(bundle, 1),
        common_leak_at_1=common_leakage_rate(bundle, 0, genie),
        common_leak_at_2=common_leakage_rate(bundle, 1, genie),
        private_leak_at_1=private_leakage_rate(bundle, 0),
        private_leak_at_2=private_leakage_rate(bundle, 1),
    )
