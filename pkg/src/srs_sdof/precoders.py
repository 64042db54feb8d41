"""Secure rate-splitting precoders: joint nulling and jamming alignment.

The transmitter only sees ``H_hat``; the jammer knows ``G`` exactly. One
central designer builds all six matrices:

* ``Wc1 in null(G2)``, ``Wc2 in null(G1)`` so a jamming stream never reaches
  the receiver it does not protect,
* ``H1_hat Pc1 = G1 Wc1`` and ``H2_hat Pc2 = G2 Wc2`` so jamming lands on the
  same receive directions as the common stream at the intended receiver,
* ``H2_hat P1 = 0`` and ``H1_hat P2 = 0`` for the private streams (only when
  ``M > N``).
"""

from dataclasses import dataclass, field

import numpy as np

from .numerics import RANK_TOL, fix_phase, least_squares_solve, null_space_basis

__all__ = (
    "InfeasibleDesignError",
    "PrecoderSet",
    "VerificationReport",
    "regime_of",
    "design_low_tx",
    "design_mid_tx",
    "design_high_tx",
    "design_srs",
    "verify",
)


class InfeasibleDesignError(ValueError):
    """Raised when a (measure-zero) channel draw breaks a rank assumption."""


@dataclass(frozen=True)
class PrecoderSet:
    """Unit-norm-column precoders for one channel draw.

    ``Pc1, Pc2`` are M x d_c, ``P1, P2`` are M x d_p (possibly empty) and
    ``Wc1, Wc2`` are J x d_c. Alignment fixes the relative scale of each
    ``(Pc_i, Wc_i)`` column pair, so the jammer columns carry whatever norm
    makes ``H_hat_i Pc_i = G_i Wc_i`` hold exactly.
    """

    Pc1: np.ndarray
    Pc2: np.ndarray
    P1: np.ndarray
    P2: np.ndarray
    Wc1: np.ndarray
    Wc2: np.ndarray
    regime: str = "mid"
    active_antennas: int = field(default=0)

    @property
    def d_c(self):
        return self.Pc1.shape[1]

    @property
    def d_p(self):
        return self.P1.shape[1]

    @property
    def M(self):
        return self.Pc1.shape[0]

    @property
    def J(self):
        return self.Wc1.shape[0]

    @property
    def Pc(self):
        return (self.Pc1, self.Pc2)

    @property
    def Pp(self):
        return (self.P1, self.P2)

    @property
    def Wc(self):
        return (self.Wc1, self.Wc2)

    def replace(self, **changes):
        kw = {k: getattr(self, k) for k in self.__dataclass_fields__}
        kw.update(changes)
        return PrecoderSet(**kw)


@dataclass
class VerificationReport:
    """Relative residuals of every nulling and alignment condition, by name."""

    nulling_residuals: dict
    alignment_residuals: dict
    degenerate: bool = False

    @property
    def max_residual(self):
        vals = [*self.nulling_residuals.values(), *self.alignment_residuals.values()]
        return max(vals, default=0.0)

    def worst(self):
        """Name of the condition with the largest residual."""
        merged = {**self.nulling_residuals, **self.alignment_residuals}
        if not merged:
            return None
        return max(merged, key=merged.get)


def regime_of(M, N):
    """'low' for M <= N, 'mid' for N < M <= 2N, 'high' for M > 2N."""
    if M <= N:
        return "low"
    if M <= 2 * N:
        return "mid"
    return "high"


def _rank(A):
    s = np.linalg.svd(A, compute_uv=False)
    if s.size == 0 or s[0] == 0.0:
        return 0
    return int(np.sum(s > RANK_TOL * s[0]))


def _scale_pairs(Pc, Wc):
    norms = np.linalg.norm(Pc, axis=0)
    if np.any(norms <= RANK_TOL * max(norms.max(initial=0.0), 1.0)):
        raise InfeasibleDesignError("common precoder has a vanishing column")
    return Pc / norms, Wc / norms


def _check_shapes(csit, real):
    N, M = csit.H1_hat.shape
    J = real.G1.shape[1]
    if J < 2 * N:
        raise ValueError(f"jammer needs J >= 2N antennas (J={J}, N={N})")
    return M, N, J


def _aligned_low(G_own, G_other, H_hat_own, M):
    """Solve for M (w, p) pairs with ``G_other w = 0`` and ``G_own w = H_hat p``."""
    N, J = G_own.shape
    A = np.block([[G_other, np.zeros((N, M))], [G_own, -H_hat_own]])
    Z = null_space_basis(A)
    if Z.shape[1] < M:
        raise InfeasibleDesignError(
            f"stacked nulling/alignment system has nullity {Z.shape[1]} < M={M}"
        )
    Zp = Z[J:]
    _, s, Vh = np.linalg.svd(Zp, full_matrices=False)
    if s[M - 1] <= RANK_TOL * s[0]:
        raise InfeasibleDesignError("aligned solutions span fewer than M transmit directions")
    Zsel = fix_phase(Z @ Vh[:M].conj().T)
    return _scale_pairs(Zsel[J:], Zsel[:J])


def design_low_tx(csit, real):
    """Precoders for ``M <= N``: common message only, ``d_c = M``."""
    M, N, J = _check_shapes(csit, real)
    if M > N:
        raise ValueError(f"low-TX design needs M <= N (M={M}, N={N})")
    Pc1, Wc1 = _aligned_low(real.G1, real.G2, csit.H1_hat, M)
    Pc2, Wc2 = _aligned_low(real.G2, real.G1, csit.H2_hat, M)
    empty = np.zeros((M, 0), dtype=complex)
    return PrecoderSet(Pc1, Pc2, empty, empty.copy(), Wc1, Wc2, "low", M)


def _mid(H_hat, G, M, N):
    for k, Hh in enumerate(H_hat, start=1):
        if _rank(Hh) < N:
            raise InfeasibleDesignError(f"H{k}_hat is rank deficient")
    for k, Gk in enumerate(G, start=1):
        if _rank(Gk) < N:
            raise InfeasibleDesignError(f"G{k} is rank deficient")
    # W_{c,i} lives in null(G_j): jamming for receiver i never reaches j
    Wc = [null_space_basis(G[1])[:, :N], null_space_basis(G[0])[:, :N]]
    Pp = [null_space_basis(H_hat[1]), null_space_basis(H_hat[0])]
    for k, P in enumerate(Pp, start=1):
        if P.shape[1] != M - N:
            raise InfeasibleDesignError(
                f"private precoder P{k} has {P.shape[1]} columns, expected {M - N}"
            )
    pairs = [
        _scale_pairs(least_squares_solve(H_hat[i], G[i] @ Wc[i]), Wc[i])
        for i in range(2)
    ]
    return pairs, Pp


def design_mid_tx(csit, real):
    """Precoders for ``N < M <= 2N``: ``d_c = N`` common, ``d_p = M - N`` private."""
    M, N, J = _check_shapes(csit, real)
    if not N < M <= 2 * N:
        raise ValueError(f"mid-TX design needs N < M <= 2N (M={M}, N={N})")
    (pc1, pc2), (P1, P2) = _mid(csit.H_hat, real.G, M, N)
    return PrecoderSet(pc1[0], pc2[0], P1, P2, pc1[1], pc2[1], "mid", M)


def design_high_tx(csit, real):
    """Precoders for ``M > 2N``: only the first 2N antennas transmit."""
    M, N, J = _check_shapes(csit, real)
    if M <= 2 * N:
        raise ValueError(f"high-TX design needs M > 2N (M={M}, N={N})")
    A = 2 * N
    H_hat = tuple(h[:, :A] for h in csit.H_hat)
    (pc1, pc2), (P1, P2) = _mid(H_hat, real.G, A, N)

    def embed(X):
        out = np.zeros((M, X.shape[1]), dtype=complex)
        out[:A] = X
        return out

    return PrecoderSet(
        embed(pc1[0]), embed(pc2[0]), embed(P1), embed(P2), pc1[1], pc2[1], "high", A
    )


_DESIGNERS = {"low": design_low_tx, "mid": design_mid_tx, "high": design_high_tx}


def design_srs(csit, real):
    """Dispatch to the designer for the ``(M, N)`` regime."""
    N, M = csit.H1_hat.shape
    return _DESIGNERS[regime_of(M, N)](csit, real)


def _ratio(num, den):
    if den == 0.0:
        return 0.0, num == 0.0
    return num / den, False


def verify(ps, csit, real):
    """Relative residuals of every applicable condition.

    Nulling is checked through the true ``G`` and the estimated ``H_hat``.
    A 0/0 residual (all-zero precoders) is reported as 0 and flags the
    report as degenerate.
    """
    norm = np.linalg.norm
    G, H_hat = real.G, csit.H_hat
    nulling, alignment = {}, {}
    degenerate = False
    for i, j in ((0, 1), (1, 0)):
        W = ps.Wc[j]
        r, d = _ratio(norm(G[i] @ W), norm(G[i]) * norm(W))
        nulling[f"G{i + 1} Wc{j + 1} = 0"] = r
        degenerate |= d
    if ps.d_p:
        for i, j in ((0, 1), (1, 0)):
            P = ps.Pp[j]
            r, d = _ratio(norm(H_hat[i] @ P), norm(H_hat[i]) * norm(P))
            nulling[f"H{i + 1}_hat P{j + 1} = 0"] = r
            degenerate |= d
    for i in range(2):
        target = G[i] @ ps.Wc[i]
        r, d = _ratio(norm(H_hat[i] @ ps.Pc[i] - target), norm(target))
        alignment[f"H{i + 1}_hat Pc{i + 1} = G{i + 1} Wc{i + 1}"] = r
        degenerate |= d
    return VerificationReport(nulling, alignment, degenerate)
