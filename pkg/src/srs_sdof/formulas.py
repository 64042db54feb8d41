"""Closed-form sum-SDoF expressions.

All functions accept ``alpha`` as a float or a :class:`fractions.Fraction`;
with a Fraction the result is exact.
"""

from dataclasses import dataclass

__all__ = (
    "DofRegionConstraint",
    "theorem1",
    "zf_bound",
    "corollary2",
    "upper_bound_region",
    "upper_bound_sum",
    "optimality_gap",
)


@dataclass(frozen=True)
class DofRegionConstraint:
    """``coeff_d1 * d1 + coeff_d2 * d2 <= bound``."""

    coeff_d1: object
    coeff_d2: object
    bound: object

    def __post_init__(self):
        if self.bound < 0:
            raise ValueError("region bound must be nonnegative")

    def holds(self, d1, d2):
        return self.coeff_d1 * d1 + self.coeff_d2 * d2 <= self.bound


def _check(M, N, alpha):
    if int(M) != M or int(N) != N or M < 1 or N < 1:
        raise ValueError(f"M and N must be positive integers, got M={M!r}, N={N!r}")
    if not 0 <= alpha <= 1:
        raise ValueError(f"alpha must lie in [0, 1], got {alpha!r}")
    return int(M), int(N)


def theorem1(M, N, alpha):
    """Sum-SDoF achieved by secure rate-splitting.

    ``M`` for ``M <= N``, ``N + alpha (M - N)`` for ``N < M <= 2N`` and
    ``N (1 + alpha)`` beyond. Boundary ratios belong to the lower case.
    """
    M, N = _check(M, N, alpha)
    if M <= N:
        return M + 0 * alpha
    if M <= 2 * N:
        return N + alpha * (M - N)
    return N * (1 + alpha)


def zf_bound(M, N, alpha):
    """Zero-forcing sum-SDoF, ``2 alpha min([M - N]^+, N)``."""
    M, N = _check(M, N, alpha)
    return 2 * alpha * min(max(M - N, 0), N)


def corollary2(K, N, alpha, M):
    """K-user lower bound ``(1 - alpha) N + K alpha N``, valid for ``M >= K N``."""
    if int(K) != K or K < 1:
        raise ValueError(f"K must be a positive integer, got {K!r}")
    M, N = _check(M, N, alpha)
    if M < K * N:
        raise ValueError(f"needs M >= K*N (M={M}, K={K}, N={N})")
    return (1 - alpha) * N + K * alpha * N


def upper_bound_region(M, N, alpha):
    """The three half-planes bounding the two-user DoF region."""
    M, N = _check(M, N, alpha)
    single = min(M, N)
    return [
        DofRegionConstraint(1, 0, single),
        DofRegionConstraint(0, 1, single),
        DofRegionConstraint(1, 1, single + alpha * (min(M, 2 * N) - single)),
    ]


def upper_bound_sum(M, N, alpha):
    """Sum-DoF upper bound written case by case (same breakpoints as :func:`theorem1`).

    Kept as an explicit case split so it can be cross-checked against the
    sum constraint of :func:`upper_bound_region`.
    """
    M, N = _check(M, N, alpha)
    if M <= N:
        return M + 0 * alpha
    if M <= 2 * N:
        return N + alpha * (M - N)
    return N + alpha * N


def optimality_gap(M, N, alpha):
    """Upper bound minus achieved sum-SDoF; identically zero."""
    return upper_bound_sum(M, N, alpha) - theorem1(M, N, alpha)
