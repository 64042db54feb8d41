"""Dense complex linear-algebra kernels and the rate-slope regression.

Everything here is a pure function of its inputs.
"""

from dataclasses import dataclass

import numpy as np
from scipy import linalg

__all__ = (
    "RegressionFit",
    "null_space_basis",
    "least_squares_solve",
    "logdet_capacity",
    "fit_rate_slope",
    "fix_phase",
)

RANK_TOL = 1e-10


@dataclass(frozen=True)
class RegressionFit:
    """Least-squares line ``rate = slope * log2(P) + intercept``."""

    slope: float
    intercept: float
    residual_rms: float


def _as_matrix(A, name="A"):
    A = np.atleast_2d(np.asarray(A, dtype=complex))
    if A.ndim != 2:
        raise ValueError(f"{name} must be a 2-D matrix, got shape {A.shape}")
    if A.shape[0] < 1 or A.shape[1] < 1:
        raise ValueError(f"{name} must have at least one row and column")
    if not np.all(np.isfinite(A)):
        raise ValueError(f"{name} has non-finite entries")
    return A


def fix_phase(B):
    """Rotate each column so its first nonzero entry is real positive.

    An entry counts as nonzero when its magnitude exceeds ``1e-8`` times
    the column's largest magnitude.
    """
    B = np.array(B, dtype=complex, copy=True)
    for k in range(B.shape[1]):
        col = B[:, k]
        mags = np.abs(col)
        peak = mags.max(initial=0.0)
        if peak == 0.0:
            continue
        first = int(np.argmax(mags > 1e-8 * peak))
        B[:, k] = col * (np.conj(col[first]) / mags[first])
    return B


def null_space_basis(A, tol=RANK_TOL):
    """Orthonormal basis of the numerical null space of `A`.

    Singular values at or below ``tol * s_max`` count as zero. Columns are
    ordered by ascending singular value (the structurally zero ones, for a
    wide `A`, come last in SVD order) and phase-normalized with
    :func:`fix_phase`.

    Parameters
    ----------
    A : (m, n) array_like
        Complex matrix.
    tol : float
        Relative rank threshold.

    Returns
    -------
    B : (n, k) ndarray
        ``k`` is the nullity; ``k == 0`` for full column rank.
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    A = _as_matrix(A)
    n = A.shape[1]
    _, s, Vh = linalg.svd(A, full_matrices=True, lapack_driver="gesvd")
    s_full = np.zeros(n)
    s_full[: s.size] = s
    s_max = s_full.max(initial=0.0)
    if s_max == 0.0:
        return fix_phase(np.eye(n, dtype=complex))
    idx = np.flatnonzero(s_full <= tol * s_max)
    idx = idx[np.argsort(s_full[idx], kind="stable")]
    return fix_phase(Vh[idx].conj().T)


def least_squares_solve(A, B):
    """Minimum-norm least-squares solution of ``A X = B``."""
    A = _as_matrix(A)
    B = np.asarray(B, dtype=complex)
    vector = B.ndim == 1
    B = B.reshape(B.shape[0], -1)
    if A.shape[0] != B.shape[0]:
        raise ValueError(f"row mismatch: A has {A.shape[0]}, B has {B.shape[0]}")
    X, *_ = linalg.lstsq(A, B, cond=RANK_TOL, lapack_driver="gelsd")
    return X[:, 0] if vector else X


def _check_hermitian_psd(S, name, atol):
    if S.shape[0] != S.shape[1]:
        raise ValueError(f"{name} must be square, got {S.shape}")
    scale = max(np.abs(S).max(initial=0.0), 1.0)
    if not np.allclose(S, S.conj().T, rtol=0.0, atol=atol * scale):
        raise ValueError(f"{name} is not Hermitian")
    S = 0.5 * (S + S.conj().T)
    if S.size and linalg.eigvalsh(S)[0] < -atol * scale:
        raise ValueError(f"{name} is not positive semi-definite")
    return S


def logdet_capacity(S, T, atol=1e-10):
    """``log2 det(I + S (T + I)^-1)`` in bits.

    Evaluated as ``log2 det(I + L^-1 S L^-H)`` with ``T + I = L L^H``, so the
    result is nonnegative by construction.

    Parameters
    ----------
    S, T : (n, n) array_like
        Hermitian PSD signal and interference covariances (noise-whitened).
    atol : float
        Tolerance, relative to the largest entry, for the Hermitian and PSD
        checks.
    """
    S = np.atleast_2d(np.asarray(S, dtype=complex))
    T = np.atleast_2d(np.asarray(T, dtype=complex))
    if S.shape != T.shape:
        raise ValueError(f"shape mismatch: S {S.shape}, T {T.shape}")
    S = _check_hermitian_psd(S, "S", atol)
    T = _check_hermitian_psd(T, "T", atol)
    n = S.shape[0]
    eye = np.eye(n)
    L = linalg.cholesky(T + eye, lower=True)
    Y = linalg.solve_triangular(L, S, lower=True)
    K = linalg.solve_triangular(L, Y.conj().T, lower=True)
    K = 0.5 * (K + K.conj().T)
    eig = linalg.eigvalsh(K)
    return float(np.sum(np.log2(1.0 + np.clip(eig, 0.0, None))))


def fit_rate_slope(points):
    """Ordinary least-squares fit of rate (bits) against ``log2 P``.

    Parameters
    ----------
    points : sequence of (log2_power, rate_bits)
        At least three points with strictly increasing abscissae.
    """
    pts = np.asarray(points, dtype=float)
    if pts.ndim != 2 or pts.shape[1] != 2:
        raise ValueError("points must be a sequence of (log2_power, rate) pairs")
    if pts.shape[0] < 3:
        raise ValueError(f"need at least 3 points, got {pts.shape[0]}")
    x, y = pts[:, 0], pts[:, 1]
    if not np.all(np.isfinite(pts)):
        raise ValueError("points must be finite")
    if np.any(np.diff(x) <= 0):
        raise ValueError("log2_power values must be strictly increasing (no duplicates)")
    xc = x - x.mean()
    yc = y - y.mean()
    slope = float(np.dot(xc, yc) / np.dot(xc, xc))
    intercept = float(y.mean() - slope * x.mean())
    resid = yc - slope * xc
    return RegressionFit(slope, intercept, float(np.sqrt(np.mean(resid**2))))
