"""Deterministic dense linear-algebra primitives.

Everything downstream (estimators, risk evaluation, sweeps) is built on the
operations here: SVD with a fixed sign convention, rank truncation,
Moore-Penrose pseudoinverse, PSD square root, column-space projectors, and
spectral summaries. All functions are pure; identical input bits produce
identical output bits, which is what makes whole sweeps byte-reproducible.

Dimensions in this project stay below a few hundred, so plain dense LAPACK
routines (via numpy) are used throughout.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from numpy.typing import NDArray

from .errors import InvalidRank, NotPSD, NumericalFailure, ShapeError

# Absolute reconstruction tolerance for the dimensions used in this project
# (all experiments stay below ~256).
RECONSTRUCTION_TOL = 1e-8

# Relative gap below which a rank-r truncation is considered non-unique.
TIE_TOL = 1e-10

# Relative floor for eigenvalues of a nominally-PSD matrix; anything in
# [-PSD_TOL * lmax, 0) is rounding noise and gets clamped.
PSD_TOL = 1e-10

# Relative asymmetry tolerated before a matrix is rejected as non-symmetric.
SYMMETRY_TOL = 1e-8

# Sign convention: entries smaller than this (in a unit-norm singular
# vector) are treated as zero when locating the leading nonzero component.
_SIGN_EPS = 1e-12


def as_matrix(a, name: str = "matrix") -> NDArray[np.float64]:
    """Validate and convert ``a`` to a 2-D float64 array.

    Raises ShapeError if the input is not a nonempty 2-D array of finite
    values.
    """
    m = np.asarray(a, dtype=np.float64)
    if m.ndim != 2:
        raise ShapeError(f"{name} must be 2-D, got ndim={m.ndim}")
    if m.shape[0] < 1 or m.shape[1] < 1:
        raise ShapeError(f"{name} must be nonempty, got shape {m.shape}")
    if not np.isfinite(m).all():
        raise ShapeError(f"{name} contains non-finite entries")
    return m


@dataclass(frozen=True)
class SvdFactors:
    """Thin SVD ``m = u @ diag(s) @ vt`` with k = min(rows, cols).

    ``u`` is (m x k) with orthonormal columns, ``s`` nonincreasing and
    nonnegative, ``vt`` (k x n) with orthonormal rows. Signs are fixed so
    the first nonzero component of each right singular vector is
    nonnegative.
    """

    u: NDArray[np.float64]
    s: NDArray[np.float64]
    vt: NDArray[np.float64]

    def reconstruct(self) -> NDArray[np.float64]:
        return self.u @ (self.s[:, None] * self.vt)


def svd(m) -> SvdFactors:
    """Thin SVD with a deterministic sign convention.

    Parameters
    ----------
    m : array_like, shape (rows, cols)
        Finite real matrix.

    Returns
    -------
    SvdFactors
        Factors satisfying ``u @ diag(s) @ vt == m`` within
        ``RECONSTRUCTION_TOL``.

    Raises
    ------
    NumericalFailure
        If the underlying LAPACK driver does not converge.
    """
    a = as_matrix(m)
    try:
        u, s, vt = np.linalg.svd(a, full_matrices=False)
    except np.linalg.LinAlgError as exc:  # pragma: no cover - hard to trigger
        raise NumericalFailure("SVD did not converge", detail=str(exc)) from exc
    u = np.ascontiguousarray(u)
    vt = np.ascontiguousarray(vt)
    # Fix signs: first component of each right singular vector that is
    # significantly nonzero must be nonnegative.
    for i in range(vt.shape[0]):
        row = vt[i]
        nz = np.flatnonzero(np.abs(row) > _SIGN_EPS)
        j = nz[0] if nz.size else 0
        if row[j] < 0.0:
            vt[i] = -row
            u[:, i] = -u[:, i]
    return SvdFactors(u=u, s=s, vt=vt)


def singular_values(m) -> NDArray[np.float64]:
    """Nonincreasing singular values of ``m``."""
    return np.linalg.svd(as_matrix(m), compute_uv=False)


def truncation_is_nonunique(s: NDArray[np.float64], r: int, tie_tol: float = TIE_TOL) -> bool:
    """True when the rank-``r`` truncation is ambiguous (sigma_r ~ sigma_{r+1}).

    A measure-zero event for the random matrices in this project, but sweeps
    must detect it rather than abort, so ties are flagged, not raised.
    """
    if r <= 0 or r >= len(s):
        return False
    if s[0] <= 0.0:
        return False
    return (s[r - 1] - s[r]) <= tie_tol * s[0]


def truncate_factors(f: SvdFactors, r: int) -> NDArray[np.float64]:
    """Rank-``r`` reconstruction from precomputed factors (top-r directions)."""
    if r == 0:
        return np.zeros((f.u.shape[0], f.vt.shape[1]))
    return f.u[:, :r] @ (f.s[:r, None] * f.vt[:r])


def truncate_rank_flagged(m, r: int) -> tuple[NDArray[np.float64], bool]:
    """Best rank-``r`` approximation plus a tie flag.

    Returns ``([m]_r, nonunique)`` where ``[m]_r`` keeps the top ``r``
    singular directions (lowest-index directions on ties, so the output is
    deterministic either way) and ``nonunique`` reports whether the
    truncation was ambiguous.

    Raises
    ------
    InvalidRank
        If ``r`` is outside ``[0, min(rows, cols)]``.
    """
    a = as_matrix(m)
    k = min(a.shape)
    if not 0 <= r <= k:
        raise InvalidRank(f"rank {r} outside [0, {k}] for shape {a.shape}")
    f = svd(a)
    return truncate_factors(f, r), truncation_is_nonunique(f.s, r)


def truncate_rank(m, r: int) -> NDArray[np.float64]:
    """Best rank-``r`` approximation of ``m`` in Frobenius/operator norm."""
    out, _ = truncate_rank_flagged(m, r)
    return out


def pinv(m) -> NDArray[np.float64]:
    """Moore-Penrose pseudoinverse via SVD.

    Singular values below ``max(rows, cols) * eps`` relative to the largest
    one are treated as zero (standard rank-revealing cutoff; exact
    arithmetic is assumed nowhere).
    """
    a = as_matrix(m)
    f = svd(a)
    if f.s.size == 0 or f.s[0] == 0.0:
        return np.zeros((a.shape[1], a.shape[0]))
    cutoff = max(a.shape) * np.finfo(np.float64).eps * f.s[0]
    inv_s = np.zeros_like(f.s)
    keep = f.s > cutoff
    inv_s[keep] = 1.0 / f.s[keep]
    return f.vt.T @ (inv_s[:, None] * f.u.T)


def psd_sqrt(m) -> NDArray[np.float64]:
    """Symmetric PSD square root via eigendecomposition.

    Eigenvalues in ``[-PSD_TOL * lmax, 0)`` are clamped to zero; empirical
    covariances are PSD only up to rounding, and with n < dx the matrix is
    genuinely singular, so clamping (not inversion) is the only safe choice
    at the interpolation threshold.

    Raises
    ------
    ShapeError
        If ``m`` is not square or not symmetric within ``SYMMETRY_TOL``.
    NotPSD
        If an eigenvalue falls below ``-PSD_TOL * lmax``.
    """
    a = as_matrix(m)
    if a.shape[0] != a.shape[1]:
        raise ShapeError(f"psd_sqrt needs a square matrix, got {a.shape}")
    scale = np.max(np.abs(a))
    if np.max(np.abs(a - a.T)) > SYMMETRY_TOL * max(1.0, scale):
        raise ShapeError("psd_sqrt needs a symmetric matrix")
    sym = 0.5 * (a + a.T)
    try:
        w, v = np.linalg.eigh(sym)
    except np.linalg.LinAlgError as exc:  # pragma: no cover
        raise NumericalFailure("eigendecomposition did not converge", detail=str(exc)) from exc
    lmax = float(w[-1]) if w[-1] > 0 else 0.0
    floor = -PSD_TOL * max(lmax, 1.0)
    if w[0] < floor:
        raise NotPSD(f"eigenvalue {w[0]:.3e} below tolerance {floor:.3e}")
    w = np.clip(w, 0.0, None)
    root = (v * np.sqrt(w)) @ v.T
    return 0.5 * (root + root.T)


def projector_onto_colspace(x) -> tuple[NDArray[np.float64], NDArray[np.float64]]:
    """Orthogonal projector onto col(x) and its complement.

    Returns ``(p, p_perp)`` with ``p = x @ pinv(x)`` symmetrized and
    ``p_perp = I - p``. ``trace(p)`` equals ``rank(x)``.
    """
    a = as_matrix(x)
    p = a @ pinv(a)
    p = 0.5 * (p + p.T)
    return p, np.eye(a.shape[0]) - p


@dataclass(frozen=True)
class SpectralStats:
    """Frobenius norm squared, operator norm, and (if symmetric) lambda_min."""

    fro_norm_sq: float
    op_norm: float
    lambda_min_sym: float | None


def spectral_stats(m) -> SpectralStats:
    """Norm summaries used by the bound evaluators."""
    a = as_matrix(m)
    fro_sq = float(np.sum(a * a))
    op = float(singular_values(a)[0]) if fro_sq > 0.0 else 0.0
    lmin: float | None = None
    if a.shape[0] == a.shape[1]:
        scale = np.max(np.abs(a))
        if np.max(np.abs(a - a.T)) <= SYMMETRY_TOL * max(1.0, scale):
            lmin = float(np.linalg.eigvalsh(0.5 * (a + a.T))[0])
    return SpectralStats(fro_norm_sq=fro_sq, op_norm=op, lambda_min_sym=lmin)
