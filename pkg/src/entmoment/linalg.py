"""Dense Hermitian eigensolver (cyclic Jacobi) and small PSD helpers.

Everything in this package that needs a spectrum goes through
:func:`hermitian_eigensystem`, so results are deterministic and
independent of any vendored LAPACK build.
"""

from __future__ import annotations

import math

import numpy as np

from .errors import ConvergenceError, DimensionError, SymmetryError

MAX_DIM = 64
HERMITICITY_TOL = 1e-10
OFF_DIAGONAL_TOL = 1e-12


def _check_hermitian(matrix: np.ndarray, tol: float = HERMITICITY_TOL) -> np.ndarray:
    a = np.asarray(matrix, dtype=complex)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise SymmetryError(f"expected a square matrix, got shape {a.shape}")
    dev = float(np.max(np.abs(a - a.conj().T))) if a.size else 0.0
    if dev > tol:
        raise SymmetryError(f"matrix is not Hermitian (max deviation {dev:.3e})")
    return a


def _off_diagonal_norm(a: np.ndarray) -> float:
    b = np.abs(a)
    np.fill_diagonal(b, 0.0)
    return float(np.sqrt(np.sum(b * b)))


def hermitian_eigensystem(
    matrix: np.ndarray, max_sweeps: int = 100
) -> tuple[np.ndarray, np.ndarray]:
    """Diagonalize a Hermitian matrix with cyclic Jacobi rotations.

    Parameters
    ----------
    matrix : array_like
        Hermitian matrix, dimension at most 64.
    max_sweeps : int
        Budget of full cyclic sweeps before giving up.

    Returns
    -------
    (w, v) : tuple of ndarray
        Eigenvalues ``w`` sorted ascending and a unitary ``v`` whose
        columns are the matching eigenvectors, so that
        ``matrix ≈ v @ diag(w) @ v.conj().T``.

    Raises
    ------
    SymmetryError
        If the input deviates from Hermiticity by more than 1e-10.
    ConvergenceError
        If the off-diagonal norm has not dropped below 1e-12 (relative
        to the largest entry) after ``max_sweeps`` sweeps.
    """
    w, v = _jacobi(matrix, max_sweeps=max_sweeps, compute_vectors=True)
    return w, v


def hermitian_eigenvalues(matrix: np.ndarray, max_sweeps: int = 100) -> np.ndarray:
    """Eigenvalues only; same iteration as :func:`hermitian_eigensystem`."""
    w, _ = _jacobi(matrix, max_sweeps=max_sweeps, compute_vectors=False)
    return w


def _jacobi(matrix: np.ndarray, max_sweeps: int, compute_vectors: bool):
    a = _check_hermitian(matrix)
    n = a.shape[0]
    if n > MAX_DIM:
        raise DimensionError(f"dimension {n} exceeds the supported maximum {MAX_DIM}")
    a = a.copy()
    v = np.eye(n, dtype=complex) if compute_vectors else None
    scale = max(1.0, float(np.max(np.abs(a)))) if n else 1.0
    tol = OFF_DIAGONAL_TOL * scale
    # Rotations below this threshold cannot push the off-norm above tol.
    skip = 0.25 * tol / max(n, 1)
    converged = n < 2
    for _ in range(max_sweeps):
        if _off_diagonal_norm(a) < tol:
            converged = True
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = complex(a[p, q])
                mag = abs(apq)
                if mag < skip:
                    continue
                phase = apq / mag
                app = float(a[p, p].real)
                aqq = float(a[q, q].real)
                tau = (aqq - app) / (2.0 * mag)
                t = (1.0 if tau >= 0.0 else -1.0) / (abs(tau) + math.sqrt(1.0 + tau * tau))
                c = 1.0 / math.sqrt(1.0 + t * t)
                s = t * c * phase
                sbar = s.conjugate()
                colp = a[:, p].copy()
                colq = a[:, q].copy()
                newp = colp * c - colq * sbar
                newq = colp * s + colq * c
                a[:, p] = newp
                a[:, q] = newq
                # Rows follow from Hermiticity; the 2x2 block is set explicitly.
                a[p, :] = newp.conj()
                a[q, :] = newq.conj()
                a[p, p] = app - t * mag
                a[q, q] = aqq + t * mag
                a[p, q] = 0.0
                a[q, p] = 0.0
                if compute_vectors:
                    vp = v[:, p].copy()
                    vq = v[:, q].copy()
                    v[:, p] = vp * c - vq * sbar
                    v[:, q] = vp * s + vq * c
    if not converged and _off_diagonal_norm(a) >= tol:
        raise ConvergenceError(f"Jacobi iteration did not converge in {max_sweeps} sweeps")
    w = np.diagonal(a).real.copy()
    order = np.argsort(w, kind="stable")
    if compute_vectors:
        return w[order], v[:, order]
    return w[order], None


def psd_sqrt(matrix: np.ndarray, floor: float = 1e-12) -> np.ndarray:
    """Principal square root of a PSD Hermitian matrix.

    Eigenvalues below ``floor`` are treated as exact zeros before the
    square root; this keeps the result rank-exact for nearly singular
    inputs instead of injecting sqrt(machine-noise) components.
    """
    w, v = hermitian_eigensystem(matrix)
    w = np.where(w < floor, 0.0, w)
    return (v * np.sqrt(w)) @ v.conj().T


def singular_values(matrix: np.ndarray) -> np.ndarray:
    """Singular values (descending) via the Hermitian block embedding.

    The eigenvalues of ``[[0, X], [X^H, 0]]`` are plus/minus the singular
    values of ``X``, so the Jacobi solver delivers them with absolute
    accuracy proportional to machine epsilon; no square root of a noisy
    Gram matrix is ever taken.
    """
    x = np.asarray(matrix, dtype=complex)
    if x.ndim != 2:
        raise SymmetryError(f"expected a matrix, got shape {x.shape}")
    r, c = x.shape
    h = np.zeros((r + c, r + c), dtype=complex)
    h[:r, r:] = x
    h[r:, :r] = x.conj().T
    w = hermitian_eigenvalues(h)
    sv = w[::-1][: min(r, c)]
    return np.clip(sv, 0.0, None)
