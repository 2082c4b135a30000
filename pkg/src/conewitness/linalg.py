"""Dense complex linear algebra kernel.

Everything downstream consumes these primitives: Hermitian
eigendecomposition, SVD-based null spaces, Haar-random unit vectors and
unitaries, and the real parameterization of Hermitian matrices used by the
face constraint systems.

All randomized functions take an explicit ``numpy.random.Generator``; there
is no ambient RNG state anywhere in the library.
"""

from __future__ import annotations

import numpy as np

from .config import DEFAULT_TOLERANCES, Tolerances
from .errors import ConvergenceFailure, NonHermitianInput


def frobenius(A: np.ndarray) -> float:
    """Frobenius norm as a plain float."""
    return float(np.linalg.norm(A))


def is_hermitian(A: np.ndarray, tol: Tolerances = DEFAULT_TOLERANCES) -> bool:
    A = np.asarray(A)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        return False
    return frobenius(A - A.conj().T) <= tol.hermitian_rtol * max(1.0, frobenius(A))


def require_hermitian(A: np.ndarray, tol: Tolerances = DEFAULT_TOLERANCES) -> np.ndarray:
    """Return ``A`` as a complex array, or raise ``NonHermitianInput``.

    Matrices failing the check are rejected rather than symmetrized; silent
    symmetrization would mask construction bugs upstream.
    """
    A = np.asarray(A, dtype=complex)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise NonHermitianInput(f"expected a square matrix, got shape {A.shape}")
    defect = frobenius(A - A.conj().T)
    bound = tol.hermitian_rtol * max(1.0, frobenius(A))
    if defect > bound:
        raise NonHermitianInput(
            f"Hermiticity defect {defect:.3e} exceeds bound {bound:.3e}"
        )
    return A


def eigh(A: np.ndarray, tol: Tolerances = DEFAULT_TOLERANCES):
    """Eigendecomposition of a Hermitian matrix.

    Parameters
    ----------
    A:
        Square matrix, Hermitian within ``tol.hermitian_rtol``.

    Returns
    -------
    (eigenvalues, eigenvectors):
        Eigenvalues ascending (real 1-D array); eigenvectors as the columns
        of a unitary matrix, ``A @ v_k = w_k * v_k``.
    """
    A = require_hermitian(A, tol)
    try:
        w, v = np.linalg.eigh(A)
    except np.linalg.LinAlgError as exc:  # pragma: no cover - backend dependent
        raise ConvergenceFailure(str(exc)) from exc
    return w, v


def svd_nullspace(M: np.ndarray, rel_tol: float):
    """Numerical rank and orthonormal null-space basis of a real matrix.

    Singular values at most ``rel_tol`` times the largest one count as zero.
    Returns ``(rank, basis)`` where ``basis`` has orthonormal columns
    spanning the null space (shape ``(cols, cols - rank)``).
    """
    M = np.atleast_2d(np.asarray(M, dtype=float))
    if M.size == 0:
        raise ValueError("svd_nullspace requires a nonempty matrix")
    if not 0.0 < rel_tol < 1.0:
        raise ValueError(f"rel_tol must lie in (0, 1), got {rel_tol}")
    try:
        _, s, vh = np.linalg.svd(M, full_matrices=True)
    except np.linalg.LinAlgError as exc:  # pragma: no cover - backend dependent
        raise ConvergenceFailure(str(exc)) from exc
    smax = s[0] if s.size else 0.0
    rank = int(np.count_nonzero(s > rel_tol * smax)) if smax > 0 else 0
    return rank, vh[rank:].T.copy()


def random_unit_vector(n: int, rng: np.random.Generator) -> np.ndarray:
    """Haar-uniform unit vector in C^n (isotropic complex Gaussian, normalized)."""
    if n < 1:
        raise ValueError("dimension must be at least 1")
    v = rng.standard_normal(n) + 1j * rng.standard_normal(n)
    return v / np.linalg.norm(v)


def random_unitary(n: int, rng: np.random.Generator) -> np.ndarray:
    """Haar-random n x n unitary via QR of a Ginibre matrix.

    The R diagonal phases are absorbed into Q, which makes the QR output
    Haar distributed rather than merely unitary.
    """
    if n < 1:
        raise ValueError("dimension must be at least 1")
    g = (rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))) / np.sqrt(2.0)
    q, r = np.linalg.qr(g)
    d = np.diagonal(r)
    phases = d / np.abs(d)
    return q * phases[np.newaxis, :]


def fix_phase(v: np.ndarray, tol: float = 1e-12) -> np.ndarray:
    """Rotate a vector's global phase so its first sizable entry is positive real.

    Used to break eigenvector degeneracies deterministically.
    """
    idx = np.flatnonzero(np.abs(v) > tol)
    if idx.size == 0:
        return v
    pivot = v[idx[0]]
    return v * (np.conj(pivot) / np.abs(pivot))


# --- real parameterization of Hermitian matrices --------------------------
#
# A d x d Hermitian A maps to d^2 real coordinates laid out as
#   [ diag(A).real,  sqrt(2)*Re A[i<j],  sqrt(2)*Im A[i<j] ]
# with the strict upper triangle in row-major order.  The sqrt(2) weighting
# makes the map a real-linear isometry: ||coords||_2 = ||A||_F and
# coords(A) . coords(B) = Tr(A B) for Hermitian A, B.

_SQRT2 = np.sqrt(2.0)


def hermitian_to_coords(A: np.ndarray) -> np.ndarray:
    """Real coordinate vector(s) of Hermitian matrix(es), shape (..., d*d)."""
    A = np.asarray(A, dtype=complex)
    d = A.shape[-1]
    iu, ju = np.triu_indices(d, k=1)
    diag = np.diagonal(A, axis1=-2, axis2=-1).real
    upper = A[..., iu, ju]
    return np.concatenate(
        [diag, _SQRT2 * upper.real, _SQRT2 * upper.imag], axis=-1
    )


def coords_to_hermitian(coords: np.ndarray, d: int) -> np.ndarray:
    """Inverse of :func:`hermitian_to_coords` for a single coordinate vector."""
    coords = np.asarray(coords, dtype=float)
    if coords.shape[-1] != d * d:
        raise ValueError(f"expected {d * d} coordinates, got {coords.shape[-1]}")
    iu, ju = np.triu_indices(d, k=1)
    k = iu.size
    A = np.zeros(coords.shape[:-1] + (d, d), dtype=complex)
    A[..., np.arange(d), np.arange(d)] = coords[..., :d]
    upper = (coords[..., d : d + k] + 1j * coords[..., d + k :]) / _SQRT2
    A[..., iu, ju] = upper
    A[..., ju, iu] = np.conj(upper)
    return A
