"""Dense complex linear algebra used by the rest of the package.

Matrices are plain ``numpy.ndarray`` objects of complex dtype.  Vectorization
is row-major: ``vec([[a, b], [c, d]]) == [a, b, c, d]``.  With that ordering
``vec(A @ X @ B) == kron(A, B.T) @ vec(X)``.
"""
from typing import NamedTuple

import numpy as np
import scipy.linalg

HERMITIAN_TOL = 1e-10


class Spectrum(NamedTuple):
    """Eigen-decomposition of a Hermitian matrix.

    ``eigenvalues`` are real and ascending; ``eigenvectors[:, k]`` belongs to
    ``eigenvalues[k]``.
    """

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray


def _square(m, name="matrix"):
    m = np.asarray(m)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError(f"{name} must be square, got shape {m.shape}")
    return m


def kron(a, b):
    """Kronecker product ``a ⊗ b``."""
    return np.kron(np.asarray(a, dtype=complex), np.asarray(b, dtype=complex))


def vec(m):
    """Row-major vectorization of a square matrix."""
    m = _square(m)
    return np.asarray(m, dtype=complex).reshape(-1).copy()


def unvec(v, n=None):
    """Inverse of :func:`vec`.  ``n`` defaults to ``sqrt(len(v))``."""
    v = np.asarray(v, dtype=complex).reshape(-1)
    if n is None:
        n = int(round(np.sqrt(v.size)))
    if v.size != n * n:
        raise ValueError(f"vector of length {v.size} cannot be reshaped to {n}x{n}")
    return v.reshape(n, n).copy()


def expm(a):
    """Matrix exponential by scaling and squaring with a Padé approximant.

    Liouvillians are generally non-normal, so no eigendecomposition is used.
    """
    a = _square(a)
    if not np.all(np.isfinite(a)):
        raise ValueError("matrix exponential of a non-finite matrix")
    return scipy.linalg.expm(np.asarray(a, dtype=complex))


def is_hermitian(m, tol=HERMITIAN_TOL):
    m = np.asarray(m)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        return False
    scale = max(1.0, float(np.max(np.abs(m)))) if m.size else 1.0
    return bool(np.max(np.abs(m - m.conj().T), initial=0.0) <= tol * scale)


def hermitian_part(m):
    m = np.asarray(m, dtype=complex)
    return 0.5 * (m + m.conj().T)


def eig_hermitian(m, tol=HERMITIAN_TOL):
    """Eigenvalues (ascending) and orthonormal eigenvectors of a Hermitian matrix.

    The input is symmetrized before the solve to scrub roundoff; matrices whose
    anti-Hermitian part exceeds ``tol`` (relative to the largest entry) are
    rejected.
    """
    m = _square(m)
    if not is_hermitian(m, tol):
        raise ValueError("matrix is not Hermitian within tolerance")
    w, v = np.linalg.eigh(hermitian_part(m))
    return Spectrum(w, v)
