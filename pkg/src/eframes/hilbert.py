"""Dense complex linear algebra kernel used by every frame module.

Conventions: vectors are 1-d complex128 arrays; operators on the
d-dimensional space are (d, d) arrays; rectangular (d, N) and (N, d)
arrays are synthesis and analysis maps between coefficient space C^N
and the vector space. The inner product is linear in its first
argument and conjugate-linear in the second. All functions are pure
and never mutate their arguments, so values can be shared freely
between threads.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatchError, NotHermitianError, SingularOperatorError

#: default tolerance for identity-style checks (desk scale, d <= 64)
DEFAULT_TOL = 1e-10


def as_vector(v) -> np.ndarray:
    """Coerce to a finite, nonempty 1-d complex vector."""
    arr = np.asarray(v, dtype=np.complex128)
    if arr.ndim != 1 or arr.size == 0:
        raise DimensionMismatchError(
            f"expected a nonempty 1-d vector, got shape {arr.shape}"
        )
    if not np.isfinite(arr).all():
        raise ValueError("vector entries must be finite")
    return arr


def as_operator(a) -> np.ndarray:
    """Coerce to a finite square complex matrix."""
    arr = np.asarray(a, dtype=np.complex128)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1] or arr.shape[0] == 0:
        raise DimensionMismatchError(
            f"expected a square operator, got shape {arr.shape}"
        )
    if not np.isfinite(arr).all():
        raise ValueError("operator entries must be finite")
    return arr


def as_map(m) -> np.ndarray:
    """Coerce to a finite rectangular complex linear map."""
    arr = np.asarray(m, dtype=np.complex128)
    if arr.ndim != 2 or arr.size == 0:
        raise DimensionMismatchError(
            f"expected a 2-d linear map, got shape {arr.shape}"
        )
    if not np.isfinite(arr).all():
        raise ValueError("map entries must be finite")
    return arr


def readonly(arr: np.ndarray) -> np.ndarray:
    """Copy and freeze an array for storage in an immutable record."""
    out = np.array(arr, dtype=np.complex128, copy=True)
    out.setflags(write=False)
    return out


@dataclass(frozen=True)
class SpectralBounds:
    """Extreme eigenvalues (lo, hi) of a Hermitian operator."""

    lo: float
    hi: float


def inner(u, v) -> complex:
    """<u, v>: linear in u, conjugate-linear in v."""
    u = as_vector(u)
    v = as_vector(v)
    if u.shape != v.shape:
        raise DimensionMismatchError(
            f"inner product needs equal dimensions, got {u.shape[0]} and {v.shape[0]}"
        )
    return complex(np.vdot(v, u))


def adjoint(a) -> np.ndarray:
    """Conjugate transpose of a (possibly rectangular) linear map."""
    return as_map(a).conj().T


def hermitian_deviation(a) -> float:
    """Frobenius norm of a - a*."""
    a = np.asarray(a, dtype=np.complex128)
    return float(np.linalg.norm(a - a.conj().T))


def is_hermitian(a, tol: float = DEFAULT_TOL) -> bool:
    a = as_operator(a)
    return hermitian_deviation(a) <= tol * np.linalg.norm(a)


def hermitian_bounds(a, tol: float = DEFAULT_TOL) -> SpectralBounds:
    """Smallest and largest eigenvalue of a Hermitian operator.

    Raises NotHermitianError when the skew part exceeds tol times the
    Frobenius norm of the operator.
    """
    a = as_operator(a)
    if hermitian_deviation(a) > tol * np.linalg.norm(a):
        raise NotHermitianError(
            f"operator is not Hermitian to tolerance {tol:g}"
        )
    w = np.linalg.eigvalsh((a + a.conj().T) / 2.0)
    return SpectralBounds(float(w[0]), float(w[-1]))


def invert_operator(a, tol: float = DEFAULT_TOL) -> np.ndarray:
    """Dense inverse; rejects operators singular to tolerance.

    Singularity test is scale invariant: sigma_min <= tol * sigma_max.
    """
    a = as_operator(a)
    s = np.linalg.svd(a, compute_uv=False)
    if s[-1] <= tol * s[0]:
        raise SingularOperatorError(
            f"operator is singular to tolerance (sigma_min/sigma_max = "
            f"{s[-1] / s[0] if s[0] else 0.0:.3e})"
        )
    return np.linalg.inv(a)


def pseudoinverse(m, tol: float = DEFAULT_TOL) -> np.ndarray:
    """Moore-Penrose pseudoinverse, singular values below tol*sigma_max dropped."""
    return np.linalg.pinv(as_map(m), rcond=tol)


def operator_norm(m) -> float:
    """Largest singular value."""
    return float(np.linalg.norm(as_map(m), 2))


def is_positive_definite(a, tol: float = DEFAULT_TOL) -> bool:
    """True iff Hermitian to tol with spectrum bounded away from zero."""
    a = as_operator(a)
    if hermitian_deviation(a) > tol * np.linalg.norm(a):
        return False
    w = np.linalg.eigvalsh((a + a.conj().T) / 2.0)
    return bool(w[0] > tol * max(abs(w[0]), abs(w[-1])))


def random_unit_vector(dim: int, rng: np.random.Generator) -> np.ndarray:
    """Complex Gaussian direction normalized to unit norm."""
    v = rng.standard_normal(dim) + 1j * rng.standard_normal(dim)
    return v / np.linalg.norm(v)


def trial_matrix(dim: int, trials: int, seed: int) -> np.ndarray:
    """Trial vectors as columns: seeded random unit vectors, then the basis."""
    rng = np.random.default_rng(seed)
    f = rng.standard_normal((dim, trials)) + 1j * rng.standard_normal((dim, trials))
    f /= np.linalg.norm(f, axis=0)
    return np.concatenate([f, np.eye(dim, dtype=np.complex128)], axis=1)
