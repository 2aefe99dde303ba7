"""E-frame analysis: synthesis and analysis maps, frame operator,
bounds, canonical dual, reconstruction, and Riesz-type families.

Everything is driven by the images (E psi)_n of a sequence under the
mapping: the synthesis map has image n as its n-th column, the
analysis map is its conjugate transpose, and the frame operator is
their composition.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import hilbert
from .errors import DimensionMismatchError, NotAFrameError, SingularOperatorError
from .hilbert import DEFAULT_TOL, SpectralBounds
from .mapping import MatrixMapping, apply_inverse_mapping, apply_mapping, as_sequence

FRAME = "frame"
BESSEL_ONLY = "bessel-only"
#: unreachable for finite, validated input; kept so reports cover the full range
NOT_BESSEL = "not-bessel"


@dataclass(frozen=True)
class EFrameRecord:
    """Analysis result for one (mapping, sequence) pair."""

    psi: np.ndarray
    mapping: MatrixMapping
    images: np.ndarray
    frame_op: np.ndarray
    bounds: SpectralBounds
    verdict: str


def e_synthesis(e: MatrixMapping, psi) -> np.ndarray:
    """Synthesis map C^N -> H whose column n is the image (E psi)_n."""
    return apply_mapping(e, psi).T


def e_analysis(e: MatrixMapping, psi, f) -> np.ndarray:
    """Coefficient vector {<f, (E psi)_n>}_n."""
    f = hilbert.as_vector(f)
    images = apply_mapping(e, psi)
    if images.shape[1] != f.shape[0]:
        raise DimensionMismatchError(
            f"vector dimension {f.shape[0]} does not match sequence dimension "
            f"{images.shape[1]}"
        )
    return images.conj() @ f


def e_frame_operator(e: MatrixMapping, psi) -> np.ndarray:
    """S = T T*, the sum of outer products of the images."""
    images = apply_mapping(e, psi)
    return images.T @ images.conj()


def e_frame_bounds(e: MatrixMapping, psi, tol: float = DEFAULT_TOL) -> EFrameRecord:
    """Frame bounds and verdict from the spectrum of the frame operator.

    The verdict is ``frame`` iff the smallest eigenvalue exceeds
    tol times the largest one (scale-invariant threshold), otherwise
    ``bessel-only``.
    """
    psi = as_sequence(psi)
    images = apply_mapping(e, psi)
    frame_op = images.T @ images.conj()
    bounds = hilbert.hermitian_bounds(frame_op)
    verdict = FRAME if bounds.lo > tol * bounds.hi else BESSEL_ONLY
    return EFrameRecord(
        psi=hilbert.readonly(psi),
        mapping=e,
        images=hilbert.readonly(images),
        frame_op=hilbert.readonly(frame_op),
        bounds=bounds,
        verdict=verdict,
    )


def e_canonical_dual(e: MatrixMapping, psi, tol: float = DEFAULT_TOL) -> np.ndarray:
    """Canonical dual {S^{-1} psi_k}; requires a genuine frame."""
    record = e_frame_bounds(e, psi, tol)
    if record.verdict != FRAME:
        raise NotAFrameError("family is not a frame: lower bound vanishes")
    s_inv = hilbert.invert_operator(record.frame_op, tol)
    return record.psi @ s_inv.T


def e_reconstruct(e: MatrixMapping, psi, phi, f) -> np.ndarray:
    """sum_n <f, (E phi)_n> (E psi)_n: coefficients from phi, synthesis from psi."""
    f = hilbert.as_vector(f)
    images_psi = apply_mapping(e, psi)
    images_phi = apply_mapping(e, phi)
    if images_psi.shape != images_phi.shape or images_psi.shape[1] != f.shape[0]:
        raise DimensionMismatchError(
            f"incompatible shapes: images {images_psi.shape} vs {images_phi.shape}, "
            f"vector dim {f.shape[0]}"
        )
    return images_psi.T @ (images_phi.conj() @ f)


def e_riesz_family(
    v, e: MatrixMapping, basis, tol: float = DEFAULT_TOL
) -> np.ndarray:
    """Family with member k equal to V applied to (E^{-1} basis)_k.

    V must be invertible and the basis orthonormal with as many members
    as dimensions.
    """
    v = hilbert.as_operator(v)
    basis = as_sequence(basis)
    n, d = basis.shape
    if n != d:
        raise DimensionMismatchError(
            f"need as many basis members as dimensions, got {n} of dim {d}"
        )
    if e.n != n or v.shape[0] != d:
        raise DimensionMismatchError(
            f"mapping size {e.n} and operator dim {v.shape[0]} must equal {n}"
        )
    s = np.linalg.svd(v, compute_uv=False)
    if s[-1] <= tol * s[0]:
        raise SingularOperatorError("operator is singular to tolerance")
    gram = basis @ basis.conj().T
    if np.linalg.norm(gram - np.eye(n)) > tol * np.sqrt(n):
        raise ValueError("basis is not orthonormal to tolerance")
    return apply_inverse_mapping(e, basis) @ v.T
