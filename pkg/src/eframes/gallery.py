"""Built-in worked example over the bidiagonal difference mapping.

At dimension d the mapping has size N = d + 1 so that the images of
the base family are [e1, e1, e2, ..., e_d], which span the space. The
three families reproduce the classical dual/non-dual constellation:
psi_tilde pairs with psi only under the halving control operator,
while phi pairs with psi only without it.
"""

from __future__ import annotations

import numpy as np

from .mapping import MatrixMapping, build_bidiagonal


def _check_dim(dim: int) -> None:
    if dim < 2:
        raise ValueError("worked example needs dimension >= 2 (at least e1 and e2)")


def example_mapping(dim: int) -> MatrixMapping:
    """Difference mapping of size dim + 1."""
    _check_dim(dim)
    return build_bidiagonal(dim + 1)


def example_psi(dim: int) -> np.ndarray:
    """psi_1 = e1, psi_k = 2 e1 + e2 + ... + e_{k-1} for k >= 2."""
    _check_dim(dim)
    psi = np.zeros((dim + 1, dim), dtype=np.complex128)
    psi[0, 0] = 1.0
    for k in range(1, dim + 1):
        psi[k, 0] = 2.0
        psi[k, 1:k] = 1.0
    return psi


def example_psi_tilde(dim: int) -> np.ndarray:
    """psi~_1 = e1, psi~_k = 2 (e1 + ... + e_{k-1}) for k >= 2."""
    _check_dim(dim)
    out = np.zeros((dim + 1, dim), dtype=np.complex128)
    out[0, 0] = 1.0
    for k in range(1, dim + 1):
        out[k, :k] = 2.0
    return out


def example_phi(dim: int) -> np.ndarray:
    """phi_1 = e1 / 3, phi_k = e1 + ... + e_{k-1} for k >= 2."""
    _check_dim(dim)
    out = np.zeros((dim + 1, dim), dtype=np.complex128)
    out[0, 0] = 1.0 / 3.0
    for k in range(1, dim + 1):
        out[k, :k] = 1.0
    return out


def example_u(dim: int) -> np.ndarray:
    """The halving control operator."""
    _check_dim(dim)
    return 0.5 * np.eye(dim, dtype=np.complex128)


def example_parseval_psi(dim: int) -> np.ndarray:
    """Family whose images are [e1, e1, sqrt(2) e2, ..., sqrt(2) e_d].

    Together with the halving control operator this is Parseval: the
    plain frame operator is 2 id, the controlled one is id.
    """
    _check_dim(dim)
    images = np.zeros((dim + 1, dim), dtype=np.complex128)
    images[0, 0] = 1.0
    images[1, 0] = 1.0
    for k in range(2, dim + 1):
        images[k, k - 1] = np.sqrt(2.0)
    return np.asarray(example_mapping(dim).inverse @ images)
