"""Neumann-series correction of approximate duals.

When a candidate family phi almost reconstructs, the deviation
operator R = id - D T_u* (D the synthesis map of phi, T_u the
controlled synthesis map of psi) is a contraction and the series
sum_n R^n phi_k converges to an exact dual. Powers of R are applied
iteratively to the sequence members; high matrix powers are never
materialized.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import hilbert
from .errors import ConvergenceError, DimensionMismatchError
from .mapping import MatrixMapping, apply_mapping, as_sequence


@dataclass(frozen=True)
class NeumannReport:
    """Convergence diagnostics of one series run.

    residual_history holds term norms for the dual correction and true
    residuals for the iterative reconstruction; either way consecutive
    entries shrink by about the contraction ratio.
    """

    ratio: float
    terms_used: int
    residual_history: tuple[float, ...]
    converged: bool


def _prepared(e: MatrixMapping, psi, phi, u):
    psi = as_sequence(psi)
    phi = as_sequence(phi)
    u = hilbert.as_operator(u)
    images_psi = apply_mapping(e, psi)
    images_phi = apply_mapping(e, phi)
    if images_psi.shape != images_phi.shape:
        raise DimensionMismatchError(
            f"sequence shapes differ: {images_psi.shape} vs {images_phi.shape}"
        )
    if u.shape[0] != images_psi.shape[1]:
        raise DimensionMismatchError(
            f"control operator dim {u.shape[0]} does not match sequence dim "
            f"{images_psi.shape[1]}"
        )
    return phi, u, images_psi, images_phi


def contraction_ratio(e: MatrixMapping, psi, phi, u) -> float:
    """Spectral norm of id - T_u D*, the deviation of the one-step
    reconstruction from the identity."""
    _, u, images_psi, images_phi = _prepared(e, psi, phi, u)
    d = images_psi.shape[1]
    one_step = (u @ images_psi.T) @ images_phi.conj()
    return hilbert.operator_norm(np.eye(d) - one_step)


def corrected_dual(
    e: MatrixMapping,
    psi,
    phi,
    u,
    eps: float = 1e-12,
    max_terms: int = 10_000,
) -> tuple[np.ndarray, NeumannReport]:
    """Correct phi into an exact dual by summing the deviation series.

    Terms are added until the latest term norm falls to eps times the
    accumulated norm; terms_used is the index of that final term, so an
    already-exact dual reports 1. The corrected family reconstructs to
    eps / (1 - ratio). Raises ConvergenceError when the ratio is >= 1;
    an exhausted max_terms returns converged=False.
    """
    phi, u, images_psi, images_phi = _prepared(e, psi, phi, u)
    ratio = contraction_ratio(e, psi, phi, u)
    if ratio >= 1.0:
        raise ConvergenceError(
            f"contraction ratio {ratio:.6g} >= 1: series diverges"
        )
    d = images_psi.shape[1]
    deviation = np.eye(d) - images_phi.T @ (images_psi.conj() @ u.conj().T)
    term = phi.copy()
    acc = phi.copy()
    history = [float(np.linalg.norm(term))]
    converged = False
    terms_used = max_terms
    for n in range(1, max_terms + 1):
        term = term @ deviation.T
        acc = acc + term
        term_norm = float(np.linalg.norm(term))
        history.append(term_norm)
        if term_norm <= eps * np.linalg.norm(acc):
            terms_used = n
            converged = True
            break
    return acc, NeumannReport(ratio, terms_used, tuple(history), converged)


def iterative_reconstruct(
    e: MatrixMapping,
    psi,
    phi,
    u,
    f,
    eps: float = 1e-10,
    max_terms: int = 10_000,
) -> tuple[np.ndarray, NeumannReport]:
    """Reconstruct f from the approximate pair by geometric iteration.

    Accumulates partial sums of (id - T_u D*)^n applied to the one-step
    reconstruction of f and stops once the true residual drops below
    eps times the norm of f. Raises ConvergenceError when the ratio is
    >= 1; an exhausted max_terms returns converged=False.
    """
    phi, u, images_psi, images_phi = _prepared(e, psi, phi, u)
    f = hilbert.as_vector(f)
    if f.shape[0] != images_psi.shape[1]:
        raise DimensionMismatchError(
            f"vector dim {f.shape[0]} does not match sequence dim "
            f"{images_psi.shape[1]}"
        )
    ratio = contraction_ratio(e, psi, phi, u)
    if ratio >= 1.0:
        raise ConvergenceError(
            f"contraction ratio {ratio:.6g} >= 1: iteration diverges"
        )
    one_step = (u @ images_psi.T) @ images_phi.conj()
    f_norm = float(np.linalg.norm(f))
    term = one_step @ f
    approx = term.copy()
    residual = float(np.linalg.norm(f - approx))
    history = [residual]
    terms_used = 1
    converged = residual <= eps * f_norm
    while not converged and terms_used < max_terms:
        term = term - one_step @ term
        approx = approx + term
        residual = float(np.linalg.norm(f - approx))
        history.append(residual)
        terms_used += 1
        converged = residual <= eps * f_norm
    return approx, NeumannReport(ratio, terms_used, tuple(history), converged)
