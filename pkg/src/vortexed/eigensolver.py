"""Lowest eigenpairs of the assembled Hamiltonian.

The production path is a thick-restart Lanczos iteration with full
reorthogonalization of the Krylov basis on every step, which keeps
near-degenerate pairs (occupation crossings sit exactly there) resolved
without ghost eigenvalues.  The start vector is drawn from a seeded
generator, or supplied by the caller to warm-start frequency sweeps, so
repeated runs are bit-reproducible.  Small problems fall through to a
dense LAPACK solve.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .errors import DimensionTooLargeError
from .hamiltonian import HamiltonianParts, combine_dense, matvec

DENSE_CAP = 4000


@dataclass
class EigenResult:
    """k lowest eigenpairs, ascending, with per-pair diagnostics."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray  # (dim, k) columns
    residual_norms: np.ndarray
    iterations: int  # matrix applications
    converged: np.ndarray  # per pair
    method: str  # "dense" or "krylov"

    @property
    def all_converged(self) -> bool:
        return bool(np.all(self.converged))


def _orthonormalize(t: np.ndarray, basis: np.ndarray, size: int) -> tuple[np.ndarray, float]:
    # two classical Gram-Schmidt passes against every kept vector
    for _ in range(2):
        t = t - basis[:, :size] @ (basis[:, :size].T @ t)
    return t, float(np.linalg.norm(t))


def krylov_lowest(apply_h, dim: int, k: int, tol: float, seed: int,
                  start_vector: np.ndarray | None = None,
                  max_subspace: int | None = None,
                  max_restarts: int = 120) -> EigenResult:
    """Thick-restart Lanczos on a symmetric operator given as a callable."""
    k = min(k, dim)
    rng = np.random.default_rng(seed)
    if max_subspace is None:
        max_subspace = min(dim, max(40, 6 * k))
    max_subspace = max(max_subspace, k + 2)
    keep = min(max(2 * k, k + 6), max_subspace - 2)

    v = None
    if start_vector is not None:
        v = np.array(start_vector, dtype=float)
        nv = np.linalg.norm(v)
        v = v / nv if nv > 1e-12 else None
    if v is None:
        v = rng.standard_normal(dim)
        v /= np.linalg.norm(v)

    basis = np.empty((dim, max_subspace))
    image = np.empty((dim, max_subspace))  # H @ basis columns
    proj = np.zeros((max_subspace, max_subspace))

    basis[:, 0] = v
    image[:, 0] = apply_h(v)
    proj[0, 0] = float(v @ image[:, 0])
    size = 1
    n_apply = 1
    next_dir: np.ndarray | None = None

    theta = np.zeros(k)
    ritz = np.zeros((dim, k))
    res = np.full(k, np.inf)

    for _ in range(max_restarts):
        while size < max_subspace:
            t = next_dir if next_dir is not None else image[:, size - 1].copy()
            next_dir = None
            t, nt = _orthonormalize(t, basis, size)
            if nt < 1e-10:
                t, nt = _orthonormalize(rng.standard_normal(dim), basis, size)
                if nt < 1e-10:
                    break  # subspace exhausted the space
            t /= nt
            basis[:, size] = t
            ht = apply_h(t)
            n_apply += 1
            image[:, size] = ht
            col = basis[:, : size + 1].T @ ht
            proj[: size + 1, size] = col
            proj[size, : size + 1] = col
            size += 1

        evals, evecs = scipy.linalg.eigh(proj[:size, :size])
        take = min(keep, size)
        ritz_all = basis[:, :size] @ evecs[:, :take]
        image_all = image[:, :size] @ evecs[:, :take]
        resid = image_all - ritz_all * evals[:take]
        rnorms = np.linalg.norm(resid, axis=0)

        kk = min(k, take)
        theta = evals[:kk].copy()
        ritz = ritz_all[:, :kk].copy()
        res = rnorms[:kk].copy()
        if np.all(res <= tol) or size >= dim:
            break

        # thick restart: keep the leading Ritz vectors, continue from the
        # first unconverged residual
        basis[:, :take] = ritz_all
        image[:, :take] = image_all
        proj[:, :] = 0.0
        proj[:take, :take] = np.diag(evals[:take])
        size = take
        unconv = np.flatnonzero(rnorms[:kk] > tol)
        j = int(unconv[0]) if unconv.size else 0
        next_dir = resid[:, j].copy()

    converged = res <= tol
    return EigenResult(
        eigenvalues=theta,
        eigenvectors=ritz,
        residual_norms=res,
        iterations=n_apply,
        converged=converged,
        method="krylov",
    )


def lowest_eigenpairs(parts: HamiltonianParts, omega: float, g: float, a: float,
                      k: int = 4, tol: float = 1e-10, seed: int = 1,
                      start_vector: np.ndarray | None = None,
                      max_subspace: int | None = None,
                      max_restarts: int = 120) -> EigenResult:
    """k lowest eigenpairs of H(omega, g, A) over the basis of ``parts``.

    Deterministic for a fixed seed (or fixed warm-start vector).  If the k-th
    residual exceeds ``tol`` after the restart budget, the partial result is
    returned with its ``converged`` flags cleared, never silently.
    """
    dim = parts.dimension
    k = min(k, dim)
    if dim <= max(32, 2 * k + 8):
        h = combine_dense(parts, omega, g, a)
        evals, evecs = scipy.linalg.eigh(h)
        evals = evals[:k]
        evecs = evecs[:, :k]
        resid = np.array([
            np.linalg.norm(matvec(parts, omega, g, a, evecs[:, i]) - evals[i] * evecs[:, i])
            for i in range(k)
        ])
        return EigenResult(
            eigenvalues=evals,
            eigenvectors=evecs,
            residual_norms=resid,
            iterations=dim,
            converged=np.ones(k, dtype=bool),
            method="dense",
        )

    def apply_h(x: np.ndarray) -> np.ndarray:
        return matvec(parts, omega, g, a, x)

    return krylov_lowest(apply_h, dim, k, tol, seed, start_vector=start_vector,
                         max_subspace=max_subspace, max_restarts=max_restarts)


def dense_spectrum(parts: HamiltonianParts, omega: float, g: float, a: float,
                   dense_cap: int = DENSE_CAP) -> np.ndarray:
    """Full eigenvalue list by direct dense diagonalization (oracle path)."""
    if parts.dimension > dense_cap:
        raise DimensionTooLargeError(
            f"dimension {parts.dimension} above dense cap {dense_cap}"
        )
    return scipy.linalg.eigh(combine_dense(parts, omega, g, a), eigvals_only=True)
