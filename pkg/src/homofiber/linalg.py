"""Dense complex matrix algebra for compact matrix Lie groups.

Everything in this package lives inside u(n): algebra elements are
skew-Hermitian n x n complex matrices, group elements are unitary
matrices. This module provides the bracket, the trace inner product,
matrix exponentials, Gram-Schmidt orthonormalization and subspace
projection that the rest of the package is built on.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.linalg


class DimensionError(ValueError):
    """Operands have incompatible matrix shapes."""


class DomainError(ValueError):
    """A value lies outside the subspace an operation is defined on."""


class StructureError(ValueError):
    """Input data violates a structural hypothesis (closure, nesting, ...)."""


def _as_matrix(X, name="X"):
    A = np.asarray(X, dtype=complex)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise DimensionError(f"{name} must be a square matrix, got shape {A.shape}")
    if not np.all(np.isfinite(A)):
        raise DomainError(f"{name} has non-finite entries")
    return A


def _same_size(A, B, op):
    if A.shape != B.shape:
        raise DimensionError(f"{op}: size mismatch {A.shape} vs {B.shape}")


def check_skew_hermitian(X, tol=1e-12, name="X"):
    """Raise DomainError unless X + X^H vanishes to within tol (scale aware)."""
    A = _as_matrix(X, name)
    scale = max(1.0, float(np.abs(A).max(initial=0.0)))
    dev = float(np.abs(A + A.conj().T).max(initial=0.0))
    if dev > tol * scale:
        raise DomainError(f"{name} is not skew-Hermitian (deviation {dev:.3e})")
    return A


def check_unitary(g, tol=1e-10, name="g"):
    """Raise DomainError unless g g^H = I to within tol."""
    A = _as_matrix(g, name)
    dev = float(np.abs(A @ A.conj().T - np.eye(A.shape[0])).max())
    if dev > tol:
        raise DomainError(f"{name} is not unitary (deviation {dev:.3e})")
    return A


def bracket(X, Y):
    """Commutator [X, Y] = XY - YX."""
    A = _as_matrix(X)
    B = _as_matrix(Y, "Y")
    _same_size(A, B, "bracket")
    return A @ B - B @ A


def inner_b(X, Y, scale=1.0):
    """Ad-invariant inner product B(X, Y) = -Re trace(XY).

    Positive definite on skew-Hermitian matrices. `scale` applies an
    optional overall positive factor.
    """
    A = _as_matrix(X)
    B = _as_matrix(Y, "Y")
    _same_size(A, B, "inner_b")
    return -scale * float(np.real(np.trace(A @ B)))


def bnorm(X):
    """Norm induced by inner_b."""
    return float(np.sqrt(max(inner_b(X, X), 0.0)))


def expm(X):
    """Matrix exponential of an algebra element.

    Skew-Hermitian input is exponentiated through the eigendecomposition
    of the Hermitian matrix -iX, which is exactly unitary up to roundoff.
    Anything else falls through to scipy's scaling-and-squaring.
    """
    A = _as_matrix(X)
    scale = max(1.0, float(np.abs(A).max(initial=0.0)))
    if float(np.abs(A + A.conj().T).max(initial=0.0)) <= 1e-12 * scale:
        w, U = np.linalg.eigh(-1j * A)
        return (U * np.exp(1j * w)) @ U.conj().T
    return scipy.linalg.expm(A)


def adjoint(g, X):
    """Conjugation Ad(g) X = g X g^{-1} for unitary g."""
    G = _as_matrix(g, "g")
    A = _as_matrix(X)
    _same_size(G, A, "adjoint")
    return G @ A @ G.conj().T


@dataclass(frozen=True, eq=False)
class Subspace:
    """A subspace of u(n) carried as an ordered B-orthonormal basis."""

    basis: tuple

    @property
    def dim(self):
        return len(self.basis)

    @property
    def ambient(self):
        return self.basis[0].shape[0] if self.basis else 0

    def __iter__(self):
        return iter(self.basis)


def orthonormalize(vectors, rank_tol=1e-10):
    """Gram-Schmidt with respect to inner_b.

    Vectors whose remainder after projection has B-norm below rank_tol
    are dropped, so linearly dependent input is handled by rank
    reduction rather than an error. A second orthogonalization pass
    keeps the result clean when the input is ill-conditioned.
    """
    kept = []
    for v in vectors:
        u = _as_matrix(v).copy()
        for _ in range(2):
            for e in kept:
                u = u - inner_b(u, e) * e
        nrm = bnorm(u)
        if nrm >= rank_tol:
            kept.append(u / nrm)
    return Subspace(tuple(kept))


def project(S, X):
    """Orthogonal projection of X onto the subspace S."""
    A = _as_matrix(X)
    out = np.zeros_like(A)
    for e in S.basis:
        _same_size(A, e, "project")
        out = out + inner_b(A, e) * e
    return out


def span_residual(S, X):
    """B-norm of the component of X orthogonal to S."""
    return bnorm(X - project(S, X))
