"""Diagonal metrics on reductive splits and the magnetic field operator.

The metric rescales the bi-invariant form B module by module with
positive weights. A central element W of h together with a module pair
(a, b) and a charge k defines the skew field operator

    I0 = ad(W) on m_a  +  (1/lam) ad(W) on m_b,    lam = w_b / w_a,

whose domain is m_a + m_b. The electromagnetic two-form is
omega(X, Y) = <X, I0 Y>.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .linalg import (
    DomainError,
    StructureError,
    bnorm,
    bracket,
    inner_b,
    project,
    span_residual,
)
from .split import CATALOG_TOL, ReductiveSplit, bracket_pair_residual

MEMBERSHIP_TOL = 1e-10


@dataclass(frozen=True)
class DiagonalMetric:
    """Positive weights, one per module of a split."""

    weights: tuple

    def __post_init__(self):
        ws = tuple(float(w) for w in self.weights)
        if not ws or any(w <= 0 or not np.isfinite(w) for w in ws):
            raise ValueError(f"weights must be positive and finite, got {self.weights}")
        object.__setattr__(self, "weights", ws)


def _check_in(space, X, name, what):
    r = span_residual(space, X)
    if r > MEMBERSHIP_TOL:
        raise DomainError(
            f"{name} has a component of size {r:.3e} outside {what}"
        )


@dataclass(frozen=True, eq=False)
class ChargedSystem:
    """A split, metric, field pair (a, b), central element W and charge k.

    `b` may be None when the second module is empty; lam is then 1 and
    the I0 domain shrinks to m_a. Module indices are 1-based.
    """

    split: ReductiveSplit
    metric: DiagonalMetric
    a: int
    b: object
    W: np.ndarray
    k: float
    model: object = None

    def __post_init__(self):
        object.__setattr__(self, "k", float(self.k))
        if not np.isfinite(self.k):
            raise ValueError("charge k must be finite")

    @property
    def lam(self):
        if self.b is None:
            return 1.0
        return self.metric.weights[self.b - 1] / self.metric.weights[self.a - 1]

    @property
    def ma(self):
        return self.split.module(self.a)

    @property
    def mb(self):
        if self.b is None:
            return None
        return self.split.module(self.b)

    @property
    def m(self):
        return self.split.m

    def metric_inner(self, X, Y):
        return metric_inner(self, X, Y)

    def apply_I0(self, X):
        return apply_I0(self, X)

    def em_two_form(self, X, Y):
        return em_two_form(self, X, Y)


def charged_system(split, weights, a, b, W, k, model=None, tol=MEMBERSHIP_TOL):
    """Validated constructor for ChargedSystem.

    Checks the weight count, the pair indices, the bracket condition
    [m_a, m_b] in m_a, and that W lies in the center of h. When h is
    trivial, W is forced to zero.
    """
    metric = DiagonalMetric(tuple(weights))
    if len(metric.weights) != split.s:
        raise ValueError(
            f"need {split.s} weights for {split.s} modules, got {len(metric.weights)}"
        )
    if not 1 <= a <= split.s:
        raise ValueError(f"module index a={a} out of range 1..{split.s}")
    if b is not None:
        if not 1 <= b <= split.s:
            raise ValueError(f"module index b={b} out of range 1..{split.s}")
        if b == a:
            raise ValueError("pair indices a and b must differ")
    r = bracket_pair_residual(split, a, b)
    if r > tol:
        raise StructureError(
            f"bracket condition [m{a}, m{b}] in m{a} fails (residual {r:.3e})"
        )
    W = np.asarray(W, dtype=complex)
    if split.h.dim == 0:
        if bnorm(W) > tol:
            raise StructureError("h is trivial, so W must be zero")
        W = np.zeros((split.n, split.n), dtype=complex)
    else:
        rs = span_residual(split.h, W)
        if rs > tol:
            raise StructureError(f"W is not in h (residual {rs:.3e})")
        rc = max(bnorm(bracket(W, x)) for x in split.h.basis)
        if rc > tol:
            raise StructureError(f"W is not central in h (residual {rc:.3e})")
    return ChargedSystem(split, metric, a, int(b) if b is not None else None, W, k, model)


def metric_inner(sys, X, Y):
    """Weighted inner product on m. Arguments must lie in m."""
    _check_in(sys.m, X, "X", "m")
    _check_in(sys.m, Y, "Y", "m")
    total = 0.0
    for w, mod in zip(sys.metric.weights, sys.split.modules):
        total += w * inner_b(project(mod, X), project(mod, Y))
    return total


def metric_norm(sys, X):
    return float(np.sqrt(max(metric_inner(sys, X, X), 0.0)))


def apply_I0(sys, X):
    """Field operator on its domain m_a + m_b."""
    Xa = project(sys.ma, X)
    if sys.b is None:
        r = bnorm(X - Xa)
        if r > MEMBERSHIP_TOL:
            raise DomainError(
                f"X has a component of size {r:.3e} outside the I0 domain m{sys.a}"
            )
        return bracket(sys.W, Xa)
    Xb = project(sys.mb, X)
    r = bnorm(X - Xa - Xb)
    if r > MEMBERSHIP_TOL:
        raise DomainError(
            f"X has a component of size {r:.3e} outside the I0 domain "
            f"m{sys.a} + m{sys.b}"
        )
    return bracket(sys.W, Xa) + bracket(sys.W, Xb) / sys.lam


def em_two_form(sys, X, Y):
    """omega(X, Y) = <X, I0 Y>, skew in (X, Y)."""
    return metric_inner(sys, X, apply_I0(sys, Y))
