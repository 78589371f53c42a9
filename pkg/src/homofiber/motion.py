"""Closed-form charged-particle motion as a product of two exponentials.

Given initial data Xa in m_a and Xb in m_b, the curve

    alpha(t) = exp(tX) exp(tY),
    X = Xa + lam*Xb + k*W,
    Y = (1 - lam)*(Xb + (k/lam)*W),

projects to a trajectory alpha(t)*o in G/H whose covariant acceleration
equals k I0(velocity). The body velocity, the pullback of the velocity
to m, is Ad(exp(-tY))Xa + Xb; an independent product-rule derivative is
available for cross-checking. At lam = 1 the pair collapses to Y = 0,
set exactly to avoid float residue.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .field import MEMBERSHIP_TOL, metric_inner, metric_norm
from .linalg import DomainError, adjoint, bnorm, expm, project, span_residual


class _Flow:
    """exp(tA) at many t from one eigendecomposition.

    Skew-Hermitian A admits exp(tA) = U diag(exp(i t w)) U* with
    -iA = U diag(w) U*. Other A fall back to a fresh exponential per
    call. t = 0 and A = 0 return the identity exactly.
    """

    def __init__(self, A):
        self.A = np.asarray(A, dtype=complex)
        self._n = self.A.shape[0]
        self._zero = not self.A.any()
        scale = max(float(np.linalg.norm(self.A)), 1.0)
        if np.linalg.norm(self.A + self.A.conj().T) <= 1e-12 * scale:
            w, U = np.linalg.eigh(-1j * self.A)
            self._w, self._U, self._Uh = w, U, U.conj().T
        else:
            self._w = None

    def __call__(self, t):
        if self._zero or t == 0.0:
            return np.eye(self._n, dtype=complex)
        if self._w is None:
            return expm(t * self.A)
        return (self._U * np.exp(1j * t * self._w)) @ self._Uh


@dataclass(frozen=True)
class TrajectorySample:
    t: float
    representative: np.ndarray
    body_velocity: np.ndarray
    speed: float
    position: object = None


class ClosedFormMotion:
    """Two-exponential curve with cached flows.

    `exact` marks curves built from valid initial data, for which the
    body velocity is Ad(exp(-tY))Xa + Xb. Deliberately damaged curves
    (see perturb_motion) carry exact=False and fall back to projecting
    the honest logarithmic derivative, since the shortcut formula no
    longer applies.
    """

    def __init__(self, system, Xa, Xb, Y_override=None, exact=True):
        self.system = system
        self.Xa = np.asarray(Xa, dtype=complex)
        self.Xb = np.asarray(Xb, dtype=complex)
        lam, k, W = system.lam, system.k, system.W
        self.X = self.Xa + lam * self.Xb + k * W
        if Y_override is not None:
            self.Y = np.asarray(Y_override, dtype=complex)
            self.exact = False
        else:
            if lam == 1.0:
                self.Y = np.zeros_like(self.X)
            else:
                self.Y = (1.0 - lam) * (self.Xb + (k / lam) * W)
            self.exact = bool(exact)
        self._flow_x = _Flow(self.X)
        self._flow_y = _Flow(self.Y)
        self._rep_cache = {}
        self._vel_cache = {}
        self._num_cache = {}

    def representative(self, t):
        g = self._rep_cache.get(t)
        if g is None:
            g = self._flow_x(t) @ self._flow_y(t)
            self._rep_cache[t] = g
        return g

    def transported_xa(self, t):
        """Ad(exp(-tY)) applied to Xa."""
        return adjoint(self._flow_y(-t), self.Xa)

    def body_velocity(self, t):
        v = self._vel_cache.get(t)
        if v is None:
            if self.exact:
                v = self.transported_xa(t) + self.Xb
            else:
                xi = adjoint(self._flow_y(-t), self.X) + self.Y
                v = project(self.system.m, xi)
            self._vel_cache[t] = v
        return v

    def body_velocity_numeric(self, t):
        """m-projection of alpha^-1 alpha', differentiated by product rule.

        Independent of the shortcut in body_velocity: the derivative
        alpha' = X alpha + exp(tX) Y exp(tY) is formed from matrix
        products and pulled back by solving alpha xi = alpha'.
        """
        v = self._num_cache.get(t)
        if v is None:
            alpha = self.representative(t)
            alpha_dot = self.X @ alpha + self._flow_x(t) @ self.Y @ self._flow_y(t)
            xi = np.linalg.solve(alpha, alpha_dot)
            v = project(self.system.m, xi)
            self._num_cache[t] = v
        return v

    def speed(self, t):
        v = self.body_velocity(t)
        return metric_norm(self.system, v)

    def evaluate(self, t):
        t = float(t)
        g = self.representative(t)
        v = self.body_velocity(t)
        pos = None
        if self.system.model is not None:
            pos = self.system.model.apply(g)
        return TrajectorySample(t, g, v, metric_norm(self.system, v), pos)


def build_motion(system, Xa, Xb=None, tol=MEMBERSHIP_TOL):
    """Validated constructor: Xa must lie in m_a and Xb in m_b.

    Xb may be omitted (zero); when the system has no second module it
    must be omitted or zero.
    """
    Xa = np.asarray(Xa, dtype=complex)
    r = span_residual(system.ma, Xa)
    if r > tol:
        raise DomainError(
            f"Xa has a component of size {r:.3e} outside m{system.a}"
        )
    if system.b is None:
        if Xb is not None and bnorm(np.asarray(Xb, dtype=complex)) > tol:
            raise DomainError("this system has no second module; Xb must be zero")
        Xb = np.zeros_like(Xa)
    else:
        if Xb is None:
            Xb = np.zeros_like(Xa)
        Xb = np.asarray(Xb, dtype=complex)
        r = span_residual(system.mb, Xb)
        if r > tol:
            raise DomainError(
                f"Xb has a component of size {r:.3e} outside m{system.b}"
            )
    return ClosedFormMotion(system, Xa, Xb)


def evaluate(motion, t):
    return motion.evaluate(t)


def body_velocity_numeric(motion, t):
    return motion.body_velocity_numeric(t)


def sample_trajectory(motion, t0, t1, count):
    """Uniform inclusive samples over [t0, t1]."""
    if not (np.isfinite(t0) and np.isfinite(t1) and t0 < t1):
        raise ValueError(f"need finite t0 < t1, got [{t0}, {t1}]")
    if count < 2:
        raise ValueError(f"need at least 2 samples, got {count}")
    return [motion.evaluate(t) for t in np.linspace(t0, t1, int(count))]


def perturb_motion(motion, eps=1e-2, seed=0):
    """Deliberately damaged copy for oracle sensitivity tests.

    Adds eps times a seeded unit direction to the second generator Y.
    The direction is drawn from m_b, the module that actually steers
    the transport factor; perturbing along m_a merely produces the
    exact curve of different initial data and breaks nothing. When m_b
    is absent the direction comes from m_a.
    """
    sys = motion.system
    target = sys.mb if (sys.mb is not None and sys.mb.dim > 0) else sys.ma
    rng = np.random.default_rng(seed)
    coeffs = rng.standard_normal(target.dim)
    N = sum(c * e for c, e in zip(coeffs, target.basis))
    N = N / metric_norm(sys, N)
    return ClosedFormMotion(
        motion.system, motion.Xa, motion.Xb, Y_override=motion.Y + eps * N
    )
