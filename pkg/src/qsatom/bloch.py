"""Reduced-state dynamics: drift matrix, time evolution, equilibrium.

The 2x2 atomic state is parameterized by the excited-state population u
and the coherence v; dynamics close on the 3-vector (u, v, conj(v)).
In reduced time tau (natural-line-width units) the state obeys

    d/dtau (u, v, v_bar) = -(G'/2) (u, v, v_bar) + (0, eta/2, eta/2),

with the 3x3 complex drift matrix G' built here.  The stated factor of
one half is kept inside :func:`evolve` so the stored matrix is directly
comparable entry by entry with the closed forms used elsewhere.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .model import ReducedScalars

_STATE_TOL = 1e-9
_STRUCTURE_TOL = 1e-12
# Above this eigenvector condition estimate the eigendecomposition is not
# trusted and the Pade scaling-and-squaring route is taken instead.
_EIG_COND_LIMIT = 1e8


@dataclass(frozen=True)
class BlochVector:
    """State-valued (u, v) pair; the redundant conjugate component is
    implicit.  Valid states satisfy 0 <= u <= 1 and u >= u^2 + |v|^2."""

    u: float
    v: complex

    def __post_init__(self):
        u, v = self.u, complex(self.v)
        if not (math.isfinite(u) and math.isfinite(v.real) and math.isfinite(v.imag)):
            raise ValueError("Bloch components must be finite")
        if u < -_STATE_TOL or u > 1.0 + _STATE_TOL:
            raise ValueError(f"population out of range: u = {u}")
        if u + _STATE_TOL < u * u + abs(v) ** 2:
            raise ValueError("not a statistical operator: u < u^2 + |v|^2")
        object.__setattr__(self, "v", v)

    def vector(self) -> np.ndarray:
        """(u, v, conj v) as a complex 3-vector."""
        return np.array([self.u, self.v, np.conj(self.v)], dtype=complex)


GROUND_STATE = BlochVector(0.0, 0.0)


@dataclass(frozen=True)
class DriftMatrix:
    """3x3 complex drift matrix G' with the closure structure
    G'23 = G'32 = 0, G'33 = conj(G'22), G'31 = conj(G'21)."""

    matrix: np.ndarray

    def __post_init__(self):
        m = np.asarray(self.matrix, dtype=complex)
        if m.shape != (3, 3):
            raise ValueError("drift matrix must be 3x3")
        if not np.all(np.isfinite(m)):
            raise ValueError("drift matrix entries must be finite")
        scale = _STRUCTURE_TOL * (1.0 + np.max(np.abs(m)))
        if abs(m[1, 2]) > scale or abs(m[2, 1]) > scale:
            raise ValueError("coherence block must be diagonal")
        if abs(m[2, 2] - np.conj(m[1, 1])) > scale or abs(m[2, 0] - np.conj(m[1, 0])) > scale:
            raise ValueError("rows 2 and 3 must be conjugates")
        m.setflags(write=False)
        object.__setattr__(self, "matrix", m)


@dataclass(frozen=True)
class EquilibriumState:
    """Stationary state (u_inf, v_inf) of the driven atom."""

    u_inf: float
    v_inf: complex

    def __post_init__(self):
        BlochVector(self.u_inf, self.v_inf)  # reuse the state validation

    def as_bloch(self) -> BlochVector:
        return BlochVector(self.u_inf, self.v_inf)

    def vector(self) -> np.ndarray:
        return np.array([self.u_inf, self.v_inf, np.conj(self.v_inf)], dtype=complex)


def build_drift(rs: ReducedScalars, eta: float, s: float) -> DriftMatrix:
    """Assemble G' from the reduced scalars and the s-wave shift difference."""
    eis = np.exp(1j * s)
    cs = math.cos(s)
    m = np.array([
        [2.0, -eta, -eta],
        [2.0 * eta * eis * cs, rs.bprime, 0.0],
        [2.0 * eta * np.conj(eis) * cs, 0.0, np.conj(rs.bprime)],
    ], dtype=complex)
    return DriftMatrix(m)


def equilibrium(rs: ReducedScalars, eta: float) -> EquilibriumState:
    """Closed-form stationary state.

    u_inf = eta^2 kappa^2 / (z^2 + zeta^2),
    v_inf = eta (kappa^2 + i y) / (z^2 + zeta^2);
    the denominator never vanishes since zeta^2 >= 1.
    """
    den = rs.z ** 2 + rs.zeta2
    return EquilibriumState(
        u_inf=eta ** 2 * rs.kappa2 / den,
        v_inf=eta * complex(rs.kappa2, rs.y) / den,
    )


def char_poly(drift: DriftMatrix) -> np.ndarray:
    """Monic characteristic polynomial coefficients [1, c2, c1, c0] of G'."""
    m = drift.matrix
    tr = np.trace(m)
    minors = (m[1, 1] * m[2, 2] - m[1, 2] * m[2, 1]
              + m[0, 0] * m[2, 2] - m[0, 2] * m[2, 0]
              + m[0, 0] * m[1, 1] - m[0, 1] * m[1, 0])
    det = np.linalg.det(m)
    return np.array([1.0, -tr, minors, -det], dtype=complex)


def cubic_discriminant(coeffs: np.ndarray) -> float:
    """Discriminant of a real cubic a x^3 + b x^2 + c x + d.

    Positive iff the three roots are real and distinct; the sign change
    marks the onset of a complex eigenvalue pair of the drift matrix.
    """
    a, b, c, d = (np.real_if_close(t, tol=1e6) for t in coeffs)
    if any(abs(complex(t).imag) > 1e-9 for t in (a, b, c, d)):
        raise ValueError("discriminant is defined here for real coefficients")
    a, b, c, d = (float(np.real(t)) for t in (a, b, c, d))
    return (18.0 * a * b * c * d - 4.0 * b ** 3 * d + b ** 2 * c ** 2
            - 4.0 * a * c ** 3 - 27.0 * a ** 2 * d ** 2)


def _expm(a: np.ndarray) -> np.ndarray:
    """e^A for a small dense matrix.

    Eigendecomposition is the primary route; when the eigenvector basis
    is ill-conditioned (repeated eigenvalues, e.g. at the Mollow
    triplet threshold) it silently falls back to scaling and squaring.
    """
    lam, vec = np.linalg.eig(a)
    cond = np.linalg.cond(vec)
    if not np.isfinite(cond) or cond > _EIG_COND_LIMIT:
        return scipy.linalg.expm(a)
    return (vec * np.exp(lam)) @ np.linalg.inv(vec)


def evolve(drift: DriftMatrix, x0: BlochVector, eta: float, tau: float) -> BlochVector:
    """Propagate a state forward by reduced time tau.

    Uses the exact affine solution u(tau) = u_eq + e^{-G' tau/2}(u_0 - u_eq)
    with u_eq obtained from the stationarity system G' u_eq = (0, eta, eta).
    """
    if tau < 0:
        raise ValueError("tau must be nonnegative")
    if tau == 0:
        return x0
    ueq = np.linalg.solve(drift.matrix, np.array([0.0, eta, eta], dtype=complex))
    prop = _expm(-0.5 * tau * drift.matrix)
    out = ueq + prop @ (x0.vector() - ueq)
    return BlochVector(float(out[0].real), complex(out[1]))


def propagate_deviation(drift: DriftMatrix, gammatilde: float,
                        d0: np.ndarray, tau: float) -> np.ndarray:
    """Propagate a traceless deviation 3-vector: d(tau) = e^{-G' tau/2} d(0),
    with the extra detector damping e^{-gammatilde tau/2} used in spectral
    integrands.  Linear in d0."""
    if tau < 0:
        raise ValueError("tau must be nonnegative")
    d0 = np.asarray(d0, dtype=complex)
    if d0.shape != (3,):
        raise ValueError("deviation must be a complex 3-vector")
    if tau == 0:
        return d0.copy()
    damping = math.exp(-0.5 * gammatilde * tau)
    return damping * (_expm(-0.5 * tau * drift.matrix) @ d0)
