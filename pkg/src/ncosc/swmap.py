"""Linear maps between deformed and canonical phase-space coordinates.

All vectors use the fixed component order (q1, q2, p1, p2), equivalently
(Q1, Q2, Pi1, Pi2) on the canonical side. The Levi-Civita sign is fixed to
eps_12 = +1 throughout.
"""

from dataclasses import dataclass

import numpy as np

from .errors import DomainError, SingularMap
from .params import DerivedParams, NCParams

# Standard symplectic form: [z_a, z_b] = i*hbar*J_ab for canonical coordinates.
SYMPLECTIC_J = np.array(
    [
        [0.0, 0.0, 1.0, 0.0],
        [0.0, 0.0, 0.0, 1.0],
        [-1.0, 0.0, 0.0, 0.0],
        [0.0, -1.0, 0.0, 0.0],
    ]
)
SYMPLECTIC_J.setflags(write=False)


def phase_point(q1: float, q2: float, p1: float, p2: float) -> np.ndarray:
    """Build a phase-space 4-vector in the fixed (q1, q2, p1, p2) order."""
    return as_phase_point([q1, q2, p1, p2])


def as_phase_point(z) -> np.ndarray:
    """Coerce to a float array whose last axis has the 4 phase components."""
    arr = np.asarray(z, dtype=float)
    if arr.shape[-1:] != (4,):
        raise DomainError(f"phase point must have 4 components, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise DomainError("phase point components must be finite")
    return arr


@dataclass(frozen=True)
class LinearMap:
    """A 4x4 linear coordinate transform with its direction tag.

    direction is "nc_from_canonical" for the map producing deformed
    coordinates from canonical ones, "canonical_from_nc" for its inverse.
    """

    matrix: np.ndarray
    direction: str

    def __post_init__(self):
        m = np.asarray(self.matrix, dtype=float)
        if m.shape != (4, 4):
            raise DomainError(f"map matrix must be 4x4, got {m.shape}")
        m = m.copy()
        m.setflags(write=False)
        object.__setattr__(self, "matrix", m)

    def apply(self, z) -> np.ndarray:
        """Apply to one point (4,) or a batch (..., 4)."""
        return as_phase_point(z) @ self.matrix.T


def commutator_matrix(params: NCParams) -> np.ndarray:
    """Bracket table of the deformed coordinates: [z_a, z_b] = i*hbar*Omega_ab."""
    a = params.theta / params.hbar
    b = params.eta / params.hbar
    return np.array(
        [
            [0.0, a, 1.0, 0.0],
            [-a, 0.0, 0.0, 1.0],
            [-1.0, 0.0, 0.0, b],
            [0.0, -1.0, -b, 0.0],
        ]
    )


def forward_map(params: NCParams) -> LinearMap:
    """Deformed coordinates as a linear image of canonical ones.

    q_i = lam*Q_i - theta/(2*lam*hbar) * sum_j eps_ij * Pi_j
    p_i = mu*Pi_i + eta/(2*mu*hbar) * sum_j eps_ij * Q_j
    """
    lam, mu, hb = params.lam, params.mu, params.hbar
    c = params.theta / (2.0 * lam * hb)
    d = params.eta / (2.0 * mu * hb)
    matrix = np.array(
        [
            [lam, 0.0, 0.0, -c],
            [0.0, lam, c, 0.0],
            [0.0, d, mu, 0.0],
            [-d, 0.0, 0.0, mu],
        ]
    )
    return LinearMap(matrix, "nc_from_canonical")


def inverse_map(params: NCParams) -> LinearMap:
    """Canonical coordinates recovered from deformed ones.

    Q_i = mu*(1 - theta*eta/hbar**2)**(-1/2) * (q_i + theta/(2*lam*mu*hbar) * sum_j eps_ij * p_j)
    Pi_i = lam*(1 - theta*eta/hbar**2)**(-1/2) * (p_i - eta/(2*lam*mu*hbar) * sum_j eps_ij * q_j)
    """
    det = 1.0 - params.theta * params.eta / params.hbar**2
    if det <= 0.0:
        raise SingularMap(f"theta*eta/hbar**2 = {params.theta * params.eta / params.hbar**2} >= 1")
    kappa = det**-0.5
    lam, mu, hb = params.lam, params.mu, params.hbar
    c = params.theta / (2.0 * lam * mu * hb)
    d = params.eta / (2.0 * lam * mu * hb)
    matrix = np.array(
        [
            [mu * kappa, 0.0, 0.0, mu * kappa * c],
            [0.0, mu * kappa, -mu * kappa * c, 0.0],
            [0.0, -lam * kappa * d, lam * kappa, 0.0],
            [lam * kappa * d, 0.0, 0.0, lam * kappa],
        ]
    )
    return LinearMap(matrix, "canonical_from_nc")


def rotate_45(z) -> np.ndarray:
    """Rotate into the decoupled-mode frame.

    x_j = (q1 - (-1)**j * q2)/sqrt(2), k_j = (p1 - (-1)**j * p2)/sqrt(2).
    The transform is orthogonal and its own inverse.
    """
    return as_phase_point(z) @ rotation_45_matrix().T


def rotation_45_matrix() -> np.ndarray:
    s = 1.0 / np.sqrt(2.0)
    return np.array(
        [
            [s, s, 0.0, 0.0],
            [s, -s, 0.0, 0.0],
            [0.0, 0.0, s, s],
            [0.0, 0.0, s, -s],
        ]
    )


def hamiltonian_nc(z, params: NCParams):
    """Energy in deformed coordinates: p1*p2/m + m*omega**2*q1*q2.

    Accepts a single point (4,) or a batch (..., 4).
    """
    z = as_phase_point(z)
    return z[..., 2] * z[..., 3] / params.mass + params.mass * params.omega**2 * z[..., 0] * z[..., 1]


def hamiltonian_ho(x, k, params: NCParams):
    """One-dimensional oscillator energy k**2/(2m) + m*omega**2*x**2/2."""
    return k**2 / (2.0 * params.mass) + 0.5 * params.mass * params.omega**2 * x**2


def hamiltonian_c(z, dparams: DerivedParams):
    """Energy in canonical coordinates.

    2*alpha_sq*Q1*Q2 + 2*beta_sq*Pi1*Pi2 + gamma*(Q1*Pi1 - Q2*Pi2); the
    quantum anticommutator terms reduce to plain products for c-number
    arguments. Accepts a single point (4,) or a batch (..., 4).
    """
    z = as_phase_point(z)
    q1, q2, p1, p2 = z[..., 0], z[..., 1], z[..., 2], z[..., 3]
    return (
        2.0 * dparams.alpha_sq * q1 * q2
        + 2.0 * dparams.beta_sq * p1 * p2
        + dparams.gamma * (q1 * p1 - q2 * p2)
    )
