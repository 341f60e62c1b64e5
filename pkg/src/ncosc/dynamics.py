"""Time evolution: closed-form propagator, Runge-Kutta oracle, conservation checks.

The canonical coordinates obey the linear system

    dQ1/dt =  2*beta_sq*Pi2 + gamma*Q1     dPi1/dt = -2*alpha_sq*Q2 - gamma*Pi1
    dQ2/dt =  2*beta_sq*Pi1 - gamma*Q2     dPi2/dt = -2*alpha_sq*Q1 + gamma*Pi2

whose solution factors into counter-rotating planes with e^{+gamma*t} and
e^{-gamma*t} envelopes. The propagator is assembled directly from that closed
form; the fixed-step RK4 integrator exists as an independent oracle against it.
"""

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, InsufficientSamples, StepTooLarge
from .params import DerivedParams
from .swmap import as_phase_point, hamiltonian_c

# Plane projections of a trajectory; the Q1-Pi2 / Q2-Pi1 pairings carry the
# pure exponential envelopes.
PLANE_PAIRS = {
    "Q1-Pi1": (0, 2),
    "Q2-Pi2": (1, 3),
    "Q1-Pi2": (0, 3),
    "Q2-Pi1": (1, 2),
}


def generator(dparams: DerivedParams) -> np.ndarray:
    """Matrix A with dz/dt = A z in the (Q1, Q2, Pi1, Pi2) order."""
    g = dparams.gamma
    a2 = dparams.alpha_sq
    b2 = dparams.beta_sq
    return np.array(
        [
            [g, 0.0, 0.0, 2.0 * b2],
            [0.0, -g, 2.0 * b2, 0.0],
            [0.0, -2.0 * a2, -g, 0.0],
            [-2.0 * a2, 0.0, 0.0, g],
        ]
    )


def eom_rhs(z, dparams: DerivedParams) -> np.ndarray:
    """Time derivative of a phase point (or batch of points)."""
    return as_phase_point(z) @ generator(dparams).T


@dataclass(frozen=True)
class Propagator:
    """The linear map advancing phase points by a fixed time."""

    matrix: np.ndarray
    t: float
    dparams: DerivedParams

    def __post_init__(self):
        m = np.asarray(self.matrix, dtype=float).copy()
        m.setflags(write=False)
        object.__setattr__(self, "matrix", m)

    def apply(self, z) -> np.ndarray:
        return as_phase_point(z) @ self.matrix.T


def propagator(dparams: DerivedParams, t: float) -> Propagator:
    """Closed-form propagator M(t).

    Q1(t) = e^{+gamma t} [x cos(Omega t) + (beta/alpha) pi_y sin(Omega t)]
    Q2(t) = e^{-gamma t} [y cos(Omega t) + (beta/alpha) pi_x sin(Omega t)]
    Pi1(t) = e^{-gamma t} [pi_x cos(Omega t) - (alpha/beta) y sin(Omega t)]
    Pi2(t) = e^{+gamma t} [pi_y cos(Omega t) - (alpha/beta) x sin(Omega t)]

    with (x, y, pi_x, pi_y) the initial (Q1, Q2, Pi1, Pi2).
    """
    if not math.isfinite(t):
        raise DomainError(f"time must be finite, got {t}")
    c = math.cos(dparams.big_omega * t)
    s = math.sin(dparams.big_omega * t)
    ep = math.exp(dparams.gamma * t)
    em = math.exp(-dparams.gamma * t)
    r = dparams.beta / dparams.alpha
    matrix = np.array(
        [
            [ep * c, 0.0, 0.0, ep * r * s],
            [0.0, em * c, em * r * s, 0.0],
            [0.0, -em * s / r, em * c, 0.0],
            [-ep * s / r, 0.0, 0.0, ep * c],
        ]
    )
    return Propagator(matrix, t, dparams)


@dataclass(frozen=True)
class Trajectory:
    """Sampled phase-space path with its sampling metadata."""

    times: np.ndarray
    points: np.ndarray
    dparams: DerivedParams
    z0: np.ndarray
    step: float

    def __post_init__(self):
        times = np.asarray(self.times, dtype=float).copy()
        points = np.asarray(self.points, dtype=float).copy()
        if times.ndim != 1 or points.shape != (times.size, 4):
            raise DomainError(
                f"inconsistent trajectory shapes: times {times.shape}, points {points.shape}"
            )
        if times.size >= 2 and not np.all(np.diff(times) > 0.0):
            raise DomainError("trajectory times must be strictly increasing")
        if not (np.all(np.isfinite(times)) and np.all(np.isfinite(points))):
            raise DomainError("trajectory samples must be finite")
        times.setflags(write=False)
        points.setflags(write=False)
        object.__setattr__(self, "times", times)
        object.__setattr__(self, "points", points)
        object.__setattr__(self, "z0", as_phase_point(self.z0))

    def __len__(self) -> int:
        return self.times.size

    def projection(self, pair: str) -> np.ndarray:
        """(n, 2) slice for one of the PLANE_PAIRS keys."""
        try:
            i, j = PLANE_PAIRS[pair]
        except KeyError:
            raise DomainError(f"unknown plane {pair!r}; choose from {sorted(PLANE_PAIRS)}") from None
        return self.points[:, (i, j)]


def sample_closed_form(z0, dparams: DerivedParams, times) -> Trajectory:
    """Evaluate the exact solution on an array of sample times."""
    z0 = as_phase_point(z0)
    times = np.asarray(times, dtype=float)
    x, y, px, py = z0
    c = np.cos(dparams.big_omega * times)
    s = np.sin(dparams.big_omega * times)
    ep = np.exp(dparams.gamma * times)
    em = np.exp(-dparams.gamma * times)
    r = dparams.beta / dparams.alpha
    points = np.stack(
        [
            ep * (x * c + r * py * s),
            em * (y * c + r * px * s),
            em * (px * c - y * s / r),
            ep * (py * c - x * s / r),
        ],
        axis=-1,
    )
    step = times[1] - times[0] if times.size >= 2 else 0.0
    return Trajectory(times, points, dparams, z0, step)


def integrate(z0, dparams: DerivedParams, t_end: float, step: float) -> Trajectory:
    """Classic fixed-step 4th-order Runge-Kutta trajectory of eom_rhs.

    Serves as the independent oracle for the closed-form propagator. The step
    guard rejects steps coarser than a hundredth of the oscillation period.
    """
    z0 = as_phase_point(z0)
    if not (math.isfinite(t_end) and t_end > 0.0):
        raise DomainError(f"t_end must be positive and finite, got {t_end}")
    if not (math.isfinite(step) and step > 0.0):
        raise DomainError(f"step must be positive and finite, got {step}")
    if step > dparams.period / 100.0:
        raise StepTooLarge(f"step {step} exceeds period/100 = {dparams.period / 100.0}")

    n_full = int(math.floor(t_end / step + 1e-12))
    times = step * np.arange(n_full + 1)
    if t_end - times[-1] > 1e-9 * step:
        times = np.append(times, t_end)
    a = generator(dparams)
    points = np.empty((times.size, 4))
    points[0] = z0
    z = z0
    for i in range(times.size - 1):
        z = _rk4_step(a, z, times[i + 1] - times[i])
        points[i + 1] = z
    return Trajectory(times, points, dparams, z0, step)


def integrate_at_times(z0, dparams: DerivedParams, times, step: float) -> Trajectory:
    """RK4 solution sampled exactly at the given times.

    Each interval is covered by equal substeps no coarser than `step`, so the
    samples line up with an externally chosen grid (used for side-by-side
    oracle columns).
    """
    z0 = as_phase_point(z0)
    times = np.asarray(times, dtype=float)
    if not (math.isfinite(step) and step > 0.0):
        raise DomainError(f"step must be positive and finite, got {step}")
    if step > dparams.period / 100.0:
        raise StepTooLarge(f"step {step} exceeds period/100 = {dparams.period / 100.0}")
    if times.size == 0 or times[0] != 0.0:
        raise DomainError("times must start at 0")
    a = generator(dparams)
    points = np.empty((times.size, 4))
    points[0] = z0
    z = z0
    for i in range(times.size - 1):
        span = times[i + 1] - times[i]
        substeps = max(1, math.ceil(span / step))
        h = span / substeps
        for _ in range(substeps):
            z = _rk4_step(a, z, h)
        points[i + 1] = z
    return Trajectory(times, points, dparams, z0, step)


def _rk4_step(a: np.ndarray, z: np.ndarray, h: float) -> np.ndarray:
    k1 = a @ z
    k2 = a @ (z + 0.5 * h * k1)
    k3 = a @ (z + 0.5 * h * k2)
    k4 = a @ (z + h * k3)
    return z + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)


def second_order_residual(traj: Trajectory, dparams: DerivedParams) -> float:
    """Finite-difference residual of the decoupled second-order equations.

    Each component satisfies z'' +/- 2*gamma*z' + (gamma**2 + 4*alpha_sq*beta_sq)*z = 0
    with the sign pattern (-, +, +, -) for (Q1, Q2, Pi1, Pi2). Central
    differences on a uniform grid leave an O(step**2) residual.
    """
    if len(traj) < 3:
        raise InsufficientSamples(f"need at least 3 samples, got {len(traj)}")
    steps = np.diff(traj.times)
    h = steps[0]
    if np.max(np.abs(steps - h)) > 1e-9 * h:
        raise DomainError("second_order_residual requires uniform sampling")
    z = traj.points
    zm, zc, zp = z[:-2], z[1:-1], z[2:]
    zdot = (zp - zm) / (2.0 * h)
    zddot = (zp - 2.0 * zc + zm) / h**2
    omega_sq = dparams.gamma**2 + 4.0 * dparams.alpha_sq * dparams.beta_sq
    signs = np.array([-1.0, 1.0, 1.0, -1.0])
    residual = zddot + 2.0 * dparams.gamma * signs * zdot + omega_sq * zc
    return float(np.max(np.abs(residual)))


def energy_drift(traj: Trajectory, dparams: DerivedParams) -> float:
    """Maximum absolute excursion of the conserved energy along the samples."""
    energies = hamiltonian_c(traj.points, dparams)
    return float(np.max(np.abs(energies - energies[0]))) if energies.size else 0.0


def spiral_samples(z0, dparams: DerivedParams, n_samples: int) -> Trajectory:
    """Uniform closed-form samples over one period [0, 2*pi/big_omega]."""
    if n_samples < 2:
        raise DomainError(f"n_samples must be at least 2, got {n_samples}")
    times = np.linspace(0.0, dparams.period, n_samples)
    return sample_closed_form(z0, dparams, times)


@dataclass(frozen=True)
class SpiralFit:
    """Least-squares fit of log-radius against swept angle."""

    slope: float
    intercept: float
    r_squared: float


def spiral_log_fit(u, v) -> SpiralFit:
    """Fit log(radius) = intercept + slope*angle for a planar curve.

    The angle is the cumulative swept angle (unwrapped, counted positive along
    the direction of traversal), so an amplifying spiral with radius e^{gamma t}
    under rotation rate big_omega fits slope = gamma/big_omega.
    """
    u = np.asarray(u, dtype=float)
    v = np.asarray(v, dtype=float)
    radius = np.hypot(u, v)
    if np.any(radius <= 0.0):
        raise DomainError("spiral fit undefined where the radius vanishes")
    angle = np.unwrap(np.arctan2(v, u))
    swept = np.abs(angle - angle[0])
    log_r = np.log(radius)
    slope, intercept = np.polyfit(swept, log_r, 1)
    predicted = intercept + slope * swept
    ss_res = float(np.sum((log_r - predicted) ** 2))
    ss_tot = float(np.sum((log_r - np.mean(log_r)) ** 2))
    r_squared = 1.0 - ss_res / ss_tot if ss_tot > 1e-30 else 1.0
    return SpiralFit(float(slope), float(intercept), r_squared)
