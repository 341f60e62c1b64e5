"""Gaussian Wigner functions under the exact linear flow.

For a quadratic generator the quasi-probability density is simply dragged
along the classical trajectories, W(z, t) = W(M(-t) z, 0), so a Gaussian stays
Gaussian: the mean follows the propagator and the covariance transforms by
congruence. Both the analytic Gaussian path and the generic pull-back path are
provided and must agree pointwise.
"""

import math
from dataclasses import dataclass

import numpy as np

from .dynamics import propagator
from .errors import DegenerateAxes, DomainError, SingularCovariance
from .params import DerivedParams
from .swmap import as_phase_point

_MARGINAL_INDICES = {1: (0, 2), 2: (1, 3)}
_DET_FLOOR = 1e-300


@dataclass(frozen=True)
class GaussianState:
    """Mean 4-vector and symmetric positive-definite 4x4 covariance."""

    mean: np.ndarray
    cov: np.ndarray

    def __post_init__(self):
        mean = as_phase_point(self.mean)
        cov = np.asarray(self.cov, dtype=float)
        if cov.shape != (4, 4):
            raise DomainError(f"covariance must be 4x4, got {cov.shape}")
        if not np.all(np.isfinite(cov)):
            raise DomainError("covariance entries must be finite")
        scale = max(1.0, float(np.max(np.abs(cov))))
        if np.max(np.abs(cov - cov.T)) > 1e-10 * scale:
            raise DomainError("covariance must be symmetric")
        cov = 0.5 * (cov + cov.T)
        if np.min(np.linalg.eigvalsh(cov)) <= 0.0:
            raise DomainError("covariance must be positive definite")
        mean.setflags(write=False)
        cov.setflags(write=False)
        object.__setattr__(self, "mean", mean)
        object.__setattr__(self, "cov", cov)


@dataclass(frozen=True)
class MarginalState:
    """Single-oscillator reduction: 2-vector mean and 2x2 covariance."""

    mean: np.ndarray
    cov: np.ndarray

    def __post_init__(self):
        mean = np.asarray(self.mean, dtype=float)
        cov = np.asarray(self.cov, dtype=float)
        if mean.shape != (2,) or cov.shape != (2, 2):
            raise DomainError("marginal must have a 2-vector mean and 2x2 covariance")
        if np.max(np.abs(cov - cov.T)) > 1e-10 * max(1.0, float(np.max(np.abs(cov)))):
            raise DomainError("marginal covariance must be symmetric")
        cov = 0.5 * (cov + cov.T)
        if np.min(np.linalg.eigvalsh(cov)) <= 0.0:
            raise DomainError("marginal covariance must be positive definite")
        mean.setflags(write=False)
        cov.setflags(write=False)
        object.__setattr__(self, "mean", mean)
        object.__setattr__(self, "cov", cov)


def coherent_state(mean, hbar: float = 1.0) -> GaussianState:
    """Symmetric (non-squeezed) Gaussian with covariance (hbar/2) * identity."""
    if not (math.isfinite(hbar) and hbar > 0.0):
        raise DomainError(f"hbar must be positive and finite, got {hbar}")
    return GaussianState(as_phase_point(mean), 0.5 * hbar * np.eye(4))


def evolve(state: GaussianState, dparams: DerivedParams, t: float) -> GaussianState:
    """Advance the Gaussian by time t: mean -> M mean, cov -> M cov M^T."""
    m = propagator(dparams, t).matrix
    cov = m @ state.cov @ m.T
    return GaussianState(m @ state.mean, 0.5 * (cov + cov.T))


def evaluate(state: GaussianState, z) -> np.ndarray | float:
    """Wigner density at a point (4,) or batch (..., 4)."""
    z = as_phase_point(z)
    det = float(np.linalg.det(state.cov))
    if det < _DET_FLOOR:
        raise SingularCovariance(f"det covariance = {det} below {_DET_FLOOR}")
    inv = np.linalg.inv(state.cov)
    d = z - state.mean
    quad = np.einsum("...i,ij,...j->...", d, inv, d)
    values = np.exp(-0.5 * quad) / ((2.0 * math.pi) ** 2 * math.sqrt(det))
    return float(values) if values.ndim == 0 else values


def flow_evaluate(initial_w, dparams: DerivedParams, z, t: float):
    """Generic Liouville evolution: value of the initial field at M(-t) z.

    initial_w may be any callable over phase points that accepts (..., 4)
    arrays; no Gaussian structure is assumed.
    """
    back = propagator(dparams, -t).matrix
    return initial_w(as_phase_point(z) @ back.T)


def marginal(state: GaussianState, subsystem: int) -> MarginalState:
    """Reduce to oscillator 1 (Q1, Pi1) or 2 (Q2, Pi2).

    Gaussian marginalization is exact row/column selection of mean and
    covariance.
    """
    try:
        idx = _MARGINAL_INDICES[subsystem]
    except KeyError:
        raise DomainError(f"subsystem must be 1 or 2, got {subsystem!r}") from None
    return MarginalState(state.mean[list(idx)], state.cov[np.ix_(idx, idx)])


@dataclass(frozen=True)
class SqueezingMetrics:
    """Principal variances and derived squeezing measures of a marginal."""

    var_min: float
    var_max: float
    squeeze_r: float
    angle: float
    uncertainty_product: float
    purity: float


def squeezing_metrics(m: MarginalState, hbar: float = 1.0) -> SqueezingMetrics:
    """Principal variances, squeeze parameter, axis angle, purity.

    squeeze_r = -(1/2) ln(2*var_min/hbar); purity = hbar/(2*sqrt(det cov)),
    equal to 1 exactly when the marginal saturates the uncertainty bound.
    """
    if not (math.isfinite(hbar) and hbar > 0.0):
        raise DomainError(f"hbar must be positive and finite, got {hbar}")
    variances, axes = np.linalg.eigh(m.cov)
    var_min, var_max = float(variances[0]), float(variances[1])
    major = axes[:, 1]
    angle = math.atan2(major[1], major[0])
    if angle <= -math.pi / 2.0:
        angle += math.pi
    elif angle > math.pi / 2.0:
        angle -= math.pi
    root_det = math.sqrt(var_min * var_max)
    return SqueezingMetrics(
        var_min=var_min,
        var_max=var_max,
        squeeze_r=-0.5 * math.log(2.0 * var_min / hbar),
        angle=angle,
        uncertainty_product=root_det,
        purity=0.5 * hbar / root_det,
    )


@dataclass(frozen=True)
class AxesSpec:
    """Rectangular grid specification for one marginal plane."""

    q_min: float
    q_max: float
    q_count: int
    p_min: float
    p_max: float
    p_count: int

    def __post_init__(self):
        if self.q_count < 16 or self.p_count < 16:
            raise DomainError(f"axis counts must be >= 16, got {self.q_count}, {self.p_count}")
        if not (self.q_min < self.q_max) or not (self.p_min < self.p_max):
            raise DegenerateAxes(
                f"axis ranges must be increasing, got [{self.q_min}, {self.q_max}] "
                f"x [{self.p_min}, {self.p_max}]"
            )

    @classmethod
    def auto(cls, m: MarginalState, count: int = 256, n_sigma: float = 6.0) -> "AxesSpec":
        """Center on the marginal mean, extend n_sigma standard deviations."""
        dq = n_sigma * math.sqrt(m.cov[0, 0])
        dp = n_sigma * math.sqrt(m.cov[1, 1])
        return cls(
            q_min=m.mean[0] - dq,
            q_max=m.mean[0] + dq,
            q_count=count,
            p_min=m.mean[1] - dp,
            p_max=m.mean[1] + dp,
            p_count=count,
        )


@dataclass(frozen=True)
class WignerGrid:
    """Marginal density sampled on a rectangular grid.

    values[i, j] is the density at (q_axis[i], p_axis[j]). In "figure" mode
    the values are rescaled so the maximum is exactly 1 and `peak` records the
    physical maximum that was divided out; in "physical" mode peak is 1.
    """

    subsystem: int
    q_axis: np.ndarray
    p_axis: np.ndarray
    values: np.ndarray
    mode: str
    peak: float

    def __post_init__(self):
        for name in ("q_axis", "p_axis", "values"):
            arr = np.asarray(getattr(self, name), dtype=float)
            arr.setflags(write=False)
            object.__setattr__(self, name, arr)


def evaluate_grid(
    state: GaussianState,
    subsystem: int,
    axes: AxesSpec | None = None,
    mode: str = "physical",
) -> WignerGrid:
    """Sample one marginal on a grid; axes default to mean +/- 6 sigma at 256 points."""
    if mode not in ("physical", "figure"):
        raise DomainError(f"mode must be 'physical' or 'figure', got {mode!r}")
    m = marginal(state, subsystem)
    if axes is None:
        axes = AxesSpec.auto(m)
    q_axis = np.linspace(axes.q_min, axes.q_max, axes.q_count)
    p_axis = np.linspace(axes.p_min, axes.p_max, axes.p_count)
    a, b, c = m.cov[0, 0], m.cov[0, 1], m.cov[1, 1]
    det = a * c - b * b
    if det < _DET_FLOOR:
        raise SingularCovariance(f"det marginal covariance = {det} below {_DET_FLOOR}")
    dq = q_axis[:, None] - m.mean[0]
    dp = p_axis[None, :] - m.mean[1]
    quad = (c * dq**2 - 2.0 * b * dq * dp + a * dp**2) / det
    values = np.exp(-0.5 * quad) / (2.0 * math.pi * math.sqrt(det))
    peak = 1.0
    if mode == "figure":
        peak = float(np.max(values))
        values = values / peak
    return WignerGrid(subsystem, q_axis, p_axis, values, mode, peak)


def grid_mass(grid: WignerGrid) -> float:
    """Trapezoid-rule integral of the grid (the quadrature oracle)."""
    return float(np.trapezoid(np.trapezoid(grid.values, grid.p_axis, axis=1), grid.q_axis, axis=0))
