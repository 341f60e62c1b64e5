"""Physical parameters, the invertibility constraint, and derived dynamical constants.

The model is a pair of harmonic modes whose positions and momenta carry the
deformed brackets [q1, q2] = i*theta, [p1, p2] = i*eta, [q_i, p_j] = i*hbar*delta_ij.
A linear change of variables restores canonical brackets at the price of an
effective coupling; everything downstream is controlled by the constants
collected in :class:`DerivedParams`.
"""

import math
from dataclasses import dataclass

from .errors import DomainError, NonPositiveStiffness, OverdampedRegime, SingularMap

# Absolute tolerance for O(1) algebraic identities, relative otherwise.
CONSTRAINT_TOL = 1e-12
IDENTITY_RTOL = 1e-12

CONFIG_KEYS = ("theta", "eta", "mass", "omega", "hbar", "lambda", "mu")


def solve_constraint(theta: float, eta: float, hbar: float = 1.0) -> float:
    """Solve lam*mu*(1 - lam*mu) = theta*eta/(4*hbar**2) for the product lam*mu.

    Returns the root (1 + sqrt(1 - theta*eta/hbar**2))/2, which goes to 1 in
    the commutative limit so the coordinate map degenerates to the identity.
    """
    if not (math.isfinite(theta) and math.isfinite(eta) and math.isfinite(hbar)):
        raise DomainError("theta, eta, hbar must be finite")
    if hbar <= 0.0:
        raise DomainError("hbar must be positive")
    product = theta * eta
    if product < 0.0:
        raise DomainError(f"theta*eta must be non-negative, got {product}")
    if product >= hbar**2:
        raise SingularMap(
            f"theta*eta = {product} >= hbar**2 = {hbar**2}: map determinant vanishes"
        )
    return 0.5 * (1.0 + math.sqrt(1.0 - product / hbar**2))


@dataclass(frozen=True)
class NCParams:
    """Deformation parameters (theta, eta) plus mass, frequency, hbar and the
    map coefficients (lam, mu).

    lam and mu default to the symmetric split lam = mu = sqrt(lam*mu) of the
    constrained product; either may be overridden, in which case the other is
    filled in (or, if both are given, the pair is validated against the
    constraint).
    """

    theta: float = 0.0
    eta: float = 0.0
    mass: float = 1.0
    omega: float = 1.0
    hbar: float = 1.0
    lam: float | None = None
    mu: float | None = None

    def __post_init__(self):
        for name in ("mass", "omega", "hbar"):
            value = getattr(self, name)
            if not (math.isfinite(value) and value > 0.0):
                raise DomainError(f"{name} must be positive and finite, got {value}")
        product = solve_constraint(self.theta, self.eta, self.hbar)
        lam, mu = self.lam, self.mu
        if lam is None and mu is None:
            lam = mu = math.sqrt(product)
        elif lam is None:
            lam = product / mu
        elif mu is None:
            mu = product / lam
        if not (lam > 0.0 and mu > 0.0):
            raise DomainError(f"lam and mu must be positive, got {lam}, {mu}")
        residual = abs(lam * mu * (1.0 - lam * mu) - self.theta * self.eta / (4.0 * self.hbar**2))
        if residual > CONSTRAINT_TOL:
            raise DomainError(
                f"lam*mu*(1-lam*mu) = theta*eta/(4*hbar**2) violated, residual {residual:.3e}"
            )
        object.__setattr__(self, "lam", lam)
        object.__setattr__(self, "mu", mu)

    @property
    def lam_mu(self) -> float:
        return self.lam * self.mu

    def constraint_residual(self) -> float:
        return abs(self.lam_mu * (1.0 - self.lam_mu) - self.theta * self.eta / (4.0 * self.hbar**2))


@dataclass(frozen=True)
class DerivedParams:
    """Effective constants of the coupled dynamics.

    alpha_sq and beta_sq are the position and momentum stiffnesses, gamma the
    cross-coupling rate, big_omega the oscillation frequency 2*alpha*beta,
    eps_small the dimensionless deformation strength (gamma = omega*eps_small)
    and eps_ratio = gamma/big_omega the spiral slope.
    """

    alpha_sq: float
    beta_sq: float
    gamma: float
    big_omega: float
    eps_small: float
    eps_ratio: float

    @property
    def alpha(self) -> float:
        return math.sqrt(self.alpha_sq)

    @property
    def beta(self) -> float:
        return math.sqrt(self.beta_sq)

    @property
    def period(self) -> float:
        """One full oscillation, 2*pi/big_omega."""
        return 2.0 * math.pi / self.big_omega


def derive(params: NCParams) -> DerivedParams:
    """Compute the effective constants from the physical parameters.

    Raises NonPositiveStiffness when alpha_sq or beta_sq fails to be positive
    and OverdampedRegime when (2*lam*mu - 1)**2 <= eps**2, where the
    oscillation frequency would not be real.
    """
    theta, eta = params.theta, params.eta
    m, w, hb = params.mass, params.omega, params.hbar
    lam, mu = params.lam, params.mu

    alpha_sq = 0.5 * lam**2 * m * w**2 - eta**2 / (8.0 * m * mu**2 * hb**2)
    beta_sq = mu**2 / (2.0 * m) - m * w**2 * theta**2 / (8.0 * lam**2 * hb**2)
    gamma = 0.5 * theta * m * w**2 / hb - 0.5 * eta / (m * hb)
    eps_small = 0.5 * (m * w * theta - eta / (m * w)) / hb

    if alpha_sq <= 0.0 or beta_sq <= 0.0:
        raise NonPositiveStiffness(
            f"alpha_sq = {alpha_sq}, beta_sq = {beta_sq}: both must be positive"
        )
    disc = (2.0 * params.lam_mu - 1.0) ** 2 - eps_small**2
    if disc <= 0.0:
        raise OverdampedRegime(
            f"(2*lam*mu - 1)**2 = {(2.0 * params.lam_mu - 1.0) ** 2} <= eps**2 = {eps_small**2}"
        )
    big_omega = 2.0 * math.sqrt(alpha_sq) * math.sqrt(beta_sq)
    cross_check = w * math.sqrt(disc)
    if abs(big_omega - cross_check) > IDENTITY_RTOL * abs(big_omega):
        raise DomainError(
            f"frequency forms disagree: 2*alpha*beta = {big_omega!r} vs "
            f"omega*sqrt((2*lam*mu-1)**2 - eps**2) = {cross_check!r}"
        )
    return DerivedParams(
        alpha_sq=alpha_sq,
        beta_sq=beta_sq,
        gamma=gamma,
        big_omega=big_omega,
        eps_small=eps_small,
        eps_ratio=gamma / big_omega,
    )


def from_figure_controls(eps_ratio: float, big_omega: float) -> DerivedParams:
    """Build the symmetric alpha = beta parameterization from (eps_ratio, big_omega).

    This is the two-knob construction behind the phase portraits: alpha = beta
    = sqrt(big_omega/2) and gamma = eps_ratio*big_omega, with theta and eta
    left implicit. eps_small is filled in the lam*mu = 1 gauge (deformation
    carried by theta alone), which keeps eps_ratio = eps/sqrt((2*lam*mu-1)**2
    - eps**2) exact.
    """
    if not (math.isfinite(eps_ratio) and math.isfinite(big_omega)):
        raise DomainError("eps_ratio and big_omega must be finite")
    if eps_ratio < 0.0:
        raise DomainError(f"eps_ratio must be non-negative, got {eps_ratio}")
    if big_omega <= 0.0:
        raise DomainError(f"big_omega must be positive, got {big_omega}")
    return DerivedParams(
        alpha_sq=0.5 * big_omega,
        beta_sq=0.5 * big_omega,
        gamma=eps_ratio * big_omega,
        big_omega=big_omega,
        eps_small=eps_ratio / math.sqrt(1.0 + eps_ratio**2),
        eps_ratio=eps_ratio,
    )


def read_config(path) -> dict:
    """Parse a flat `name = value` parameter file.

    Accepted names: theta, eta, mass, omega, hbar, lambda, mu. Blank lines and
    `#` comments are ignored; anything else is a DomainError.
    """
    values = {}
    with open(path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise DomainError(f"{path}:{lineno}: expected 'name = value', got {raw!r}")
            name, _, text = line.partition("=")
            name = name.strip()
            if name not in CONFIG_KEYS:
                raise DomainError(f"{path}:{lineno}: unknown parameter {name!r}")
            try:
                values[name] = float(text.strip())
            except ValueError:
                raise DomainError(f"{path}:{lineno}: not a number: {text.strip()!r}") from None
    return values
