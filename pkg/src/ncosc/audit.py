"""Randomized invariant suite: every algebraic identity of the model, checked
numerically over seeded random parameter sets.

Used by the `audit` CLI subcommand and reused by the test suite. Each check
reports the worst violation it saw so a failure names the broken identity and
by how much.
"""

from dataclasses import dataclass

import numpy as np

from . import dynamics, swmap
from .params import DerivedParams, NCParams, derive


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    worst: float
    tolerance: float

    def line(self) -> str:
        status = "ok  " if self.passed else "FAIL"
        return f"{status} {self.name:28s} worst={self.worst:.3e} tol={self.tolerance:.0e}"


def random_params(rng: np.random.Generator) -> NCParams:
    """Draw a valid parameter set away from the stiffness/overdamping edges."""
    while True:
        theta = rng.uniform(0.0, 0.3)
        eta = rng.uniform(0.0, 0.3)
        mass = rng.uniform(0.7, 1.5)
        omega = rng.uniform(0.7, 1.5)
        split = rng.uniform(0.8, 1.25)
        root = np.sqrt(0.5 * (1.0 + np.sqrt(1.0 - theta * eta)))
        params = NCParams(
            theta=theta, eta=eta, mass=mass, omega=omega, hbar=1.0,
            lam=split * root, mu=root / split,
        )
        try:
            derive(params)
        except Exception:
            continue
        return params


def run_audit(
    cases: list[NCParams],
    seed: int = 0,
    oracle_cases: int = 3,
    points_per_case: int = 10,
    times_per_case: int = 20,
) -> list[CheckResult]:
    """Run every invariant over the given parameter sets."""
    rng = np.random.default_rng(seed)
    j = swmap.SYMPLECTIC_J

    worst = {
        "map_composition": 0.0,
        "map_algebra_forward": 0.0,
        "map_algebra_inverse": 0.0,
        "map_determinant": 0.0,
        "hamiltonian_equivalence": 0.0,
        "propagator_symplecticity": 0.0,
        "propagator_determinant": 0.0,
        "group_property": 0.0,
        "energy_conservation": 0.0,
        "oracle_equivalence": 0.0,
    }

    for index, params in enumerate(cases):
        dparams = derive(params)
        s = swmap.forward_map(params).matrix
        t = swmap.inverse_map(params).matrix
        omega_mat = swmap.commutator_matrix(params)

        worst["map_composition"] = max(
            worst["map_composition"], float(np.max(np.abs(t @ s - np.eye(4))))
        )
        worst["map_algebra_forward"] = max(
            worst["map_algebra_forward"], float(np.max(np.abs(s @ j @ s.T - omega_mat)))
        )
        worst["map_algebra_inverse"] = max(
            worst["map_algebra_inverse"], float(np.max(np.abs(t @ omega_mat @ t.T - j)))
        )
        worst["map_determinant"] = max(
            worst["map_determinant"],
            abs(np.linalg.det(s) - (1.0 - params.theta * params.eta / params.hbar**2)),
        )

        z = rng.uniform(-2.0, 2.0, size=(points_per_case, 4))
        h_c = swmap.hamiltonian_c(z, dparams)
        h_nc = swmap.hamiltonian_nc(z @ s.T, params)
        worst["hamiltonian_equivalence"] = max(
            worst["hamiltonian_equivalence"],
            float(np.max(np.abs(h_nc - h_c) / (1.0 + np.abs(h_c)))),
        )

        period = dparams.period
        for time in rng.uniform(0.0, period, size=times_per_case):
            m = dynamics.propagator(dparams, time).matrix
            worst["propagator_symplecticity"] = max(
                worst["propagator_symplecticity"], float(np.max(np.abs(m.T @ j @ m - j)))
            )
            worst["propagator_determinant"] = max(
                worst["propagator_determinant"], abs(np.linalg.det(m) - 1.0)
            )
        for t1, t2 in rng.uniform(0.0, period, size=(5, 2)):
            m_sum = dynamics.propagator(dparams, t1 + t2).matrix
            m_prod = dynamics.propagator(dparams, t1).matrix @ dynamics.propagator(dparams, t2).matrix
            worst["group_property"] = max(
                worst["group_property"], float(np.max(np.abs(m_sum - m_prod)))
            )

        z0 = rng.uniform(-1.0, 1.0, size=4)
        traj = dynamics.sample_closed_form(z0, dparams, np.linspace(0.0, period, 512))
        worst["energy_conservation"] = max(
            worst["energy_conservation"], dynamics.energy_drift(traj, dparams)
        )

        if index < oracle_cases:
            worst["oracle_equivalence"] = max(
                worst["oracle_equivalence"], oracle_deviation(z0, dparams)
            )

    tolerances = {
        "map_composition": 1e-12,
        "map_algebra_forward": 1e-12,
        "map_algebra_inverse": 1e-12,
        "map_determinant": 1e-12,
        "hamiltonian_equivalence": 1e-10,
        "propagator_symplecticity": 1e-10,
        "propagator_determinant": 1e-10,
        "group_property": 1e-10,
        "energy_conservation": 1e-10,
        "oracle_equivalence": 1e-6,
    }
    return [
        CheckResult(name, worst[name] < tolerances[name], worst[name], tolerances[name])
        for name in worst
    ]


def oracle_deviation(z0, dparams: DerivedParams, steps_per_period: int = 10_000) -> float:
    """Relative deviation between the closed form and its RK4 oracle over one period."""
    period = dparams.period
    rk4 = dynamics.integrate(z0, dparams, period, period / steps_per_period)
    exact = dynamics.sample_closed_form(z0, dparams, rk4.times)
    scale = float(np.max(np.linalg.norm(exact.points, axis=1)))
    diff = float(np.max(np.linalg.norm(exact.points - rk4.points, axis=1)))
    return diff / scale if scale > 0.0 else diff
