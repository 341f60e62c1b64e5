"""Deformed two-oscillator phase-space dynamics.

Linear coordinate maps between deformed and canonical variables, the exact
propagator of the induced coupled dynamics, and Gaussian Wigner-function
evolution with its squeezing metrics.
"""

__version__ = "0.1.0"

from .dynamics import (
    PLANE_PAIRS,
    Propagator,
    SpiralFit,
    Trajectory,
    energy_drift,
    eom_rhs,
    generator,
    integrate,
    integrate_at_times,
    propagator,
    sample_closed_form,
    second_order_residual,
    spiral_log_fit,
    spiral_samples,
)
from .errors import (
    DegenerateAxes,
    DomainError,
    InsufficientSamples,
    NCOscError,
    NonPositiveStiffness,
    OverdampedRegime,
    SingularCovariance,
    SingularMap,
    StepTooLarge,
)
from .export import ExportTable, write_csv, write_json, write_table
from .params import (
    DerivedParams,
    NCParams,
    derive,
    from_figure_controls,
    read_config,
    solve_constraint,
)
from .swmap import (
    SYMPLECTIC_J,
    LinearMap,
    as_phase_point,
    commutator_matrix,
    forward_map,
    hamiltonian_c,
    hamiltonian_ho,
    hamiltonian_nc,
    inverse_map,
    phase_point,
    rotate_45,
    rotation_45_matrix,
)
from .wigner import (
    AxesSpec,
    GaussianState,
    MarginalState,
    SqueezingMetrics,
    WignerGrid,
    coherent_state,
    evaluate,
    evaluate_grid,
    evolve,
    flow_evaluate,
    grid_mass,
    marginal,
    squeezing_metrics,
)
