"""Exception types shared across the package."""


class NCOscError(Exception):
    """Base class for all errors raised by this package."""


class DomainError(NCOscError):
    """Parameter or argument outside the admissible domain."""


class SingularMap(DomainError):
    """theta*eta >= hbar**2: the coordinate map is not invertible."""


class NonPositiveStiffness(NCOscError):
    """alpha**2 or beta**2 is not positive; the oscillator solutions do not apply."""


class OverdampedRegime(NCOscError):
    """(2*lambda*mu - 1)**2 <= epsilon**2: the oscillation frequency is not real."""


class StepTooLarge(NCOscError):
    """Integrator step too coarse for the accuracy guard."""


class InsufficientSamples(NCOscError):
    """Operation needs more trajectory samples than were provided."""


class SingularCovariance(NCOscError):
    """Covariance matrix is numerically singular."""


class DegenerateAxes(NCOscError):
    """Grid axis specification is empty or inverted."""
