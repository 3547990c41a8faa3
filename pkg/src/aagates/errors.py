"""Exception hierarchy shared across the package.

The CLI maps these onto exit codes: configuration problems exit 2,
physics/validity problems exit 3, numerical failures exit 4.
"""


class AagatesError(Exception):
    """Base class for all package errors."""


class ConfigError(AagatesError):
    """Malformed configuration: unparseable file, missing or unknown keys."""


class ConfigurationError(AagatesError):
    """A parameter combination that is syntactically fine but physically
    ill-posed for the requested operation (e.g. a resonant gate-1 request)."""


class ModelError(AagatesError):
    """A model-level contract violation (non-hermitian input, singular
    energy denominator, dimension mismatch)."""


class ValidityError(AagatesError):
    """A perturbative-regime or resonance-configuration requirement is not
    met strongly enough to run the requested gate."""


class NumericalError(AagatesError):
    """Numerical failure: eigendecomposition breakdown, integration norm
    drift beyond tolerance."""


class CyclicityError(AagatesError):
    """A phase was requested for a trajectory that does not close into a
    loop on the Bloch sphere."""

    def __init__(self, message: str, mismatch: float | None = None):
        super().__init__(message)
        self.mismatch = mismatch


class SamplingError(AagatesError):
    """A trajectory is too sparsely sampled for the requested geometric
    computation."""
