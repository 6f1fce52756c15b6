"""Exception hierarchy.

Every numerical failure raised by this package derives from SkinfxError and
names the pipeline stage that produced it, so callers (and the CLI) can map
failures to exit codes without string matching.
"""


class SkinfxError(Exception):
    """Base class for all skinfx errors."""


class ParameterDomainError(SkinfxError, ValueError):
    """Input parameters outside the admissible domain (non-finite, wrong sign)."""


class SpectralBoundaryError(SkinfxError):
    """Parameter point lies on (or too close to) a spectral boundary curve."""


class DegenerateCoefficientError(SkinfxError):
    """Boundary values of the dispersion function vanish on the real axis."""


class NonConvergenceError(SkinfxError):
    """Adaptive refinement exhausted its node budget."""


class InconsistencyError(SkinfxError):
    """Two independent computations of the same quantity disagree."""


class RootSelectionError(SkinfxError):
    """Root filtering did not leave exactly one admissible root."""


class NearCutError(SkinfxError):
    """Evaluation point too close to the branch cut; use the boundary-value routine."""


class RegularizationError(SkinfxError):
    """The 1/z singularity of the index-one factor function failed to cancel."""


class TruncationError(SkinfxError):
    """Computational domain too small for the requested decay."""


class OracleDivergenceError(SkinfxError):
    """The direct kinetic solver failed to converge."""
