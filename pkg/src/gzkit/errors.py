"""Exception hierarchy shared by all gzkit modules."""


class GZError(Exception):
    """Base class for all gzkit errors."""


class DimensionMismatch(GZError):
    """An index or matrix dimension is out of range or inconsistent."""


class ConvergenceFailure(GZError):
    """An iterative solver did not reach its tolerance within the cap."""


class DegenerateSpectrum(GZError):
    """Eigenvalues collide (or nearly collide) where distinctness is required."""


class BranchMismatch(GZError):
    """Recomputed minor spectra cannot be matched to a stored ladder."""


class NumericalInstability(GZError):
    """Intermediate quantities exceeded the sane-growth bound."""


class NonGenericPoint(GZError):
    """A projector component vanishes: the point is outside the generic locus."""


class NotInOmega(GZError):
    """The point fails the generic-membership predicate."""


class SamplingFailure(GZError):
    """Rejection sampling did not produce a member within the retry cap."""
