"""Domain errors.

Every input problem is a ``ValueError`` so that callers (the CLI in
particular) can treat bad input uniformly. ``LiftingError`` is the
exception: it signals a numerical defect, not bad data.
"""


class DegenerateMapError(ValueError):
    """Möbius coefficients with zero determinant or non-finite entries."""


class DegenerateAnnulusError(ValueError):
    """Annulus data that does not describe a doubly connected region."""


class NonEssentialAnnulusError(ValueError):
    """Sub-annulus whose boundary circles do not separate the ambient boundaries."""


class GridResolutionError(ValueError):
    """Finite-difference grid too coarse to separate the two boundaries."""


class WordLimitExceeded(ValueError):
    pass


class UnverifiedConfigurationError(ValueError):
    pass


class InvalidTripleError(ValueError):
    pass


class InvalidCycleError(ValueError):
    pass


class CoreCurveNotEssentialError(ValueError):
    pass


class LiftingError(RuntimeError):
    """Path continuation step size underflowed."""
