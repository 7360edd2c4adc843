"""Exception types shared across the package."""


class MarkovError(Exception):
    """Base class for all domain errors raised by this package."""


class InvalidTriplet(MarkovError):
    """The triplet does not satisfy x^2 + R^2 + z^2 = 3xRz."""


class SingularTriplet(MarkovError):
    """Operation requires a non-singular triplet."""


class NotSingular(MarkovError):
    """Operation only applies to {1,1,1} or {1,2,1}."""


class RootTriplet(MarkovError):
    """{1,5,2} has no non-singular parent."""


class NotFound(MarkovError):
    """Region number is not present in the generated list."""


class ResourceLimit(MarkovError):
    """A configured node or digit budget was exceeded."""


class WrongSideForSingular(MarkovError):
    """Singular heads expose only one edge."""


class BoundTooSmall(MarkovError):
    """Brute-force bound yielded fewer solutions than required."""


class NonIntegralStep(MarkovError):
    """Half-unit Pell iteration produced a non-integer; invariant broken."""


class NonIntegralSolution(MarkovError):
    """Square-term linear system has no integer solution; sign calibration fault."""


class DecompositionMismatch(MarkovError):
    """Computed square pair does not reproduce its target number."""


class UnsupportedFamily(MarkovError):
    """Cycle pattern is outside the documented structure families."""


class InvalidParity(MarkovError):
    """Triplet parities do not match any Markov parity type."""
