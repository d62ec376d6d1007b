"""Exception types shared across the package."""


class FusionBurnsideError(Exception):
    """Base class for every error this package raises deliberately."""


class InputError(FusionBurnsideError):
    """Malformed user input: bad permutation, group file, CSV, or argument."""


class SizeCapError(FusionBurnsideError):
    """A configured size cap (group order, subgroup count, sweep size) was hit."""


class MarkImageError(FusionBurnsideError):
    """A mark vector is not in the image of the mark homomorphism."""


class NotFStableError(FusionBurnsideError):
    """Marks differ inside a fusion class where stability was required."""


class CongruenceError(FusionBurnsideError):
    """A divisibility guaranteed by the stabilization congruences failed."""


class FixedPointError(FusionBurnsideError):
    """A stabilization coefficient violated the fixed-point count bound."""


class WitnessError(FusionBurnsideError):
    """No conjugating element exists where saturation guarantees one."""


class InvariantError(FusionBurnsideError):
    """An internal invariant broke; this always indicates a bug."""
