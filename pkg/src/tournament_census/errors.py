"""Exception hierarchy shared by every module of the package."""


class CensusError(Exception):
    """Base class for all errors raised by tournament_census."""


class ParseError(CensusError, ValueError):
    """Malformed line or character in a tournament file."""


class NotATournament(CensusError, ValueError):
    """Matrix has a nonzero diagonal or a pair that is not oriented exactly once."""


class BadSubset(CensusError, ValueError):
    """Vertex subset has out-of-range or duplicate entries."""


class TooFewVertices(CensusError, ValueError):
    pass


class TooLarge(CensusError, ValueError):
    """Input exceeds the size cap of a brute-force routine."""


class CalibrationAmbiguous(CensusError):
    """Pattern names could not be bound to isomorphism classes uniquely."""


class InternalInconsistency(CensusError):
    """A counting engine produced a negative, fractional or inconsistent result.

    This signals a bug; it never fires on valid input.
    """


class NoSourceOrSink(CensusError, ValueError):
    pass


class DivisionCheck(InternalInconsistency):
    """Labeled copy total not divisible by the automorphism group order."""


class PartitionMismatch(CensusError, ValueError):
    pass


class NotASignature(CensusError, ValueError):
    pass
