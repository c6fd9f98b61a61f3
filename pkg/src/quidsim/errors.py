"""Exception types raised by quidsim."""


class QuidsimError(Exception):
    """Base class for all library errors."""


class NotNormalized(QuidsimError, ValueError):
    """Amplitudes do not have unit squared norm within tolerance."""


class NonUnitaryGate(QuidsimError, ValueError):
    pass


class QubitIndexError(QuidsimError, IndexError):
    pass


class CapacityError(QuidsimError, ValueError):
    """Requested register exceeds the configured qubit limit."""


class ImpossibleOutcome(QuidsimError, ValueError):
    """A forced measurement outcome has (numerically) zero probability."""


class CircuitError(QuidsimError, ValueError):
    pass


class DuplicateHandle(QuidsimError, KeyError):
    pass


class UnknownHandle(QuidsimError, KeyError):
    pass


class NoMatch(QuidsimError, LookupError):
    """No registered QuID lies within tolerance of the requested peer."""


class AmbiguousMatch(QuidsimError, LookupError):
    """Several registered QuIDs lie within tolerance; the peer cannot be resolved."""


class NotGroundState(QuidsimError, ValueError):
    pass
