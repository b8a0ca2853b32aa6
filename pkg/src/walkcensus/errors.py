"""Exception types shared across the package."""


class WalkCensusError(Exception):
    """Base class for all domain errors raised by this package."""


class StructureError(WalkCensusError):
    """Malformed graph data: bad lengths, duplicate ids, unknown vertices or edges."""


class ArgumentError(WalkCensusError):
    """Invalid numeric or option argument."""


class ClassError(WalkCensusError):
    """Operation requires a one-way Sperner graph and got something else."""


class ModelError(WalkCensusError):
    """The walk is undefined on this graph (a reachable vertex has no way out)."""


class CountRangeError(WalkCensusError):
    """A count left the unsigned 64-bit range instead of wrapping around."""
