"""Exception hierarchy shared by every module.

All domain errors derive from :class:`HDLineError` so the CLI can map them
to exit code 1 with a single ``except`` clause.
"""


class HDLineError(ValueError):
    """Base class for domain errors."""

    code = "error"


class InvalidValueError(HDLineError):
    code = "invalid-value"


class InvalidGainError(HDLineError):
    code = "invalid-gain"


class DegenerateNetworkError(HDLineError):
    """Raised for a line without relays (N = 0)."""

    code = "degenerate-network"


class UnsupportedCapacityError(HDLineError):
    code = "unsupported-capacity"


class ResolutionTooCoarseError(HDLineError):
    code = "resolution-too-coarse"


class CapacityLimitError(HDLineError):
    """An exhaustive routine was asked to run above its configured size bound."""

    code = "capacity-limit"


class WitnessNotApplicableError(HDLineError):
    code = "witness-not-applicable"


class InvalidCNFError(HDLineError):
    code = "invalid-cnf"


class PathError(HDLineError):
    code = "invalid-path"


class InternalInvariantError(HDLineError):
    code = "internal-invariant"
