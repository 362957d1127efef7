class PQFTError(Exception):
    """Base class for all errors raised by this package."""


class InvalidInputError(PQFTError, ValueError):
    """Malformed arguments: bad ids, length mismatches, out-of-range indices."""


class ConstructionError(PQFTError, ValueError):
    """A sequence family could not be built (e.g. non-primitive polynomial)."""


class PreconditionError(PQFTError, ValueError):
    """An operation was called outside its domain."""


class CollisionError(PQFTError, ValueError):
    """Distinct phase products coincide, so ensemble reduction would be unsound."""
