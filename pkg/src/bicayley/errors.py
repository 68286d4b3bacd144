"""Exception types shared across the package."""


class BicayleyError(Exception):
    """Base class for all package errors."""


class ValidationError(BicayleyError, ValueError):
    """Input data violates a structural requirement (bad connection set, bad permutation...)."""


class PreconditionError(BicayleyError, ValueError):
    """An operation was called outside its domain (e.g. inversion on a nonabelian group)."""


class ResourceLimitError(BicayleyError):
    """A configured size bound would be exceeded."""


class SearchInconclusive(BicayleyError):
    """A search ran out of budget before exhausting its space."""

    def __init__(self, message, examined=0):
        super().__init__(message)
        self.examined = examined


class VerificationError(BicayleyError):
    """A constructed witness failed one of its checks."""

    def __init__(self, predicate, detail=""):
        super().__init__(f"{predicate}: {detail}" if detail else predicate)
        self.predicate = predicate


class ParseError(BicayleyError, ValueError):
    """Malformed text input."""

    def __init__(self, message, offset=None):
        if offset is not None:
            message = f"{message} (at offset {offset})"
        super().__init__(message)
        self.offset = offset
