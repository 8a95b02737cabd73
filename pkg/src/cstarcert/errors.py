"""Exception taxonomy shared by all modules.

The CLI maps these onto exit codes: usage/config problems exit 2,
resource-cap overruns exit 3, failed report assertions exit 1.
"""


class CstarCertError(Exception):
    """Base class for all package errors."""


class MalformedInputError(CstarCertError, ValueError):
    """Input does not satisfy the documented schema or invariants."""


class DomainError(CstarCertError, ValueError):
    """Operation applied outside its mathematical domain."""


class NotHyperbolicError(DomainError):
    """Element is elliptic (finite order, or conjugate into a free factor)."""


class ResourceCapError(CstarCertError, RuntimeError):
    """A configured size cap would be exceeded.

    ``cap`` carries the offending limit so callers can report it.
    """

    def __init__(self, message: str, cap: int):
        super().__init__(f"{message} (cap: {cap})")
        self.cap = cap


class ConstructionFailureError(CstarCertError, RuntimeError):
    """A bounded certificate search exhausted its budget.

    Failure at the configured bound is not a disproof; the bound is
    reported so callers can retry with a larger one.
    """

    def __init__(self, message: str, bound: int):
        super().__init__(f"{message} (search bound: {bound})")
        self.bound = bound


class AmbiguousClassificationError(CstarCertError, RuntimeError):
    """A numerical verdict fell into the tolerance gray zone."""
