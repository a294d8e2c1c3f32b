"""Exception types shared across the package."""


class KextractError(Exception):
    """Base class for all errors raised by this package."""


class ParameterError(KextractError, ValueError):
    """An argument violates an operation's precondition."""


class DomainError(KextractError, ValueError):
    """A mathematically undefined request, e.g. inverting zero."""


class ResourceError(KextractError, RuntimeError):
    """A computation would exceed its configured budget.

    The message always names the budget that was exceeded.
    """


class DecodeError(KextractError, ValueError):
    """Malformed serialized input.  ``position`` is the bit/byte offset."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


class BackendError(KextractError, RuntimeError):
    """A compressor backend is unknown or failed.  ``backend`` names it."""

    def __init__(self, message: str, backend: str):
        super().__init__(f"{message} (backend: {backend})")
        self.backend = backend
