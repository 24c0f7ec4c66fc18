"""Exception hierarchy shared across the package.

The CLI maps these onto exit codes: bad input is distinguished from
resource caps so batch scripts can react differently.
"""


class FlatLyapError(Exception):
    """Base class for all errors raised by this package."""


class InputError(FlatLyapError):
    """Malformed or out-of-contract input (bad cycle string, degree
    mismatch, invalid signature, ...)."""


class DisconnectedError(InputError):
    """The permutation pair does not act transitively, i.e. the surface
    is disconnected."""


class ResourceCapError(FlatLyapError):
    """A configured resource cap (orbit size) was exceeded."""


class InternalCheckError(FlatLyapError):
    """An internal cross-check failed; indicates a bug, not bad input."""
