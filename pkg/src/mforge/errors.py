"""Exception taxonomy shared by the library and the CLI exit codes."""
from __future__ import annotations


class MforgeError(Exception):
    exit_code = 1


class ParseError(MforgeError):
    """Malformed text input."""

    exit_code = 2


class PreconditionError(MforgeError, ValueError):
    """An operation was called on arguments outside its domain."""

    exit_code = 3


class GuardExceeded(MforgeError):
    """An enumeration would exceed the configured ground-size guard."""

    exit_code = 4


class InvariantBreach(MforgeError):
    """An internal cross-check failed; ``witness`` carries the evidence."""

    exit_code = 5

    def __init__(self, message: str, witness: object = None):
        super().__init__(message)
        self.witness = witness
