"""Error taxonomy shared across the package.

Three families matter to callers (and map to CLI exit codes):
parse errors (2), precondition violations (3) and internal invariant
breaches (4).  Anything in the last family is a bug, never a data problem.
"""

from __future__ import annotations


class PreconditionError(ValueError):
    """The inputs are well-formed but outside an operation's contract."""


class InternalInvariantError(AssertionError):
    """A structural property the implementation guarantees failed to hold."""
