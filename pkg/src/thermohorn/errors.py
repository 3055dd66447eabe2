"""Exception types with machine-readable codes.

The CLI maps :class:`PreconditionError` to exit code 2 and serializes
``{"error": code, "detail": detail}``; any other exception is an internal
fault (exit 1). Library callers can catch the same type.
"""

from __future__ import annotations


class PreconditionError(ValueError):
    """A documented precondition of an operation was violated.

    Parameters
    ----------
    code:
        Short stable machine-readable identifier (kebab-case).
    detail:
        Human-readable explanation, may embed offending values.
    """

    def __init__(self, code: str, detail: str):
        super().__init__(f"{code}: {detail}")
        self.code = code
        self.detail = detail
