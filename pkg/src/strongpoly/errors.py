"""Shared error types."""

from __future__ import annotations


class ResourceBudgetExceeded(RuntimeError):
    """A computation ran past its configured step budget.

    Deliberately distinct from a wrong answer: callers either re-run with a
    bigger budget or surface the exhaustion (CLI exit code 4), never guess.
    """

    def __init__(self, kind: str, message: str):
        super().__init__(message)
        self.kind = kind
