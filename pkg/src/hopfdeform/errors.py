"""Exception hierarchy shared by the library and the CLI.

Each class carries the CLI exit code it maps to.
"""
from __future__ import annotations


class HopfDeformError(Exception):
    exit_code = 1


class ConfigError(HopfDeformError):
    """Session or field configuration does not match the request."""

    exit_code = 2


class InputError(HopfDeformError):
    """Malformed or invalid user input (datum files, parameters, indices)."""

    exit_code = 2

    def __init__(self, message: str, pointer: str | None = None):
        self.pointer = pointer
        super().__init__(f"{pointer}: {message}" if pointer else message)


class BudgetError(HopfDeformError):
    """A computation would exceed the configured size budget."""

    exit_code = 3


class PropertyFailure(HopfDeformError):
    """A mathematical property that was required to hold does not."""

    exit_code = 1

    def __init__(self, message: str, witness=None):
        self.witness = witness
        super().__init__(message)
