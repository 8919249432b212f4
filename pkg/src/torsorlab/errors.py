"""Shared error bases.

Concrete errors live next to the code that raises them; these bases exist
so that the CLI can map any failure to the right exit code without keeping
a central list.
"""


class TorsorlabError(Exception):
    """Base class for every error raised by this package."""


class InputError(TorsorlabError):
    """Invalid input data or parameters (CLI exit code 2)."""


class LimitError(TorsorlabError):
    """A configured resource cap was exceeded (CLI exit code 3)."""
