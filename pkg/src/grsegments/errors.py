"""Exception hierarchy shared by the library and the CLI.

Library code raises; only the CLI maps these onto exit codes.
"""

from __future__ import annotations


class GrSegmentsError(Exception):
    """Base class for every error raised by grsegments."""

    exit_code = 1


class InvalidInput(GrSegmentsError, ValueError):
    """Malformed quiver, representation, subspace tuple or configuration."""

    exit_code = 2


class NotTame(InvalidInput):
    """Quiver is not of extended Dynkin type, or has oriented cycles."""


class BudgetExceeded(GrSegmentsError):
    """An enumeration would exceed its configured cap."""

    exit_code = 3

    def __init__(
        self,
        what: str,
        needed: int,
        cap: int,
        partial: int | None = None,
        result: object | None = None,
    ):
        self.what = what
        self.needed = needed
        self.cap = cap
        self.partial = partial
        # whatever was finished before the cap hit, e.g. a partial Catalog
        self.result = result
        msg = f"{what}: needs {needed} > cap {cap}"
        if partial is not None:
            msg += f" ({partial} results before stopping)"
        super().__init__(msg)


class Undecided(BudgetExceeded):
    """A yes/no question could not be answered within budget.

    Distinct from a False answer: callers must not treat it as one.
    """


class ConstructionError(GrSegmentsError):
    """An internal construction produced something the theory rules out."""
