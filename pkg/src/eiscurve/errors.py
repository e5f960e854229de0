"""Exception hierarchy.

Argument errors subclass ``ValueError`` (CLI exit status 2); domain errors
subclass ``EiscurveError`` (exit status 1).  Every domain error carries a
short ``code`` used as the machine-greppable prefix of CLI error lines.
"""

from __future__ import annotations


class EiscurveError(Exception):
    code = "domain"


class DomainMismatchError(EiscurveError, TypeError):
    code = "domain-mismatch"


class ParityError(EiscurveError):
    code = "parity"


class PrecisionError(EiscurveError):
    code = "precision"


class DegenerateInputError(EiscurveError):
    code = "degenerate"


class StabilityError(EiscurveError):
    code = "unstable"


class NoAnchorError(EiscurveError):
    code = "no-anchor"


class DecodeError(ValueError):
    """Schema violation while decoding JSON; ``path`` names the offending field."""

    code = "decode"

    def __init__(self, path: str, message: str):
        super().__init__(f"{path}: {message}")
        self.path = path
