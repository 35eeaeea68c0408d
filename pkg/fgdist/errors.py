"""
Exception hierarchy for fgdist.

Input problems (bad files, bad operands, impossible parameters) derive from
``InputError``. Mathematical refusals (failed axioms, truncation problems,
level escapes) derive from ``MathematicalRefusal``. Both are ``ValueError``
subclasses.
"""

from typing import Optional

EXIT_OK = 0
EXIT_REFUSED = 2
EXIT_INPUT = 3


class FgDistError(ValueError):
    """Base class for every error raised by the library."""


class InputError(FgDistError):
    """Malformed or inconsistent input."""


class NotPrimeError(InputError):
    """The requested characteristic is not a prime."""


class CharacteristicMismatchError(InputError):
    """Values over different prime fields were combined."""


class LengthMismatchError(InputError):
    """Multi-indices or exponent vectors of different lengths."""


class SeriesMismatchError(InputError):
    """Series over different variable sets or truncation frames."""


class SubstitutionError(InputError):
    """A substitution image is not a valid argument (e.g. nonzero constant term)."""


class LawParseError(InputError):
    """A custom law description could not be parsed."""


class OperandError(InputError):
    """A command-line operand or table file entry could not be parsed."""


class MathematicalRefusal(FgDistError):
    """The computation was refused on mathematical grounds."""


class TruncationError(MathematicalRefusal):
    """A coefficient was requested outside the truncation frame."""


class LevelEscapeError(MathematicalRefusal):
    """An element left the span of the distribution level."""


class FiltrationError(MathematicalRefusal):
    """A filtration bound was violated."""


class TerminationError(MathematicalRefusal):
    """A rewrite step did not decrease the termination measure."""


class AxiomViolation(MathematicalRefusal):
    """An axiom check failed."""

    def __init__(self, axiom: str, witness: Optional[str] = None, detail: str = ""):
        self.axiom = axiom
        self.witness = witness
        self.detail = detail
        message = f"{axiom} failed"
        if witness:
            message += f" (witness: {witness})"
        if detail:
            message += f": {detail}"
        super().__init__(message)


def exit_code_for(exc: BaseException) -> int:
    """Map an exception to the CLI exit-code contract."""
    if isinstance(exc, MathematicalRefusal):
        return EXIT_REFUSED
    return EXIT_INPUT
