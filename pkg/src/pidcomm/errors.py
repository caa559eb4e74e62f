"""Exception taxonomy shared across the package.

Every error that can reach a caller is a subclass of AlgebraError, so the
CLI can map the whole family onto its exit-code contract.
"""


class AlgebraError(Exception):
    """Base class for all computational-algebra errors raised here."""


class DegenerateInputError(AlgebraError):
    """Input is structurally empty or zero where that has no meaning."""


class PreconditionError(AlgebraError):
    """A documented precondition of the operation does not hold."""


class CriterionViolationError(AlgebraError):
    """The trace criterion fails, so no solution exists."""


class NotInCentralizerError(AlgebraError):
    """A matrix expected to be a polynomial in X mod p is not.

    Carries the offending prime payload in ``prime``.
    """

    def __init__(self, message, prime=None):
        super().__init__(message)
        self.prime = prime


class NotCertifiedError(AlgebraError):
    """A regularity certificate was requested but cannot be issued."""


class WitnessInvalidError(AlgebraError):
    """A similarity or commutator witness fails exact verification."""


class NotApplicableError(AlgebraError):
    """The input lies outside the theorem's hypotheses.

    ``prime`` names an offending prime when one exists.
    """

    def __init__(self, message, prime=None):
        super().__init__(message)
        self.prime = prime


class InternalInvariantError(AlgebraError):
    """A step the underlying proofs guarantee has failed; diagnostic only."""
