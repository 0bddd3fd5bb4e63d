"""Domain exceptions. Each carries a short stable code used by the CLI."""


class CoverTorusError(Exception):
    """Base class for all domain errors (CLI exit code 1)."""

    code = "error"


class UnknownNameError(CoverTorusError):
    code = "unknown-name"


class NonPrimitiveError(CoverTorusError):
    code = "non-primitive"


class EmptyTorusError(CoverTorusError):
    code = "empty-torus"


class ReducibleError(CoverTorusError):
    code = "reducible"


class ArityMismatchError(CoverTorusError):
    code = "arity-mismatch"


class EmptySetError(CoverTorusError):
    code = "empty-set"


class EmptyWithinBoundError(CoverTorusError):
    code = "empty-within-bound"


class NotMemberError(CoverTorusError):
    code = "not-member"


class LengthMismatchError(CoverTorusError):
    code = "length-mismatch"


class PreconditionViolatedError(CoverTorusError):
    code = "precondition-violated"


class NotSpecializationError(CoverTorusError):
    code = "not-specialization"


class WitnessVerificationFailedError(CoverTorusError):
    """A constructed witness failed one of its mandatory post-checks.

    `check` names the failing post-check; the witness is never returned.
    """

    code = "witness-verification-failed"

    def __init__(self, check: str, message: str = ""):
        self.check = check
        super().__init__(message or f"witness failed post-check: {check}")
