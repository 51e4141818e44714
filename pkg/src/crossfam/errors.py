# crossfam/errors.py
"""Structured errors. Every error carries a stable ``code`` used by the CLI and the reports."""


class CrossFamError(ValueError):
    code = "error"

    def __init__(self, message: str):
        super().__init__(message)
        self.message = message


class EmptyFamilyError(CrossFamError):
    code = "empty-family"


class GroundSetTooLargeError(CrossFamError):
    code = "ground-too-large"


class ElementRangeError(CrossFamError):
    code = "range"


class DuplicateSetError(CrossFamError):
    code = "duplicate"


class MalformedFamilyError(CrossFamError):
    code = "malformed"


class NotASubfamilyError(CrossFamError):
    code = "not-subfamily"


class ParameterError(CrossFamError):
    code = "parameter"


class GuardExceededError(CrossFamError):
    code = "guard"

    def __init__(self, guard: str, bound, actual, hint: str = ""):
        self.guard = guard
        self.bound = bound
        self.actual = actual
        message = f"guard '{guard}' exceeded: {actual} > {bound}"
        if hint:
            message = f"{message} ({hint})"
        super().__init__(message)


class PreconditionError(CrossFamError):
    """Raised when a theorem or lemma does not apply to the given instance."""

    code = "inapplicable"


class HypothesisError(CrossFamError):
    code = "hypothesis"


class NotClosedError(CrossFamError):
    code = "not-closed"


class UnknownClaimError(CrossFamError):
    code = "unknown-claim"


class ReportWriteError(CrossFamError):
    code = "io"
