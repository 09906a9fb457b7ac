"""Exception hierarchy shared by every module."""


class SemicommError(Exception):
    pass


class InputError(SemicommError, ValueError):
    """Bad argument: out-of-range index, non-coprime pair, malformed file."""


class ContractViolation(SemicommError):
    """A semigroup-only operation was handed a non-associative table."""


class PreconditionError(SemicommError):
    """A hypothesis required by the operation does not hold; carries a witness."""

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class InvariantFailure(SemicommError, AssertionError):
    """An internal cross-check disagreed. Never expected; indicates a bug."""


class ResourceLimitError(SemicommError):
    pass
