"""
Error Types
Exception hierarchy shared by the library and the CLI

Exit-code mapping used by forestcount.cli:
- DomainError / CapacityError -> 2 (usage, domain, or capacity problem)
- ValidationError / InvariantViolation -> 1 (bad structure or internal failure)
"""


class ForestCountError(Exception):
    """Base class for every error raised by forestcount"""


class DomainError(ForestCountError, ValueError):
    """An argument lies outside the natural domain of an operation"""


class CapacityError(DomainError):
    """An enumeration was requested above the configured limit"""

    def __init__(self, what: str, n: int, limit: int):
        self.what = what
        self.n = n
        self.limit = limit
        super().__init__(
            f"{what}: n={n} exceeds the enumeration limit {limit} (raise it with --limit)"
        )


class ValidationError(ForestCountError):
    """A structure does not satisfy its invariants"""

    def __init__(self, violation: str):
        self.violation = violation
        super().__init__(violation)


class InvariantViolation(ForestCountError, RuntimeError):
    """A state that can only be reached through an implementation bug"""
