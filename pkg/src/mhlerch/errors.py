"""Exception types shared by the exact and floating-point layers."""


class DomainError(ValueError):
    """Argument lies outside the region where the series representation is valid."""


class InvalidShiftError(ValueError):
    """Shift parameter is (numerically indistinguishable from) a forbidden
    nonpositive-integer translate, where the series denominators vanish."""


class PrecisionError(ValueError):
    """Requested tolerance is tighter than binary64 evaluation can certify."""


class EnumerationCapError(RuntimeError):
    """Brute-force tuple enumeration would exceed the configured cap."""

    def __init__(self, count: int, cap: int):
        super().__init__(f"enumeration of {count} tuples exceeds cap {cap}")
        self.count = count
        self.cap = cap
