"""Exception types shared across the package."""


class BranchDualError(Exception):
    pass


class EmbeddingError(BranchDualError, ValueError):
    """Malformed rotation system: bad permutation, unknown dart, duplicate id."""


class PreconditionError(BranchDualError, ValueError):
    """An operation or checker was called outside its domain."""


class SolverCapError(BranchDualError):
    """The exact solver refused an instance larger than the configured cap."""

    def __init__(self, size, cap):
        super().__init__(f"ground set of size {size} exceeds exact solver cap {cap}")
        self.size = size
        self.cap = cap


class GeneratorExhausted(BranchDualError):
    """Instance filters could not be satisfied within the retry budget."""


class FormatError(BranchDualError, ValueError):
    pass
