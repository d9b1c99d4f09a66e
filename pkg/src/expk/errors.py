"""Exception types shared across the package."""


class ContractViolation(ValueError):
    """An operation was called outside its documented preconditions."""


class CapError(ValueError):
    """A computation needs one simplicial level beyond the model's cap.

    Raised when the highest stored level still carries nondegenerate
    simplices, so ranks above it cannot be trusted.
    """


class LevelSizeError(RuntimeError):
    """A construction would exceed the per-level simplex budget."""

    def __init__(self, what, level, size, bound):
        self.what = what
        self.level = level
        self.size = size
        self.bound = bound
        super().__init__(
            f"{what}: level {level} would hold {size} simplices, "
            f"over the budget of {bound}"
        )


class BasisSpanError(ValueError):
    """A supplied basis fails to span the class being expressed."""
