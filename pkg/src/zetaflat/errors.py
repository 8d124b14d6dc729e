"""Exception types shared across the package."""


class NonUnitError(ValueError):
    """A residue-ring division hit a denominator that is not a unit.

    Carries enough context to point at the offending chain position: the
    1-based position index, the summation variable value n, the denominator
    residue, and the modulus.
    """

    def __init__(self, message, position=None, n=None, value=None, modulus=None):
        super().__init__(message)
        self.position = position
        self.n = n
        self.value = value
        self.modulus = modulus


class CapExceededError(ValueError):
    """A requested computation falls outside the configured size caps."""
