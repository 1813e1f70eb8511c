class IncompatibleGeneratorError(ValueError):
    """A generator cannot be written as reduced kinetic equations.

    ``violations`` names each failed condition, e.g. ``"[J,G] ≠ 0"``.
    """

    def __init__(self, violations, details=""):
        self.violations = tuple(violations)
        message = "incompatible generator: " + ", ".join(self.violations)
        if details:
            message += f" ({details})"
        super().__init__(message)


class PhysicalityError(ValueError):
    """A state left the physical set by more than the tolerance."""

    def __init__(self, message, time=None, value=None):
        super().__init__(message)
        self.time = time
        self.value = value
