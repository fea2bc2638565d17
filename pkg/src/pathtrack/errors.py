"""Exception types shared across the package."""


class ConfigError(ValueError):
    """Invalid parameters, malformed config files or unreadable inputs."""


class SingularityError(ArithmeticError):
    """A control law hit a singular or non-finite value.

    ``step`` is the simulation step index when raised from the closed loop.
    """

    def __init__(self, message, step=None):
        super().__init__(message)
        self.step = step

    def __str__(self):
        msg = super().__str__()
        if self.step is not None:
            return f"step {self.step}: {msg}"
        return msg
