class MetrologyError(Exception):
    """Base class for every error raised by the twomode library."""


class DimensionMismatch(MetrologyError, ValueError):
    def __init__(self, expected: int, got: int):
        self.expected = expected
        self.got = got
        super().__init__(
            f"Dimension mismatch: expected N={expected}, got N={got}."
        )


class UnsupportedCase(MetrologyError, ValueError):
    pass


class ZeroNorm(MetrologyError, ValueError):
    pass


class DegenerateProbe(MetrologyError, ValueError):
    pass


class PreconditionError(MetrologyError, ValueError):
    pass


class UnknownTerm(MetrologyError, ValueError):
    def __init__(self, name: str):
        self.name = name
        super().__init__(f'Unknown operator term "{name}".')


class ConvergenceError(MetrologyError, ArithmeticError):
    def __init__(self, index: int, iterations: int):
        self.index = index
        self.iterations = iterations
        super().__init__(
            f"Eigenvalue {index} did not converge after {iterations} sweeps."
        )


class MetrologyWarning(UserWarning):
    pass
