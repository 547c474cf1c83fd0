"""Exception types shared across the package."""


class FuzzCompError(Exception):
    pass


class DegreeError(FuzzCompError, ValueError):
    pass


class InvalidEta(FuzzCompError, ValueError):
    pass


class EmptyAggregation(FuzzCompError, ValueError):
    pass


class MachineError(FuzzCompError, ValueError):
    """A machine description violates its structural invariants."""


class NotHalted(FuzzCompError):
    def __init__(self, max_steps):
        super().__init__(f"non-final configurations remain after {max_steps} steps")
        self.max_steps = max_steps


class CircuitError(FuzzCompError, ValueError):
    def __init__(self, report):
        lines = "; ".join(f"{v['kind']}: {v['detail']}" for v in report.violations)
        super().__init__(f"invalid circuit ({lines})")
        self.report = report


class TooLarge(FuzzCompError):
    pass


class EmptyProofSpace(FuzzCompError, ValueError):
    pass


class EmptyInputSpace(FuzzCompError, ValueError):
    pass


class NoSolution(FuzzCompError, ValueError):
    pass


class RatioUndefined(FuzzCompError, ZeroDivisionError):
    pass


class SchemaError(FuzzCompError, ValueError):
    pass
