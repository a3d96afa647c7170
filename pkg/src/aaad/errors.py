"""Exception types raised by the solver."""


class SolverError(RuntimeError):
    """Base class for failures during a run (maps to CLI exit status 2)."""

    def __init__(self, message, index=None, stage=None, time=None):
        self.index = index
        self.stage = stage
        self.time = time
        super().__init__(message)

    def annotate(self, stage=None, time=None):
        if stage is not None and self.stage is None:
            self.stage = stage
        if time is not None and self.time is None:
            self.time = time
        return self

    def record(self):
        """Machine-readable failure description."""
        return {
            "error": type(self).__name__,
            "message": self.args[0] if self.args else "",
            "index": None if self.index is None else [int(i) for i in self.index],
            "stage": self.stage,
            "time": self.time,
        }

    def __str__(self):
        msg = self.args[0] if self.args else type(self).__name__
        extra = []
        if self.index is not None:
            extra.append(f"cell={tuple(int(i) for i in self.index)}")
        if self.stage is not None:
            extra.append(f"stage={self.stage}")
        if self.time is not None:
            extra.append(f"t={self.time:.6g}")
        return f"{msg} ({', '.join(extra)})" if extra else msg


class NonPositiveDensity(SolverError):
    pass


class NonPositivePressure(SolverError):
    pass


class NonPositiveAverage(SolverError):
    pass


class SingularEigensystem(SolverError):
    pass


class DegenerateSpeeds(SolverError):
    pass


class UnknownProblem(KeyError):
    pass


class ShapeMismatch(ValueError):
    pass


class DegenerateDeltas(ValueError):
    pass


class NoTransitionFound(ValueError):
    pass
