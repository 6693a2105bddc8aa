from typing import Optional


class MinMCMError(Exception):
    """Base class for every failure the toolkit raises on purpose."""

    exit_code = 3


class InputError(MinMCMError, ValueError):
    """Malformed arguments or unparseable input files."""

    exit_code = 1

    def __init__(self, message: str, *, line: Optional[int] = None, source: Optional[str] = None):
        self.message = message
        self.line = line
        self.source = source
        prefix = ""
        if source is not None and line is not None:
            prefix = f"{source}:{line}: "
        elif line is not None:
            prefix = f"line {line}: "
        elif source is not None:
            prefix = f"{source}: "
        super().__init__(prefix + message)


class BudgetExceededError(MinMCMError):
    """The exact solver ran out of time or nodes before proving optimality."""

    exit_code = 2

    def __init__(
        self,
        message: str,
        *,
        best_value: Optional[int],
        lower_bound: int,
        nodes: int,
        elapsed: float,
    ):
        self.best_value = best_value
        self.lower_bound = lower_bound
        self.nodes = nodes
        self.elapsed = elapsed
        super().__init__(
            f"{message} (best_value={best_value} lower_bound={lower_bound} "
            f"nodes={nodes} elapsed={elapsed:.2f}s)"
        )


class InvariantViolationError(MinMCMError):
    """A constructed artifact failed its own verification."""

    exit_code = 3
