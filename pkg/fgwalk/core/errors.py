# fgwalk/core/errors.py
from typing import Any, Dict, Optional


class FgwError(Exception):
    """Base class for every error raised by fgwalk."""


class PreconditionError(FgwError, ValueError):
    """An input violates a documented precondition."""


class GuardExceededError(PreconditionError):
    """A brute-force or exact-expansion size guard would be exceeded."""

    def __init__(self, what: str, size: int, limit: int):
        super().__init__(f"{what}: size {size} exceeds guard {limit}")
        self.size = size
        self.limit = limit


class GraphFormatError(PreconditionError):
    """Malformed graph or group file."""

    def __init__(self, message: str, line_no: Optional[int] = None):
        where = f"line {line_no}: " if line_no is not None else ""
        super().__init__(f"{where}{message}")
        self.line_no = line_no


class ConvergenceError(FgwError, RuntimeError):
    """An iterative solver failed to converge."""

    def __init__(self, message: str, diagnostics: Optional[Dict[str, Any]] = None):
        super().__init__(message)
        self.diagnostics = diagnostics or {}


class FormulaMismatchError(FgwError, RuntimeError):
    """An exact identity that must hold did not (e.g. non-exact division)."""

    def __init__(self, message: str, key: Any = None):
        super().__init__(message if key is None else f"{message} (first at {key!r})")
        self.key = key
