from __future__ import annotations

from typing import Any, Optional


class EntspecError(RuntimeError):
    def __init__(self, message: str, details: Any = None) -> None:
        super().__init__(message)
        self.message = message
        self.details = details


class InvalidArgumentError(EntspecError, ValueError):
    """A precondition on an argument does not hold."""


class CapExceededError(InvalidArgumentError):
    def __init__(self, what: str, n: int, cap: int) -> None:
        super().__init__(f"{what}: n={n} exceeds the supported cap of {cap} qubits", details={"n": n, "cap": cap})
        self.n = n
        self.cap = cap


class StateFormatError(EntspecError):
    """A state (or sweep) file violates its format; `invariant` names the broken rule."""

    def __init__(self, message: str, invariant: str, path: Optional[str] = None) -> None:
        prefix = f"{path}: " if path else ""
        super().__init__(f"{prefix}{invariant} error: {message}", details={"invariant": invariant, "path": path})
        self.invariant = invariant
        self.path = path


class OutputError(EntspecError):
    pass
