# Copyright 2026 The bft developers.  This software is licensed under the
# GNU General Public License version 3 (see the file LICENSE).

"""bft errors."""

__all__ = [
    "CheckFailed",
    "CommandError",
    "ConfigurationError",
    "SolverError",
    "UnsupportedError",
]

from typing import Any, Optional

from craft_cli import CraftError


class CommandError(CraftError):
    """Base exception for all error commands."""

    def __init__(self, message: str, retcode: int = 1):
        super().__init__(message, retcode=retcode)

    def __eq__(self, other: Any) -> bool:
        if type(self) != type(other):
            return NotImplemented
        return str(self) == str(other) and self.retcode == other.retcode


class ConfigurationError(CommandError):
    """Error reading or validating a configuration file."""

    def __init__(self, message: str, retcode: int = 2):
        super().__init__(message, retcode=retcode)


class CheckFailed(CommandError):
    """A verification check did not hold."""

    def __init__(self, check: str, detail: str = ""):
        message = f"Check failed: {check}"
        if detail:
            message = f"{message} ({detail})"
        super().__init__(message, retcode=1)
        self.check = check


class UnsupportedError(CommandError):
    """An operation was asked for outside the domain it is defined on."""


class SolverError(CommandError):
    """A nonlinear solve or flow did not reach its tolerance."""

    def __init__(
        self, message: str, best_residual: Optional[float] = None
    ) -> None:
        if best_residual is not None:
            message = f"{message} (best residual {best_residual:.3e})"
        super().__init__(message, retcode=1)
        self.best_residual = best_residual
