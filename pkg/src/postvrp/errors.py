"""Exception types shared across the package."""

from __future__ import annotations


class PostVRPError(Exception):
    """Base class for all toolkit errors."""


class ModelError(PostVRPError):
    """Invalid model file: syntax or semantic validation failure."""

    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        loc = ""
        if line is not None:
            loc = f"line {line}"
            if column is not None:
                loc += f", column {column}"
            loc += ": "
        super().__init__(loc + message)
        self.line = line
        self.column = column


class GeometryError(PostVRPError):
    """Degenerate or unsupported street geometry."""


class CatalogError(PostVRPError):
    """Invalid instance catalog or instance file."""


class UnreachableError(PostVRPError):
    """No path exists between two deliveries (disconnected street graph)."""


class SolverError(PostVRPError):
    """Solver misuse, e.g. exhaustive enumeration over too large a space."""
