"""Error hierarchy for the largest-disk library."""


class GeometryError(Exception):
    """Root of every error raised by this package."""


class DegenerateInput(GeometryError):
    """Input violates general position (tangency, overlap, coincidence)."""


class ArcOwnerMismatch(GeometryError):
    """Two arcs were combined although they live on different disks."""


class ValidationError(GeometryError):
    """An instance failed the general-position checks."""

    def __init__(self, violations: list[str]):
        self.violations = list(violations)
        shown = "; ".join(self.violations[:5])
        more = f" (+{len(self.violations) - 5} more)" if len(self.violations) > 5 else ""
        super().__init__(f"instance is not in general position: {shown}{more}")


class InputFormatError(GeometryError):
    """A disk or query file could not be parsed."""

    def __init__(self, message: str, line_number: int | None = None):
        self.line_number = line_number
        if line_number is not None:
            message = f"line {line_number}: {message}"
        super().__init__(message)


class StructureFormatError(GeometryError):
    """A serialized structure is unreadable or of an unknown version."""
