"""Exceptions and warnings raised by the simulator."""

from __future__ import annotations
from collections.abc import Sequence
from enum import Enum


class ConfigIssue(str, Enum):
    """Kinds of invariant violation reported by :py:func:`validate_config`."""

    INVALID_SIZE = "InvalidSize"
    INVALID_SCHEDULE = "InvalidSchedule"
    MISSING_IMAGE = "MissingImage"
    NON_FINITE_GENE = "NonFiniteGene"
    INVALID_GENE = "InvalidGene"
    INVALID_BACKEND = "InvalidBackend"


class ConfigError(ValueError):
    """
    A run configuration violates one or more invariants. ``issues`` lists every
    violation as a ``(ConfigIssue, message)`` pair.
    """

    def __init__(self, issues: Sequence[tuple[ConfigIssue, str]]) -> None:
        self.issues = list(issues)
        super().__init__("; ".join(f"{kind.value}: {msg}" for kind, msg in self.issues))

    @property
    def kinds(self) -> list[ConfigIssue]:
        """Kinds of the reported issues, in the order they were found."""
        return [kind for kind, _ in self.issues]


class ScheduleError(ValueError):
    """The snapshot count does not divide the iteration count."""


class BlowUpError(ArithmeticError):
    """A non-finite value appeared in the lattice during a run."""

    def __init__(self, iteration: int) -> None:
        self.iteration = iteration
        super().__init__(f"non-finite state at iteration {iteration}")


class BenchBlowUpError(BlowUpError):
    """A benchmark cell blew up; identifies the backend and lattice side."""

    def __init__(self, backend: str, n: int, iteration: int) -> None:
        super().__init__(iteration)
        self.backend = backend
        self.n = n
        self.args = (
            f"benchmark cell ({backend}, N={n}) blew up at iteration {iteration}",
        )


class GridTooSmallError(ValueError):
    """The lattice is smaller than the requested initial pattern."""


class ImageTooSmallError(ValueError):
    """An input image is smaller than the 3x3 stencil minimum."""


class DecodeError(ValueError):
    """An image file could not be decoded."""


class UnsupportedFormatError(ValueError):
    """An image file has a format or pixel mode that cannot be loaded."""


class ZeroDurationError(ZeroDivisionError):
    """A throughput was requested for a non-positive duration."""


class StabilityWarning(UserWarning):
    """The explicit step may be unstable for the given diffusion coefficients."""
