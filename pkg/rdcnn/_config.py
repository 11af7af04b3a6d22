"""Run configuration and its validation."""

from __future__ import annotations
from dataclasses import dataclass, replace
from enum import Enum
from rdcnn._backends import Backend
from rdcnn._errors import ConfigError, ConfigIssue
from rdcnn._gene import Gene
from rdcnn._state import Precision


class InitMode(int, Enum):
    """How the initial state is produced (the ``typ`` parameter)."""

    CENTER_SQUARE = 1
    """Zero lattice with an 11x11 random square in the middle."""
    FULL_RANDOM = 2
    """Every cell random."""
    IMAGE = 3
    """Both layers set from a scaled grayscale image."""


@dataclass(frozen=True)
class RunConfig:
    """Everything besides the gene that determines a run."""

    init_mode: InitMode = InitMode.CENTER_SQUARE
    """Initial state mode (``typ``)."""
    nn: int = 512
    """Number of lattice rows."""
    nm: int = 512
    """Number of lattice columns."""
    iter_max: int = 10000
    """Number of iterations."""
    nssp: int = 5
    """Number of snapshots after the initial frame."""
    seed: int = 0
    """Seed of the random initial state."""
    backend: str = "parallel"
    """Backend name."""
    precision: Precision = Precision.SINGLE
    """Floating-point precision."""
    image_path: str | None = None
    """Image file for :py:attr:`InitMode.IMAGE` runs."""
    img_size: int | None = None
    """If given, images are resampled to ``img_size x img_size`` when loaded."""
    tile_rows: int = 64
    """Tile height of the blocked backend."""
    tile_cols: int = 64
    """Tile width of the blocked backend."""
    threads: int = 0
    """Thread-count hint of the parallel backend (0 for the default)."""

    @property
    def shape(self) -> tuple[int, int]:
        """Lattice dimensions ``(nn, nm)``."""
        return self.nn, self.nm

    @property
    def test_mod(self) -> int:
        """Iterations between snapshots."""
        return self.iter_max // self.nssp

    def with_shape(self, nn: int, nm: int) -> RunConfig:
        """Copy of this configuration with a different lattice size."""
        return replace(self, nn=nn, nm=nm)

    def make_backend(self) -> Backend:
        """Instantiate the configured backend."""
        return Backend.create(
            self.backend,
            tile_rows=self.tile_rows,
            tile_cols=self.tile_cols,
            threads=self.threads,
        )

    def issues(self) -> list[tuple[ConfigIssue, str]]:
        """Return every invariant this configuration violates (empty if valid)."""
        found: list[tuple[ConfigIssue, str]] = []
        if self.nn < 3 or self.nm < 3:
            found.append(
                (
                    ConfigIssue.INVALID_SIZE,
                    f"lattice {self.nn}x{self.nm} is smaller than 3x3",
                )
            )
        if self.iter_max < 1:
            found.append(
                (ConfigIssue.INVALID_SCHEDULE, f"iter_max={self.iter_max} is below 1")
            )
        if self.nssp < 1 or self.nssp > max(self.iter_max, 1):
            found.append(
                (
                    ConfigIssue.INVALID_SCHEDULE,
                    f"nssp={self.nssp} is outside 1..iter_max={self.iter_max}",
                )
            )
        elif self.iter_max >= 1 and self.iter_max % self.nssp != 0:
            found.append(
                (
                    ConfigIssue.INVALID_SCHEDULE,
                    f"nssp={self.nssp} does not divide iter_max={self.iter_max}",
                )
            )
        if self.init_mode is InitMode.IMAGE and not self.image_path:
            found.append((ConfigIssue.MISSING_IMAGE, "image mode needs an image path"))
        if self.backend not in Backend.names():
            found.append(
                (
                    ConfigIssue.INVALID_BACKEND,
                    f"unknown backend '{self.backend}'",
                )
            )
        if self.tile_rows < 1 or self.tile_cols < 1 or self.threads < 0:
            found.append(
                (
                    ConfigIssue.INVALID_BACKEND,
                    f"tile {self.tile_rows}x{self.tile_cols} or threads={self.threads}"
                    " out of range",
                )
            )
        return found


def validate_config(config: RunConfig, gene: Gene | None = None) -> RunConfig:
    """
    Return ``config`` unchanged if it (and ``gene``, if given) satisfies every
    invariant. Otherwise raise a :py:class:`ConfigError` listing every violation.
    """
    issues = config.issues()
    if gene is not None:
        issues += gene.issues()
    if issues:
        raise ConfigError(issues)
    return config
