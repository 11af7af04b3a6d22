"""Parameter-plane sweeps and heuristic regime classification."""

from __future__ import annotations
from collections.abc import Mapping, Sequence
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, replace
from enum import Enum
import logging
import os
import numpy as np
import numpy.typing as npt
import pandas as pd
from rdcnn._config import InitMode, RunConfig
from rdcnn._engine import RunResult, run
from rdcnn._errors import BlowUpError
from rdcnn._gene import GENE_FIELDS, Gene
from rdcnn._get_filename import cell_filename
from rdcnn._imagery import render_panel, save_frame
from rdcnn._initializer import initial_state
from rdcnn._state import GridState, SnapshotBuffer, checksum

_logger = logging.getLogger(__name__)

LABELS_COLUMNS = (
    "x_value",
    "y_value",
    "label",
    "final_range",
    "final_active_fraction",
    "checksum",
)
"""Columns of ``labels.csv``."""


class Regime(str, Enum):
    """Qualitative outcome of a run."""

    HOMOGENEOUS = "Homogeneous"
    PATTERNED = "Patterned"
    GROWING = "Growing"
    BLOW_UP = "BlowUp"


@dataclass(frozen=True)
class ClassifierThresholds:
    """Tunable thresholds of :py:func:`classify_outcome`."""

    homogeneity: float = 0.01
    """Final range below this fraction of the largest observed range is homogeneous."""
    homogeneity_floor: float = 0.01
    """Absolute floor of the homogeneity threshold."""
    activity: float = 0.1
    """
    Cells off the median by this fraction of the final range are active. The cutoff
    never drops below ``homogeneity_floor``.
    """
    growth: float = 10.0
    """Required ratio of final to initial active fraction for growth."""
    dip: float = 0.1
    """Allowed relative dip of the active fraction between snapshots."""


@dataclass(frozen=True)
class RegimeLabel:
    """A regime together with the statistics it was decided from."""

    regime: Regime
    """Decided regime."""
    final_range: float = float("nan")
    """``max - min`` of the final u frame."""
    active_fractions: tuple[float, ...] = ()
    """Fraction of active cells in each frame."""

    @property
    def final_active_fraction(self) -> float:
        """Active fraction of the final frame (NaN after a blow-up)."""
        return self.active_fractions[-1] if self.active_fractions else float("nan")


def growth_curve(snapshots: SnapshotBuffer, activity_threshold: float) -> list[int]:
    """
    Number of cells in each u frame that deviate from that frame's spatial median by
    more than ``activity_threshold``.
    """
    counts = []
    for frame in snapshots.frames_u:
        deviation = np.abs(frame.astype(np.float64) - np.median(frame))
        counts.append(int(np.count_nonzero(deviation > activity_threshold)))
    return counts


def _grows(fractions: Sequence[float], thresholds: ClassifierThresholds) -> bool:
    peak = fractions[0]
    for fraction in fractions[1:]:
        if fraction < (1 - thresholds.dip) * peak:
            return False
        peak = max(peak, fraction)
    return fractions[-1] > 0 and fractions[-1] >= thresholds.growth * fractions[0]


def classify_outcome(
    snapshots: SnapshotBuffer, thresholds: ClassifierThresholds | None = None
) -> RegimeLabel:
    """
    Classify a completed run from its snapshots.

    - Homogeneous: the final u range is below ``homogeneity`` times the largest range
      seen in any frame (but at least ``homogeneity_floor``).
    - Growing: the active fraction rises across the snapshots (dips of up to ``dip``
      allowed) and ends at least ``growth`` times its initial value. Cells are active
      when they deviate from the median by ``activity`` times the final range, and by
      at least ``homogeneity_floor``.
    - Patterned: anything else.
    """
    thresholds = thresholds if thresholds is not None else ClassifierThresholds()
    ranges = snapshots.ranges()
    final_range = ranges[-1]
    limit = max(thresholds.homogeneity * max(ranges), thresholds.homogeneity_floor)
    cells = snapshots.frames_u[0].size
    activity = max(thresholds.activity * final_range, thresholds.homogeneity_floor)
    counts = growth_curve(snapshots, activity)
    fractions = tuple(count / cells for count in counts)
    if final_range < limit:
        regime = Regime.HOMOGENEOUS
    elif _grows(fractions, thresholds):
        regime = Regime.GROWING
    else:
        regime = Regime.PATTERNED
    return RegimeLabel(regime, final_range, fractions)


@dataclass(frozen=True)
class SweepAxis:
    """A gene parameter and the ordered values it takes along one sweep axis."""

    param: str
    values: tuple[float, ...]

    @classmethod
    def parse(cls, text: str) -> SweepAxis:
        """Parse ``"name:v1,v2,..."``, e.g. ``"du:0.3,0.5,0.7"``."""
        name, sep, values = text.partition(":")
        if not sep or not values.strip():
            raise ValueError(f"sweep axis '{text}' is not of the form name:v1,v2,...")
        return cls(name.strip().lower(), tuple(float(v) for v in values.split(",")))


@dataclass(frozen=True)
class SweepSpec:
    """
    A two-parameter sweep. Every cell runs ``config`` with ``gene`` modified at the
    cell's (x, y) values. With ``per_cell_seed`` the cell at row ``r``, column ``c``
    uses seed ``config.seed + r * len(x.values) + c``; otherwise all cells share the
    configured seed.
    """

    x: SweepAxis
    y: SweepAxis
    gene: Gene = field(default_factory=Gene)
    config: RunConfig = field(default_factory=RunConfig)
    keep_snapshots: bool = False
    """Keep every snapshot buffer in the result, not only the final frames."""
    per_cell_seed: bool = False
    init_override: Mapping[int, InitMode] = field(default_factory=dict)
    """Initial state mode of particular columns, overriding ``config.init_mode``."""

    def issues(self) -> list[str]:
        """Return every problem with this sweep (empty if valid)."""
        found = []
        if self.x.param == self.y.param:
            found.append(f"x and y both sweep '{self.x.param}'")
        for axis in (self.x, self.y):
            if axis.param not in GENE_FIELDS:
                found.append(f"'{axis.param}' is not a gene parameter")
            if not axis.values:
                found.append(f"axis '{axis.param}' has no values")
        return found

    def validate(self) -> SweepSpec:
        """Return this sweep, or raise ``ValueError`` listing every problem."""
        found = self.issues()
        if found:
            raise ValueError("; ".join(found))
        return self

    def cell(self, row: int, col: int) -> tuple[RunConfig, Gene]:
        """Configuration and gene of the cell at (row, col)."""
        gene = self.gene.replace(
            **{self.x.param: self.x.values[col], self.y.param: self.y.values[row]}
        )
        config = self.config
        if self.per_cell_seed:
            config = replace(config, seed=config.seed + row * len(self.x.values) + col)
        if col in self.init_override:
            config = replace(config, init_mode=self.init_override[col])
        return config, gene


@dataclass(frozen=True)
class SweepCell:
    """Outcome of one sweep cell."""

    x_value: float
    y_value: float
    label: RegimeLabel
    final: GridState | None
    """Final state, or None if the run blew up."""
    snapshots: SnapshotBuffer | None = None
    blow_up_iteration: int | None = None

    @property
    def checksum(self) -> str:
        """Checksum of the final state (empty after a blow-up)."""
        return checksum(self.final) if self.final is not None else ""


@dataclass
class SweepResult:
    """Matrix of sweep cells; ``cells[r][c]`` is at ``(y.values[r], x.values[c])``."""

    spec: SweepSpec
    cells: list[list[SweepCell]]

    def labels(self) -> list[list[Regime]]:
        """Regime of every cell."""
        return [[cell.label.regime for cell in row] for row in self.cells]

    def labels_frame(self) -> pd.DataFrame:
        """One row per cell with the ``labels.csv`` columns."""
        rows = [
            {
                "x_value": cell.x_value,
                "y_value": cell.y_value,
                "label": cell.label.regime.value,
                "final_range": cell.label.final_range,
                "final_active_fraction": cell.label.final_active_fraction,
                "checksum": cell.checksum,
            }
            for row in self.cells
            for cell in row
        ]
        return pd.DataFrame(rows, columns=list(LABELS_COLUMNS))

    def write(self, directory: str) -> None:
        """Write ``panel.png``, ``labels.csv`` and a ``cell_<x>_<y>.pgm`` per cell."""
        frames: list[list[npt.NDArray[np.floating] | None]] = []
        for row in self.cells:
            frames.append([])
            for cell in row:
                if cell.final is None:
                    frames[-1].append(None)
                    continue
                frames[-1].append(cell.final.u)
                save_frame(
                    cell.final.u,
                    os.path.join(directory, cell_filename(cell.x_value, cell.y_value)),
                )
        render_panel(
            frames,
            [f"{self.spec.x.param}={v:g}" for v in self.spec.x.values],
            [f"{self.spec.y.param}={v:g}" for v in self.spec.y.values],
            os.path.join(directory, "panel.png"),
        )
        self.labels_frame().to_csv(
            os.path.join(directory, "labels.csv"), index=False, lineterminator="\n"
        )


# pylint: disable-next=too-many-arguments
def _simulate(
    config: RunConfig,
    gene: Gene,
    x_value: float,
    y_value: float,
    thresholds: ClassifierThresholds,
    keep_snapshots: bool,
) -> SweepCell:
    config, initial = initial_state(config, gene)
    try:
        result: RunResult = run(config, gene, initial)
    except BlowUpError as exc:
        _logger.info(
            "cell (%g, %g) blew up at iteration %d", x_value, y_value, exc.iteration
        )
        return SweepCell(
            x_value, y_value, RegimeLabel(Regime.BLOW_UP), None, None, exc.iteration
        )
    label = classify_outcome(result.snapshots, thresholds)
    _logger.info("cell (%g, %g): %s", x_value, y_value, label.regime.value)
    return SweepCell(
        x_value,
        y_value,
        label,
        result.final,
        result.snapshots if keep_snapshots else None,
    )


def sweep_grid(
    spec: SweepSpec,
    thresholds: ClassifierThresholds | None = None,
    *,
    concurrent: bool = False,
    max_workers: int | None = None,
) -> SweepResult:
    """
    Run one independent simulation per (y, x) cell of ``spec`` and classify each.
    Blow-ups are recorded per cell rather than raised.

    With ``concurrent`` the cells run on a thread pool. This cannot be combined with the
    parallel backend, whose thread pool is not re-entrant.
    """
    spec.validate()
    thresholds = thresholds if thresholds is not None else ClassifierThresholds()
    if concurrent and spec.config.backend == "parallel":
        raise ValueError("concurrent sweeps cannot use the parallel backend")
    width, height = len(spec.x.values), len(spec.y.values)

    def simulate(position: tuple[int, int]) -> SweepCell:
        row, col = position
        config, gene = spec.cell(row, col)
        return _simulate(
            config,
            gene,
            spec.x.values[col],
            spec.y.values[row],
            thresholds,
            spec.keep_snapshots,
        )

    positions = [(r, c) for r in range(height) for c in range(width)]
    if concurrent:
        with ThreadPoolExecutor(max_workers=max_workers) as pool:
            flat = list(pool.map(simulate, positions))
    else:
        flat = [simulate(position) for position in positions]
    cells = [flat[r * width : (r + 1) * width] for r in range(height)]
    return SweepResult(spec, cells)


def replicate_seeds(
    config: RunConfig,
    gene: Gene,
    seeds: Sequence[int],
    thresholds: ClassifierThresholds | None = None,
) -> list[SweepCell]:
    """
    Run the same gene from several random initial states, one per seed. Each returned
    cell has its seed as ``x_value`` and ``0`` as ``y_value``.
    """
    thresholds = thresholds if thresholds is not None else ClassifierThresholds()
    return [
        _simulate(replace(config, seed=seed), gene, seed, 0, thresholds, False)
        for seed in seeds
    ]


def edge_sweep_spec(
    image_path: str,
    a_values: Sequence[float] = (-0.5, -0.3, -0.1, 0.1),
    b_values: Sequence[float] = (0.9, 1.1, 1.3, 1.5, 1.7),
    *,
    iter_max: int = 200,
    img_size: int | None = None,
) -> SweepSpec:
    """
    (a, b) sweep over an image-mode initial state, for exploring image-processing
    behaviors such as edge extraction.
    """
    config = RunConfig(
        init_mode=InitMode.IMAGE,
        image_path=image_path,
        img_size=img_size,
        iter_max=iter_max,
        nssp=1,
    )
    return SweepSpec(
        SweepAxis("a", tuple(a_values)), SweepAxis("b", tuple(b_values)), config=config
    )
