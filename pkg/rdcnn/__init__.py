"""Reaction-diffusion cellular nonlinear network simulator with interchangeable CPU
backends, a benchmark harness, and parameter sweeps."""

from rdcnn._errors import (
    ConfigIssue,
    ConfigError,
    ScheduleError,
    BlowUpError,
    BenchBlowUpError,
    GridTooSmallError,
    ImageTooSmallError,
    DecodeError,
    UnsupportedFormatError,
    ZeroDurationError,
    StabilityWarning,
)
from rdcnn._gene import GENE_FIELDS, Gene, gene_to_vector, vector_to_gene
from rdcnn._state import Precision, GridState, SnapshotBuffer, checksum
from rdcnn._model import CellModel, FitzHughNagumo, reaction_u, reaction_v, cell_update
from rdcnn._backends import (
    Backend,
    ReferenceBackend,
    ShiftBackend,
    BlockedBackend,
    ParallelBackend,
)
from rdcnn._config import InitMode, RunConfig, validate_config
from rdcnn._manifest import (
    format_manifest,
    parse_manifest,
    write_manifest,
    read_manifest,
)
from rdcnn._kernels import laplacian5
from rdcnn._engine import StepBuffers, RunResult, step, run
from rdcnn._initializer import (
    init_full_random,
    init_center_square,
    init_from_image,
    initial_state,
)
from rdcnn._imagery import (
    Frame8,
    RunTiming,
    load_grayscale,
    normalize_frame,
    save_frame,
    render_montage,
    render_panel,
)
from rdcnn._bench import (
    BenchRecord,
    throughput,
    bench_suite,
    records_frame,
    emit_table,
)
from rdcnn._sweep import (
    Regime,
    ClassifierThresholds,
    RegimeLabel,
    SweepAxis,
    SweepSpec,
    SweepCell,
    SweepResult,
    growth_curve,
    classify_outcome,
    sweep_grid,
    replicate_seeds,
    edge_sweep_spec,
)
from rdcnn._logs import LogMetadata, SnapshotLog, DictLog
from rdcnn._logger import Logger
from rdcnn._load_log import load_log

__all__ = [
    "ConfigIssue",
    "ConfigError",
    "ScheduleError",
    "BlowUpError",
    "BenchBlowUpError",
    "GridTooSmallError",
    "ImageTooSmallError",
    "DecodeError",
    "UnsupportedFormatError",
    "ZeroDurationError",
    "StabilityWarning",
    "GENE_FIELDS",
    "Gene",
    "gene_to_vector",
    "vector_to_gene",
    "Precision",
    "GridState",
    "SnapshotBuffer",
    "checksum",
    "CellModel",
    "FitzHughNagumo",
    "reaction_u",
    "reaction_v",
    "cell_update",
    "Backend",
    "ReferenceBackend",
    "ShiftBackend",
    "BlockedBackend",
    "ParallelBackend",
    "InitMode",
    "RunConfig",
    "validate_config",
    "format_manifest",
    "parse_manifest",
    "write_manifest",
    "read_manifest",
    "StepBuffers",
    "RunResult",
    "laplacian5",
    "step",
    "run",
    "init_full_random",
    "init_center_square",
    "init_from_image",
    "initial_state",
    "Frame8",
    "RunTiming",
    "load_grayscale",
    "normalize_frame",
    "save_frame",
    "render_montage",
    "render_panel",
    "BenchRecord",
    "throughput",
    "bench_suite",
    "records_frame",
    "emit_table",
    "Regime",
    "ClassifierThresholds",
    "RegimeLabel",
    "SweepAxis",
    "SweepSpec",
    "SweepCell",
    "SweepResult",
    "growth_curve",
    "classify_outcome",
    "sweep_grid",
    "replicate_seeds",
    "edge_sweep_spec",
    "LogMetadata",
    "SnapshotLog",
    "DictLog",
    "Logger",
    "load_log",
]
