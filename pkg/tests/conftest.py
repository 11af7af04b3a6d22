"""Defines global fixtures. Called automatically by Pytest before running tests."""

from __future__ import annotations
from typing import Any, cast
import os
from pathlib import Path
from datetime import datetime, timezone
import numpy as np
import pytest
from PIL import Image
from rdcnn import (
    Gene,
    GridState,
    InitMode,
    LogMetadata,
    Logger,
    Precision,
    RunConfig,
    SnapshotBuffer,
    SnapshotLog,
    DictLog,
    init_center_square,
)


@pytest.fixture(name="cd_tempdir")
def fixture_cd_tempdir(tmp_path: Path) -> None:
    """Change to a temporary directory."""
    os.chdir(tmp_path)


@pytest.fixture(name="timestamp")
def fixture_timestamp() -> datetime:
    """``datetime`` object to use as a timestamp."""
    return datetime(2023, 7, 28, 13, 12, 34, 567890, timezone.utc)


@pytest.fixture(name="timestamp_str")
def fixture_timestamp_str() -> str:
    """String representation of the timestamp."""
    return "2023-07-28 13:12:34.567890+00:00"


@pytest.fixture(name="timestamp_str_short")
def fixture_timestamp_str_short() -> str:
    """Shortened string representation of the timestamp."""
    return "23-07-28-1312"


@pytest.fixture(name="gene")
def fixture_gene() -> Gene:
    """Default gene."""
    return Gene()


@pytest.fixture(name="config")
def fixture_config() -> RunConfig:
    """Small, fast run configuration."""
    return RunConfig(
        init_mode=InitMode.CENTER_SQUARE,
        nn=32,
        nm=24,
        iter_max=20,
        nssp=4,
        seed=42,
        backend="reference",
    )


@pytest.fixture(name="precision", params=[Precision.SINGLE, Precision.DOUBLE])
def fixture_precision(request: pytest.FixtureRequest) -> Precision:
    """Run precision."""
    return cast(Precision, request.param)


@pytest.fixture(name="exact_backend", params=["reference", "blocked", "parallel"])
def fixture_exact_backend(request: pytest.FixtureRequest) -> str:
    """Name of a backend that evaluates cells in the canonical order."""
    return cast(str, request.param)


@pytest.fixture(name="state")
def fixture_state() -> GridState:
    """Center-square state in single precision."""
    return init_center_square(32, 24, 42, Precision.SINGLE)


@pytest.fixture(name="snapshots")
def fixture_snapshots() -> SnapshotBuffer:
    """Full snapshot buffer with three 4x5 frames."""
    buffer = SnapshotBuffer.for_schedule((4, 5), 10, 2, np.float32)
    for k in range(3):
        u = np.arange(20, dtype=np.float32).reshape(4, 5) * (k + 1)
        buffer.capture(GridState(u, -u))
    return buffer


@pytest.fixture(name="gray_image_path")
# pylint: disable-next=unused-argument
def fixture_gray_image_path(cd_tempdir: None) -> str:
    """Path to an 8-bit 6x8 grayscale PGM image with a horizontal ramp."""
    pixels = np.tile(np.arange(0, 240, 30, dtype=np.uint8), (6, 1))
    Image.fromarray(pixels).save("ramp.pgm")
    return "ramp.pgm"


@pytest.fixture(name="log_metadata")
def fixture_log_metadata(timestamp: datetime) -> LogMetadata:
    """LogMetadata object."""
    return LogMetadata(directory="dir", timestamp=timestamp, description="test")


@pytest.fixture(name="dict_data")
def fixture_dict_data() -> dict[str, Any]:
    """Dictionary data object."""
    return {"param1": 123, "param2": 456}


@pytest.fixture(name="log_type", params=["SnapshotLog", "DictLog"])
def fixture_log_type(request: pytest.FixtureRequest) -> type[SnapshotLog | DictLog]:
    """Type of the log."""
    return SnapshotLog if request.param == "SnapshotLog" else DictLog


@pytest.fixture(name="log")
def fixture_log(
    log_type: type[SnapshotLog | DictLog],
    log_metadata: LogMetadata,
    snapshots: SnapshotBuffer,
    dict_data: dict[str, Any],
) -> SnapshotLog | DictLog:
    """Log object of the given type."""
    if log_type is SnapshotLog:
        return SnapshotLog(log_metadata, snapshots)
    return DictLog(log_metadata, dict_data)


@pytest.fixture(name="root_logger")
# pylint: disable-next=unused-argument
def fixture_root_logger(cd_tempdir: None) -> Logger:
    """Root logger object."""
    return Logger("dir")


@pytest.fixture(name="sub_logger")
def fixture_sub_logger(root_logger: Logger) -> Logger:
    """Sub-logger object."""
    return root_logger.sub_logger("sub_logger", timestamp=False)


@pytest.fixture(name="sub_sub_logger")
def fixture_sub_sub_logger(sub_logger: Logger) -> Logger:
    """Sub-sub-logger object."""
    return sub_logger.sub_logger("sub_sub_logger")


@pytest.fixture(name="logger", params=["root_logger", "sub_logger", "sub_sub_logger"])
def fixture_logger(request: pytest.FixtureRequest) -> Logger:
    """Logger object."""
    return cast(Logger, request.getfixturevalue(request.param))
