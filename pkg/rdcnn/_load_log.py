"""Function to load output logs from files."""

from __future__ import annotations
import os
from rdcnn._logs import DictLog, SnapshotLog


def load_log(path: str) -> SnapshotLog | DictLog:
    """
    Load the log at the given path.

    A ".nc" (NetCDF) file loads as a :py:class:`SnapshotLog`, whose data is the
    :py:class:`~rdcnn.SnapshotBuffer` of a run. A ".json" file loads as a
    :py:class:`DictLog`.
    """
    ext = os.path.splitext(path)[1].lower()
    log_type: type[SnapshotLog | DictLog]
    if ext == SnapshotLog.ext:
        log_type = SnapshotLog
    elif ext == DictLog.ext:
        log_type = DictLog
    else:
        raise ValueError(f"'{ext}' file extension is not supported")
    return log_type.load(path)
