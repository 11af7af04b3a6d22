"""
Output logs that hold run data plus metadata, and can save themselves to and load
themselves from a file.
"""

from __future__ import annotations
from typing import TypeVar, Generic, Any
from abc import ABC, abstractmethod
from dataclasses import dataclass, fields
import os
from datetime import datetime
import json
import pprint
from textwrap import indent
from typing_extensions import Self
import xarray as xr
from rdcnn._get_filename import get_filename
from rdcnn._state import SnapshotBuffer

_T = TypeVar("_T")

_METADATA_PREFIX = "__metadata_"


@dataclass
class LogMetadata:
    """Directory, creation timestamp, and description of a log."""

    directory: str
    """Directory this log was created in."""
    timestamp: datetime
    """When the log was created."""
    description: str
    """Log description, used as the file stem."""

    def __repr__(self) -> str:
        lines = [f"{f.name:<15}{getattr(self, f.name)}" for f in fields(self)]
        return "\n".join(lines)

    def to_dict(self, prefix: str = "") -> dict[str, str]:
        """Metadata as strings, with keys prefixed by ``prefix``."""
        return {
            f"{prefix}directory": self.directory,
            f"{prefix}timestamp": self.timestamp.isoformat(),
            f"{prefix}description": self.description,
        }

    @classmethod
    def from_dict(cls, data: dict[Any, Any], prefix: str = "") -> LogMetadata:
        """Pop prefixed metadata keys out of ``data`` and build the metadata."""
        try:
            return cls(
                directory=str(data.pop(f"{prefix}directory")),
                timestamp=datetime.fromisoformat(data.pop(f"{prefix}timestamp")),
                description=str(data.pop(f"{prefix}description")),
            )
        except KeyError as exc:
            raise ValueError(f"log metadata is missing {exc}") from exc


class _Log(ABC, Generic[_T]):
    """Abstract base class for logs."""

    ext: str
    """File extension of this log type."""

    def __init_subclass__(cls, /, ext: str, *args: Any, **kwargs: Any) -> None:
        super().__init_subclass__(*args, **kwargs)
        cls.ext = ext

    def __init__(self, metadata: LogMetadata, data: _T, path: str | None = None):
        self._metadata = metadata
        self._data = data
        self._path = path

    @property
    def metadata(self) -> LogMetadata:
        """Metadata associated with this log."""
        return self._metadata

    @property
    def data(self) -> _T:
        """Data stored in this log."""
        return self._data

    @property
    def path(self) -> str:
        """Path to the log file, chosen on first use so as not to clash."""
        if self._path is None:
            directory = self._metadata.directory
            self._path = os.path.join(
                directory,
                get_filename(directory, self._metadata.description, ext=self.ext),
            )
        return self._path

    @abstractmethod
    def _save(self, path: str) -> None:  # pragma: no cover
        ...

    def save(self) -> None:
        """Save the log to its file, which must not already exist."""
        path = self.path
        if os.path.exists(path):
            raise FileExistsError(f"log '{path}' already exists")
        self._save(path)

    @classmethod
    @abstractmethod
    def load(cls, path: str) -> Self:
        """Load from the log file at the given path."""

    def _data_repr(self) -> str:
        return repr(self.data)

    def __repr__(self) -> str:
        return (
            f"<{type(self).__name__} '{self.path}'>\n"
            f"Data:\n{indent(self._data_repr(), '  ')}\n"
            f"Metadata:\n{indent(repr(self.metadata), '  ')}"
        )


class SnapshotLog(_Log[SnapshotBuffer], ext=".nc"):
    """
    Log holding the snapshot frames of a run, saved as a NetCDF (".nc") file with
    variables ``u`` and ``v`` over (iteration, row, col). ``attrs`` (for example the
    gene and run configuration) are stored as global attributes.
    """

    def __init__(
        self,
        metadata: LogMetadata,
        snapshots: SnapshotBuffer,
        path: str | None = None,
        attrs: dict[str, Any] | None = None,
    ):
        super().__init__(metadata, snapshots, path)
        self._attrs = dict(attrs) if attrs is not None else {}

    # Allows return type to show properly in Sphinx autodoc
    @property
    def data(self) -> SnapshotBuffer:
        return super().data

    @property
    def attrs(self) -> dict[str, Any]:
        """Attributes saved alongside the frames."""
        return self._attrs

    def _data_repr(self) -> str:
        shape = "x".join(str(n) for n in self.data.frames_u.shape[1:])
        return f"{len(self.data)} frames of {shape} at {self.data.iteration_labels}"

    def _save(self, path: str) -> None:
        dataset = self.data.to_dataset().assign_attrs(
            {**self._attrs, **self.metadata.to_dict(_METADATA_PREFIX)}
        )
        dataset.to_netcdf(path)

    @classmethod
    def load(cls, path: str) -> SnapshotLog:
        dataset = xr.load_dataset(path)
        attrs = dict(dataset.attrs)
        metadata = LogMetadata.from_dict(attrs, _METADATA_PREFIX)
        return SnapshotLog(metadata, SnapshotBuffer.from_dataset(dataset), path, attrs)


class DictLog(_Log[dict[str, Any]], ext=".json"):
    """Log containing a dictionary which can be saved to a JSON (".json") file."""

    def __init__(
        self, metadata: LogMetadata, data_dict: dict[str, Any], path: str | None = None
    ):
        if not isinstance(data_dict, dict):
            raise TypeError(
                f"'{type(data_dict).__name__}' data given for dict log"
                f" '{metadata.description}'"
            )
        super().__init__(metadata, data_dict, path)

    # Allows return type to show properly in Sphinx autodoc
    @property
    def data(self) -> dict[str, Any]:
        return super().data

    def _data_repr(self) -> str:
        return pprint.pformat(self.data, sort_dicts=False, compact=True)

    def _save(self, path: str) -> None:
        with open(path, "w", encoding="utf-8") as f:
            json.dump({**self.data, "__metadata": self.metadata.to_dict()}, f, indent=2)

    @classmethod
    def load(cls, path: str) -> DictLog:
        with open(path, "r", encoding="utf-8") as f:
            data_dict = json.load(f)
        if not isinstance(data_dict, dict):
            raise TypeError(f"'{path}' does not contain a dictionary")
        metadata = LogMetadata.from_dict(data_dict.pop("__metadata", {}))
        return DictLog(metadata, data_dict, path)
