"""Lattice state, snapshot buffer, and the reproducibility checksum."""

from __future__ import annotations
from collections.abc import Sequence
from dataclasses import dataclass
from enum import Enum
import hashlib
import numpy as np
import numpy.typing as npt
import xarray as xr

FloatArray = npt.NDArray[np.floating]


class Precision(str, Enum):
    """Floating-point precision of a run."""

    SINGLE = "single"
    DOUBLE = "double"

    @property
    def dtype(self) -> np.dtype[np.floating]:
        """NumPy dtype for this precision."""
        return np.dtype(np.float32 if self is Precision.SINGLE else np.float64)

    @classmethod
    def of(cls, dtype: npt.DTypeLike) -> Precision:
        """Precision corresponding to a NumPy dtype."""
        dtype = np.dtype(dtype)
        if dtype == np.float32:
            return cls.SINGLE
        if dtype == np.float64:
            return cls.DOUBLE
        raise TypeError(f"'{dtype}' is not a supported lattice dtype")


@dataclass(frozen=True, eq=False)
class GridState:
    """
    The paired ``u`` (A) and ``v`` (B) layers of a toroidal lattice at one time step.

    Both layers are C-contiguous arrays of the same shape and dtype.
    """

    u: FloatArray
    """Excitation layer (array A)."""
    v: FloatArray
    """Recovery layer (array B)."""

    def __post_init__(self) -> None:
        if self.u.ndim != 2 or self.u.shape != self.v.shape:
            raise ValueError(
                f"layer shapes {self.u.shape} and {self.v.shape} do not match"
            )
        if self.u.shape[0] < 3 or self.u.shape[1] < 3:
            raise ValueError(f"lattice {self.u.shape} is smaller than 3x3")
        if self.u.dtype != self.v.dtype:
            raise TypeError(f"layer dtypes {self.u.dtype} and {self.v.dtype} differ")
        Precision.of(self.u.dtype)

    @classmethod
    def from_arrays(
        cls, u: npt.ArrayLike, v: npt.ArrayLike, precision: Precision | str
    ) -> GridState:
        """Build a state from array-likes, converting to the given precision."""
        dtype = Precision(precision).dtype
        return cls(
            np.ascontiguousarray(u, dtype=dtype), np.ascontiguousarray(v, dtype=dtype)
        )

    @property
    def shape(self) -> tuple[int, int]:
        """Lattice dimensions (NN, NM)."""
        nn, nm = self.u.shape
        return int(nn), int(nm)

    @property
    def precision(self) -> Precision:
        """Precision tag of the layers."""
        return Precision.of(self.u.dtype)

    def is_finite(self) -> bool:
        """Whether every entry of both layers is finite."""
        return bool(np.isfinite(self.u).all() and np.isfinite(self.v).all())

    def copy(self) -> GridState:
        """Deep copy of this state."""
        return GridState(self.u.copy(), self.v.copy())

    def roll(self, rows: int, cols: int) -> GridState:
        """Cyclically shift both layers by the given number of rows and columns."""
        return GridState(
            np.ascontiguousarray(np.roll(self.u, (rows, cols), axis=(0, 1))),
            np.ascontiguousarray(np.roll(self.v, (rows, cols), axis=(0, 1))),
        )

    def value_range(self) -> float:
        """Dynamic range ``max - min`` of the u layer."""
        return float(self.u.max() - self.u.min())


def checksum(state: GridState) -> str:
    """
    Return a 64-bit digest (16 hex digits) of the raw bit patterns of ``u`` then ``v``
    in row-major order. Equal digests mean bit-identical states.
    """
    digest = hashlib.blake2b(digest_size=8)
    digest.update(f"{state.u.dtype.str}{state.shape}".encode())
    digest.update(np.ascontiguousarray(state.u).tobytes())
    digest.update(np.ascontiguousarray(state.v).tobytes())
    return digest.hexdigest()


class SnapshotBuffer:
    """
    Stored frames of a run: the initial state plus ``nssp`` evenly spaced snapshots.
    Frame ``k`` holds the state after ``iteration_labels[k]`` iterations.
    """

    def __init__(
        self, shape: tuple[int, int], labels: Sequence[int], dtype: npt.DTypeLike
    ) -> None:
        labels = [int(label) for label in labels]
        if not labels or labels[0] != 0:
            raise ValueError("snapshot labels must start at iteration 0")
        if any(b <= a for a, b in zip(labels, labels[1:])):
            raise ValueError(f"snapshot labels {labels} are not strictly increasing")
        self._labels = labels
        self.frames_u: FloatArray = np.zeros((len(labels), *shape), dtype=dtype)
        self.frames_v: FloatArray = np.zeros((len(labels), *shape), dtype=dtype)
        self._filled = 0

    @classmethod
    def for_schedule(
        cls, shape: tuple[int, int], iter_max: int, nssp: int, dtype: npt.DTypeLike
    ) -> SnapshotBuffer:
        """Empty buffer for ``nssp`` snapshots spread evenly over ``iter_max``."""
        test_mod = iter_max // nssp
        return cls(shape, [k * test_mod for k in range(nssp + 1)], dtype)

    @property
    def iteration_labels(self) -> list[int]:
        """Iteration index of each frame; the first is 0."""
        return list(self._labels)

    @property
    def filled(self) -> int:
        """Number of frames captured so far."""
        return self._filled

    @property
    def is_full(self) -> bool:
        """Whether every frame has been captured."""
        return self._filled == len(self._labels)

    def __len__(self) -> int:
        return len(self._labels)

    def capture(self, state: GridState) -> None:
        """Copy ``state`` into the next free frame."""
        if self.is_full:
            raise IndexError("snapshot buffer is full")
        self.frames_u[self._filled] = state.u
        self.frames_v[self._filled] = state.v
        self._filled += 1

    def frame(self, index: int) -> GridState:
        """State stored in the given frame (a copy)."""
        return GridState(self.frames_u[index].copy(), self.frames_v[index].copy())

    def ranges(self) -> list[float]:
        """Dynamic range ``max - min`` of the u layer in each frame."""
        return [float(f.max() - f.min()) for f in self.frames_u]

    def to_dataset(self) -> xr.Dataset:
        """
        Xarray ``Dataset`` with data variables ``u`` and ``v`` over the dimensions
        (iteration, row, col).
        """
        dims = ("iteration", "row", "col")
        return xr.Dataset(
            data_vars={
                "u": xr.Variable(dims, self.frames_u, {"long_name": "Layer A"}),
                "v": xr.Variable(dims, self.frames_v, {"long_name": "Layer B"}),
            },
            coords={
                "iteration": xr.Variable(
                    "iteration", np.array(self._labels), {"long_name": "Iteration"}
                )
            },
        )

    @classmethod
    def from_dataset(cls, dataset: xr.Dataset) -> SnapshotBuffer:
        """Rebuild a full buffer from :py:meth:`to_dataset` output."""
        frames_u = dataset["u"].values
        buffer = cls(
            frames_u.shape[1:],
            [int(i) for i in dataset["iteration"].values],
            frames_u.dtype,
        )
        buffer.frames_u[:] = frames_u
        buffer.frames_v[:] = dataset["v"].values
        buffer._filled = len(buffer)  # pylint: disable=protected-access
        return buffer
