"""Interchangeable CPU backends that advance a lattice by one iteration."""

from __future__ import annotations
from typing import Any, ClassVar
from collections.abc import Callable
from abc import ABC, abstractmethod
import numba
import numpy as np
from rdcnn._kernels import loop_kernels, neighbor_table, shift_kernel
from rdcnn._model import CellModel

BoundStep = Callable[[Any, Any, Any, Any, Any], int]
"""
A step bound to a model class, dtype, and lattice shape, called as
``step(u, v, u_new, v_new, pars)`` and returning the number of non-finite cells
written.
"""


class Backend(ABC):
    """
    Abstract base class for backends. Subclasses register under a name given in the
    class definition, e.g. ``class ReferenceBackend(Backend, key="reference")``.

    ``exact_order`` is True for backends that evaluate the canonical per-cell expression
    in the canonical order, so that their results are bit-identical to each other.
    """

    name: ClassVar[str]
    exact_order: ClassVar[bool]
    _registry: ClassVar[dict[str, type[Backend]]] = {}

    def __init_subclass__(
        cls, /, key: str, exact_order: bool = True, **kwargs: Any
    ) -> None:
        super().__init_subclass__(**kwargs)
        cls.name = key
        cls.exact_order = exact_order
        Backend._registry[key] = cls

    @classmethod
    def names(cls) -> list[str]:
        """Names of all registered backends."""
        return list(cls._registry)

    @classmethod
    def create(
        cls, name: str, *, tile_rows: int = 64, tile_cols: int = 64, threads: int = 0
    ) -> Backend:
        """
        Create the backend registered under ``name``. Tile dimensions only apply to the
        blocked backend and the thread hint only to the parallel backend.
        """
        if name not in cls._registry:
            raise ValueError(
                f"unknown backend '{name}' (expected one of {', '.join(cls.names())})"
            )
        backend_type = cls._registry[name]
        if backend_type is BlockedBackend:
            return BlockedBackend(tile_rows, tile_cols)
        if backend_type is ParallelBackend:
            return ParallelBackend(threads)
        return backend_type()

    @property
    def label(self) -> str:
        """Human-readable description, used in montages and benchmark tables."""
        return self.name

    @abstractmethod
    def bind(
        self,
        model_type: type[CellModel],
        dtype: np.dtype[np.floating],
        shape: tuple[int, int],
    ) -> BoundStep:
        """Return the step function for the given model class, dtype, and shape."""

    def __repr__(self) -> str:
        return f"<{type(self).__name__} '{self.label}'>"


class ReferenceBackend(Backend, key="reference"):
    """Plain nested loops; wrap-around neighbors are resolved by branches."""

    def bind(
        self,
        model_type: type[CellModel],
        dtype: np.dtype[np.floating],
        shape: tuple[int, int],
    ) -> BoundStep:
        return loop_kernels(model_type, dtype).reference


class ShiftBackend(Backend, key="shift", exact_order=False):
    """Whole-layer NumPy arithmetic on cyclically shifted copies."""

    def bind(
        self,
        model_type: type[CellModel],
        dtype: np.dtype[np.floating],
        shape: tuple[int, int],
    ) -> BoundStep:
        return shift_kernel(model_type, dtype)


class BlockedBackend(Backend, key="blocked"):
    """Loops over cache-sized tiles using precomputed neighbor index tables."""

    def __init__(self, tile_rows: int = 64, tile_cols: int = 64) -> None:
        if tile_rows < 1 or tile_cols < 1:
            raise ValueError(f"tile {tile_rows}x{tile_cols} must be at least 1x1")
        self.tile_rows = tile_rows
        self.tile_cols = tile_cols

    @property
    def label(self) -> str:
        return f"{self.name}({self.tile_rows}x{self.tile_cols})"

    def bind(
        self,
        model_type: type[CellModel],
        dtype: np.dtype[np.floating],
        shape: tuple[int, int],
    ) -> BoundStep:
        kernel = loop_kernels(model_type, dtype).blocked
        ups, downs = neighbor_table(shape[0])
        lefts, rights = neighbor_table(shape[1])
        tiles = (self.tile_rows, self.tile_cols)

        def step(u: Any, v: Any, u_new: Any, v_new: Any, pars: Any) -> int:
            return int(
                kernel(u, v, u_new, v_new, pars, ups, downs, lefts, rights, *tiles)
            )

        return step


class ParallelBackend(Backend, key="parallel"):
    """
    Multi-threaded loops. Rows are split into one contiguous band per thread; every
    iteration ends with a barrier. ``threads=0`` uses Numba's default thread count.
    """

    def __init__(self, threads: int = 0) -> None:
        if threads < 0:
            raise ValueError(f"thread count {threads} is negative")
        self.threads = threads

    @property
    def label(self) -> str:
        return f"{self.name}({self.thread_count} threads)"

    @property
    def thread_count(self) -> int:
        """Number of worker threads actually used."""
        if self.threads == 0:
            return int(numba.config.NUMBA_NUM_THREADS)
        return min(self.threads, int(numba.config.NUMBA_NUM_THREADS))

    def bind(
        self,
        model_type: type[CellModel],
        dtype: np.dtype[np.floating],
        shape: tuple[int, int],
    ) -> BoundStep:
        kernel = loop_kernels(model_type, dtype).parallel
        ups, downs = neighbor_table(shape[0])
        lefts, rights = neighbor_table(shape[1])
        threads = self.thread_count

        def step(u: Any, v: Any, u_new: Any, v_new: Any, pars: Any) -> int:
            numba.set_num_threads(threads)
            return int(
                kernel(u, v, u_new, v_new, pars, ups, downs, lefts, rights, threads)
            )

        return step
