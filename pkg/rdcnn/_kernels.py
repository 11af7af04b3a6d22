"""
Time-stepping kernels over a toroidal lattice.

Every kernel writes the next state of both layers into separate output arrays (Jacobi
update) and returns the number of cells whose new value is not finite. The loop kernels
evaluate, for every cell, the Laplacian ``right + left + down + up - 4 * center``
followed by the model's single-cell update, in that fixed order.
"""

from __future__ import annotations
from typing import Any, Callable, NamedTuple
from functools import lru_cache
import math
import numpy as np
import numpy.typing as npt
from numba import njit, prange
from rdcnn._model import CellModel, FitzHughNagumo, compiled_cell_update

StepKernel = Callable[..., int]


class LoopKernels(NamedTuple):
    """Compiled kernels for one (cell model, dtype) pair."""

    laplacian: Callable[[Any, int, int], Any]
    reference: StepKernel
    blocked: StepKernel
    parallel: StepKernel


@lru_cache(maxsize=None)
def neighbor_table(n: int) -> tuple[npt.NDArray[np.intp], npt.NDArray[np.intp]]:
    """Cyclic ``(previous, next)`` index tables for an axis of length ``n``."""
    index = np.arange(n, dtype=np.intp)
    return np.roll(index, 1), np.roll(index, -1)


@lru_cache(maxsize=None)
def loop_kernels(  # pylint: disable=too-many-locals
    model_type: type[CellModel], dtype: np.dtype[np.floating]
) -> LoopKernels:
    """Build the Numba loop kernels for a cell model class and dtype."""
    four = dtype.type(4)
    update = compiled_cell_update(model_type, dtype)

    # pylint: disable-next=too-many-arguments
    @njit(nogil=True)
    def stencil(
        layer: Any, i: int, j: int, up: int, down: int, left: int, right: int
    ) -> Any:
        return (
            layer[i, right]
            + layer[i, left]
            + layer[down, j]
            + layer[up, j]
            - four * layer[i, j]
        )

    @njit(nogil=True)
    def laplacian(layer: Any, i: int, j: int) -> Any:
        nn, nm = layer.shape
        up = i - 1
        if i == 0:
            up = nn - 1
        down = i + 1
        if i == nn - 1:
            down = 0
        left = j - 1
        if j == 0:
            left = nm - 1
        right = j + 1
        if j == nm - 1:
            right = 0
        return stencil(layer, i, j, up, down, left, right)

    @njit(nogil=True)
    def reference(u: Any, v: Any, u_new: Any, v_new: Any, pars: Any) -> int:
        nn, nm = u.shape
        bad = 0
        for i in range(nn):
            for j in range(nm):
                new_u, new_v = update(
                    u[i, j], v[i, j], laplacian(u, i, j), laplacian(v, i, j), pars
                )
                u_new[i, j] = new_u
                v_new[i, j] = new_v
                if not (math.isfinite(new_u) and math.isfinite(new_v)):
                    bad += 1
        return bad

    # pylint: disable-next=too-many-arguments
    @njit(nogil=True)
    def rows(
        u: Any,
        v: Any,
        u_new: Any,
        v_new: Any,
        pars: Any,
        ups: Any,
        downs: Any,
        lefts: Any,
        rights: Any,
        i0: int,
        i1: int,
        j0: int,
        j1: int,
    ) -> int:
        bad = 0
        for i in range(i0, i1):
            up = ups[i]
            down = downs[i]
            for j in range(j0, j1):
                left = lefts[j]
                right = rights[j]
                new_u, new_v = update(
                    u[i, j],
                    v[i, j],
                    stencil(u, i, j, up, down, left, right),
                    stencil(v, i, j, up, down, left, right),
                    pars,
                )
                u_new[i, j] = new_u
                v_new[i, j] = new_v
                if not (math.isfinite(new_u) and math.isfinite(new_v)):
                    bad += 1
        return bad

    # pylint: disable-next=too-many-arguments
    @njit(nogil=True)
    def blocked(
        u: Any,
        v: Any,
        u_new: Any,
        v_new: Any,
        pars: Any,
        ups: Any,
        downs: Any,
        lefts: Any,
        rights: Any,
        tile_rows: int,
        tile_cols: int,
    ) -> int:
        nn, nm = u.shape
        bad = 0
        for i0 in range(0, nn, tile_rows):
            i1 = min(i0 + tile_rows, nn)
            for j0 in range(0, nm, tile_cols):
                j1 = min(j0 + tile_cols, nm)
                bad += rows(
                    u, v, u_new, v_new, pars, ups, downs, lefts, rights, i0, i1, j0, j1
                )
        return bad

    # pylint: disable-next=too-many-arguments
    @njit(nogil=True, parallel=True)
    def parallel(
        u: Any,
        v: Any,
        u_new: Any,
        v_new: Any,
        pars: Any,
        ups: Any,
        downs: Any,
        lefts: Any,
        rights: Any,
        bands: int,
    ) -> int:
        nn, nm = u.shape
        band_rows = (nn + bands - 1) // bands
        bad = 0
        for band in prange(bands):
            i0 = min(band * band_rows, nn)
            i1 = min(i0 + band_rows, nn)
            bad += rows(
                u, v, u_new, v_new, pars, ups, downs, lefts, rights, i0, i1, 0, nm
            )
        return bad

    return LoopKernels(laplacian, reference, blocked, parallel)


@lru_cache(maxsize=None)
def shift_kernel(
    model_type: type[CellModel], dtype: np.dtype[np.floating]
) -> StepKernel:
    """
    Whole-array kernel built from cyclic shifts (``np.roll``). NumPy may group the
    arithmetic differently from the loop kernels, so results agree only within rounding.
    """
    four = dtype.type(4)
    f_u, f_v = model_type.reaction_functions(dtype)
    i_dt, i_du, i_dv = model_type.dt_index, model_type.du_index, model_type.dv_index

    def laplacian(layer: Any) -> Any:
        return (
            np.roll(layer, -1, 1)
            + np.roll(layer, 1, 1)
            + np.roll(layer, -1, 0)
            + np.roll(layer, 1, 0)
            - four * layer
        )

    def shift(u: Any, v: Any, u_new: Any, v_new: Any, pars: Any) -> int:
        with np.errstate(all="ignore"):
            np.add(
                u, pars[i_dt] * (f_u(u, v, pars) + pars[i_du] * laplacian(u)), out=u_new
            )
            np.add(
                v, pars[i_dt] * (f_v(u, v, pars) + pars[i_dv] * laplacian(v)), out=v_new
            )
        return int(np.count_nonzero(~np.isfinite(u_new) | ~np.isfinite(v_new)))

    return shift


def laplacian5(layer: npt.ArrayLike, i: int, j: int) -> float:
    """
    Five-point Laplacian of ``layer`` at ``(i, j)`` with cyclic wrap, evaluated by the
    same compiled function the loop kernels use.
    """
    x = np.asarray(layer)
    if x.dtype not in (np.float32, np.float64):
        x = x.astype(np.float64)
    kernels = loop_kernels(FitzHughNagumo, x.dtype)
    return float(kernels.laplacian(x, i, j))
