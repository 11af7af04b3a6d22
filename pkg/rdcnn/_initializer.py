"""
Initial lattice states.

Random values come from NumPy's PCG64 generator seeded with the run seed, drawn uniform
on [0, 1) at the run precision: the whole u block first, then the whole v block, each in
row-major order.
"""

from __future__ import annotations
import numpy as np
import numpy.typing as npt
from rdcnn._config import InitMode, RunConfig
from rdcnn._errors import GridTooSmallError, ImageTooSmallError
from rdcnn._gene import Gene
from rdcnn._imagery import load_grayscale
from rdcnn._state import GridState, Precision

SQUARE_SIZE = 11
"""Side of the random square of the center-square mode."""


def seeded_rng(seed: int) -> np.random.Generator:
    """Random generator used for every initial state."""
    return np.random.Generator(np.random.PCG64(seed))


def _draw(
    rng: np.random.Generator, shape: tuple[int, int], precision: Precision
) -> npt.NDArray[np.floating]:
    return rng.random(shape, dtype=precision.dtype)


def init_full_random(
    nn: int, nm: int, seed: int, precision: Precision | str = Precision.SINGLE
) -> GridState:
    """Every cell of both layers drawn independently from [0, 1)."""
    if nn < 3 or nm < 3:
        raise GridTooSmallError(f"lattice {nn}x{nm} is smaller than 3x3")
    precision = Precision(precision)
    rng = seeded_rng(seed)
    u = _draw(rng, (nn, nm), precision)
    v = _draw(rng, (nn, nm), precision)
    return GridState(u, v)


def init_center_square(
    nn: int, nm: int, seed: int, precision: Precision | str = Precision.SINGLE
) -> GridState:
    """
    Zero lattice except for an 11x11 block of random values whose top-left corner is at
    ``((nn - 11) // 2, (nm - 11) // 2)``.
    """
    if nn < SQUARE_SIZE or nm < SQUARE_SIZE:
        raise GridTooSmallError(
            f"lattice {nn}x{nm} cannot hold a {SQUARE_SIZE}x{SQUARE_SIZE} square"
        )
    precision = Precision(precision)
    rng = seeded_rng(seed)
    square = (SQUARE_SIZE, SQUARE_SIZE)
    r0, c0 = (nn - SQUARE_SIZE) // 2, (nm - SQUARE_SIZE) // 2
    block = np.s_[r0 : r0 + SQUARE_SIZE, c0 : c0 + SQUARE_SIZE]
    u = np.zeros((nn, nm), dtype=precision.dtype)
    v = np.zeros((nn, nm), dtype=precision.dtype)
    u[block] = _draw(rng, square, precision)
    v[block] = _draw(rng, square, precision)
    return GridState(u, v)


def init_from_image(
    image: npt.ArrayLike, gene: Gene, precision: Precision | str = Precision.SINGLE
) -> GridState:
    """Both layers set to ``ka * image``; the lattice takes the image's dimensions."""
    x = np.asarray(image, dtype=np.float64)
    if x.ndim != 2 or x.shape[0] < 3 or x.shape[1] < 3:
        raise ImageTooSmallError(f"image of shape {x.shape} is smaller than 3x3")
    u = np.ascontiguousarray(gene.ka * x, dtype=Precision(precision).dtype)
    return GridState(u, u.copy())


def initial_state(config: RunConfig, gene: Gene) -> tuple[RunConfig, GridState]:
    """
    Build the initial state for ``config``. For image mode the configuration is
    returned with its lattice size replaced by the image size.
    """
    if config.init_mode is InitMode.IMAGE:
        if config.image_path is None:
            raise ValueError("image mode needs an image path")
        image = load_grayscale(config.image_path, config.img_size)
        state = init_from_image(image, gene, config.precision)
        return config.with_shape(*state.shape), state
    if config.init_mode is InitMode.FULL_RANDOM:
        state = init_full_random(config.nn, config.nm, config.seed, config.precision)
    else:
        state = init_center_square(config.nn, config.nm, config.seed, config.precision)
    return config, state
