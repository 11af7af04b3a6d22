"""Double-buffered time stepping and the main run loop."""

from __future__ import annotations
from typing import NamedTuple
from collections.abc import Callable
import logging
import time
import warnings
import numpy as np
from rdcnn._backends import Backend
from rdcnn._config import RunConfig
from rdcnn._errors import BlowUpError, ScheduleError, StabilityWarning
from rdcnn._gene import Gene
from rdcnn._model import CellModel, FitzHughNagumo
from rdcnn._state import GridState, SnapshotBuffer

_logger = logging.getLogger(__name__)

STABILITY_LIMIT = 0.25
"""Advisory limit on ``dt * max(du, dv)`` for the explicit step."""

SnapshotCallback = Callable[[int, float], None]
"""Called as ``callback(iteration, elapsed_seconds)`` after each snapshot."""


class StepBuffers:
    """
    Front (current) and back (next) lattice states. Steps read the front and write the
    back; the two are then swapped, never copied.
    """

    def __init__(self, initial: GridState) -> None:
        self._front = initial.copy()
        self._back = GridState(np.empty_like(initial.u), np.empty_like(initial.v))

    @property
    def front(self) -> GridState:
        """Current state."""
        return self._front

    @property
    def back(self) -> GridState:
        """Scratch state that the next step writes."""
        return self._back

    def swap(self) -> None:
        """Exchange the front and back states."""
        self._front, self._back = self._back, self._front


class RunResult(NamedTuple):
    """Outcome of :py:func:`run`."""

    final: GridState
    """State after the last iteration."""
    snapshots: SnapshotBuffer
    """Initial state plus the scheduled snapshots."""
    seconds: float
    """Wall time of the iteration loop."""


def _model_for(gene: Gene | CellModel) -> CellModel:
    return gene if isinstance(gene, CellModel) else FitzHughNagumo(gene)


def step(buffers: StepBuffers, gene: Gene | CellModel, backend: Backend) -> int:
    """
    Advance ``buffers`` by one iteration with the given backend and swap them. Returns
    the number of cells whose new value is not finite (checked by :py:func:`run`).
    """
    model = _model_for(gene)
    front, back = buffers.front, buffers.back
    bound = backend.bind(type(model), front.u.dtype, front.shape)
    bad = bound(front.u, front.v, back.u, back.v, model.parameters(front.precision))
    buffers.swap()
    return bad


def check_stability(gene: Gene) -> None:
    """Warn with :py:class:`StabilityWarning` if the step may be unstable."""
    if gene.stability_number > STABILITY_LIMIT:
        warnings.warn(
            f"dt*max(du, dv) = {gene.stability_number:g} exceeds {STABILITY_LIMIT};"
            " the explicit step may be unstable",
            StabilityWarning,
            stacklevel=3,
        )


def run(
    config: RunConfig,
    gene: Gene | CellModel,
    initial: GridState,
    *,
    on_snapshot: SnapshotCallback | None = None,
) -> RunResult:
    """
    Run ``config.iter_max`` iterations from ``initial``.

    A frame is captured every ``iter_max // nssp`` iterations, after the initial frame.
    The returned time covers the iteration loop only: kernel compilation, snapshot
    capture and ``on_snapshot`` are excluded, and the callback receives the loop time
    so far. Raises :py:class:`BlowUpError` at the first iteration that produces a
    non-finite value.
    """
    if config.nssp < 1 or config.iter_max % config.nssp != 0:
        raise ScheduleError(
            f"nssp={config.nssp} does not divide iter_max={config.iter_max}"
        )
    if initial.shape != config.shape:
        raise ValueError(
            f"initial state shape {initial.shape} does not match configured lattice"
            f" {config.shape}"
        )
    if initial.precision is not config.precision:
        raise TypeError(
            f"initial state is {initial.precision.value} precision but the run is"
            f" configured for {config.precision.value}"
        )
    model = _model_for(gene)
    if isinstance(model, FitzHughNagumo):
        check_stability(model.gene)
    backend = config.make_backend()
    bound = backend.bind(type(model), initial.u.dtype, initial.shape)
    pars = model.parameters(config.precision)
    snapshots = SnapshotBuffer.for_schedule(
        initial.shape, config.iter_max, config.nssp, initial.u.dtype
    )
    buffers = StepBuffers(initial)
    snapshots.capture(buffers.front)
    test_mod = config.test_mod
    _logger.debug(
        "running %d iterations on %dx%d with %s",
        config.iter_max,
        *initial.shape,
        backend.label,
    )
    # Compile outside the timed loop; the back buffer is scratch.
    bound(initial.u, initial.v, buffers.back.u, buffers.back.v, pars)
    seconds = 0.0
    timer = time.perf_counter()
    for iteration in range(1, config.iter_max + 1):
        front, back = buffers.front, buffers.back
        bad = bound(front.u, front.v, back.u, back.v, pars)
        buffers.swap()
        if bad:
            _logger.debug("%d non-finite cells at iteration %d", bad, iteration)
            raise BlowUpError(iteration)
        if iteration % test_mod == 0:
            seconds += time.perf_counter() - timer
            snapshots.capture(buffers.front)
            if on_snapshot is not None:
                on_snapshot(iteration, seconds)
            timer = time.perf_counter()
    seconds += time.perf_counter() - timer
    return RunResult(buffers.front, snapshots, seconds)
