"""Tests for rdcnn._engine."""

from __future__ import annotations
from dataclasses import replace
import time
import warnings
import numpy as np
import numpy.testing
import pytest
from rdcnn import (
    Backend,
    BlowUpError,
    FitzHughNagumo,
    Gene,
    GridState,
    Precision,
    RunConfig,
    ScheduleError,
    StabilityWarning,
    StepBuffers,
    checksum,
    init_center_square,
    run,
    step,
)
from rdcnn._engine import check_stability


def test_step_buffers_swap(state: GridState) -> None:
    """Swapping exchanges the front and back states without copying."""
    buffers = StepBuffers(state)
    front, back = buffers.front, buffers.back
    assert checksum(front) == checksum(state)
    assert front.u is not state.u
    buffers.swap()
    assert buffers.front is back
    assert buffers.back is front


def test_step_matches_run(config: RunConfig, gene: Gene, state: GridState) -> None:
    """Stepping by hand gives the same state as a run."""
    buffers = StepBuffers(state)
    backend = Backend.create("reference")
    for _ in range(config.iter_max):
        assert step(buffers, gene, backend) == 0
    assert checksum(buffers.front) == checksum(run(config, gene, state).final)


def test_run_leaves_initial_state_unchanged(
    config: RunConfig, gene: Gene, state: GridState
) -> None:
    """A run never writes into the initial state."""
    before = checksum(state)
    run(config, gene, state)
    assert checksum(state) == before


def test_snapshot_schedule(gene: Gene) -> None:
    """Snapshots are captured every iter_max // nssp iterations after the start."""
    config = RunConfig(nn=16, nm=16, iter_max=200, nssp=5, backend="reference")
    initial = init_center_square(16, 16, 0)
    seen: list[int] = []
    result = run(
        config, gene, initial, on_snapshot=lambda iteration, _: seen.append(iteration)
    )
    assert result.snapshots.iteration_labels == [0, 40, 80, 120, 160, 200]
    assert result.snapshots.is_full
    assert seen == [40, 80, 120, 160, 200]
    assert checksum(result.snapshots.frame(0)) == checksum(initial)
    assert checksum(result.snapshots.frame(5)) == checksum(result.final)
    assert result.seconds > 0


def test_snapshot_not_dividing_fails(
    config: RunConfig, gene: Gene, state: GridState
) -> None:
    """Fails to run when nssp does not divide iter_max."""
    with pytest.raises(ScheduleError) as exc_info:
        run(replace(config, iter_max=10, nssp=3), gene, state)
    assert str(exc_info.value) == "nssp=3 does not divide iter_max=10"


def test_shape_mismatch_fails(config: RunConfig, gene: Gene, state: GridState) -> None:
    """Fails to run from a state of a different size than configured."""
    with pytest.raises(ValueError) as exc_info:
        run(config.with_shape(16, 16), gene, state)
    assert str(exc_info.value) == (
        "initial state shape (32, 24) does not match configured lattice (16, 16)"
    )


def test_precision_mismatch_fails(
    config: RunConfig, gene: Gene, state: GridState
) -> None:
    """Fails to run a single-precision state in a double-precision run."""
    with pytest.raises(TypeError) as exc_info:
        run(replace(config, precision=Precision.DOUBLE), gene, state)
    assert str(exc_info.value) == (
        "initial state is single precision but the run is configured for double"
    )


def test_identity_dynamics(config: RunConfig, gene: Gene, state: GridState) -> None:
    """With a zero step every frame equals the initial state."""
    result = run(config, gene.replace(dt=0.0), state)
    for k in range(len(result.snapshots)):
        assert checksum(result.snapshots.frame(k)) == checksum(state)


def test_blow_up(config: RunConfig, gene: Gene, state: GridState) -> None:
    """A huge step blows up at a finite iteration."""
    with pytest.warns(StabilityWarning):
        with pytest.raises(BlowUpError) as exc_info:
            run(replace(config, iter_max=100, nssp=1), gene.replace(dt=100.0), state)
    iteration = exc_info.value.iteration
    assert 1 <= iteration <= 100
    assert str(exc_info.value) == f"non-finite state at iteration {iteration}"


def test_check_stability(gene: Gene) -> None:
    """Only steps beyond the stability limit warn."""
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        check_stability(gene)
    with pytest.warns(StabilityWarning) as record:
        check_stability(gene.replace(dt=0.5))
    assert str(record[0].message) == (
        "dt*max(du, dv) = 0.5 exceeds 0.25; the explicit step may be unstable"
    )


def test_model_instead_of_gene(config: RunConfig, gene: Gene, state: GridState) -> None:
    """A cell model can be passed in place of a gene."""
    by_gene = run(config, gene, state).final
    by_model = run(config, FitzHughNagumo(gene), state).final
    assert checksum(by_gene) == checksum(by_model)


def _euler_oracle(u: float, v: float, gene: Gene, iters: int) -> list[float]:
    trajectory = []
    for _ in range(iters):
        f_u = u * (gene.c - u * u / 3.0) - v
        f_v = -gene.eps * (u - gene.b * v + gene.a)
        u, v = u + gene.dt * f_u, v + gene.dt * f_v
        trajectory.append(u)
    return trajectory


def test_uniform_state_follows_single_cell_dynamics(gene: Gene) -> None:
    """
    A uniform lattice stays uniform at every iteration and follows the two-variable
    ODE of a single cell.
    """
    state = GridState.from_arrays(
        np.full((128, 128), 0.5), np.full((128, 128), 0.2), Precision.SINGLE
    )
    buffers = StepBuffers(state)
    backend = Backend.create("reference")
    expected = _euler_oracle(0.5, 0.2, gene, 1000)
    actual = []
    for _ in range(1000):
        step(buffers, gene, backend)
        u = buffers.front.u
        assert np.all(u == u[0, 0])
        assert np.all(buffers.front.v == buffers.front.v[0, 0])
        actual.append(float(u[0, 0]))
    numpy.testing.assert_allclose(actual, expected, rtol=1e-4, atol=1e-6)


def test_run_time_excludes_snapshot_callback(gene: Gene) -> None:
    """Time spent in the snapshot callback is not counted as loop time."""
    config = RunConfig(nn=8, nm=8, iter_max=10, nssp=2, backend="reference")
    elapsed: list[float] = []

    def slow_callback(_: int, seconds: float) -> None:
        elapsed.append(seconds)
        time.sleep(0.05)

    result = run(config, gene, init_center_square(8, 8, 0), on_snapshot=slow_callback)
    assert result.seconds < 0.05
    assert elapsed[0] <= elapsed[1] <= result.seconds


def _pulse(n: int, value: float = 1.0) -> GridState:
    u = np.zeros((n, n))
    u[n // 2, n // 2] = value
    return GridState.from_arrays(u, np.zeros((n, n)), Precision.DOUBLE)


def _advance(state: GridState, gene: Gene, backend: Backend, steps: int) -> GridState:
    buffers = StepBuffers(state)
    for _ in range(steps):
        step(buffers, gene, backend)
    return buffers.front


@pytest.mark.parametrize("backend_name", Backend.names())
def test_single_cell_touches_five_cells(backend_name: str, gene: Gene) -> None:
    """One step from a single nonzero cell changes u at it and its four neighbors."""
    backend = Backend.create(backend_name)
    pulsed = _advance(_pulse(16), gene, backend, 1)
    background = _advance(_pulse(16, 0.0), gene, backend, 1)
    changed = np.argwhere(pulsed.u != background.u)
    assert changed.tolist() == [[7, 8], [8, 7], [8, 8], [8, 9], [9, 8]]


@pytest.mark.parametrize("backend_name", Backend.names())
def test_stencil_locality(backend_name: str, gene: Gene) -> None:
    """After k steps a single-cell perturbation reaches Chebyshev distance k at most."""
    backend = Backend.create(backend_name)
    pulsed = _advance(_pulse(24), gene, backend, 5)
    background = _advance(_pulse(24, 0.0), gene, backend, 5)
    changed = np.argwhere((pulsed.u != background.u) | (pulsed.v != background.v))
    assert len(changed) > 0
    assert np.abs(changed - 12).max() <= 5


@pytest.mark.parametrize("backend_name", Backend.names())
def test_uniform_state_stays_uniform(backend_name: str, gene: Gene) -> None:
    """A uniform lattice stays bit-identical across cells on every backend."""
    state = GridState.from_arrays(
        np.full((64, 64), 0.5), np.full((64, 64), 0.2), Precision.SINGLE
    )
    buffers = StepBuffers(state)
    backend = Backend.create(backend_name)
    for _ in range(200):
        step(buffers, gene, backend)
        front = buffers.front
        assert np.all(front.u == front.u[0, 0])
        assert np.all(front.v == front.v[0, 0])
