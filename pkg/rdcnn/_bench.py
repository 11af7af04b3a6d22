"""Throughput benchmarks and backend-by-size reports."""

from __future__ import annotations
from collections.abc import Sequence
from dataclasses import asdict, dataclass, replace
import logging
import platform
import statistics
import pandas as pd
from rdcnn._config import InitMode, RunConfig
from rdcnn._engine import run
from rdcnn._errors import BenchBlowUpError, BlowUpError, ZeroDurationError
from rdcnn._gene import Gene
from rdcnn._initializer import init_center_square
from rdcnn._state import Precision, checksum

_logger = logging.getLogger(__name__)

CSV_COLUMNS = (
    "backend",
    "hardware",
    "n",
    "iters",
    "seconds",
    "mcells_per_s",
    "ns_per_cell_iter",
    "checksum",
)
"""Columns of the benchmark CSV, in order."""

TABLE_SIZES = (128, 256, 512, 1024, 2048, 4096)
"""Lattice sides of the full benchmark matrix."""

SKIPPED = "—"
"""Table cell text of a skipped measurement."""


def throughput(nn: int, nm: int, iter_max: int, seconds: float) -> tuple[float, float]:
    """
    Return ``(mcells_per_s, ns_per_cell_iter)`` for ``iter_max`` iterations of an
    ``nn x nm`` lattice taking ``seconds``. The two figures are reciprocal up to a
    factor of 1000.
    """
    if not seconds > 0:
        raise ZeroDurationError(f"duration {seconds} s is not positive")
    cell_iters = nn * nm * iter_max
    return cell_iters / (seconds * 1e6), seconds * 1e9 / cell_iters


@dataclass(frozen=True)
class BenchRecord:
    """
    One benchmark measurement. Skipped measurements have ``seconds`` (and the derived
    figures and checksum) set to None.
    """

    backend: str
    """Backend name."""
    hardware: str
    """Free-form hardware label."""
    n: int
    """Side of the square lattice."""
    iters: int
    """Number of iterations."""
    seconds: float | None
    """Median wall time of the timed repetitions."""
    mcells_per_s: float | None
    """Millions of cell updates per second."""
    ns_per_cell_iter: float | None
    """Nanoseconds per cell update."""
    checksum: str | None
    """Checksum of the final state."""

    @classmethod
    def measured(  # pylint: disable=too-many-arguments
        cls,
        backend: str,
        hardware: str,
        n: int,
        iters: int,
        seconds: float,
        digest: str,
    ) -> BenchRecord:
        """Record with throughput figures derived from ``seconds``."""
        mcells, ns = throughput(n, n, iters, seconds)
        return cls(backend, hardware, n, iters, seconds, mcells, ns, digest)

    @classmethod
    def skipped(cls, backend: str, hardware: str, n: int, iters: int) -> BenchRecord:
        """Record of a cell of the matrix that was not run."""
        return cls(backend, hardware, n, iters, None, None, None, None)

    @property
    def is_skipped(self) -> bool:
        """Whether this measurement was skipped."""
        return self.seconds is None


def default_hardware() -> str:
    """Hardware label of the current machine."""
    return platform.processor() or platform.machine() or "unknown"


# pylint: disable-next=too-many-arguments,too-many-locals
def bench_suite(
    backends: Sequence[str],
    sizes: Sequence[int],
    iter_max: int,
    gene: Gene | None = None,
    seed: int = 0,
    *,
    repeats: int = 3,
    hardware: str | None = None,
    precision: Precision = Precision.SINGLE,
    max_cell_iters: int | None = None,
    tile_rows: int = 64,
    tile_cols: int = 64,
    threads: int = 0,
) -> list[BenchRecord]:
    """
    Time every (backend, N) pair on a center-square initial state, reporting the median
    of ``repeats`` timed runs after one discarded warm-up run per backend. Snapshots are
    limited to the final frame.

    Pairs whose cell-iteration count exceeds ``max_cell_iters``, or that run out of
    memory, are recorded as skipped.
    """
    if repeats < 1:
        raise ValueError(f"repeats={repeats} must be at least 1")
    gene = gene if gene is not None else Gene()
    hardware = hardware if hardware is not None else default_hardware()
    records: list[BenchRecord] = []
    for backend in backends:
        base = RunConfig(
            init_mode=InitMode.CENTER_SQUARE,
            iter_max=iter_max,
            nssp=1,
            seed=seed,
            backend=backend,
            precision=precision,
            tile_rows=tile_rows,
            tile_cols=tile_cols,
            threads=threads,
        )
        if sizes:
            warm_n = min(sizes)
            warm = replace(base, nn=warm_n, nm=warm_n, iter_max=min(iter_max, 10))
            try:
                run(warm, gene, init_center_square(warm_n, warm_n, seed, precision))
            except BlowUpError:
                pass
        for n in sizes:
            if max_cell_iters is not None and n * n * iter_max > max_cell_iters:
                _logger.info("skipping %s at N=%d (over cell budget)", backend, n)
                records.append(BenchRecord.skipped(backend, hardware, n, iter_max))
                continue
            config = base.with_shape(n, n)
            times: list[float] = []
            digest = ""
            try:
                initial = init_center_square(n, n, seed, precision)
                for _ in range(repeats):
                    result = run(config, gene, initial)
                    times.append(result.seconds)
                    digest = checksum(result.final)
            except BlowUpError as exc:
                raise BenchBlowUpError(backend, n, exc.iteration) from exc
            except MemoryError:
                _logger.warning("skipping %s at N=%d (out of memory)", backend, n)
                records.append(BenchRecord.skipped(backend, hardware, n, iter_max))
                continue
            record = BenchRecord.measured(
                backend, hardware, n, iter_max, statistics.median(times), digest
            )
            _logger.info(
                "%s N=%d: %.2f Mcells/s", backend, n, record.mcells_per_s or 0.0
            )
            records.append(record)
    return records


def records_frame(records: Sequence[BenchRecord]) -> pd.DataFrame:
    """Benchmark records as a DataFrame with the CSV columns and numeric figures."""
    return pd.DataFrame([asdict(r) for r in records], columns=list(CSV_COLUMNS))


def _format_csv_row(record: BenchRecord) -> dict[str, str]:
    if record.is_skipped:
        measured = {"seconds": "", "mcells_per_s": "", "ns_per_cell_iter": ""}
    else:
        measured = {
            "seconds": f"{record.seconds:.6f}",
            "mcells_per_s": f"{record.mcells_per_s:.2f}",
            "ns_per_cell_iter": f"{record.ns_per_cell_iter:.4f}",
        }
    return {
        "backend": record.backend,
        "hardware": record.hardware,
        "n": str(record.n),
        "iters": str(record.iters),
        **measured,
        "checksum": record.checksum or "",
    }


def _table_cell(record: BenchRecord) -> str:
    if record.is_skipped:
        return SKIPPED
    return f"{record.mcells_per_s:.1f} ({record.seconds:.2f})"


def emit_table(records: Sequence[BenchRecord]) -> tuple[str, str]:
    """
    Return ``(csv_text, table_text)``. The table has one row per (backend, hardware)
    and one column per N, each cell reading "Mcells/s (seconds)".
    """
    if not records:
        raise ValueError("no benchmark records to tabulate")
    csv_frame = pd.DataFrame(
        [_format_csv_row(r) for r in records], columns=list(CSV_COLUMNS)
    )
    csv_text = csv_frame.to_csv(index=False, lineterminator="\n")
    cells = pd.DataFrame(
        {
            "backend": [r.backend for r in records],
            "hardware": [r.hardware for r in records],
            "n": [r.n for r in records],
            "cell": [_table_cell(r) for r in records],
        }
    )
    table = cells.pivot_table(
        index=["backend", "hardware"],
        columns="n",
        values="cell",
        aggfunc="first",
        sort=False,
    )
    table = table.reindex(columns=sorted(table.columns)).fillna(SKIPPED)
    table.columns = [f"N={n}" for n in table.columns]
    table_text = (
        "PERFORMANCE (MCELLS/SECOND), SIMULATION TIME IN PARENTHESIS\n"
        + table.to_string()
        + "\n"
    )
    return csv_text, table_text
