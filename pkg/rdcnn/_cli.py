"""Command-line interface: ``rdcnn simulate``, ``rdcnn bench``, and ``rdcnn sweep``."""

from __future__ import annotations
from typing import Any, NoReturn
from collections.abc import Callable, Sequence
from dataclasses import replace
import argparse
import logging
import sys
from rdcnn._backends import Backend
from rdcnn._bench import TABLE_SIZES, bench_suite, emit_table, records_frame, throughput
from rdcnn._config import InitMode, RunConfig, validate_config
from rdcnn._engine import run
from rdcnn._errors import BlowUpError, DecodeError, UnsupportedFormatError
from rdcnn._gene import GENE_FIELDS, Gene
from rdcnn._imagery import RunTiming, render_montage, save_frame
from rdcnn._initializer import initial_state
from rdcnn._logger import Logger
from rdcnn._manifest import read_manifest
from rdcnn._state import Precision, checksum
from rdcnn._sweep import SweepAxis, SweepSpec, sweep_grid

_logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_INVALID = 1
EXIT_BLOW_UP = 2
EXIT_IO = 3

DEFAULT_OUT = "out"
"""Root output directory; each invocation gets a timestamped subdirectory."""

DEFAULT_BENCH_ITERS = 1000


class _Parser(argparse.ArgumentParser):
    """Argument parser that exits with the validation code on bad usage."""

    def error(self, message: str) -> NoReturn:
        self.print_usage(sys.stderr)
        self.exit(EXIT_INVALID, f"{self.prog}: error: {message}\n")


def _int_list(text: str) -> list[int]:
    try:
        return [int(item) for item in text.split(",")]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"'{text}' is not a list of integers") from exc


def _str_list(text: str) -> list[str]:
    return [item.strip() for item in text.split(",") if item.strip()]


def _axis(text: str) -> SweepAxis:
    try:
        return SweepAxis.parse(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from exc


def _add_gene_flags(parser: argparse.ArgumentParser) -> None:
    group = parser.add_argument_group("gene")
    for name in GENE_FIELDS:
        group.add_argument(
            f"--{name}",
            type=float,
            default=None,
            help=f"gene parameter {name} (default {getattr(Gene(), name)})",
        )


def _add_run_flags(parser: argparse.ArgumentParser, *, lattice: bool = True) -> None:
    group = parser.add_argument_group("run")
    if lattice:
        group.add_argument(
            "--typ",
            type=int,
            choices=[int(mode) for mode in InitMode],
            default=None,
            help="initial state: 1 center square, 2 full random, 3 image",
        )
        group.add_argument("--size", type=int, default=None, help="N for an NxN grid")
        group.add_argument("--rows", type=int, default=None, help="number of rows")
        group.add_argument("--cols", type=int, default=None, help="number of columns")
        group.add_argument("--image", default=None, help="PGM or PNG file for --typ 3")
        group.add_argument(
            "--img-size", type=int, default=None, help="resample the image to NxN"
        )
        group.add_argument("--nssp", type=int, default=None, help="snapshot count")
        group.add_argument(
            "--backend", choices=Backend.names(), default=None, help="compute backend"
        )
    group.add_argument("--iters", type=int, default=None, help="iterations")
    group.add_argument("--seed", type=int, default=None, help="random seed")
    group.add_argument(
        "--precision",
        choices=[p.value for p in Precision],
        default=None,
        help="floating-point precision",
    )
    group.add_argument("--threads", type=int, default=None, help="parallel threads")
    group.add_argument("--tile-rows", type=int, default=None, help="blocked tile rows")
    group.add_argument("--tile-cols", type=int, default=None, help="blocked tile cols")
    group.add_argument(
        "--out",
        default=None,
        help=f"output directory (default ./{DEFAULT_OUT}/<timestamp>_<command>)",
    )


def build_parser() -> argparse.ArgumentParser:
    """Argument parser of the ``rdcnn`` command."""
    parser = _Parser(
        prog="rdcnn",
        description="Reaction-diffusion CNN lattice simulator.",
        allow_abbrev=False,
    )
    parser.add_argument(
        "--log-level",
        default="warning",
        choices=["debug", "info", "warning", "error"],
        help="diagnostic logging level",
    )
    commands = parser.add_subparsers(dest="command", required=True)

    simulate = commands.add_parser(
        "simulate", help="run one simulation", allow_abbrev=False
    )
    _add_gene_flags(simulate)
    _add_run_flags(simulate)
    simulate.add_argument(
        "--manifest", default=None, help="replay the run described by a manifest"
    )
    simulate.set_defaults(handler=cmd_simulate)

    bench = commands.add_parser("bench", help="benchmark backends", allow_abbrev=False)
    _add_gene_flags(bench)
    _add_run_flags(bench, lattice=False)
    bench.add_argument(
        "--backends",
        type=_str_list,
        default=Backend.names(),
        help="comma-separated backend names",
    )
    bench.add_argument(
        "--sizes",
        type=_int_list,
        default=list(TABLE_SIZES),
        help="comma-separated lattice sides",
    )
    bench.add_argument("--repeats", type=int, default=3, help="timed runs per cell")
    bench.add_argument("--hardware", default=None, help="hardware label")
    bench.add_argument(
        "--max-cell-iters",
        type=int,
        default=None,
        help="skip cells with more cell-iterations than this",
    )
    bench.add_argument("--json", action="store_true", help="also write bench.json")
    bench.set_defaults(handler=cmd_bench)

    sweep = commands.add_parser(
        "sweep", help="sweep two gene parameters", allow_abbrev=False
    )
    _add_gene_flags(sweep)
    _add_run_flags(sweep)
    sweep.add_argument("--x", type=_axis, required=True, help="e.g. du:0.3,0.5,0.7")
    sweep.add_argument("--y", type=_axis, required=True, help="e.g. dv:0.8,1.0")
    sweep.add_argument(
        "--seed-mode",
        choices=["shared", "per-cell"],
        default="shared",
        help="one seed for all cells, or seed plus cell index",
    )
    sweep.add_argument(
        "--random-cols",
        type=_int_list,
        default=[],
        help="column indices that start from a full random state",
    )
    sweep.add_argument(
        "--concurrent", action="store_true", help="run cells on a thread pool"
    )
    sweep.set_defaults(handler=cmd_sweep)
    return parser


def _gene_from(args: argparse.Namespace, base: Gene) -> Gene:
    changes = {name: getattr(args, name) for name in GENE_FIELDS}
    return base.replace(**{k: v for k, v in changes.items() if v is not None})


def _config_from(args: argparse.Namespace, base: RunConfig) -> RunConfig:
    flags: dict[str, str] = {
        "typ": "init_mode",
        "image": "image_path",
        "img_size": "img_size",
        "iters": "iter_max",
        "nssp": "nssp",
        "seed": "seed",
        "backend": "backend",
        "precision": "precision",
        "threads": "threads",
        "tile_rows": "tile_rows",
        "tile_cols": "tile_cols",
    }
    changes: dict[str, Any] = {
        field: getattr(args, flag)
        for flag, field in flags.items()
        if getattr(args, flag, None) is not None
    }
    if "init_mode" in changes:
        changes["init_mode"] = InitMode(changes["init_mode"])
    if "precision" in changes:
        changes["precision"] = Precision(changes["precision"])
    size = getattr(args, "size", None)
    if size is not None:
        changes.update(nn=size, nm=size)
    for flag, field in (("rows", "nn"), ("cols", "nm")):
        if getattr(args, flag, None) is not None:
            changes[field] = getattr(args, flag)
    return replace(base, **changes)


def _output_logger(args: argparse.Namespace) -> Logger:
    if args.out is not None:
        return Logger(args.out)
    return Logger(DEFAULT_OUT).sub_logger(args.command)


def _print_run_report(config: RunConfig, seconds: float, max_min: float) -> None:
    mcells, ns = throughput(config.nn, config.nm, config.iter_max, seconds)
    print(f"total: {seconds:f} s")
    print("=====")
    print(f"per cell time: {ns} nano-seconds")
    print(f"speed: {mcells} Mega cells/second")
    print(f"max-min= {max_min:f}")
    print("=====")


def cmd_simulate(args: argparse.Namespace) -> int:
    """
    Run one simulation. Writes the manifest, then ``montage.pgm`` (deterministic),
    ``montage.png`` (with timing), ``final_u.pgm``, ``final_v.pgm``, ``snapshots.nc``,
    and ``summary.json``.
    """
    base_config, base_gene = RunConfig(), Gene()
    if args.manifest is not None:
        base_config, base_gene = read_manifest(args.manifest)
    gene = _gene_from(args, base_gene)
    config = validate_config(_config_from(args, base_config), gene)
    output = _output_logger(args)
    output.log_manifest(config, gene)
    config, initial = initial_state(config, gene)
    print(f"FHN Calculation: {config.nn} x {config.nm} mesh")

    def report(iteration: int, elapsed: float) -> None:
        print(f"{iteration}, (elapsed: {elapsed:f} s)")

    result = run(config, gene, initial, on_snapshot=report)
    max_min = result.final.value_range()
    _print_run_report(config, result.seconds, max_min)
    label = config.make_backend().label
    mcells, ns = throughput(config.nn, config.nm, config.iter_max, result.seconds)
    render_montage(
        result.snapshots, gene, config, label, output.file_path("montage.pgm")
    )
    render_montage(
        result.snapshots,
        gene,
        config,
        label,
        output.file_path("montage.png"),
        timing=RunTiming(result.seconds, ns, mcells),
    )
    save_frame(result.final.u, output.file_path("final_u.pgm"))
    save_frame(result.final.v, output.file_path("final_v.pgm"))
    output.log_snapshots("snapshots", result.snapshots, config=config, gene=gene)
    output.log_dict(
        "summary",
        {
            "gene": gene,
            "config": config,
            "backend": label,
            "seconds": result.seconds,
            "ns_per_cell_iter": ns,
            "mcells_per_s": mcells,
            "max_min": max_min,
            "iteration_labels": result.snapshots.iteration_labels,
            "ranges": result.snapshots.ranges(),
            "checksum": checksum(result.final),
        },
    )
    _logger.info("outputs written to %s", output.directory)
    return EXIT_OK


def cmd_bench(args: argparse.Namespace) -> int:
    """Run the benchmark matrix, write ``bench.csv`` and print the table."""
    gene = _gene_from(args, Gene())
    base = _config_from(args, RunConfig(iter_max=DEFAULT_BENCH_ITERS, nssp=1))
    for backend in args.backends:
        for n in args.sizes:
            validate_config(replace(base, backend=backend, nn=n, nm=n), gene)
    output = _output_logger(args)
    output.log_manifest(base, gene)
    records = bench_suite(
        args.backends,
        args.sizes,
        base.iter_max,
        gene,
        base.seed,
        repeats=args.repeats,
        hardware=args.hardware,
        precision=base.precision,
        max_cell_iters=args.max_cell_iters,
        tile_rows=base.tile_rows,
        tile_cols=base.tile_cols,
        threads=base.threads,
    )
    csv_text, table_text = emit_table(records)
    with open(output.file_path("bench.csv"), "w", encoding="utf-8") as f:
        f.write(csv_text)
    if args.json:
        output.log_dict("bench", {"records": records_frame(records)})
    print(table_text, end="")
    return EXIT_OK


def cmd_sweep(args: argparse.Namespace) -> int:
    """Run a two-parameter sweep and write its results directory."""
    gene = _gene_from(args, Gene())
    config = validate_config(_config_from(args, RunConfig()), gene)
    spec = SweepSpec(
        args.x,
        args.y,
        gene,
        config,
        per_cell_seed=args.seed_mode == "per-cell",
        init_override={col: InitMode.FULL_RANDOM for col in args.random_cols},
    ).validate()
    output = _output_logger(args)
    output.log_manifest(config, gene)
    result = sweep_grid(spec, concurrent=args.concurrent)
    result.write(output.directory)
    for row in result.cells:
        for cell in row:
            print(
                f"{spec.x.param}={cell.x_value:g} {spec.y.param}={cell.y_value:g}:"
                f" {cell.label.regime.value}"
                f" (max-min= {cell.label.final_range:f})"
            )
    return EXIT_OK


def _dispatch(handler: Callable[[argparse.Namespace], int], args: Any) -> int:
    try:
        return handler(args)
    except BlowUpError as exc:
        print(f"error: blow-up at iteration {exc.iteration}", file=sys.stderr)
        return EXIT_BLOW_UP
    except (DecodeError, UnsupportedFormatError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID


def main(argv: Sequence[str] | None = None) -> int:
    """Entry point of the ``rdcnn`` command; returns the process exit code."""
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        level=args.log_level.upper(), format="%(levelname)s %(name)s: %(message)s"
    )
    logging.captureWarnings(True)
    return _dispatch(args.handler, args)
