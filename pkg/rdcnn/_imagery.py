"""Grayscale image input, frame normalization, and montage rendering."""

from __future__ import annotations
from typing import TYPE_CHECKING
from collections.abc import Sequence
from dataclasses import dataclass
import numpy as np
import numpy.typing as npt
from PIL import Image, ImageDraw, ImageFont, UnidentifiedImageError
from rdcnn._errors import DecodeError, UnsupportedFormatError
from rdcnn._gene import GENE_FIELDS, Gene
from rdcnn._state import SnapshotBuffer

if TYPE_CHECKING:
    from rdcnn._config import RunConfig

SUPPORTED_FORMATS = ("PPM", "PNG")
"""Pillow format names that can be loaded (PGM files are read by the PPM plugin)."""

LABEL_WIDTH = 24
"""Width of the row-label margin of a montage, in pixels."""
HEADER_HEIGHT = 16
"""Height of the column-label strip of a montage, in pixels."""
LINE_HEIGHT = 14
"""Height of one caption line, in pixels."""


@dataclass(frozen=True, eq=False)
class Frame8:
    """An 8-bit grayscale frame and the source range it was normalized from."""

    pixels: npt.NDArray[np.uint8]
    """Pixel intensities."""
    vmin: float
    """Source value mapped to 0."""
    vmax: float
    """Source value mapped to 255."""

    @property
    def value_range(self) -> float:
        """``vmax - vmin`` of the source layer."""
        return self.vmax - self.vmin


@dataclass(frozen=True)
class RunTiming:
    """Timing figures printed in a montage caption."""

    seconds: float
    ns_per_cell_iter: float
    mcells_per_s: float


def load_grayscale(
    path: str, target_size: int | None = None
) -> npt.NDArray[np.float64]:
    """
    Load a PGM (P5) or PNG file as a matrix in [0, 1]. Color images are reduced to luma.

    If ``target_size`` is given, the image is resampled by nearest neighbor to
    ``target_size x target_size``: output index ``k`` samples source index
    ``k * n // target_size``.
    """
    with open(path, "rb") as f:
        try:
            image = Image.open(f)
            image.load()
        except UnidentifiedImageError as exc:
            raise DecodeError(f"'{path}' is not a decodable image") from exc
        except (SyntaxError, OSError) as exc:
            raise DecodeError(f"'{path}' could not be decoded: {exc}") from exc
    if image.format not in SUPPORTED_FORMATS:
        raise UnsupportedFormatError(f"'{path}' is {image.format}, expected PGM or PNG")
    if image.mode in ("RGB", "RGBA", "P"):
        image = image.convert("RGB").convert("L")
    elif image.mode == "LA":
        image = image.convert("L")
    elif image.mode != "L":
        raise UnsupportedFormatError(
            f"'{path}' has pixel mode {image.mode}, expected 8-bit gray or RGB"
        )
    x = np.asarray(image, dtype=np.float64) / 255.0
    if target_size is not None:
        if target_size < 1:
            raise ValueError(f"target size {target_size} must be positive")
        rows = np.arange(target_size) * x.shape[0] // target_size
        cols = np.arange(target_size) * x.shape[1] // target_size
        x = x[np.ix_(rows, cols)]
    return x


def normalize_frame(
    layer: npt.ArrayLike, value_range: tuple[float, float] | None = None
) -> Frame8:
    """
    Map a layer affinely onto 0..255 using its own minimum and maximum, or the fixed
    ``value_range`` if given (values outside it are clipped). A constant layer maps to
    128.
    """
    x = np.asarray(layer, dtype=np.float64)
    if not np.isfinite(x).all():
        raise ValueError("cannot normalize a layer with non-finite values")
    if value_range is None:
        vmin, vmax = float(x.min()), float(x.max())
    else:
        vmin, vmax = float(value_range[0]), float(value_range[1])
    if vmax > vmin:
        scaled = np.rint(255.0 * (x - vmin) / (vmax - vmin))
        pixels = np.clip(scaled, 0, 255).astype(np.uint8)
    else:
        pixels = np.full(x.shape, 128, dtype=np.uint8)
    return Frame8(pixels, vmin, vmax)


def save_frame(
    layer: npt.ArrayLike,
    out_path: str,
    value_range: tuple[float, float] | None = None,
) -> Frame8:
    """
    Normalize a layer and write it as an 8-bit grayscale file; the format (PGM or PNG)
    follows the file extension.
    """
    frame = normalize_frame(layer, value_range)
    Image.fromarray(frame.pixels).save(out_path)
    return frame


def _caption(
    gene: Gene, config: RunConfig, backend_label: str, timing: RunTiming | None
) -> list[str]:
    lines = [
        " ".join(f"{name}={getattr(gene, name):g}" for name in GENE_FIELDS),
        f"typ={int(config.init_mode)} {config.nn}x{config.nm}"
        f" iter_max={config.iter_max} nssp={config.nssp} seed={config.seed}"
        f" {config.precision.value} {backend_label}",
    ]
    if timing is not None:
        lines.append(
            f"time {timing.seconds:.3f} s  {timing.ns_per_cell_iter:.4g} ns/cell"
            f"  {timing.mcells_per_s:.5g} Mcells/s"
        )
    return lines


# pylint: disable-next=too-many-arguments,too-many-locals
def render_montage(
    snapshots: SnapshotBuffer,
    gene: Gene,
    config: RunConfig,
    backend_label: str,
    out_path: str,
    *,
    timing: RunTiming | None = None,
    value_range: tuple[float, float] | None = None,
) -> Image.Image:
    """
    Write a montage of a run: u frames in the first row and v frames in the second,
    one column per snapshot labeled with its iteration and dynamic range, above a
    caption with the parameters, backend, and (if given) timing.
    """
    nn, nm = snapshots.frames_u.shape[1:]
    columns = len(snapshots)
    caption = _caption(gene, config, backend_label, timing)
    width = LABEL_WIDTH + columns * nm
    height = HEADER_HEIGHT + 2 * nn + LINE_HEIGHT * len(caption) + 4
    canvas = Image.new("L", (width, height), 255)
    draw = ImageDraw.Draw(canvas)
    font = ImageFont.load_default()
    for k, label in enumerate(snapshots.iteration_labels):
        x0 = LABEL_WIDTH + k * nm
        frame_u = normalize_frame(snapshots.frames_u[k], value_range)
        frame_v = normalize_frame(snapshots.frames_v[k], value_range)
        canvas.paste(Image.fromarray(frame_u.pixels), (x0, HEADER_HEIGHT))
        canvas.paste(Image.fromarray(frame_v.pixels), (x0, HEADER_HEIGHT + nn))
        draw.text(
            (x0 + 2, 2), f"{label} ({frame_u.value_range:.3g})", fill=0, font=font
        )
    draw.text((4, HEADER_HEIGHT + nn // 2), "A", fill=0, font=font)
    draw.text((4, HEADER_HEIGHT + nn + nn // 2), "B", fill=0, font=font)
    for i, line in enumerate(caption):
        draw.text(
            (4, HEADER_HEIGHT + 2 * nn + 2 + i * LINE_HEIGHT), line, fill=0, font=font
        )
    canvas.save(out_path)
    return canvas


# pylint: disable-next=too-many-locals
def render_panel(
    frames: Sequence[Sequence[npt.ArrayLike | None]],
    x_labels: Sequence[str],
    y_labels: Sequence[str],
    out_path: str,
    *,
    value_range: tuple[float, float] | None = None,
) -> Image.Image:
    """
    Write a grid of frames where ``frames[r][c]`` is drawn in row ``r`` and column
    ``c``. Columns are labeled by ``x_labels`` and rows by ``y_labels``. Missing frames
    (``None``) are left black.
    """
    shapes = [np.shape(f) for row in frames for f in row if f is not None]
    nn, nm = shapes[0] if shapes else (16, 16)
    label_width = 8 * max((len(label) for label in y_labels), default=1) + 8
    width = label_width + len(x_labels) * nm
    height = HEADER_HEIGHT + len(y_labels) * nn
    canvas = Image.new("L", (width, height), 255)
    draw = ImageDraw.Draw(canvas)
    font = ImageFont.load_default()
    for c, label in enumerate(x_labels):
        draw.text((label_width + c * nm + 2, 2), label, fill=0, font=font)
    for r, label in enumerate(y_labels):
        y0 = HEADER_HEIGHT + r * nn
        draw.text((2, y0 + nn // 2), label, fill=0, font=font)
        for c in range(len(x_labels)):
            frame = frames[r][c]
            x0 = label_width + c * nm
            if frame is None:
                canvas.paste(0, (x0, y0, x0 + nm, y0 + nn))
            else:
                pixels = normalize_frame(frame, value_range).pixels
                canvas.paste(Image.fromarray(pixels), (x0, y0))
    canvas.save(out_path)
    return canvas
