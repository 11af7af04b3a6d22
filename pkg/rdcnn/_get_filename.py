"""Names for output directories and files."""

from __future__ import annotations
import os
from datetime import datetime


def get_filename(
    directory: str,
    description: str,
    *,
    timestamp: datetime | None = None,
    ext: str = "",
) -> str:
    """
    Name of the form ``YY-MM-DD-HHMM_description.ext`` (the timestamp part only if
    ``timestamp`` is given) that does not already exist in ``directory``. A clash adds
    a ``_1``, ``_2``, ... suffix before the extension.
    """
    stamp = f"{timestamp.strftime('%y-%m-%d-%H%M')}_" if timestamp else ""
    stem = f"{stamp}{description}"
    name = f"{stem}{ext}"
    suffix = 1
    while os.path.exists(os.path.join(directory, name)):
        name = f"{stem}_{suffix}{ext}"
        suffix += 1
    return name


def cell_filename(x_value: float, y_value: float, ext: str = ".pgm") -> str:
    """Name of the frame file of the sweep cell at ``(x_value, y_value)``."""
    return f"cell_{x_value:g}_{y_value:g}{ext}"
