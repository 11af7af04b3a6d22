"""
Run manifests: flat ``key = value`` text files from which a run can be replayed.
"""

from __future__ import annotations
from rdcnn._config import InitMode, RunConfig
from rdcnn._gene import GENE_FIELDS, Gene
from rdcnn._state import Precision

MANIFEST_KEYS = GENE_FIELDS + (
    "typ",
    "nn",
    "nm",
    "iter_max",
    "nssp",
    "seed",
    "backend",
    "precision",
)
"""Keys of every manifest, in the order they are written."""

IMAGE_KEY = "image"
"""Extra key written only for image-mode runs."""
IMG_SIZE_KEY = "img_size"
"""Extra key written for image-mode runs that resample the image."""

_INT_KEYS = ("typ", "nn", "nm", "iter_max", "nssp", "seed")


def format_manifest(config: RunConfig, gene: Gene) -> str:
    """Manifest text for the given run; floats use ``repr`` to read back exactly."""
    values: dict[str, object] = {
        name: repr(getattr(gene, name)) for name in GENE_FIELDS
    }
    values.update(
        typ=int(config.init_mode),
        nn=config.nn,
        nm=config.nm,
        iter_max=config.iter_max,
        nssp=config.nssp,
        seed=config.seed,
        backend=config.backend,
        precision=config.precision.value,
    )
    lines = [f"{key} = {values[key]}" for key in MANIFEST_KEYS]
    if config.init_mode is InitMode.IMAGE and config.image_path is not None:
        lines.append(f"{IMAGE_KEY} = {config.image_path}")
        if config.img_size is not None:
            lines.append(f"{IMG_SIZE_KEY} = {config.img_size}")
    return "\n".join(lines) + "\n"


def parse_manifest(text: str) -> tuple[RunConfig, Gene]:
    """
    Parse manifest text back into a configuration and gene. Blank lines and lines
    starting with ``#`` are ignored; missing keys take their default values.
    """
    entries: dict[str, str] = {}
    for number, line in enumerate(text.splitlines(), start=1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        key, sep, value = line.partition("=")
        key = key.strip()
        if not sep:
            raise ValueError(f"manifest line {number} is not 'key = value': '{line}'")
        if key not in MANIFEST_KEYS + (IMAGE_KEY, IMG_SIZE_KEY):
            raise ValueError(f"unknown manifest key '{key}' on line {number}")
        entries[key] = value.strip()
    gene = Gene(**{k: float(entries[k]) for k in GENE_FIELDS if k in entries})
    ints = {k: int(entries[k]) for k in _INT_KEYS if k in entries}
    defaults = RunConfig()
    config = RunConfig(
        init_mode=InitMode(ints.get("typ", defaults.init_mode)),
        nn=ints.get("nn", defaults.nn),
        nm=ints.get("nm", defaults.nm),
        iter_max=ints.get("iter_max", defaults.iter_max),
        nssp=ints.get("nssp", defaults.nssp),
        seed=ints.get("seed", defaults.seed),
        backend=entries.get("backend", defaults.backend),
        precision=Precision(entries.get("precision", defaults.precision.value)),
        image_path=entries.get(IMAGE_KEY),
        img_size=int(entries[IMG_SIZE_KEY]) if IMG_SIZE_KEY in entries else None,
    )
    return config, gene


def write_manifest(path: str, config: RunConfig, gene: Gene) -> None:
    """Write the manifest of a run to ``path``."""
    with open(path, "w", encoding="utf-8") as f:
        f.write(format_manifest(config, gene))


def read_manifest(path: str) -> tuple[RunConfig, Gene]:
    """Read a manifest written by :py:func:`write_manifest`."""
    with open(path, "r", encoding="utf-8") as f:
        return parse_manifest(f.read())
