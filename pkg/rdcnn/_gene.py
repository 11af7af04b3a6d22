"""The gene: the full parameter set of one reaction-diffusion network."""

from __future__ import annotations
from typing import Any
from collections.abc import Sequence
from dataclasses import dataclass, replace
import math
import numpy as np
import numpy.typing as npt
from rdcnn._errors import ConfigIssue

GENE_FIELDS = ("a", "b", "eps", "c", "du", "dv", "dt", "ka")
"""Names of the gene parameters, in manifest order."""

VECTOR_ORDER = ("dt", "a", "b", "eps", "c", "du", "dv")
"""Order of the parameters in the kernel parameter vector (``ka`` is excluded)."""


@dataclass(frozen=True)
class Gene:
    """
    Parameters of a FitzHugh-Nagumo reaction-diffusion network.

    ``ka`` scales external images into the initial state and never enters the update
    loop.
    """

    a: float = -0.3
    """Offset in the recovery reaction."""
    b: float = 1.3
    """Coupling of the recovery variable in its own reaction."""
    eps: float = -0.1
    """Rate of the recovery reaction."""
    c: float = 1.0
    """Gain of the excitation reaction."""
    du: float = 0.06
    """Diffusion coefficient of the u layer."""
    dv: float = 1.0
    """Diffusion coefficient of the v layer."""
    dt: float = 0.1
    """Integration step."""
    ka: float = 1.0
    """Input scaling factor applied to external images."""

    def replace(self, **changes: Any) -> Gene:
        """Return a copy of this gene with the given parameters changed."""
        unknown = set(changes) - set(GENE_FIELDS)
        if unknown:
            raise ValueError(f"unknown gene parameter '{sorted(unknown)[0]}'")
        return replace(self, **{k: float(v) for k, v in changes.items()})

    def issues(self) -> list[tuple[ConfigIssue, str]]:
        """Return every invariant this gene violates (empty if valid)."""
        found: list[tuple[ConfigIssue, str]] = []
        non_finite = [n for n in GENE_FIELDS if not math.isfinite(getattr(self, n))]
        if non_finite:
            found.append(
                (
                    ConfigIssue.NON_FINITE_GENE,
                    f"gene parameters {', '.join(non_finite)} are not finite",
                )
            )
        for name in ("dt", "du", "dv"):
            value = getattr(self, name)
            if math.isfinite(value) and value < 0:
                found.append((ConfigIssue.INVALID_GENE, f"{name}={value} is negative"))
        return found

    @property
    def stability_number(self) -> float:
        """dt * max(du, dv); explicit steps are safe below 0.25."""
        return self.dt * max(self.du, self.dv)


def gene_to_vector(gene: Gene) -> npt.NDArray[np.float64]:
    """Return the kernel parameter vector ``[dt, a, b, eps, c, du, dv]``."""
    return np.array([getattr(gene, name) for name in VECTOR_ORDER], dtype=np.float64)


def vector_to_gene(vector: Sequence[float] | npt.ArrayLike, ka: float = 1.0) -> Gene:
    """Inverse of :py:func:`gene_to_vector`; ``ka`` is supplied separately."""
    values = np.asarray(vector, dtype=np.float64)
    if values.shape != (len(VECTOR_ORDER),):
        raise ValueError(
            f"gene vector must have length {len(VECTOR_ORDER)}, got shape"
            f" {values.shape}"
        )
    return Gene(
        **{name: float(v) for name, v in zip(VECTOR_ORDER, values)}, ka=float(ka)
    )
