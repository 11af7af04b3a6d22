"""
Cell models: pointwise reaction terms plus per-layer diffusion coefficients.

A model supplies its reactions as plain functions built for one dtype. The same
functions are evaluated on NumPy arrays by the shift backend and compiled by Numba for
the loop backends, so every backend computes one expression.
"""

from __future__ import annotations
from typing import Any, Callable
from abc import ABC, abstractmethod
from functools import lru_cache
import numpy as np
import numpy.typing as npt
from numba import njit
from rdcnn._gene import Gene, gene_to_vector
from rdcnn._state import Precision

ReactionFunc = Callable[[Any, Any, Any], Any]


class CellModel(ABC):
    """
    Abstract two-layer cell model. Subclasses define the parameter vector layout (the
    positions of ``dt`` and the two diffusion coefficients within it) and the reaction
    functions.
    """

    name: str
    dt_index: int
    du_index: int
    dv_index: int

    @abstractmethod
    def parameter_vector(self) -> npt.NDArray[np.float64]:
        """Kernel parameter vector in double precision."""

    @classmethod
    @abstractmethod
    def reaction_functions(
        cls, dtype: np.dtype[np.floating]
    ) -> tuple[ReactionFunc, ReactionFunc]:
        """
        Return ``(reaction_u, reaction_v)``, each called as ``f(u, v, pars)``, with any
        numeric constants typed as ``dtype``.
        """

    @property
    @abstractmethod
    def diffusion(self) -> tuple[float, float]:
        """Diffusion coefficients of the u and v layers."""

    def parameters(self, precision: Precision | str) -> npt.NDArray[np.floating]:
        """Parameter vector converted to the given precision."""
        return self.parameter_vector().astype(Precision(precision).dtype)

    def reaction_u(self, u: float, v: float, precision: Precision | str) -> np.floating:
        """Evaluate the u-layer reaction at one cell."""
        dtype = Precision(precision).dtype
        f_u, _ = compiled_reactions(type(self), dtype)
        return dtype.type(f_u(dtype.type(u), dtype.type(v), self.parameters(precision)))

    def reaction_v(self, u: float, v: float, precision: Precision | str) -> np.floating:
        """Evaluate the v-layer reaction at one cell."""
        dtype = Precision(precision).dtype
        _, f_v = compiled_reactions(type(self), dtype)
        return dtype.type(f_v(dtype.type(u), dtype.type(v), self.parameters(precision)))

    # pylint: disable-next=too-many-arguments
    def cell_update(
        self,
        u: float,
        v: float,
        lap_u: float,
        lap_v: float,
        precision: Precision | str,
    ) -> tuple[np.floating, np.floating]:
        """One explicit Euler step of a single cell given its two Laplacians."""
        dtype = Precision(precision).dtype
        update = compiled_cell_update(type(self), dtype)
        new_u, new_v = update(
            dtype.type(u),
            dtype.type(v),
            dtype.type(lap_u),
            dtype.type(lap_v),
            self.parameters(precision),
        )
        return dtype.type(new_u), dtype.type(new_v)


class FitzHughNagumo(CellModel):
    """
    FitzHugh-Nagumo reaction-diffusion cell, with parameter vector
    ``[dt, a, b, eps, c, du, dv]``.

    - ``reaction_u = u * (c - u * u / 3) - v``
    - ``reaction_v = -eps * (u - b * v + a)``
    """

    name = "fhn"
    dt_index = 0
    du_index = 5
    dv_index = 6

    def __init__(self, gene: Gene) -> None:
        self._gene = gene

    @property
    def gene(self) -> Gene:
        """Gene this model was built from."""
        return self._gene

    def parameter_vector(self) -> npt.NDArray[np.float64]:
        return gene_to_vector(self._gene)

    @property
    def diffusion(self) -> tuple[float, float]:
        return self._gene.du, self._gene.dv

    @classmethod
    def reaction_functions(
        cls, dtype: np.dtype[np.floating]
    ) -> tuple[ReactionFunc, ReactionFunc]:
        three = dtype.type(3)

        def reaction_u(u: Any, v: Any, pars: Any) -> Any:
            return u * (pars[4] - u * u / three) - v

        def reaction_v(u: Any, v: Any, pars: Any) -> Any:
            return -pars[3] * (u - pars[2] * v + pars[1])

        return reaction_u, reaction_v


@lru_cache(maxsize=None)
def compiled_reactions(
    model_type: type[CellModel], dtype: np.dtype[np.floating]
) -> tuple[ReactionFunc, ReactionFunc]:
    """Numba-compiled reaction functions of a model class for one dtype."""
    f_u, f_v = model_type.reaction_functions(dtype)
    return njit(nogil=True)(f_u), njit(nogil=True)(f_v)


@lru_cache(maxsize=None)
def compiled_cell_update(
    model_type: type[CellModel], dtype: np.dtype[np.floating]
) -> Callable[..., tuple[Any, Any]]:
    """
    Numba-compiled single-cell update ``(u, v, lap_u, lap_v, pars) -> (u', v')``.

    The evaluation order is ``u + dt * (reaction_u + du * lap_u)`` (likewise for v).
    Every loop backend calls this function for each cell.
    """
    f_u, f_v = compiled_reactions(model_type, dtype)
    i_dt, i_du, i_dv = model_type.dt_index, model_type.du_index, model_type.dv_index

    @njit(nogil=True)
    def cell_update(u: Any, v: Any, lap_u: Any, lap_v: Any, pars: Any) -> Any:
        new_u = u + pars[i_dt] * (f_u(u, v, pars) + pars[i_du] * lap_u)
        new_v = v + pars[i_dt] * (f_v(u, v, pars) + pars[i_dv] * lap_v)
        return new_u, new_v

    return cell_update


def reaction_u(
    u: float, v: float, gene: Gene, precision: Precision | str = Precision.SINGLE
) -> np.floating:
    """FitzHugh-Nagumo excitation reaction ``c*u - u**3/3 - v``."""
    return FitzHughNagumo(gene).reaction_u(u, v, precision)


def reaction_v(
    u: float, v: float, gene: Gene, precision: Precision | str = Precision.SINGLE
) -> np.floating:
    """FitzHugh-Nagumo recovery reaction ``-eps * (u - b*v + a)``."""
    return FitzHughNagumo(gene).reaction_v(u, v, precision)


# pylint: disable-next=too-many-arguments
def cell_update(
    u: float,
    v: float,
    lap_u: float,
    lap_v: float,
    gene: Gene,
    precision: Precision | str = Precision.SINGLE,
) -> tuple[np.floating, np.floating]:
    """One explicit Euler step of a single FitzHugh-Nagumo cell."""
    return FitzHughNagumo(gene).cell_update(u, v, lap_u, lap_v, precision)
