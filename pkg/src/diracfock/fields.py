"""Grid-sampled spinor and current fields."""

from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np

__all__ = ["SpinorField", "CurrentField", "GridMismatchError"]


class GridMismatchError(ValueError):
    """Fields defined on incompatible grids were combined."""


@dataclass(frozen=True)
class SpinorField:
    """Complex 4-component field on a spacetime grid.

    values has shape (nt, n1, n2, n3, 4); taxis holds the nt time nodes.
    The spatial axes must match the chart the field was built on.
    """

    chart: "object"
    taxis: np.ndarray
    values: np.ndarray

    def __post_init__(self) -> None:
        v = self.values
        if v.ndim != 5 or v.shape[-1] != 4:
            raise ValueError("spinor values must have shape (nt, n1, n2, n3, 4)")
        if v.shape[0] != len(self.taxis):
            raise ValueError("time axis length does not match values")
        if v.shape[1:4] != self.chart.spatial_shape:
            raise GridMismatchError("spatial grid does not match the chart")

    @property
    def dt(self) -> float:
        if len(self.taxis) < 2:
            return 0.0
        return float(self.taxis[1] - self.taxis[0])

    def with_values(self, values: np.ndarray) -> "SpinorField":
        return replace(self, values=values)

    def conjugate(self) -> "SpinorField":
        return self.with_values(np.conj(self.values))

    def __add__(self, other: "SpinorField") -> "SpinorField":
        self._check_same_grid(other)
        return self.with_values(self.values + other.values)

    def __sub__(self, other: "SpinorField") -> "SpinorField":
        self._check_same_grid(other)
        return self.with_values(self.values - other.values)

    def __mul__(self, scalar: complex) -> "SpinorField":
        return self.with_values(self.values * scalar)

    __rmul__ = __mul__

    def _check_same_grid(self, other: "SpinorField") -> None:
        if self.values.shape != other.values.shape or len(self.taxis) != len(other.taxis):
            raise GridMismatchError("fields live on different grids")
        if not np.allclose(self.taxis, other.taxis, rtol=0.0, atol=1e-12):
            raise GridMismatchError("fields live on different time axes")

    def max_abs(self) -> float:
        return float(np.max(np.abs(self.values)))


@dataclass(frozen=True)
class CurrentField:
    """Vector field in frame components on the same grid layout as SpinorField.

    values has shape (nt, n1, n2, n3, 4), axis -1 being the frame index q.
    Diagonal currents are real; pair currents of two different fields are
    complex.
    """

    chart: "object"
    taxis: np.ndarray
    values: np.ndarray

    def __post_init__(self) -> None:
        v = self.values
        if v.ndim != 5 or v.shape[-1] != 4:
            raise ValueError("current values must have shape (nt, n1, n2, n3, 4)")
        if v.shape[0] != len(self.taxis):
            raise ValueError("time axis length does not match values")
        if v.shape[1:4] != self.chart.spatial_shape:
            raise GridMismatchError("spatial grid does not match the chart")

    @property
    def dt(self) -> float:
        if len(self.taxis) < 2:
            return 0.0
        return float(self.taxis[1] - self.taxis[0])
