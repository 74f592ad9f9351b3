"""Spacelike slices, current flux and the hypersurface pairing."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .constants import PhysicalConstants
from .dynamics import _raw_pair_current
from .fields import CurrentField, SpinorField
from .geometry import Background
from .spin_algebra import GammaSet, canonical_gamma_set
from .stencils import cubic_time_interpolate

__all__ = [
    "NotSpacelikeError",
    "RankDeficientModeError",
    "Slice",
    "coordinate_slice",
    "tilted_slice",
    "sample_on_slice",
    "flux",
    "inner",
    "ModeBasis",
    "orthonormalize",
]


class NotSpacelikeError(ValueError):
    """Requested slice is not spacelike or its normal is past-directed."""


class RankDeficientModeError(ValueError):
    """A mode collapsed to numerical zero during orthonormalization."""

    def __init__(self, index: int):
        self.index = index
        super().__init__(f"mode {index} is linearly dependent on the preceding modes")


@dataclass(frozen=True)
class Slice:
    """Spacelike hypersurface with quadrature data on the spatial grid.

    times holds x0 over the grid, normal the unit future normal in frame
    components per node, area_weights the induced volume element times the
    coordinate cell volume.
    """

    background: Background
    times: np.ndarray          # (n1, n2, n3)
    normal: np.ndarray         # (n1, n2, n3, 4)
    area_weights: np.ndarray   # (n1, n2, n3)
    label: str = "slice"


def _cell_volume(bg: Background) -> float:
    cell = 1.0
    for ax in (1, 2, 3):
        if len(bg.chart.axes[ax]) > 1:
            cell *= bg.chart.spacing[ax]
    return cell


def coordinate_slice(bg: Background, t0: float, label: str | None = None) -> Slice:
    """Constant-x0 slice.  Works on every supported chart: the unit future
    normal is the time frame vector and the induced metric is the spatial
    block, so the area element is sqrt(-det g3)."""
    shape = bg.chart.spatial_shape
    times = np.full(shape, float(t0))
    normal = np.zeros(shape + (4,))
    normal[..., 0] = 1.0
    g3det = -(bg.metric[..., 1, 1] * bg.metric[..., 2, 2] * bg.metric[..., 3, 3])
    if np.any(g3det <= 0.0):
        raise NotSpacelikeError("induced metric is not negative definite")
    weights = np.sqrt(g3det) * _cell_volume(bg)
    return Slice(background=bg, times=times, normal=normal, area_weights=weights,
                 label=label or f"x0={t0:.6g}")


def tilted_slice(bg: Background, t0: float, tilt: tuple[float, float, float],
                 pivot: tuple[float, float, float] | None = None,
                 label: str | None = None) -> Slice:
    """Plane x0 = t0 + v.(x - pivot) on the flat chart, |v| < 1.

    The unit future normal is (1, v)/sqrt(1 - |v|^2) and the induced area
    element sqrt(1 - |v|^2), so g(J, n) dS reduces to (J^0 - v.J) d3x.
    """
    if not bg.is_flat:
        raise NotSpacelikeError("tilted slices are only supported on the flat chart")
    v = np.asarray(tilt, dtype=float)
    v2 = float(v @ v)
    if v2 >= 1.0:
        raise NotSpacelikeError(f"tilt speed |v| = {np.sqrt(v2):.3f} is not subluminal")
    chart = bg.chart
    shape = chart.spatial_shape
    if pivot is None:
        pivot = tuple(
            float(chart.axes[ax + 1][0]) + 0.5 * len(chart.axes[ax + 1]) * chart.spacing[ax + 1]
            if len(chart.axes[ax + 1]) > 1 else float(chart.axes[ax + 1][0])
            for ax in range(3)
        )
    times = np.full(shape, float(t0))
    for ax in range(3):
        if v[ax] != 0.0:
            sh = [1, 1, 1]
            sh[ax] = shape[ax]
            times = times + v[ax] * (chart.axes[ax + 1].reshape(sh) - pivot[ax])
    gamma = 1.0 / np.sqrt(1.0 - v2)
    normal = np.zeros(shape + (4,))
    normal[..., 0] = gamma
    for ax in range(3):
        normal[..., ax + 1] = gamma * v[ax]
    weights = np.full(shape, np.sqrt(1.0 - v2) * _cell_volume(bg))
    return Slice(background=bg, times=times, normal=normal, area_weights=weights,
                 label=label or f"tilted v={tuple(v)}")


def sample_on_slice(psi: SpinorField, s: Slice) -> np.ndarray:
    """Spinor samples on the slice, cubic in time between stored snapshots."""
    tvals = np.unique(np.round(s.times, 12))
    out = np.empty(psi.values.shape[1:], dtype=psi.values.dtype)
    if len(tvals) == 1:
        return cubic_time_interpolate(psi.values, psi.taxis, float(tvals[0]))
    # Slice time varies along x1 only for the supported tilts; interpolate
    # column by column over the leading spatial axis.
    n1 = psi.values.shape[1]
    for i in range(n1):
        ti = s.times[i]
        t0 = float(ti.flat[0])
        if not np.allclose(ti, t0, rtol=0.0, atol=1e-12):
            raise NotImplementedError("slice times varying along x2/x3 are not supported")
        out[i] = cubic_time_interpolate(psi.values[:, i], psi.taxis, t0)
    return out


def _contract_with_normal(j_values: np.ndarray, s: Slice) -> np.ndarray:
    """g(J, n) pointwise in frame components (eta contraction)."""
    return (
        j_values[..., 0] * s.normal[..., 0]
        - j_values[..., 1] * s.normal[..., 1]
        - j_values[..., 2] * s.normal[..., 2]
        - j_values[..., 3] * s.normal[..., 3]
    )


def flux(j: CurrentField, s: Slice) -> float | complex:
    """Integral of g(J, n) over the slice.

    The current is interpolated onto the slice in time; the quadrature is the
    periodic rectangle rule weighted by the induced area element.  Summation
    runs over a fixed axis order, so results are reproducible bit for bit.
    """
    tvals = np.unique(np.round(s.times, 12))
    if len(tvals) == 1:
        js = cubic_time_interpolate(j.values, j.taxis, float(tvals[0]))
    else:
        js = np.empty(j.values.shape[1:], dtype=j.values.dtype)
        for i in range(j.values.shape[1]):
            ti = s.times[i]
            t0 = float(ti.flat[0])
            if not np.allclose(ti, t0, rtol=0.0, atol=1e-12):
                raise NotImplementedError("slice times varying along x2/x3 are not supported")
            js[i] = cubic_time_interpolate(j.values[:, i], j.taxis, t0)
    dens = _contract_with_normal(js, s) * s.area_weights
    total = np.sum(dens, axis=(1, 2)).sum()
    if np.iscomplexobj(dens):
        return complex(total)
    return float(total)


def inner(phi: SpinorField, psi: SpinorField, s: Slice,
          k: PhysicalConstants, gs: GammaSet | None = None) -> complex:
    """Hypersurface pairing <phi | psi> = integral of g(J(phi, psi), n) dS."""
    gs = gs if gs is not None else canonical_gamma_set()
    pv = sample_on_slice(phi, s)
    qv = sample_on_slice(psi, s)
    j = _raw_pair_current(pv, qv, k, gs)
    dens = _contract_with_normal(j, s) * s.area_weights
    return complex(np.sum(dens, axis=(1, 2)).sum())


@dataclass
class ModeBasis:
    """Ordered single-particle modes paired on a common slice."""

    modes: list[SpinorField]
    slice_: Slice
    constants: PhysicalConstants
    gamma_set: GammaSet = field(default_factory=canonical_gamma_set)

    def __len__(self) -> int:
        return len(self.modes)

    def gram(self, s: Slice | None = None) -> np.ndarray:
        s = s if s is not None else self.slice_
        n = len(self.modes)
        g = np.empty((n, n), dtype=np.complex128)
        for a in range(n):
            for b in range(n):
                g[a, b] = inner(self.modes[a], self.modes[b], s, self.constants, self.gamma_set)
        return g

    def orthonormality_residual(self, s: Slice | None = None) -> float:
        g = self.gram(s)
        return float(np.max(np.abs(g - np.eye(len(self.modes)))))


def orthonormalize(
    modes: list[SpinorField],
    s: Slice,
    k: PhysicalConstants,
    gs: GammaSet | None = None,
    rank_tol: float = 1e-10,
) -> list[SpinorField]:
    """Modified Gram-Schmidt under the hypersurface pairing.

    Subtracts projections sequentially and normalizes; raises
    RankDeficientModeError naming the first mode whose remainder norm falls
    below rank_tol times its incoming norm.
    """
    gs = gs if gs is not None else canonical_gamma_set()
    out: list[SpinorField] = []
    for idx, mode in enumerate(modes):
        work = mode
        incoming = np.sqrt(abs(inner(work, work, s, k, gs)))
        for prev in out:
            c = inner(prev, work, s, k, gs)
            work = work - c * prev
        nrm2 = inner(work, work, s, k, gs).real
        if incoming == 0.0 or nrm2 <= (rank_tol * incoming) ** 2:
            raise RankDeficientModeError(idx)
        out.append(work * (1.0 / np.sqrt(nrm2)))
    return out
