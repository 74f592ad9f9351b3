"""Fourth-order finite differences and time interpolation on uniform grids."""

from __future__ import annotations

import numpy as np

__all__ = ["differentiate", "cubic_time_interpolate"]

# Integer numerators of the O(h^4) first-derivative weights; the common
# denominator 12 h is divided out once at the end so that constant data
# differentiates to exact zero.
_CENTRAL = (1, -8, 0, 8, -1)      # offsets -2..2
_EDGE0 = (-25, 48, -36, 16, -3)   # offsets 0..4
_EDGE1 = (-3, -10, 18, -6, 1)     # offsets -1..3


def differentiate(values: np.ndarray, axis: int, spacing: float, periodic: bool) -> np.ndarray:
    """d/dx along one grid axis.

    Size-1 axes are treated as suppressed directions and return zeros.
    Periodic axes use the central stencil with wraparound; otherwise the two
    points nearest each end fall back to one-sided stencils of the same order.
    """
    n = values.shape[axis]
    if n == 1:
        return np.zeros_like(values)
    if n < 5:
        raise ValueError(f"axis {axis} has {n} nodes, need at least 5 for the stencil")

    if periodic:
        out = np.zeros_like(values)
        for shift, w in zip((2, 1, -1, -2), (_CENTRAL[0], _CENTRAL[1], _CENTRAL[3], _CENTRAL[4])):
            out += w * np.roll(values, shift, axis=axis)
        return out / (12.0 * spacing)

    moved = np.moveaxis(values, axis, 0)
    out = np.zeros_like(moved)
    for k, w in enumerate(_CENTRAL):
        if w == 0:
            continue
        out[2 : n - 2] += w * moved[2 + (k - 2) : n - 2 + (k - 2)]
    for k, w in enumerate(_EDGE0):
        out[0] += w * moved[k]
        out[n - 1] -= w * moved[n - 1 - k]
    for k, w in enumerate(_EDGE1):
        out[1] += w * moved[k]
        out[n - 2] -= w * moved[n - 1 - k]
    return np.moveaxis(out, 0, axis) / (12.0 * spacing)


def cubic_time_interpolate(values: np.ndarray, taxis: np.ndarray, t: float) -> np.ndarray:
    """Cubic Lagrange interpolation along the leading (time) axis.

    ``values`` has shape (nt, ...); snapshots are at the uniformly spaced
    ``taxis`` nodes.  ``t`` must lie inside the sampled range.
    """
    nt = len(taxis)
    if values.shape[0] != nt:
        raise ValueError("time axis length does not match the value array")
    t0, t1 = float(taxis[0]), float(taxis[-1])
    tol = 1e-9 * max(1.0, abs(t0), abs(t1))
    if t < t0 - tol or t > t1 + tol:
        raise ValueError(f"time {t} outside the sampled range [{t0}, {t1}]")
    if nt == 1:
        return values[0].copy()

    dt = float(taxis[1] - taxis[0])
    pos = (t - t0) / dt
    nearest = int(round(pos))
    if abs(pos - nearest) < 1e-12 and 0 <= nearest < nt:
        return values[nearest].copy()
    if nt < 4:
        raise ValueError("need at least 4 snapshots for cubic interpolation")

    first = int(np.floor(pos)) - 1
    first = min(max(first, 0), nt - 4)
    ts = taxis[first : first + 4]
    out = np.zeros_like(values[0])
    for j in range(4):
        w = 1.0
        for m in range(4):
            if m != j:
                w *= (t - ts[m]) / (ts[j] - ts[m])
        out = out + w * values[first + j]
    return out
