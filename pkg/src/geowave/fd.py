"""Finite differences on masked lattices.

All operators act on full (nx, ny) arrays and use the grid's inside mask
to decide which stencil applies: centered where both axis neighbours are
inside, one-sided second order where two same-side neighbours exist,
one-sided first order as a last resort.  Values at outside nodes are
never read.
"""

from __future__ import annotations

import numpy as np

from .grid import Grid


def shift(a: np.ndarray, d: int, axis: int, fill=0.0) -> np.ndarray:
    """a shifted so that shift(a, d, axis)[i] = a[i + d], zero filled."""
    out = np.full_like(a, fill)
    n = a.shape[axis]
    if abs(d) >= n:
        return out
    src = [slice(None)] * a.ndim
    dst = [slice(None)] * a.ndim
    if d >= 0:
        src[axis] = slice(d, n)
        dst[axis] = slice(0, n - d)
    else:
        src[axis] = slice(0, n + d)
        dst[axis] = slice(-d, n)
    out[tuple(dst)] = a[tuple(src)]
    return out


def _axis_derivative(f: np.ndarray, inside: np.ndarray, h: float, axis: int) -> np.ndarray:
    fp = shift(f, 1, axis)
    fm = shift(f, -1, axis)
    fp2 = shift(f, 2, axis)
    fm2 = shift(f, -2, axis)
    hasp = shift(inside, 1, axis, fill=False)
    hasm = shift(inside, -1, axis, fill=False)
    hasp2 = shift(inside, 2, axis, fill=False)
    hasm2 = shift(inside, -2, axis, fill=False)

    out = np.zeros_like(f)
    centered = inside & hasp & hasm
    fwd2 = inside & ~hasm & hasp & hasp2
    bwd2 = inside & ~hasp & hasm & hasm2
    fwd1 = inside & ~hasm & hasp & ~hasp2
    bwd1 = inside & ~hasp & hasm & ~hasm2

    out[centered] = (fp[centered] - fm[centered]) / (2 * h)
    out[fwd2] = (-3 * f[fwd2] + 4 * fp[fwd2] - fp2[fwd2]) / (2 * h)
    out[bwd2] = (3 * f[bwd2] - 4 * fm[bwd2] + fm2[bwd2]) / (2 * h)
    out[fwd1] = (fp[fwd1] - f[fwd1]) / h
    out[bwd1] = (f[bwd1] - fm[bwd1]) / h
    return out


def gradient(f: np.ndarray, grid: Grid) -> np.ndarray:
    """Second-order gradient, (nx, ny, 2); zero at outside nodes."""
    if f.shape != grid.shape:
        raise ValueError(f"field shape {f.shape} does not match grid {grid.shape}")
    gx = _axis_derivative(f, grid.inside, grid.h, 0)
    gy = _axis_derivative(f, grid.inside, grid.h, 1)
    return np.stack([gx, gy], axis=-1)


def d1_centered(f: np.ndarray, grid: Grid, axis: int) -> tuple[np.ndarray, np.ndarray]:
    """Centered first difference and its validity mask."""
    fp = shift(f, 1, axis)
    fm = shift(f, -1, axis)
    ok = grid.inside & shift(grid.inside, 1, axis, fill=False) & shift(
        grid.inside, -1, axis, fill=False
    )
    out = np.zeros_like(f)
    out[ok] = (fp[ok] - fm[ok]) / (2 * grid.h)
    return out, ok


def d2_axis(f: np.ndarray, grid: Grid, axis: int) -> tuple[np.ndarray, np.ndarray]:
    """Centered second difference along one axis and its validity mask."""
    fp = shift(f, 1, axis)
    fm = shift(f, -1, axis)
    ok = grid.inside & shift(grid.inside, 1, axis, fill=False) & shift(
        grid.inside, -1, axis, fill=False
    )
    out = np.zeros_like(f)
    out[ok] = (fp[ok] - 2 * f[ok] + fm[ok]) / grid.h**2
    return out, ok


def d2_cross(f: np.ndarray, grid: Grid) -> tuple[np.ndarray, np.ndarray]:
    """Centered mixed derivative using the four diagonal neighbours."""
    fpp = shift(shift(f, 1, 0), 1, 1)
    fpm = shift(shift(f, 1, 0), -1, 1)
    fmp = shift(shift(f, -1, 0), 1, 1)
    fmm = shift(shift(f, -1, 0), -1, 1)
    ok = grid.inside.copy()
    for di in (-1, 1):
        for dj in (-1, 1):
            ok &= shift(shift(grid.inside, di, 0, fill=False), dj, 1, fill=False)
    out = np.zeros_like(f)
    out[ok] = (fpp[ok] - fpm[ok] - fmp[ok] + fmm[ok]) / (4 * grid.h**2)
    return out, ok


def hessian(f: np.ndarray, grid: Grid) -> tuple[np.ndarray, np.ndarray]:
    """Centered Hessian, (nx, ny, 2, 2), with the joint validity mask."""
    fxx, ok1 = d2_axis(f, grid, 0)
    fyy, ok2 = d2_axis(f, grid, 1)
    fxy, ok3 = d2_cross(f, grid)
    H = np.zeros(grid.shape + (2, 2))
    H[..., 0, 0] = fxx
    H[..., 1, 1] = fyy
    H[..., 0, 1] = fxy
    H[..., 1, 0] = fxy
    return H, ok1 & ok2 & ok3


def norm_l2(f: np.ndarray, grid: Grid, mask: np.ndarray | None = None) -> float:
    """Discrete L2 norm, node quadrature weight h^2."""
    m = grid.inside if mask is None else mask
    return float(np.sqrt(grid.h**2 * np.sum(f[m] ** 2)))
