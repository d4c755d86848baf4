"""Structured planar grids with a two-part boundary.

A grid is a uniform lattice of nodes covering a rectangle or a rasterized
disc.  Nodes are classified as outside, interior, or boundary; boundary
nodes are partitioned into a controlled part (gamma0) and a clamped part
(gamma1).  Interior nodes are inside nodes whose full 3x3 neighbourhood is
inside, so every finite-difference stencil used elsewhere sees only grid
values.
"""

from __future__ import annotations

import dataclasses
import json
from typing import Any

import numpy as np

GAMMA0 = 0
GAMMA1 = 1

MIN_NODES = 8


class GridError(ValueError):
    pass


@dataclasses.dataclass
class Grid:
    """Immutable-by-convention container for the discrete domain.

    Attributes
    ----------
    shape : (nx, ny) node counts.
    h : lattice spacing (same in both axes).
    origin : coordinates of node (0, 0).
    inside : bool mask, node belongs to the closed domain.
    interior : bool mask, inside with all 8 neighbours inside.
    boundary : bool mask, inside but not interior.
    gamma0 / gamma1 : partition of the boundary mask.
    normal : outward unit normal per boundary node (zero elsewhere).
    spec : JSON-serializable build description for round-tripping.
    """

    shape: tuple[int, int]
    h: float
    origin: tuple[float, float]
    inside: np.ndarray
    interior: np.ndarray
    boundary: np.ndarray
    gamma0: np.ndarray
    gamma1: np.ndarray
    normal: np.ndarray
    spec: dict[str, Any]

    def xy(self) -> tuple[np.ndarray, np.ndarray]:
        nx, ny = self.shape
        xs = self.origin[0] + self.h * np.arange(nx)
        ys = self.origin[1] + self.h * np.arange(ny)
        return np.meshgrid(xs, ys, indexing="ij")

    def points(self) -> np.ndarray:
        """Node coordinates as an (nx, ny, 2) array."""
        X, Y = self.xy()
        return np.stack([X, Y], axis=-1)

    def nearest_node(self, point) -> tuple[int, int]:
        i = int(round((point[0] - self.origin[0]) / self.h))
        j = int(round((point[1] - self.origin[1]) / self.h))
        i = min(max(i, 0), self.shape[0] - 1)
        j = min(max(j, 0), self.shape[1] - 1)
        if not self.inside[i, j]:
            raise GridError(f"point {point!r} maps to node outside the domain")
        return i, j

    def boundary_cycle(self) -> np.ndarray:
        """Boundary nodes ordered counterclockwise around the centroid.

        Valid for the convex shapes supported here.  Returns an (m, 2)
        integer array of node indices.
        """
        idx = np.argwhere(self.boundary)
        pts = self.origin + self.h * idx
        X, Y = self.xy()
        cx = X[self.inside].mean()
        cy = Y[self.inside].mean()
        ang = np.arctan2(pts[:, 1] - cy, pts[:, 0] - cx)
        order = np.lexsort((np.hypot(pts[:, 0] - cx, pts[:, 1] - cy), ang))
        return idx[order]

    def validate(self) -> None:
        if (self.gamma0 & self.gamma1).any():
            raise GridError("gamma0 and gamma1 overlap")
        if ((self.gamma0 | self.gamma1) != self.boundary).any():
            raise GridError("gamma0 and gamma1 do not cover the boundary")
        nrm = np.linalg.norm(self.normal[self.boundary], axis=-1)
        if np.abs(nrm - 1.0).max() > 1e-12:
            raise GridError("boundary normals are not unit length")
        if not self.gamma0.any():
            raise GridError("control part of the boundary is empty")

    def to_json(self) -> str:
        return json.dumps(self.spec, sort_keys=True)


def _classify(inside: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Split inside nodes into interior (full 3x3 inside) and boundary."""
    nx, ny = inside.shape
    padded = np.zeros((nx + 2, ny + 2), dtype=bool)
    padded[1:-1, 1:-1] = inside
    full = np.ones_like(inside)
    for di in (-1, 0, 1):
        for dj in (-1, 0, 1):
            full &= padded[1 + di : nx + 1 + di, 1 + dj : ny + 1 + dj]
    interior = inside & full
    boundary = inside & ~interior
    return interior, boundary


def rectangle_grid(
    width: float = 1.0,
    height: float = 1.0,
    h: float = 1 / 32,
    origin: tuple[float, float] = (0.0, 0.0),
    gamma1_edges: tuple[str, ...] = (),
) -> Grid:
    """Axis-aligned rectangle.  gamma1_edges lists clamped edges out of
    {"left", "right", "bottom", "top"}; corner nodes clamp if either of
    their edges does."""
    nx = int(round(width / h)) + 1
    ny = int(round(height / h)) + 1
    if abs((nx - 1) * h - width) > 1e-9 * max(1.0, width):
        raise GridError("width is not an integer number of spacings")
    if abs((ny - 1) * h - height) > 1e-9 * max(1.0, height):
        raise GridError("height is not an integer number of spacings")
    if nx < MIN_NODES or ny < MIN_NODES:
        raise GridError(f"resolution below minimum ({MIN_NODES} nodes per axis)")
    bad = set(gamma1_edges) - {"left", "right", "bottom", "top"}
    if bad:
        raise GridError(f"unknown edges: {sorted(bad)}")

    inside = np.ones((nx, ny), dtype=bool)
    interior, boundary = _classify(inside)

    normal = np.zeros((nx, ny, 2))
    ii, jj = np.meshgrid(np.arange(nx), np.arange(ny), indexing="ij")
    on = {
        "left": ii == 0,
        "right": ii == nx - 1,
        "bottom": jj == 0,
        "top": jj == ny - 1,
    }
    direction = {
        "left": (-1.0, 0.0),
        "right": (1.0, 0.0),
        "bottom": (0.0, -1.0),
        "top": (0.0, 1.0),
    }
    for name, mask in on.items():
        normal[mask & boundary] += direction[name]
    nrm = np.linalg.norm(normal, axis=-1, keepdims=True)
    nrm[nrm == 0] = 1.0
    normal = normal / nrm

    gamma1 = np.zeros((nx, ny), dtype=bool)
    for name in gamma1_edges:
        gamma1 |= on[name] & boundary
    gamma0 = boundary & ~gamma1

    grid = Grid(
        shape=(nx, ny),
        h=h,
        origin=origin,
        inside=inside,
        interior=interior,
        boundary=boundary,
        gamma0=gamma0,
        gamma1=gamma1,
        normal=normal,
        spec={
            "kind": "rectangle",
            "width": width,
            "height": height,
            "h": h,
            "origin": list(origin),
            "gamma1_edges": sorted(gamma1_edges),
        },
    )
    grid.validate()
    return grid


def disc_grid(
    radius: float = 1.0,
    h: float = 1 / 32,
    center: tuple[float, float] = (0.0, 0.0),
    gamma1_angles: tuple[float, float] | None = None,
) -> Grid:
    """Rasterized disc: a node is inside iff its center lies within the
    radius.  Normals are the exact radial directions, not staircase
    normals.  gamma1_angles = (a0, a1) clamps boundary nodes whose polar
    angle lies in [a0, a1] (radians, in (-pi, pi])."""
    n_half = int(round(radius / h))
    if abs(n_half * h - radius) > 1e-9 * radius:
        raise GridError("radius is not an integer number of spacings")
    nx = ny = 2 * n_half + 1
    if nx < MIN_NODES:
        raise GridError(f"resolution below minimum ({MIN_NODES} nodes per axis)")
    origin = (center[0] - radius, center[1] - radius)

    xs = origin[0] + h * np.arange(nx)
    ys = origin[1] + h * np.arange(ny)
    X, Y = np.meshgrid(xs, ys, indexing="ij")
    r2 = (X - center[0]) ** 2 + (Y - center[1]) ** 2
    inside = r2 <= radius**2 * (1 + 1e-12)
    interior, boundary = _classify(inside)

    normal = np.zeros((nx, ny, 2))
    rx = X - center[0]
    ry = Y - center[1]
    r = np.sqrt(r2)
    r_safe = np.where(r == 0, 1.0, r)
    normal[..., 0] = np.where(boundary, rx / r_safe, 0.0)
    normal[..., 1] = np.where(boundary, ry / r_safe, 0.0)
    # A boundary node exactly at the center cannot happen for nx >= 8.

    gamma1 = np.zeros((nx, ny), dtype=bool)
    if gamma1_angles is not None:
        a0, a1 = gamma1_angles
        ang = np.arctan2(ry, rx)
        gamma1 = boundary & (ang >= a0) & (ang <= a1)
    gamma0 = boundary & ~gamma1

    grid = Grid(
        shape=(nx, ny),
        h=h,
        origin=origin,
        inside=inside,
        interior=interior,
        boundary=boundary,
        gamma0=gamma0,
        gamma1=gamma1,
        normal=normal,
        spec={
            "kind": "disc",
            "radius": radius,
            "h": h,
            "center": list(center),
            "gamma1_angles": list(gamma1_angles) if gamma1_angles else None,
        },
    )
    grid.validate()
    return grid


def build_grid(spec: dict[str, Any]) -> Grid:
    """Rebuild a grid from its serialized spec."""
    kind = spec.get("kind")
    if kind == "rectangle":
        return rectangle_grid(
            width=spec["width"],
            height=spec["height"],
            h=spec["h"],
            origin=tuple(spec.get("origin", (0.0, 0.0))),
            gamma1_edges=tuple(spec.get("gamma1_edges", ())),
        )
    if kind == "disc":
        ga = spec.get("gamma1_angles")
        return disc_grid(
            radius=spec["radius"],
            h=spec["h"],
            center=tuple(spec.get("center", (0.0, 0.0))),
            gamma1_angles=tuple(ga) if ga else None,
        )
    raise GridError(f"unknown grid kind: {kind!r}")
