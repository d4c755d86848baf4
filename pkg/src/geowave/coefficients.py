"""Coefficient models for the wave operator.

A model describes either a matrix form (matrix A(x, y) and scalar b(x, y)
acting as sum_ij a_ij d_ij u + b) or a flux form (vector field a(x, y)
acting as div a(x, grad u)).  Here x is a point in the plane and y stands
for the gradient slot.  All families are closed-form, so the y-derivatives
needed by linearizations are exact.

For flux-form models A is the Jacobian (d a_i / d y_j) and b collects the
explicit-x divergence, which turns div a(x, grad u) into the matrix form;
one solver path then serves both.
"""

from __future__ import annotations

import dataclasses
import json
from typing import Any

import numpy as np

_FAMILIES = ("iso_plus", "iso_inv", "const", "div_iso", "poly")


class CoefficientError(ValueError):
    pass


def _eye_like(y: np.ndarray) -> np.ndarray:
    out = np.zeros(y.shape[:-1] + (2, 2))
    out[..., 0, 0] = 1.0
    out[..., 1, 1] = 1.0
    return out


def _poly_eval(terms, x, y):
    # terms: list of (c, p1, p2, q1, q2) -> c * x1^p1 x2^p2 y1^q1 y2^q2
    out = np.zeros(y.shape[:-1])
    for c, p1, p2, q1, q2 in terms:
        out = out + c * x[..., 0] ** p1 * x[..., 1] ** p2 * y[..., 0] ** q1 * y[..., 1] ** q2
    return out


def _poly_dy(terms, which):
    # d/dy_which of a term list, as a new term list
    out = []
    for c, p1, p2, q1, q2 in terms:
        if which == 0 and q1 > 0:
            out.append((c * q1, p1, p2, q1 - 1, q2))
        if which == 1 and q2 > 0:
            out.append((c * q2, p1, p2, q1, q2 - 1))
    return out


@dataclasses.dataclass
class CoefficientModel:
    """One of the built-in coefficient families.

    family:
      iso_plus  A = (|y|^2 + 1) I,      b = 0
      iso_inv   A = (|y|^2 + 1)^-1 I,   b = 0
      const     A = given SPD matrix,   b = 0
      div_iso   flux a(x, y) = (|y|^2 + 1) y  (flux form)
      poly      entries of A and b as polynomial term lists in (x, y)
    """

    family: str
    params: dict[str, Any] = dataclasses.field(default_factory=dict)

    def __post_init__(self):
        if self.family not in _FAMILIES:
            raise CoefficientError(f"unknown family {self.family!r}")
        if self.family == "const":
            m = np.asarray(self.params.get("matrix", [[1.0, 0.0], [0.0, 1.0]]), dtype=float)
            if m.shape != (2, 2) or abs(m[0, 1] - m[1, 0]) > 1e-14:
                raise CoefficientError("const family needs a symmetric 2x2 matrix")
            self.params = {"matrix": m.tolist()}
        if self.family == "poly":
            for key in ("a11", "a12", "a22", "b"):
                self.params.setdefault(key, [])

    # ------------------------------------------------------------------
    @property
    def form(self) -> str:
        return "divergence" if self.family == "div_iso" else "dirichlet"

    def A(self, x: np.ndarray, y: np.ndarray) -> np.ndarray:
        """Matrix coefficient (Jacobian of the flux for flux-form models)."""
        if self.family == "iso_plus":
            s = 1.0 + np.sum(y**2, axis=-1)
            return s[..., None, None] * _eye_like(y)
        if self.family == "iso_inv":
            s = 1.0 + np.sum(y**2, axis=-1)
            return (1.0 / s)[..., None, None] * _eye_like(y)
        if self.family == "const":
            m = np.asarray(self.params["matrix"])
            return np.broadcast_to(m, y.shape[:-1] + (2, 2)).copy()
        if self.family == "div_iso":
            s = 1.0 + np.sum(y**2, axis=-1)
            out = s[..., None, None] * _eye_like(y)
            out += 2.0 * y[..., :, None] * y[..., None, :]
            return out
        out = np.zeros(y.shape[:-1] + (2, 2))
        out[..., 0, 0] = _poly_eval(self.params["a11"], x, y)
        out[..., 0, 1] = out[..., 1, 0] = _poly_eval(self.params["a12"], x, y)
        out[..., 1, 1] = _poly_eval(self.params["a22"], x, y)
        return out

    def b(self, x: np.ndarray, y: np.ndarray) -> np.ndarray:
        if self.family == "poly":
            return _poly_eval(self.params["b"], x, y)
        return np.zeros(y.shape[:-1])

    def dA_dy(self, x: np.ndarray, y: np.ndarray) -> np.ndarray:
        """(..., 2, 2, 2) array, entry [i, j, l] = d a_ij / d y_l."""
        out = np.zeros(y.shape[:-1] + (2, 2, 2))
        eye = _eye_like(y)
        if self.family == "iso_plus":
            for l in range(2):
                out[..., l] = 2.0 * y[..., l, None, None] * eye
        elif self.family == "iso_inv":
            s = 1.0 + np.sum(y**2, axis=-1)
            for l in range(2):
                out[..., l] = (-2.0 * y[..., l] / s**2)[..., None, None] * eye
        elif self.family == "div_iso":
            for l in range(2):
                term = 2.0 * y[..., l, None, None] * eye
                el = np.zeros(2)
                el[l] = 1.0
                term += 2.0 * (el[:, None] * y[..., None, :] + y[..., :, None] * el[None, :])
                out[..., l] = term
        elif self.family == "poly":
            for l in range(2):
                out[..., 0, 0, l] = _poly_eval(_poly_dy(self.params["a11"], l), x, y)
                a12 = _poly_eval(_poly_dy(self.params["a12"], l), x, y)
                out[..., 0, 1, l] = a12
                out[..., 1, 0, l] = a12
                out[..., 1, 1, l] = _poly_eval(_poly_dy(self.params["a22"], l), x, y)
        return out

    def db_dy(self, x: np.ndarray, y: np.ndarray) -> np.ndarray:
        out = np.zeros(y.shape)
        if self.family == "poly":
            for l in range(2):
                out[..., l] = _poly_eval(_poly_dy(self.params["b"], l), x, y)
        return out

    def flux(self, x: np.ndarray, y: np.ndarray) -> np.ndarray:
        """Flux vector a(x, y) for flux-form models."""
        if self.family != "div_iso":
            raise CoefficientError(f"family {self.family!r} has no flux form")
        s = 1.0 + np.sum(y**2, axis=-1)
        return s[..., None] * y

    # ------------------------------------------------------------------
    def check_wellposed(self, grid=None, n_y: int = 10, y_range: float = 2.0) -> None:
        """Probe SPD-ness of A and the zero conditions b(x, 0) = 0 and
        a(x, 0) = 0 on a lattice of gradient values; raises on failure."""
        if grid is None:
            xs = np.linspace(-1.0, 1.0, 5)
            X, Y = np.meshgrid(xs, xs, indexing="ij")
        else:
            X, Y = grid.xy()
            step = max(1, X.shape[0] // 10)
            X, Y = X[::step, ::step], Y[::step, ::step]
        x = np.stack([X, Y], axis=-1).reshape(-1, 2)
        ys = np.linspace(-y_range, y_range, n_y)
        Y1, Y2 = np.meshgrid(ys, ys, indexing="ij")
        yv = np.stack([Y1, Y2], axis=-1).reshape(-1, 2)

        xx = np.repeat(x, len(yv), axis=0)
        yy = np.tile(yv, (len(x), 1))
        A = self.A(xx, yy)
        tr = A[..., 0, 0] + A[..., 1, 1]
        det = A[..., 0, 0] * A[..., 1, 1] - A[..., 0, 1] * A[..., 1, 0]
        min_eig = tr / 2 - np.sqrt(np.maximum(tr**2 / 4 - det, 0.0))
        if min_eig.min() <= 0:
            raise CoefficientError(
                f"A(x, y) not positive definite on probe set (min eig {min_eig.min():.3e})"
            )
        zero = np.zeros_like(x)
        if np.abs(self.b(x, zero)).max() > 1e-12:
            raise CoefficientError("b(x, 0) != 0 on probe set")
        if self.form == "divergence" and np.abs(self.flux(x, zero)).max() > 1e-12:
            raise CoefficientError("flux a(x, 0) != 0 on probe set")

    # ------------------------------------------------------------------
    def to_json(self) -> str:
        return json.dumps({"family": self.family, "params": self.params}, sort_keys=True)

    @classmethod
    def from_json(cls, text: str) -> "CoefficientModel":
        data = json.loads(text)
        return cls(family=data["family"], params=data.get("params", {}))


def first_order_coefficients(model: CoefficientModel, x: np.ndarray, y: np.ndarray,
                             hess: np.ndarray) -> np.ndarray:
    """Vector field multiplying grad v in the linearization at a state with
    gradient y and Hessian hess: F_l = sum_ij (d a_ij/d y_l) hess_ij + d b/d y_l."""
    dA = model.dA_dy(x, y)
    F = np.einsum("...ijl,...ij->...l", dA, hess)
    return F + model.db_dy(x, y)
