"""Magneto-electric tensors, particles, rotations, and polarization.

The magneto-electric response is a general (not necessarily symmetric) 3x3
dimensionless tensor chi0 plus three scalar field-induced response
coefficients attached to the driven xy component:

    chi_xy(E, B) = chi0_xy + kappa1*E_x*B_y + kappa2*E_x + kappa3*B_y

A particle is a cube of side ``size_a`` with mass ``density_rho * size_a**3``
exactly; any geometric shape factor is absorbed into the vacuum-model
prefactor.  Proper rotations transform chi0 by orthogonal conjugation; the
kappa coefficients are deliberately carried through unchanged (no
transformation law is defined for them here), and improper rotations are
rejected because the parity behaviour of a magneto-electric pseudo-tensor is
not modeled.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Mapping

import numpy as np

from .quantities import MASS, Quantity

__all__ = [
    "ORTHOGONALITY_TOL",
    "CHI0_SANITY_BOUND",
    "ImproperRotationError",
    "MagnetoElectricTensor",
    "Particle",
    "rotation_about",
    "rotate_tensor",
    "chi_effective",
    "polarization",
    "particle_mass",
    "tensor_to_dict",
    "tensor_from_dict",
    "particle_to_dict",
    "particle_from_dict",
]

ORTHOGONALITY_TOL = 1e-12
CHI0_SANITY_BOUND = 1.0


class ImproperRotationError(ValueError):
    """Raised for reflections (det = -1): the pseudo-tensor parity law is not modeled."""


def _as_matrix(values: object, name: str) -> np.ndarray:
    m = np.array(values, dtype=float)
    if m.shape == (9,):
        m = m.reshape(3, 3)
    if m.shape != (3, 3):
        raise ValueError(f"{name} must be a 3x3 matrix, got shape {m.shape}")
    if not np.all(np.isfinite(m)):
        raise ValueError(f"{name} entries must be finite")
    m.flags.writeable = False
    return m


def _check_proper_rotation(r: np.ndarray, tol: float = ORTHOGONALITY_TOL) -> None:
    if np.max(np.abs(r.T @ r - np.eye(3))) > tol:
        raise ValueError("rotation matrix is not orthogonal to tolerance")
    det = float(np.linalg.det(r))
    if abs(det + 1.0) <= 1e-6:
        raise ImproperRotationError("improper rotation (det = -1) rejected")
    if abs(det - 1.0) > tol:
        raise ValueError(f"rotation determinant {det} not +1 within {tol}")


@dataclass(frozen=True, eq=False)
class MagnetoElectricTensor:
    """Intrinsic chi0 (3x3, dimensionless) plus induced-response scalars."""

    chi0: np.ndarray
    kappa1: float = 0.0  # response per E*B product
    kappa2: float = 0.0  # response per E
    kappa3: float = 0.0  # response per B

    def __post_init__(self) -> None:
        m = _as_matrix(self.chi0, "chi0")
        if np.max(np.abs(m)) > CHI0_SANITY_BOUND:
            raise ValueError(
                f"|chi0| entries exceed sanity bound {CHI0_SANITY_BOUND}"
            )
        object.__setattr__(self, "chi0", m)
        for k in ("kappa1", "kappa2", "kappa3"):
            v = float(getattr(self, k))
            if not np.isfinite(v):
                raise ValueError(f"{k} must be finite")
            object.__setattr__(self, k, v)

    @classmethod
    def from_xy(
        cls,
        chi0_xy: float,
        kappa1: float = 0.0,
        kappa2: float = 0.0,
        kappa3: float = 0.0,
    ) -> "MagnetoElectricTensor":
        """Tensor with a single intrinsic xy component, the driven one."""
        m = np.zeros((3, 3))
        m[0, 1] = chi0_xy
        return cls(m, kappa1, kappa2, kappa3)

    @property
    def chi0_xy(self) -> float:
        return float(self.chi0[0, 1])

    def frobenius_norm(self) -> float:
        return float(np.linalg.norm(self.chi0))


@dataclass(frozen=True, eq=False)
class Particle:
    """A magneto-electric cube: size, density, response tensor, orientation."""

    size_a: float  # m
    density_rho: float  # kg/m^3
    tensor: MagnetoElectricTensor
    orientation: np.ndarray = field(default_factory=lambda: np.eye(3))
    epsilon: float = 1.0  # linear dielectric constant

    def __post_init__(self) -> None:
        if not (self.size_a > 0):
            raise ValueError("size_a must be positive")
        if not (self.density_rho > 0):
            raise ValueError("density_rho must be positive")
        if not (self.epsilon >= 1.0):
            raise ValueError("epsilon must be >= 1")
        r = _as_matrix(self.orientation, "orientation")
        _check_proper_rotation(r)
        object.__setattr__(self, "orientation", r)

    @property
    def mass(self) -> float:
        """Mass in kg; exactly density * size**3 (cube convention)."""
        return self.density_rho * self.size_a**3

    @property
    def oriented_tensor(self) -> MagnetoElectricTensor:
        """Response tensor expressed in the lab frame."""
        return rotate_tensor(self.tensor, self.orientation)

    @property
    def chi0_xy(self) -> float:
        """Lab-frame intrinsic xy component, the one driving momentum transfer."""
        return self.oriented_tensor.chi0_xy

    def rotated(self, r: np.ndarray) -> "Particle":
        """Particle after applying rotation ``r`` in the lab frame.

        The composed orientation is re-orthonormalized (nearest proper
        rotation via SVD) so long maneuver chains cannot drift.
        """
        m = np.asarray(r, dtype=float)
        _check_proper_rotation(m)
        composed = m @ self.orientation
        u, _, vt = np.linalg.svd(composed)
        nearest = u @ vt
        if np.linalg.det(nearest) < 0:  # numerically safe: inputs are proper
            nearest = u @ np.diag([1.0, 1.0, -1.0]) @ vt
        return replace(self, orientation=nearest)


def rotation_about(axis: object, angle: float) -> np.ndarray:
    """Proper rotation matrix for ``angle`` radians about ``axis`` (Rodrigues)."""
    v = np.asarray(axis, dtype=float)
    if v.shape != (3,):
        raise ValueError("axis must be a 3-vector")
    norm = float(np.linalg.norm(v))
    if norm == 0.0 or not np.isfinite(norm):
        raise ValueError("axis must be a finite nonzero vector")
    v = v / norm
    k = np.array(
        [
            [0.0, -v[2], v[1]],
            [v[2], 0.0, -v[0]],
            [-v[1], v[0], 0.0],
        ]
    )
    return np.eye(3) + np.sin(angle) * k + (1.0 - np.cos(angle)) * (k @ k)


def rotate_tensor(t: MagnetoElectricTensor, r: object) -> MagnetoElectricTensor:
    """Orthogonal conjugation chi0' = R chi0 R^T; kappas carried through unchanged."""
    m = np.asarray(r, dtype=float)
    if m.shape != (3, 3):
        raise ValueError("rotation must be a 3x3 matrix")
    _check_proper_rotation(m)
    return MagnetoElectricTensor(
        m @ t.chi0 @ m.T, t.kappa1, t.kappa2, t.kappa3
    )


def chi_effective(t: MagnetoElectricTensor, e_x: float, b_y: float) -> float:
    """Effective chi_xy: intrinsic plus field-induced terms."""
    if not (np.isfinite(e_x) and np.isfinite(b_y)):
        raise ValueError("fields must be finite")
    return t.chi0_xy + t.kappa1 * e_x * b_y + t.kappa2 * e_x + t.kappa3 * b_y


def polarization(p: Particle, e_x: float, b_y: float) -> float:
    """P_x = epsilon*E_x + chi_xy(E_x, B_y)*B_y in the canonical convention.

    Uses the particle's lab-frame tensor, so rotating the particle changes
    the magneto-electric contribution.
    """
    return p.epsilon * e_x + chi_effective(p.oriented_tensor, e_x, b_y) * b_y


def particle_mass(p: Particle) -> Quantity:
    """Particle mass as a dimension-tagged quantity (kg)."""
    return Quantity(p.mass, MASS)


# -- JSON serialization ------------------------------------------------------


def tensor_to_dict(t: MagnetoElectricTensor) -> dict:
    return {
        "chi0": [float(x) for x in t.chi0.reshape(9)],
        "kappa1": t.kappa1,
        "kappa2": t.kappa2,
        "kappa3": t.kappa3,
    }


def tensor_from_dict(d: Mapping) -> MagnetoElectricTensor:
    return MagnetoElectricTensor(
        chi0=np.array(d["chi0"], dtype=float).reshape(3, 3),
        kappa1=float(d.get("kappa1", 0.0)),
        kappa2=float(d.get("kappa2", 0.0)),
        kappa3=float(d.get("kappa3", 0.0)),
    )


def particle_to_dict(p: Particle) -> dict:
    d = tensor_to_dict(p.tensor)
    d.update(
        {
            "size_a_m": p.size_a,
            "density_kg_m3": p.density_rho,
            "epsilon": p.epsilon,
            "orientation": [float(x) for x in p.orientation.reshape(9)],
        }
    )
    return d


def particle_from_dict(d: Mapping) -> Particle:
    orientation = d.get("orientation")
    return Particle(
        size_a=float(d["size_a_m"]),
        density_rho=float(d["density_kg_m3"]),
        tensor=tensor_from_dict(d),
        orientation=(
            np.array(orientation, dtype=float).reshape(3, 3)
            if orientation is not None
            else np.eye(3)
        ),
        epsilon=float(d.get("epsilon", 1.0)),
    )
