"""Zero-point field model: cutoff, <B^2>, vacuum momentum, mode-sum oracle.

The zero-point spectrum is the standard Lorentz-invariant one: spectral
energy density hbar*w^3/(2 pi^2 c^3) per unit volume and angular frequency,
with <E^2> = <B^2> equipartition in the Gaussian convention.  A body of size
``a`` couples only to modes below a cutoff wavenumber set by its size; the
boundary convention (lambda_min = a versus lambda_min = 2a) is an explicit
parameter because only the scale, not the constant, is physically pinned.

Two independent routes to the stored vacuum momentum are provided:

* ``vacuum_momentum_closed_form``: p = A * hbar * chi / a, with the single
  dimensionless prefactor ``A`` absorbing all geometry and convention
  factors (default 1e-2).

* ``mode_sum_oracle``: a discretized sum over vacuum modes on a Cartesian
  k-grid.  Each counter-propagating mode pair acquires a fractional momentum
  asymmetry chi * (k_hat . e_hat), directed along its own propagation
  direction, weighted by the half-quantum momentum hbar*|k|/2 and the mode
  count a^3 dk^3/(2 pi)^3, doubled for the two polarizations.  This is a
  scaling oracle: it reproduces linearity in chi and the 1/a law, and its
  grid-converged prefactor is reported as ``effective_A``; it is not a
  renormalized QED calculation and is not expected to reproduce A = 1e-2
  exactly.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass
from enum import Enum
from pathlib import Path
from typing import Iterable, Sequence, Union

import numpy as np

from .quantities import (
    ENERGY_DENSITY,
    LENGTH,
    MOMENTUM,
    C_M_S,
    HBAR_J_S,
    Quantity,
    si_value,
)

__all__ = [
    "CutoffConvention",
    "VacuumModel",
    "ModeGrid",
    "vacuum_b_squared",
    "vacuum_momentum_closed_form",
    "mode_sum_oracle",
    "convergence_study",
    "ORACLE_CSV_HEADER",
]

ORACLE_CSV_HEADER = ("n_per_axis", "a_m", "chi", "p_kg_m_s", "effective_A")


class CutoffConvention(Enum):
    """Maps particle size to the cutoff wavenumber of contributing modes."""

    WAVELENGTH_EQUALS_SIZE = "wavelength-equals-size"  # lambda_min = a
    HALF_WAVELENGTH = "half-wavelength"  # lambda_min = 2a

    def k_cut(self, a: float) -> float:
        if self is CutoffConvention.WAVELENGTH_EQUALS_SIZE:
            return 2.0 * math.pi / a
        return math.pi / a


@dataclass(frozen=True)
class VacuumModel:
    """Calibration of the vacuum-momentum closed forms."""

    prefactor_a: float = 1e-2
    cutoff: CutoffConvention = CutoffConvention.WAVELENGTH_EQUALS_SIZE

    def __post_init__(self) -> None:
        if not (self.prefactor_a > 0):
            raise ValueError("prefactor_a must be positive")

    def omega_cut(self, a: float) -> float:
        """Cutoff angular frequency c * k_cut for a body of size ``a``."""
        if not (a > 0):
            raise ValueError("size must be positive")
        return C_M_S * self.cutoff.k_cut(a)


@dataclass(frozen=True)
class ModeGrid:
    """Cubic k-space lattice covering the ball |k| <= k_cut symmetrically."""

    n_per_axis: int
    k_cut: float  # 1/m

    def __post_init__(self) -> None:
        if self.n_per_axis < 8:
            raise ValueError("n_per_axis must be >= 8")
        if not (self.k_cut > 0):
            raise ValueError("k_cut must be positive")

    @property
    def dk(self) -> float:
        return self.k_cut / self.n_per_axis

    @classmethod
    def for_particle(
        cls,
        a: float,
        n_per_axis: int,
        convention: CutoffConvention = CutoffConvention.HALF_WAVELENGTH,
    ) -> "ModeGrid":
        if not (a > 0):
            raise ValueError("size must be positive")
        return cls(n_per_axis=n_per_axis, k_cut=convention.k_cut(a))


def vacuum_b_squared(
    a: Union[Quantity, float], model: VacuumModel
) -> Quantity:
    """<B^2_vac> below the size cutoff, Gaussian convention.

    Closed-form integral of the zero-point spectral density up to the
    cutoff: hbar * w_cut^4 / (2 pi c^3).  Scales as 1/a^4.
    """
    a_m = si_value(a, LENGTH, "a")
    if not (a_m > 0):
        raise ValueError("size must be positive")
    w_cut = C_M_S * model.cutoff.k_cut(a_m)
    return Quantity(HBAR_J_S * w_cut**4 / (2.0 * math.pi * C_M_S**3), ENERGY_DENSITY)


def vacuum_momentum_closed_form(
    chi_xy: float, a: Union[Quantity, float], model: VacuumModel
) -> Quantity:
    """Stored vacuum momentum p = A * hbar * chi / a (kg m/s).

    Signed with chi; the direction is by convention the z-like axis dual to
    the (x, y) component pair.
    """
    a_m = si_value(a, LENGTH, "a")
    if not (a_m > 0):
        raise ValueError("size must be positive")
    return Quantity(model.prefactor_a * HBAR_J_S * chi_xy / a_m, MOMENTUM)


def _slab_geometry_sums(grid: ModeGrid) -> Iterable[float]:
    """Per-slab partial sums of m_z^2 / |m| over the integer lattice ball.

    Slabs are constant-i planes (i the x index), so partial sums may be
    computed concurrently and reduced in any order; results are identical up
    to float reassociation.
    """
    n = grid.n_per_axis
    idx = np.arange(-n, n + 1)
    jj, kk = np.meshgrid(idx, idx, indexing="ij")
    jj2kk2 = jj * jj + kk * kk
    kk2 = (kk * kk).astype(float)
    for i in range(-n, n + 1):
        r2 = i * i + jj2kk2
        mask = (r2 <= n * n) & (r2 > 0)
        if not np.any(mask):
            yield 0.0
            continue
        r = np.sqrt(r2[mask].astype(float))
        yield float(np.sum(kk2[mask] / r))


def mode_sum_oracle(
    chi_xy: float,
    a: Union[Quantity, float],
    grid: ModeGrid,
    axis_sign: int = +1,
) -> tuple[Quantity, float]:
    """Discretized vacuum-mode momentum sum and its extracted prefactor.

    Returns ``(p, effective_A)`` where ``p`` is the net momentum along the
    distinguished (z-like) axis and ``effective_A = |p| a / (hbar |chi|)``,
    computed from the chi-independent geometric sum so it is defined for all
    chi.  ``axis_sign = -1`` reflects the distinguished axis, flipping the
    sign of the momentum exactly.
    """
    if axis_sign not in (+1, -1):
        raise ValueError("axis_sign must be +1 or -1")
    a_m = si_value(a, LENGTH, "a")
    if not (a_m > 0):
        raise ValueError("size must be positive")
    partials = list(_slab_geometry_sums(grid))
    geometry = math.fsum(partials)
    if geometry == 0.0:
        raise ValueError("mode grid contains no modes inside the cutoff ball")
    dk = grid.dk
    # mode weight a^3 dk^3/(2 pi)^3, momentum hbar|k|/2, two polarizations
    effective_a = (dk * a_m / (2.0 * math.pi)) ** 3 * dk * a_m * geometry
    p = axis_sign * chi_xy * (HBAR_J_S / a_m) * effective_a
    return Quantity(p, MOMENTUM), effective_a


def convergence_study(
    chi_xy: float,
    sizes_m: Sequence[float],
    n_values: Sequence[int],
    convention: CutoffConvention = CutoffConvention.HALF_WAVELENGTH,
    out: Union[str, Path, io.TextIOBase, None] = None,
) -> list[dict]:
    """Run the oracle over a (size, resolution) grid; optionally emit CSV.

    CSV columns: n_per_axis, a_m, chi, p_kg_m_s, effective_A.
    """
    rows = []
    for n in n_values:
        for a_m in sizes_m:
            grid = ModeGrid.for_particle(a_m, n, convention)
            p, eff_a = mode_sum_oracle(chi_xy, a_m, grid)
            rows.append(
                {
                    "n_per_axis": n,
                    "a_m": a_m,
                    "chi": chi_xy,
                    "p_kg_m_s": p.value,
                    "effective_A": eff_a,
                }
            )
    if out is not None:
        if isinstance(out, (str, Path)):
            with open(out, "w", newline="") as fh:
                _write_csv(fh, rows)
        else:
            _write_csv(out, rows)
    return rows


def _write_csv(fh, rows: list[dict]) -> None:
    writer = csv.DictWriter(fh, fieldnames=list(ORACLE_CSV_HEADER))
    writer.writeheader()
    for row in rows:
        writer.writerow({k: repr(v) if isinstance(v, float) else v for k, v in row.items()})
