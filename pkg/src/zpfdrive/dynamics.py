"""Forces, momentum-extraction channels, maneuver delta-v, and bookkeeping.

Force evaluation works on uniformly sampled field time series in the
canonical normalized convention: the driving force is

    F(t) = B_y(t) * dP_x/dt,    P_x = eps*E_x + chi_xy(E_x, B_y)*B_y

and the exact product-rule decomposition splits it into a dielectric term
B*d(eps E)/dt (classical only), a field-modulation term chi*(1/2)*d(B^2)/dt,
and a response-modulation term B^2*dchi/dt; the latter two are the channels
through which the quantum vacuum can contribute.  Time derivatives are
second-order central differences with first-order one-sided endpoints, so
the decomposition identity holds at interior points to O(dt^2).

Maneuvers book momentum endpoint-wise against the closed-form vacuum model:
a rotation transfers the change of stored vacuum momentum A*hbar*dchi/a, an
aggregation of N size-a units into one size-L body (L = N^(1/3) a) transfers
the stored-momentum difference, and the two external-driving channels book
their time-integrated force.  Every ledger entry balances particle and
vacuum momentum exactly.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence, Union

import numpy as np

from .material import Particle, rotation_about
from .quantities import HBAR_J_S, LENGTH, MASS, MASS_DENSITY, VELOCITY, Quantity, si_value
from .vacuum import VacuumModel, vacuum_momentum_closed_form

__all__ = [
    "FieldTimeSeries",
    "SeriesFormatError",
    "ForceDecomposition",
    "force_direct",
    "force_decomposed",
    "channel_cavity",
    "channel_chi_dot",
    "delta_v_rotation",
    "delta_v_aggregation",
    "payload_delta_v",
    "Rotation",
    "Aggregation",
    "FieldModulation",
    "CavityModulation",
    "Maneuver",
    "LedgerEntry",
    "ImpulseLedger",
    "ManeuverError",
    "run_maneuver_sequence",
]

CONSERVATION_RTOL = 1e-12

# distinguished axis dual to the (x, y) tensor component pair
_Z_AXIS = np.array([0.0, 0.0, 1.0])


class SeriesFormatError(ValueError):
    """Malformed field-series CSV; carries the offending line/field."""


@dataclass(frozen=True, eq=False)
class FieldTimeSeries:
    """Uniformly sampled E_x(t), B_y(t), with optional per-sample chi params.

    When ``chi0_xy`` is present the series overrides the particle's response
    parameters sample by sample (missing kappas default to zero); otherwise
    the particle's own lab-frame parameters are used, constant in time.
    """

    t: np.ndarray  # s
    e_x: np.ndarray
    b_y: np.ndarray
    chi0_xy: np.ndarray | None = None
    kappa1: np.ndarray | None = None
    kappa2: np.ndarray | None = None
    kappa3: np.ndarray | None = None

    def __post_init__(self) -> None:
        arrays = {"t": self.t, "e_x": self.e_x, "b_y": self.b_y}
        if self.chi0_xy is None and any(
            getattr(self, k) is not None for k in ("kappa1", "kappa2", "kappa3")
        ):
            raise SeriesFormatError("chi0_xy is required when kappa columns are present")
        for k in ("chi0_xy", "kappa1", "kappa2", "kappa3"):
            if getattr(self, k) is not None:
                arrays[k] = getattr(self, k)
        n = None
        for name, arr in arrays.items():
            a = np.asarray(arr, dtype=float)
            if a.ndim != 1:
                raise SeriesFormatError(f"{name} must be 1-D")
            if n is None:
                n = a.size
            elif a.size != n:
                raise SeriesFormatError(f"{name} length {a.size} != {n}")
            if not np.all(np.isfinite(a)):
                raise SeriesFormatError(f"{name} contains non-finite samples")
            a.flags.writeable = False
            object.__setattr__(self, name, a)
        if n is None or n < 3:
            raise SeriesFormatError("series needs at least 3 samples")
        steps = np.diff(self.t)
        if not np.all(steps > 0):
            raise SeriesFormatError("time samples must be strictly increasing")
        dt = steps[0]
        if np.max(np.abs(steps - dt)) > 1e-9 * dt:
            raise SeriesFormatError("time samples must be uniformly spaced")

    @property
    def dt(self) -> float:
        return float(self.t[1] - self.t[0])

    @property
    def has_chi_params(self) -> bool:
        return self.chi0_xy is not None

    def chi_samples(self, p: Particle) -> np.ndarray:
        """Effective chi_xy(t), from the series params or the particle's."""
        if self.chi0_xy is not None:
            k1 = self.kappa1 if self.kappa1 is not None else 0.0
            k2 = self.kappa2 if self.kappa2 is not None else 0.0
            k3 = self.kappa3 if self.kappa3 is not None else 0.0
            return self.chi0_xy + k1 * self.e_x * self.b_y + k2 * self.e_x + k3 * self.b_y
        t = p.oriented_tensor
        return (
            t.chi0_xy
            + t.kappa1 * self.e_x * self.b_y
            + t.kappa2 * self.e_x
            + t.kappa3 * self.b_y
        )

    # CSV columns: t_s, E_x, B_y, chi0_xy, kappa1, kappa2, kappa3
    # (chi columns optional; kappas only with chi0_xy, defaulting to 0)

    @classmethod
    def from_csv(cls, source: Union[str, Path, io.TextIOBase]) -> "FieldTimeSeries":
        if isinstance(source, (str, Path)):
            with open(source, newline="") as fh:
                return cls.from_csv(fh)
        reader = csv.reader(source)
        try:
            header = next(reader)
        except StopIteration:
            raise SeriesFormatError("empty series CSV") from None
        header = [h.strip() for h in header]
        required = ("t_s", "E_x", "B_y")
        for col in required:
            if col not in header:
                raise SeriesFormatError(f"missing required column {col!r}")
        optional = ("chi0_xy", "kappa1", "kappa2", "kappa3")
        if "chi0_xy" not in header and any(k in header for k in optional[1:]):
            raise SeriesFormatError("chi0_xy column is required when kappa columns are present")
        index = {col: header.index(col) for col in required}
        index.update({col: header.index(col) for col in optional if col in header})
        columns: dict[str, list[float]] = {col: [] for col in index}
        for line_no, row in enumerate(reader, start=2):
            if not row or all(not cell.strip() for cell in row):
                continue
            for col, i in index.items():
                if i >= len(row):
                    raise SeriesFormatError(f"line {line_no}: missing field {col!r}")
                cell = row[i].strip()
                try:
                    columns[col].append(float(cell))
                except ValueError:
                    raise SeriesFormatError(
                        f"line {line_no}: field {col!r} is not a number: {cell!r}"
                    ) from None
        kwargs = {
            "t": np.array(columns["t_s"]),
            "e_x": np.array(columns["E_x"]),
            "b_y": np.array(columns["B_y"]),
        }
        if "chi0_xy" in columns:
            kwargs["chi0_xy"] = np.array(columns["chi0_xy"])
            for name in ("kappa1", "kappa2", "kappa3"):
                if name in columns:
                    kwargs[name] = np.array(columns[name])
        return cls(**kwargs)

    def to_csv(self, target: Union[str, Path, io.TextIOBase]) -> None:
        if isinstance(target, (str, Path)):
            with open(target, "w", newline="") as fh:
                self.to_csv(fh)
                return
        header = ["t_s", "E_x", "B_y"]
        cols = [self.t, self.e_x, self.b_y]
        if self.chi0_xy is not None:
            header.append("chi0_xy")
            cols.append(self.chi0_xy)
            for name in ("kappa1", "kappa2", "kappa3"):
                arr = getattr(self, name)
                if arr is not None:
                    header.append(name)
                    cols.append(arr)
        writer = csv.writer(target)
        writer.writerow(header)
        for row in zip(*cols):
            writer.writerow([repr(float(x)) for x in row])


def _ddt(y: np.ndarray, dt: float) -> np.ndarray:
    """Central differences, first-order one-sided at the endpoints."""
    return np.gradient(y, dt, edge_order=1)


def force_direct(p: Particle, s: FieldTimeSeries) -> np.ndarray:
    """F(t) = B_y * dP_x/dt, the undecomposed driving force."""
    chi = s.chi_samples(p)
    polarization = p.epsilon * s.e_x + chi * s.b_y
    return s.b_y * _ddt(polarization, s.dt)


@dataclass(frozen=True, eq=False)
class ForceDecomposition:
    """The three exact product-rule terms of the driving force.

    ``dielectric`` is classical only; ``magnetoelectric`` and ``chi_rate``
    also carry quantum-vacuum contributions because <B^2> does not vanish
    for zero-point fields.
    """

    dielectric: np.ndarray  # B * d(eps E)/dt
    magnetoelectric: np.ndarray  # chi * (1/2) d(B^2)/dt
    chi_rate: np.ndarray  # B^2 * dchi/dt

    @property
    def total(self) -> np.ndarray:
        return self.dielectric + self.magnetoelectric + self.chi_rate

    @property
    def quantum(self) -> np.ndarray:
        """The two vacuum-capable terms."""
        return self.magnetoelectric + self.chi_rate


def force_decomposed(p: Particle, s: FieldTimeSeries) -> ForceDecomposition:
    chi = s.chi_samples(p)
    dt = s.dt
    return ForceDecomposition(
        dielectric=s.b_y * _ddt(p.epsilon * s.e_x, dt),
        magnetoelectric=chi * 0.5 * _ddt(s.b_y**2, dt),
        chi_rate=s.b_y**2 * _ddt(chi, dt),
    )


def channel_cavity(chi_xy, db2_dt, duration):
    """Impulse from cavity-modulated <B^2_vac>: chi * (1/2) * dB2_dt * duration.

    Constant-rate approximation; written operator-only so dimension-tagged
    arguments flow through.
    """
    d = duration.value if isinstance(duration, Quantity) else float(duration)
    if not (d > 0):
        raise ValueError("duration must be positive")
    return chi_xy * 0.5 * db2_dt * duration


def channel_chi_dot(b2_vac, chi_start, chi_end):
    """Impulse from a chi change at fixed <B^2_vac>: path-independent endpoint form."""
    return b2_vac * (chi_end - chi_start)


def delta_v_rotation(p: Particle, model: VacuumModel) -> Quantity:
    """Velocity gain of a particle whose chi0_xy flips sign under a pi rotation.

    Evaluates A*hbar*2*chi/(rho*a^4) and cross-checks the equivalent
    A*hbar*2*chi/(m*a) form with m = rho*a^3; signed with the particle's
    current lab-frame chi0_xy.
    """
    chi = p.chi0_xy
    dv_density_form = model.prefactor_a * HBAR_J_S * 2.0 * chi / (p.density_rho * p.size_a**4)
    dv_mass_form = model.prefactor_a * HBAR_J_S * 2.0 * chi / (p.mass * p.size_a)
    scale = max(abs(dv_density_form), abs(dv_mass_form))
    if abs(dv_density_form - dv_mass_form) > 1e-12 * scale:
        raise AssertionError("rho*a^4 and m*a forms disagree beyond 1e-12")
    return Quantity(dv_density_form, VELOCITY)


def delta_v_aggregation(
    a: Union[Quantity, float],
    rho: Union[Quantity, float],
    chi: float,
    n_count: float,
    model: VacuumModel,
) -> Quantity:
    """Velocity gain from merging N size-a units into one body of size N^(1/3)*a."""
    a_m = si_value(a, LENGTH, "a")
    rho_si = si_value(rho, MASS_DENSITY, "rho")
    if not (a_m > 0 and rho_si > 0):
        raise ValueError("a and rho must be positive")
    if not (n_count >= 1):
        raise ValueError("N must be >= 1")
    big_l = n_count ** (1.0 / 3.0) * a_m
    dv = model.prefactor_a * (HBAR_J_S / rho_si) * chi * (1.0 / a_m**4 - 1.0 / big_l**4)
    return Quantity(dv, VELOCITY)


def payload_delta_v(
    dv: Union[Quantity, float],
    m_active: Union[Quantity, float],
    m_total: Union[Quantity, float],
) -> Quantity:
    """Payload velocity: dv scaled by the active-to-total mass ratio."""
    dv_si = si_value(dv, VELOCITY, "dv")
    m = si_value(m_active, MASS, "m_active")
    big_m = si_value(m_total, MASS, "m_total")
    if not (0 < m <= big_m):
        raise ValueError("need 0 < m_active <= M_total")
    return Quantity(dv_si * m / big_m, VELOCITY)


# -- maneuvers and the impulse ledger ---------------------------------------


def _unit_vector(v: object, name: str) -> np.ndarray:
    arr = np.asarray(v, dtype=float)
    if arr.shape != (3,):
        raise ValueError(f"{name} must be a 3-vector")
    norm = float(np.linalg.norm(arr))
    if norm == 0.0 or not np.isfinite(norm):
        raise ValueError(f"{name} must be finite and nonzero")
    arr = arr / norm
    arr.flags.writeable = False
    return arr


@dataclass(frozen=True, eq=False)
class Rotation:
    """Rigid rotation of every particle by ``angle`` about ``axis``.

    Books the endpoint change of stored vacuum momentum; the angular
    trajectory and duration are irrelevant by path independence.
    """

    axis: np.ndarray
    angle: float  # rad

    def __post_init__(self) -> None:
        object.__setattr__(self, "axis", _unit_vector(self.axis, "axis"))
        object.__setattr__(self, "angle", float(self.angle))


@dataclass(frozen=True, eq=False)
class Aggregation:
    """Merge N units of size ``size_a`` into one body, per template particle."""

    n: float
    size_a: float  # m
    direction: np.ndarray

    def __post_init__(self) -> None:
        if not (self.n >= 1):
            raise ValueError("N must be >= 1")
        if not (self.size_a > 0):
            raise ValueError("size_a must be positive")
        object.__setattr__(self, "direction", _unit_vector(self.direction, "direction"))


@dataclass(frozen=True, eq=False)
class FieldModulation:
    """External E/B driving over a sampled series; books the quantum terms."""

    series: FieldTimeSeries


@dataclass(frozen=True)
class CavityModulation:
    """Cavity-imposed <B^2_vac> ramp at a constant rate for ``duration``."""

    db2_dt: float
    duration: float  # s

    def __post_init__(self) -> None:
        if not (self.duration > 0):
            raise ValueError("duration must be positive")


Maneuver = Union[Rotation, Aggregation, FieldModulation, CavityModulation]


@dataclass(frozen=True, eq=False)
class LedgerEntry:
    maneuver_id: int
    kind: str
    dp_particles: np.ndarray  # kg m/s
    dp_vacuum: np.ndarray  # kg m/s
    cumulative_v: np.ndarray  # m/s


class ImpulseLedger:
    """Per-maneuver record of particle vs vacuum momentum, conservation-checked.

    Every appended entry must satisfy dp_particles + dp_vacuum = 0 to
    CONSERVATION_RTOL relative; cumulative_v tracks the payload velocity.
    """

    def __init__(self, m_total: float) -> None:
        if not (m_total > 0):
            raise ValueError("M_total must be positive")
        self.m_total = float(m_total)
        self.entries: list[LedgerEntry] = []
        self._cumulative_dp = np.zeros(3)

    @property
    def cumulative_v(self) -> np.ndarray:
        return self._cumulative_dp / self.m_total

    def append(self, kind: str, dp_particles: np.ndarray, dp_vacuum: np.ndarray) -> LedgerEntry:
        dp_particles = np.asarray(dp_particles, dtype=float)
        dp_vacuum = np.asarray(dp_vacuum, dtype=float)
        residual = np.linalg.norm(dp_particles + dp_vacuum)
        scale = max(np.linalg.norm(dp_particles), np.linalg.norm(dp_vacuum))
        if residual > CONSERVATION_RTOL * scale:
            raise ValueError(
                f"momentum conservation violated: |dp_p + dp_v| = {residual:g} "
                f"exceeds {CONSERVATION_RTOL:g} * {scale:g}"
            )
        self._cumulative_dp = self._cumulative_dp + dp_particles
        entry = LedgerEntry(
            maneuver_id=len(self.entries),
            kind=kind,
            dp_particles=dp_particles,
            dp_vacuum=dp_vacuum,
            cumulative_v=self.cumulative_v.copy(),
        )
        self.entries.append(entry)
        return entry

    def entry_dicts(self) -> list[dict]:
        return [
            {
                "maneuver_id": e.maneuver_id,
                "type": e.kind,
                "dp_particles": [float(x) for x in e.dp_particles],
                "dp_vacuum": [float(x) for x in e.dp_vacuum],
                "cumulative_v": [float(x) for x in e.cumulative_v],
            }
            for e in self.entries
        ]

    def to_jsonl(self, target: Union[str, Path, io.TextIOBase]) -> None:
        """One JSON object per maneuver, in execution order."""
        if isinstance(target, (str, Path)):
            with open(target, "w") as fh:
                self.to_jsonl(fh)
                return
        for d in self.entry_dicts():
            target.write(json.dumps(d) + "\n")


class ManeuverError(ValueError):
    """A maneuver failed; carries its index and the ledger built so far."""

    def __init__(self, index: int, ledger: ImpulseLedger, cause: Exception) -> None:
        super().__init__(f"maneuver {index} failed: {cause}")
        self.index = index
        self.ledger = ledger
        self.cause = cause


def _book_rotation(
    particles: list[Particle], mv: Rotation, model: VacuumModel
) -> tuple[list[Particle], np.ndarray]:
    r = rotation_about(mv.axis, mv.angle)
    rotated = [p.rotated(r) for p in particles]
    dp_vac = 0.0
    for before, after in zip(particles, rotated):
        p_before = vacuum_momentum_closed_form(before.chi0_xy, before.size_a, model)
        p_after = vacuum_momentum_closed_form(after.chi0_xy, after.size_a, model)
        dp_vac += p_after.value - p_before.value
    return rotated, dp_vac * _Z_AXIS


def _book_aggregation(
    particles: list[Particle], mv: Aggregation, model: VacuumModel
) -> np.ndarray:
    big_l = mv.n ** (1.0 / 3.0) * mv.size_a
    dp_vac_mag = 0.0
    for p in particles:
        stored_before = mv.n * vacuum_momentum_closed_form(p.chi0_xy, mv.size_a, model).value
        stored_after = vacuum_momentum_closed_form(p.chi0_xy, big_l, model).value
        dp_vac_mag += stored_after - stored_before
    return dp_vac_mag * mv.direction


def _book_field_modulation(particles: list[Particle], mv: FieldModulation) -> np.ndarray:
    impulse = 0.0
    for p in particles:
        decomposition = force_decomposed(p, mv.series)
        impulse += float(np.trapezoid(decomposition.quantum, dx=mv.series.dt))
    return -impulse * _Z_AXIS  # vacuum side; particles gain +impulse


def _book_cavity(particles: list[Particle], mv: CavityModulation) -> np.ndarray:
    impulse = 0.0
    for p in particles:
        impulse += channel_cavity(p.chi0_xy, mv.db2_dt, mv.duration)
    return -impulse * _Z_AXIS


def run_maneuver_sequence(
    particles: Sequence[Particle],
    maneuvers: Sequence[Maneuver],
    m_total: Union[Quantity, float],
    model: VacuumModel,
) -> ImpulseLedger:
    """Apply maneuvers in order, booking each into a conservation-checked ledger.

    Rotations update particle orientations; every entry books the vacuum
    momentum change and its exact opposite on the particle side.  On
    failure raises :class:`ManeuverError` carrying the index of the
    offending maneuver and the ledger accumulated so far.
    """
    m_total_si = si_value(m_total, MASS, "m_total")
    ledger = ImpulseLedger(m_total_si)
    current = list(particles)
    for idx, mv in enumerate(maneuvers):
        try:
            if isinstance(mv, Rotation):
                current, dp_vac = _book_rotation(current, mv, model)
                kind = "rotation"
            elif isinstance(mv, Aggregation):
                dp_vac = _book_aggregation(current, mv, model)
                kind = "aggregation"
            elif isinstance(mv, FieldModulation):
                dp_vac = _book_field_modulation(current, mv)
                kind = "field_modulation"
            elif isinstance(mv, CavityModulation):
                dp_vac = _book_cavity(current, mv)
                kind = "cavity_modulation"
            else:
                raise TypeError(f"unknown maneuver type {type(mv).__name__}")
            ledger.append(kind, -dp_vac, dp_vac)
        except (ValueError, TypeError) as exc:
            raise ManeuverError(idx, ledger, exc) from exc
    return ledger
