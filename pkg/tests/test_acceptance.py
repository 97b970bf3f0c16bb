"""Acceptance criteria, one test per criterion.

Run with ``pytest -s tests/test_acceptance.py`` to see one pass/fail line
per criterion; every tolerance is pinned here.
"""

import math
import time
from dataclasses import replace

import numpy as np
import pytest

from zpfdrive.dynamics import (
    Aggregation,
    CavityModulation,
    FieldModulation,
    FieldTimeSeries,
    Rotation,
    delta_v_aggregation,
    delta_v_rotation,
    force_decomposed,
    force_direct,
    run_maneuver_sequence,
)
from zpfdrive.material import (
    MagnetoElectricTensor,
    Particle,
    rotate_tensor,
    rotation_about,
)
from zpfdrive.mission import (
    MissionSpec,
    analytic_solve_for_unknown,
    evaluate_mission,
    solve_for_unknown,
    sweep,
    tangential_v_to_rate,
)
from zpfdrive.quantities import HBAR_J_S
from zpfdrive.vacuum import CutoffConvention, ModeGrid, VacuumModel, mode_sum_oracle


def _report(criterion: int, name: str, ok: bool, detail: str) -> None:
    print(f"[acceptance] criterion {criterion} ({name}): {'PASS' if ok else 'FAIL'} -- {detail}")
    assert ok, f"criterion {criterion} ({name}): {detail}"


def design_spec(**overrides) -> MissionSpec:
    base = dict(
        target_rate=4.95,
        wheel_radius=1.0,
        satellite_mass=100.0,
        active_mass_fraction=0.5,
        particle_size=1e-9,
        particle_density=1000.0,
        chi0=1e-3,
        prefactor_A=1e-2,
    )
    base.update(overrides)
    return MissionSpec(**base)


def test_criterion_1_satellite_design_point():
    spec = design_spec()
    report = evaluate_mission(spec)
    runtime = math.inf
    for _ in range(100):
        t0 = time.perf_counter()
        evaluate_mission(spec)
        runtime = min(runtime, time.perf_counter() - t0)
    achieved = report.achieved_tangential_v
    rate_from_achieved = tangential_v_to_rate(achieved, spec.wheel_radius)
    rate_from_micron = tangential_v_to_rate(1e-6, spec.wheel_radius)
    ok = (
        0.8e-6 <= achieved <= 1.3e-6
        and 4.5 <= rate_from_achieved <= 5.5
        and 4.5 <= rate_from_micron <= 5.5
        and report.feasible
        and runtime < 1e-3
    )
    _report(
        1,
        "satellite design point",
        ok,
        f"payload dV = {achieved:.4g} m/s, rate = {rate_from_achieved:.3g} deg/day, "
        f"runtime = {runtime * 1e6:.1f} us",
    )


def test_criterion_2_reported_material_gap():
    report = evaluate_mission(design_spec(chi0=1e-4))
    ok = (not report.feasible) and 0.09 <= report.margin <= 0.11
    _report(
        2,
        "chi = 1e-4 gap",
        ok,
        f"margin = {report.margin:.4g}, feasible = {report.feasible}",
    )


def test_criterion_3_decomposition_identity():
    rng = np.random.default_rng(20260810)
    t0 = time.perf_counter()
    orders = []
    for _ in range(100):
        n_modes = int(rng.integers(1, 6))
        freqs = rng.uniform(0.5, 5.0, size=(2, n_modes))
        amps = rng.uniform(0.2, 1.0, size=(2, n_modes))
        phases = rng.uniform(0.0, 2 * np.pi, size=(2, n_modes))
        particle = Particle(
            1e-9,
            1000.0,
            MagnetoElectricTensor.from_xy(
                rng.uniform(-0.5, 0.5),
                kappa1=rng.uniform(-0.5, 0.5),
                kappa2=rng.uniform(-0.5, 0.5),
                kappa3=rng.uniform(-0.5, 0.5),
            ),
            epsilon=rng.uniform(1.0, 3.0),
        )

        def identity_error(n_samples: int) -> float:
            t = np.linspace(0.0, 2.0, n_samples)
            e = sum(a * np.sin(w * t + p) for a, w, p in zip(amps[0], freqs[0], phases[0]))
            b = 1.0 + sum(a * np.sin(w * t + p) for a, w, p in zip(amps[1], freqs[1], phases[1]))
            series = FieldTimeSeries(t=t, e_x=e, b_y=b)
            residual = force_direct(particle, series) - force_decomposed(particle, series).total
            return float(np.max(np.abs(residual[1:-1])))

        coarse, fine = identity_error(201), identity_error(401)
        orders.append(math.log2(coarse / fine))
    elapsed = time.perf_counter() - t0
    orders = np.array(orders)
    ok = bool(np.all((orders >= 1.8) & (orders <= 2.2)) and elapsed < 1.0)
    _report(
        3,
        "product-rule identity",
        ok,
        f"order range [{orders.min():.3f}, {orders.max():.3f}] over 100 series, "
        f"elapsed = {elapsed:.3f} s",
    )


def test_criterion_4_tensor_rotation():
    t = MagnetoElectricTensor.from_xy(1e-3)
    flipped = rotate_tensor(t, np.diag([1.0, -1.0, -1.0]))
    exact_flip = flipped.chi0_xy == -1e-3

    rng = np.random.default_rng(4)
    worst = 0.0
    dense = MagnetoElectricTensor(rng.uniform(-1e-3, 1e-3, size=(3, 3)))
    ref = dense.frobenius_norm()
    for _ in range(1000):
        axis = rng.normal(size=3)
        r = rotation_about(axis / np.linalg.norm(axis), rng.uniform(-np.pi, np.pi))
        worst = max(worst, abs(rotate_tensor(dense, r).frobenius_norm() - ref) / ref)

    double_pi = rotate_tensor(flipped, np.diag([1.0, -1.0, -1.0]))
    double_identity = np.array_equal(double_pi.chi0, t.chi0)

    ok = exact_flip and worst < 1e-10 and double_identity
    _report(
        4,
        "tensor rotation",
        ok,
        f"pi-x flip exact = {exact_flip}, worst Frobenius drift = {worst:.2e}, "
        f"double-pi identity = {double_identity}",
    )


def test_criterion_5_oracle_scaling():
    t0 = time.perf_counter()
    convention = CutoffConvention.HALF_WAVELENGTH
    chi = 1e-3

    sizes = [1e-9, 2e-9, 4e-9, 8e-9]
    momenta = [
        abs(mode_sum_oracle(chi, a, ModeGrid.for_particle(a, 64, convention))[0].value)
        for a in sizes
    ]
    slope = float(np.polyfit(np.log(sizes), np.log(momenta), 1)[0])

    grid = ModeGrid.for_particle(1e-9, 64, convention)
    p1, _ = mode_sum_oracle(chi, 1e-9, grid)
    p2, _ = mode_sum_oracle(2 * chi, 1e-9, grid)
    linear = abs(p2.value - 2 * p1.value) <= 1e-12 * abs(p2.value)

    eff = {
        n: mode_sum_oracle(chi, 1e-9, ModeGrid.for_particle(1e-9, n, convention))[1]
        for n in (32, 64, 128)
    }
    step1 = abs(eff[64] - eff[32]) / eff[64]
    step2 = abs(eff[128] - eff[64]) / eff[128]
    converged = step1 < 0.01 and step2 < 0.01
    in_bracket = 1e-3 <= eff[128] <= 1.0

    elapsed = time.perf_counter() - t0
    ok = abs(slope + 1.0) <= 0.05 and linear and converged and in_bracket and elapsed < 30.0
    _report(
        5,
        "mode-sum oracle",
        ok,
        f"slope = {slope:.4f}, chi-linear = {linear}, effective_A = {eff[128]:.4f} "
        f"(doubling steps {step1:.2e}, {step2:.2e}), elapsed = {elapsed:.1f} s",
    )


def test_criterion_6_aggregation_limits():
    model = VacuumModel()
    chi, a, rho = 1e-3, 1e-9, 1000.0

    exact_zero = delta_v_aggregation(a, rho, chi, 1, model).value == 0.0

    limit = model.prefactor_a * HBAR_J_S * chi / (rho * a**4)
    at_1e9 = delta_v_aggregation(a, rho, chi, 1e9, model).value
    limit_ok = abs(at_1e9 - limit) <= 1e-6 * limit
    particle = Particle(a, rho, MagnetoElectricTensor.from_xy(chi))
    half_rotation = abs(at_1e9 - delta_v_rotation(particle, model).value / 2.0) <= 1e-6 * limit

    counts = np.unique(
        np.concatenate([np.arange(1, 200), np.geomspace(200, 1e6, 2000).astype(np.int64)])
    )
    values = np.array(
        [delta_v_aggregation(a, rho, chi, int(n), model).value for n in counts]
    )
    monotone = bool(np.all(np.diff(values) > 0.0))

    ok = exact_zero and limit_ok and half_rotation and monotone
    _report(
        6,
        "aggregation limits",
        ok,
        f"N=1 exact zero = {exact_zero}, N=1e9 vs limit rel err = "
        f"{abs(at_1e9 - limit) / limit:.2e}, strictly monotone = {monotone}",
    )


def _random_sequence(rng: np.random.Generator):
    particles = [
        Particle(
            float(rng.uniform(0.5e-9, 4e-9)),
            float(rng.uniform(500.0, 5000.0)),
            MagnetoElectricTensor.from_xy(float(rng.uniform(-1e-3, 1e-3))),
            epsilon=float(rng.uniform(1.0, 2.0)),
        )
        for _ in range(int(rng.integers(1, 4)))
    ]
    maneuvers = []
    for _ in range(int(rng.integers(2, 7))):
        kind = rng.integers(0, 4)
        if kind == 0:
            maneuvers.append(
                Rotation(axis=rng.normal(size=3), angle=float(rng.uniform(-np.pi, np.pi)))
            )
        elif kind == 1:
            maneuvers.append(
                Aggregation(
                    n=float(rng.integers(1, 100)),
                    size_a=float(rng.uniform(0.5e-9, 4e-9)),
                    direction=rng.normal(size=3),
                )
            )
        elif kind == 2:
            t = np.linspace(0.0, 1.0, 31)
            series = FieldTimeSeries(
                t=t,
                e_x=rng.uniform(0.2, 1.0) * np.sin(rng.uniform(1, 5) * t),
                b_y=1.0 + rng.uniform(0.2, 0.8) * np.cos(rng.uniform(1, 5) * t),
            )
            maneuvers.append(FieldModulation(series=series))
        else:
            maneuvers.append(
                CavityModulation(
                    db2_dt=float(rng.uniform(-5.0, 5.0)),
                    duration=float(rng.uniform(0.1, 2.0)),
                )
            )
    return particles, maneuvers


def test_criterion_7_conservation_ledger():
    rng = np.random.default_rng(77)
    model = VacuumModel()
    worst = 0.0
    for _ in range(100):
        particles, maneuvers = _random_sequence(rng)
        ledger = run_maneuver_sequence(
            particles, maneuvers, float(rng.uniform(0.1, 100.0)), model
        )
        for entry in ledger.entries:
            residual = float(np.linalg.norm(entry.dp_particles + entry.dp_vacuum))
            scale = float(np.linalg.norm(entry.dp_particles))
            if scale > 0:
                worst = max(worst, residual / scale)
            else:
                worst = max(worst, residual)

    p = Particle(1e-9, 1000.0, MagnetoElectricTensor.from_xy(1e-3))
    pair = run_maneuver_sequence(
        [p],
        [Rotation(axis=[1, 0, 0], angle=np.pi), Rotation(axis=[1, 0, 0], angle=-np.pi)],
        p.mass,
        model,
    )
    single = np.linalg.norm(pair.entries[0].dp_particles) / p.mass
    net = float(np.linalg.norm(pair.cumulative_v))
    pair_ok = net <= 1e-12 * single

    ok = worst <= 1e-12 and pair_ok
    _report(
        7,
        "conservation ledger",
        ok,
        f"worst per-entry imbalance = {worst:.2e} (rel), pi/-pi net speed = {net:.2e} m/s",
    )


def test_criterion_8_inversion_round_trip():
    rng = np.random.default_rng(88)
    worst_margin = 0.0
    worst_agreement = 0.0
    for _ in range(50):
        spec = design_spec(
            wheel_radius=float(rng.uniform(0.5, 3.0)),
            satellite_mass=float(rng.uniform(10.0, 500.0)),
            particle_density=float(rng.uniform(500.0, 5000.0)),
            prefactor_A=float(rng.uniform(5e-3, 5e-2)),
        )
        for unknown, (low, high) in (
            ("chi0", (1e-6, 0.5)),
            ("active_mass_fraction", (1e-4, 0.9)),
            ("particle_size", (1e-10, 1e-7)),
        ):
            true_value = math.exp(rng.uniform(math.log(low), math.log(high)))
            truth = replace(spec, **{unknown: true_value})
            achieved = evaluate_mission(replace(truth, target_rate=1.0)).achieved_tangential_v
            problem = replace(
                truth,
                target_rate=tangential_v_to_rate(achieved, truth.wheel_radius),
                **{unknown: None},
            )
            solved = solve_for_unknown(problem, unknown)
            margin = evaluate_mission(replace(problem, **{unknown: solved})).margin
            worst_margin = max(worst_margin, abs(margin - 1.0))
            analytic = analytic_solve_for_unknown(problem, unknown)
            worst_agreement = max(worst_agreement, abs(solved - analytic) / analytic)
    ok = worst_margin <= 1e-9 and worst_agreement <= 1e-8
    _report(
        8,
        "inversion round-trip",
        ok,
        f"worst |margin - 1| = {worst_margin:.2e}, worst bisect-vs-analytic rel = "
        f"{worst_agreement:.2e} over 50 specs x 3 unknowns",
    )


def test_criterion_9_sweep_determinism(tmp_path):
    spec = design_spec()
    axes = {
        "chi0": list(np.geomspace(1e-5, 1e-3, 10)),
        "particle_size": list(np.geomspace(5e-10, 5e-9, 10)),
        "particle_density": list(np.linspace(500.0, 5000.0, 10)),
        "active_mass_fraction": list(np.linspace(0.1, 1.0, 10)),
    }
    outputs = []
    elapsed = []
    for run, jobs in enumerate((1, 1, 4)):
        path = tmp_path / f"sweep_{run}.csv"
        t0 = time.perf_counter()
        count = sweep(spec, axes, out=path, jobs=jobs)
        elapsed.append(time.perf_counter() - t0)
        outputs.append(path.read_bytes())
        assert count == 10_000
    identical = outputs[0] == outputs[1] == outputs[2]
    ok = identical and max(elapsed) < 5.0
    _report(
        9,
        "sweep determinism",
        ok,
        f"10^4 rows byte-identical across reruns and jobs=4: {identical}, "
        f"slowest run = {max(elapsed):.2f} s",
    )
