"""Command-line surface.

All inputs are SI (meters, kg/m^3, tesla); output is text (6 significant
digits), JSON (full precision), or CSV, selected with --format where it
applies.  Exit codes: 0 success, 1 domain error, 2 usage error.  The CLI
adds no arithmetic of its own: every number printed is a library result.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from dataclasses import replace
from typing import Sequence

from . import dynamics, material, mission, vacuum
from .quantities import Quantity, unit_string

__all__ = ["main", "build_parser"]


def _single_value(args, name: str, q: Quantity) -> str:
    if args.format == "json":
        return json.dumps({"quantity": name, "value": q.value, "unit": unit_string(q.dim)})
    return f"{name} = {q.value:.6g} {unit_string(q.dim)}"


def _parse_floats(text: str, flag: str) -> list[float]:
    try:
        return [float(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise ValueError(f"{flag} expects comma-separated numbers, got {text!r}") from None


def _parse_ints(text: str, flag: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise ValueError(f"{flag} expects comma-separated integers, got {text!r}") from None


_CUTOFFS = {c.value: c for c in vacuum.CutoffConvention}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="zpfdrive",
        description="Vacuum momentum transfer for magneto-electric particles.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_format(p):
        p.add_argument("--format", choices=("text", "json", "csv"), default="text")

    p = sub.add_parser("delta-v-rot", help="pi-rotation velocity gain of one particle")
    p.add_argument("--chi", type=float, required=True, help="intrinsic chi0_xy")
    p.add_argument("--a", type=float, required=True, help="particle size (m)")
    p.add_argument("--rho", type=float, required=True, help="density (kg/m^3)")
    p.add_argument("--A", type=float, default=1e-2, help="vacuum prefactor")
    add_format(p)

    p = sub.add_parser("delta-v-agg", help="aggregation velocity gain")
    p.add_argument("--chi", type=float, required=True)
    p.add_argument("--a", type=float, required=True)
    p.add_argument("--rho", type=float, required=True)
    p.add_argument("--N", type=float, required=True, help="number of merged units")
    p.add_argument("--A", type=float, default=1e-2)
    add_format(p)

    p = sub.add_parser("vacuum-momentum", help="closed-form stored vacuum momentum")
    p.add_argument("--chi", type=float, required=True)
    p.add_argument("--a", type=float, required=True)
    p.add_argument("--A", type=float, default=1e-2)
    add_format(p)

    p = sub.add_parser("oracle", help="mode-sum oracle convergence study (CSV)")
    p.add_argument("--chi", type=float, required=True)
    p.add_argument("--a", type=str, default="1e-9", help="comma-separated sizes (m)")
    p.add_argument("--n", type=str, default="16,32,64", help="comma-separated n_per_axis")
    p.add_argument("--cutoff", choices=sorted(_CUTOFFS), default="half-wavelength")
    p.add_argument("--out", type=str, default=None, help="CSV output path (default stdout)")
    add_format(p)

    p = sub.add_parser("force-decompose", help="three-term force decomposition of a series")
    p.add_argument("--series", type=str, required=True, help="field series CSV path")
    p.add_argument("--chi", type=float, default=0.0, help="chi0_xy if series lacks chi columns")
    p.add_argument("--epsilon", type=float, default=1.0)
    p.add_argument("--out", type=str, default=None)
    add_format(p)

    p = sub.add_parser("mission", help="evaluate a mission spec")
    p.add_argument("--spec", type=str, required=True, help="MissionSpec JSON path")
    add_format(p)

    p = sub.add_parser("solve", help="solve the design chain for one unknown")
    p.add_argument("--spec", type=str, required=True)
    p.add_argument(
        "--unknown",
        choices=sorted(mission.SOLVE_BRACKETS),
        required=True,
    )
    add_format(p)

    p = sub.add_parser("sweep", help="Cartesian parameter sweep to CSV")
    p.add_argument("--spec", type=str, required=True, help="base MissionSpec JSON")
    p.add_argument("--chi", type=str, default=None, help="comma-separated chi0 values")
    p.add_argument("--a", type=str, default=None)
    p.add_argument("--rho", type=str, default=None)
    p.add_argument("--fraction", type=str, default=None)
    p.add_argument("--A", type=str, default=None)
    p.add_argument(
        "--mode",
        choices=[m.value for m in mission.SweepMode],
        default=mission.SweepMode.MASS_BUDGET.value,
    )
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--out", type=str, default=None)
    add_format(p)

    p = sub.add_parser("ledger", help="run a maneuver sequence, emit the impulse ledger")
    p.add_argument("--particles", type=str, required=True, help="JSON list of particles")
    p.add_argument("--maneuvers", type=str, required=True, help="JSON list of maneuvers")
    p.add_argument("--M-total", dest="m_total", type=float, required=True, help="payload mass (kg)")
    p.add_argument("--A", type=float, default=1e-2)
    p.add_argument("--out", type=str, default=None, help="JSONL output path (default stdout)")
    add_format(p)

    return parser


def _load_maneuver(d: dict) -> dynamics.Maneuver:
    kind = d.get("type")
    if kind == "rotation":
        return dynamics.Rotation(axis=d["axis"], angle=float(d["angle_rad"]))
    if kind == "aggregation":
        return dynamics.Aggregation(
            n=float(d["N"]), size_a=float(d["a_m"]), direction=d["direction"]
        )
    if kind == "field_modulation":
        return dynamics.FieldModulation(series=dynamics.FieldTimeSeries.from_csv(d["series_csv"]))
    if kind == "cavity_modulation":
        return dynamics.CavityModulation(
            db2_dt=float(d["dB2_dt"]), duration=float(d["duration_s"])
        )
    raise ValueError(f"unknown maneuver type {kind!r}")


def _cmd_delta_v_rot(args) -> int:
    particle = material.Particle(
        size_a=args.a,
        density_rho=args.rho,
        tensor=material.MagnetoElectricTensor.from_xy(args.chi),
    )
    model = vacuum.VacuumModel(prefactor_a=args.A)
    print(_single_value(args, "delta_v_rotation", dynamics.delta_v_rotation(particle, model)))
    return 0


def _cmd_delta_v_agg(args) -> int:
    model = vacuum.VacuumModel(prefactor_a=args.A)
    q = dynamics.delta_v_aggregation(args.a, args.rho, args.chi, args.N, model)
    print(_single_value(args, "delta_v_aggregation", q))
    return 0


def _cmd_vacuum_momentum(args) -> int:
    model = vacuum.VacuumModel(prefactor_a=args.A)
    q = vacuum.vacuum_momentum_closed_form(args.chi, args.a, model)
    print(_single_value(args, "vacuum_momentum", q))
    return 0


def _cmd_oracle(args) -> int:
    sizes = _parse_floats(args.a, "--a")
    n_values = _parse_ints(args.n, "--n")
    rows = vacuum.convergence_study(
        args.chi, sizes, n_values, convention=_CUTOFFS[args.cutoff]
    )
    if args.format == "json":
        text = json.dumps(rows)
    else:
        lines = [",".join(vacuum.ORACLE_CSV_HEADER)]
        for row in rows:
            lines.append(
                ",".join(
                    [
                        str(row["n_per_axis"]),
                        repr(row["a_m"]),
                        repr(row["chi"]),
                        repr(row["p_kg_m_s"]),
                        repr(row["effective_A"]),
                    ]
                )
            )
        text = "\n".join(lines)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text + "\n")
        print(f"wrote {len(rows)} rows to {args.out}")
    else:
        print(text)
    return 0


def _cmd_force_decompose(args) -> int:
    series = dynamics.FieldTimeSeries.from_csv(args.series)
    # size and density do not enter the force terms; only epsilon and chi do
    particle = material.Particle(
        size_a=1e-9,
        density_rho=1000.0,
        tensor=material.MagnetoElectricTensor.from_xy(args.chi),
        epsilon=args.epsilon,
    )
    dec = dynamics.force_decomposed(particle, series)
    if args.format == "json":
        text = json.dumps(
            {
                "t_s": [float(x) for x in series.t],
                "f_dielectric": [float(x) for x in dec.dielectric],
                "f_magnetoelectric": [float(x) for x in dec.magnetoelectric],
                "f_chi_rate": [float(x) for x in dec.chi_rate],
                "f_total": [float(x) for x in dec.total],
            }
        )
    else:
        lines = ["t_s,f_dielectric,f_magnetoelectric,f_chi_rate,f_total"]
        for i in range(series.t.size):
            lines.append(
                ",".join(
                    repr(float(x))
                    for x in (
                        series.t[i],
                        dec.dielectric[i],
                        dec.magnetoelectric[i],
                        dec.chi_rate[i],
                        dec.total[i],
                    )
                )
            )
        text = "\n".join(lines)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text + "\n")
        print(f"wrote {series.t.size} samples to {args.out}")
    else:
        print(text)
    return 0


def _cmd_mission(args) -> int:
    spec = mission.MissionSpec.from_json(args.spec)
    report = mission.evaluate_mission(spec)
    if args.format == "json":
        print(json.dumps(report.to_dict()))
    else:
        print(f"required_tangential_v = {report.required_tangential_v:.6g} m/s")
        print(f"achieved_tangential_v = {report.achieved_tangential_v:.6g} m/s")
        print(f"feasible: {'true' if report.feasible else 'false'}")
        print(f"margin = {report.margin:.6g}")
    return 0


def _cmd_solve(args) -> int:
    spec = mission.MissionSpec.from_json(args.spec)
    value = mission.solve_for_unknown(spec, args.unknown)
    report = mission.evaluate_mission(replace(spec, **{args.unknown: value}))
    report = mission.MissionReport(
        required_tangential_v=report.required_tangential_v,
        achieved_tangential_v=report.achieved_tangential_v,
        feasible=report.feasible,
        margin=report.margin,
        solved_unknown=(args.unknown, value),
    )
    if args.format == "json":
        unit = "m" if args.unknown == "particle_size" else "dimensionless"
        print(json.dumps({"quantity": args.unknown, "value": value, "unit": unit}))
    else:
        print(f"{args.unknown} = {value:.6g}")
        print(f"margin at solution = {report.margin:.6g}")
    return 0


def _cmd_sweep(args) -> int:
    spec = mission.MissionSpec.from_json(args.spec)
    axes = {}
    for flag, name in (
        ("chi", "chi0"),
        ("a", "particle_size"),
        ("rho", "particle_density"),
        ("fraction", "active_mass_fraction"),
        ("A", "prefactor_A"),
    ):
        raw = getattr(args, flag)
        if raw is not None:
            axes[name] = _parse_floats(raw, f"--{flag}")
    mode = mission.SweepMode(args.mode)
    if args.format == "json":
        buf = io.StringIO()
        mission.sweep(spec, axes, out=buf, mode=mode, jobs=args.jobs)
        buf.seek(0)
        rows = list(csv.DictReader(buf))
        text = json.dumps(rows)
        if args.out:
            with open(args.out, "w") as fh:
                fh.write(text + "\n")
            print(f"wrote {len(rows)} rows to {args.out}")
        else:
            print(text)
        return 0
    if args.out:
        count = mission.sweep(spec, axes, out=args.out, mode=mode, jobs=args.jobs)
        print(f"wrote {count} rows to {args.out}")
    else:
        mission.sweep(spec, axes, out=sys.stdout, mode=mode, jobs=args.jobs)
    return 0


def _cmd_ledger(args) -> int:
    with open(args.particles) as fh:
        particles = [material.particle_from_dict(d) for d in json.load(fh)]
    with open(args.maneuvers) as fh:
        maneuvers = [_load_maneuver(d) for d in json.load(fh)]
    model = vacuum.VacuumModel(prefactor_a=args.A)
    ledger = dynamics.run_maneuver_sequence(particles, maneuvers, args.m_total, model)
    if args.format == "json":
        text = json.dumps(ledger.entry_dicts())
        if args.out:
            with open(args.out, "w") as fh:
                fh.write(text + "\n")
            print(f"wrote {len(ledger.entries)} entries to {args.out}")
        else:
            print(text)
        return 0
    if args.out:
        ledger.to_jsonl(args.out)
        print(f"wrote {len(ledger.entries)} entries to {args.out}")
    else:
        ledger.to_jsonl(sys.stdout)
    return 0


_COMMANDS = {
    "delta-v-rot": _cmd_delta_v_rot,
    "delta-v-agg": _cmd_delta_v_agg,
    "vacuum-momentum": _cmd_vacuum_momentum,
    "oracle": _cmd_oracle,
    "force-decompose": _cmd_force_decompose,
    "mission": _cmd_mission,
    "solve": _cmd_solve,
    "sweep": _cmd_sweep,
    "ledger": _cmd_ledger,
}


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except (ValueError, OSError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
