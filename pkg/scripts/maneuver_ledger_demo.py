#!/usr/bin/env python3
"""Run a small maneuver sequence and print the conservation ledger.

Also writes example particle/maneuver JSON files next to the ledger output,
in the exact schemas the ``zpfdrive ledger`` command consumes.
"""

import json
import math
from pathlib import Path

import numpy as np

from zpfdrive import (
    Aggregation,
    CavityModulation,
    MagnetoElectricTensor,
    Particle,
    Rotation,
    VacuumModel,
    run_maneuver_sequence,
)
from zpfdrive.material import particle_to_dict


def main() -> None:
    particles = [
        Particle(1e-9, 1000.0, MagnetoElectricTensor.from_xy(1e-3)),
        Particle(2e-9, 2500.0, MagnetoElectricTensor.from_xy(5e-4)),
    ]
    maneuvers = [
        Rotation(axis=[1.0, 0.0, 0.0], angle=math.pi),
        Aggregation(n=27, size_a=1e-9, direction=[0.0, 0.0, 1.0]),
        CavityModulation(db2_dt=2.0, duration=0.5),
        Rotation(axis=[1.0, 0.0, 0.0], angle=-math.pi),
    ]
    payload_mass = 1e-3  # kg

    ledger = run_maneuver_sequence(particles, maneuvers, payload_mass, VacuumModel())
    for entry in ledger.entry_dicts():
        print(json.dumps(entry))
    v = ledger.cumulative_v
    print(f"# cumulative payload velocity: {np.linalg.norm(v):.4e} m/s, components {v}")

    out_dir = Path("ledger_demo")
    out_dir.mkdir(exist_ok=True)
    (out_dir / "particles.json").write_text(
        json.dumps([particle_to_dict(p) for p in particles], indent=2)
    )
    (out_dir / "maneuvers.json").write_text(
        json.dumps(
            [
                {"type": "rotation", "axis": [1.0, 0.0, 0.0], "angle_rad": math.pi},
                {"type": "aggregation", "N": 27, "a_m": 1e-9, "direction": [0.0, 0.0, 1.0]},
                {"type": "cavity_modulation", "dB2_dt": 2.0, "duration_s": 0.5},
                {"type": "rotation", "axis": [1.0, 0.0, 0.0], "angle_rad": -math.pi},
            ],
            indent=2,
        )
    )
    ledger.to_jsonl(out_dir / "ledger.jsonl")
    print(f"# wrote {out_dir}/particles.json, {out_dir}/maneuvers.json, {out_dir}/ledger.jsonl")
    print(f"# same run via the CLI: zpfdrive ledger --particles {out_dir}/particles.json "
          f"--maneuvers {out_dir}/maneuvers.json --M-total {payload_mass}")


if __name__ == "__main__":
    main()
