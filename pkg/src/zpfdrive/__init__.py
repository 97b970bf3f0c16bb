"""Momentum exchange between magneto-electric matter and zero-point fields.

Design-and-simulation toolkit: per-maneuver velocity gains from rotating or
aggregating magneto-electric particles, classical-vs-vacuum force
decomposition, an independent vacuum mode-summation oracle, and a satellite
attitude-correction planner.
"""

from .quantities import (
    CODATA,
    Constants,
    DimensionError,
    Direction,
    Quantity,
    convert_gaussian_si,
    dimension_check,
)
from .material import (
    ImproperRotationError,
    MagnetoElectricTensor,
    Particle,
    chi_effective,
    particle_mass,
    polarization,
    rotate_tensor,
    rotation_about,
)
from .vacuum import (
    CutoffConvention,
    ModeGrid,
    VacuumModel,
    convergence_study,
    mode_sum_oracle,
    vacuum_b_squared,
    vacuum_momentum_closed_form,
)
from .dynamics import (
    Aggregation,
    CavityModulation,
    FieldModulation,
    FieldTimeSeries,
    ForceDecomposition,
    ImpulseLedger,
    ManeuverError,
    Rotation,
    channel_cavity,
    channel_chi_dot,
    delta_v_aggregation,
    delta_v_rotation,
    force_decomposed,
    force_direct,
    payload_delta_v,
    run_maneuver_sequence,
)
from .mission import (
    InfeasibleError,
    MissionReport,
    MissionSpec,
    MissionSpecError,
    SweepMode,
    analytic_solve_for_unknown,
    evaluate_mission,
    rate_to_tangential_v,
    solve_for_unknown,
    sweep,
    tangential_v_to_rate,
)

__version__ = "0.1.0"
