"""Truncated Fock-space toolkit for number-quadrature uncertainty bounds,
extremal state families, and second-order nonclassicality gauges."""

from .errors import (
    CalibrationError,
    CutoffExplosionError,
    FockgaugeError,
    MomentOrderError,
    NonphysicalMomentError,
    SchemaError,
    ZeroNormError,
)
from .fock import (
    DensityMatrix,
    FockVector,
    QuantumState,
    apply_ladder,
    fidelity,
    normally_ordered_moment,
    tail_mass,
)
from .gauges import (
    GaugeReport,
    InequalityRecord,
    TightBoundReport,
    full_report,
    gauge_g1,
    gauge_g2,
    hierarchy_check,
    moment_constraints,
    relaxed_bounds,
    tight_bound,
)
from .moments import (
    MomentSummary,
    NoiseEllipse,
    ellipse,
    lambda_sq,
    phase_variance,
    quadrature_stats,
    summarize,
    summary_from_dict,
)
from .states import (
    approx_strong_field,
    cat,
    coherent,
    crescent,
    fock,
    laguerre,
    photon_added,
    random_state,
    squeezed_coherent,
    state_from_spec,
)
from .verify import (
    CalibrationReport,
    SweepConfig,
    SweepReport,
    calibrate,
    figure_rows,
    sweep,
)

__version__ = "0.1.0"

__all__ = [
    "CalibrationError",
    "CalibrationReport",
    "CutoffExplosionError",
    "DensityMatrix",
    "FockVector",
    "FockgaugeError",
    "GaugeReport",
    "InequalityRecord",
    "MomentOrderError",
    "MomentSummary",
    "NoiseEllipse",
    "NonphysicalMomentError",
    "QuantumState",
    "SchemaError",
    "SweepConfig",
    "SweepReport",
    "TightBoundReport",
    "ZeroNormError",
    "apply_ladder",
    "approx_strong_field",
    "calibrate",
    "cat",
    "coherent",
    "crescent",
    "ellipse",
    "fidelity",
    "figure_rows",
    "fock",
    "full_report",
    "gauge_g1",
    "gauge_g2",
    "hierarchy_check",
    "lambda_sq",
    "laguerre",
    "moment_constraints",
    "normally_ordered_moment",
    "phase_variance",
    "photon_added",
    "quadrature_stats",
    "random_state",
    "relaxed_bounds",
    "squeezed_coherent",
    "state_from_spec",
    "summarize",
    "summary_from_dict",
    "sweep",
    "tail_mass",
    "tight_bound",
]
