"""Received power between two parallel reflecting walls.

Method-of-images field sums with certified truncation, a Lerch-transcendent
closed form for the symmetric axis, turning-point analysis of power slices,
the inverse square-root density asymptotics they induce, and Monte Carlo
sampling of received power under position or phase randomization.
"""

from .config import ExperimentConfig, LerchCheckSettings, SampleSettings
from .density import (
    Histogram,
    MonotonicPiece,
    PeakMatch,
    PeakReport,
    asymptotic_density,
    asymptotic_distribution,
    build_histogram,
    detect_peaks,
    match_peaks,
    pieces_from_partition,
    pushforward_density,
    pushforward_density_monotone,
    uniform_density,
)
from .errors import (
    ConvergenceError,
    DegenerateRangeError,
    MonotonicityError,
    NearSingularError,
    OutOfRangeError,
    ResolutionWarning,
)
from .geometry import (
    TxLocation,
    WallConfig,
    image_distance,
    image_distance_symmetric,
    image_distance_xy,
    single_wall_image_distance,
)
from .kernels import BACKEND as kernel_backend
from .lerch import LerchArgs, lerch_phi, lerch_tail, truncation_bound
from .montecarlo import (
    SampleSpec,
    ks_uniform_distance,
    phase_ray_coefficients,
    phase_wrap_statistics,
    sample_location_power,
    sample_phase_power,
)
from .signal import (
    PropagationParams,
    SeriesTerm,
    SignalValue,
    SliceSpec,
    attenuation,
    los_signal,
    one_wall_signal,
    power_profile,
    reflected_amplitude_grid,
    reflected_signal_sum,
    reflected_terms,
    signal_lerch_closed_form,
    slice_power_function,
    surface_bound_grid,
    surface_bound_power,
    total_signal,
)
from .turning import (
    MonotonicPartition,
    PredictedSingularity,
    TurningPoint,
    find_turning_points,
    monotonic_partition,
    predict_singularities,
)

__version__ = "0.1.0"

__all__ = [
    "ConvergenceError",
    "DegenerateRangeError",
    "ExperimentConfig",
    "Histogram",
    "LerchArgs",
    "LerchCheckSettings",
    "MonotonicPartition",
    "MonotonicPiece",
    "MonotonicityError",
    "NearSingularError",
    "OutOfRangeError",
    "PeakMatch",
    "PeakReport",
    "PredictedSingularity",
    "PropagationParams",
    "ResolutionWarning",
    "SampleSettings",
    "SampleSpec",
    "SeriesTerm",
    "SignalValue",
    "SliceSpec",
    "TurningPoint",
    "TxLocation",
    "WallConfig",
    "asymptotic_density",
    "asymptotic_distribution",
    "attenuation",
    "build_histogram",
    "detect_peaks",
    "find_turning_points",
    "image_distance",
    "image_distance_symmetric",
    "image_distance_xy",
    "kernel_backend",
    "ks_uniform_distance",
    "lerch_phi",
    "lerch_tail",
    "los_signal",
    "match_peaks",
    "monotonic_partition",
    "one_wall_signal",
    "phase_ray_coefficients",
    "phase_wrap_statistics",
    "pieces_from_partition",
    "power_profile",
    "predict_singularities",
    "pushforward_density",
    "pushforward_density_monotone",
    "reflected_amplitude_grid",
    "reflected_signal_sum",
    "reflected_terms",
    "sample_location_power",
    "sample_phase_power",
    "signal_lerch_closed_form",
    "single_wall_image_distance",
    "slice_power_function",
    "surface_bound_grid",
    "surface_bound_power",
    "total_signal",
    "truncation_bound",
    "uniform_density",
]
