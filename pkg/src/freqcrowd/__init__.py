"""Frequency-crowding statistics for fixed-frequency transmon lattices.

The pieces, bottom to top:

- :mod:`freqcrowd.physics` — transmon/junction formulas and the
  resistance-to-frequency power law.
- :mod:`freqcrowd.lattice` — error-correction coupling graphs with gate
  directions and frequency set-point patterns.
- :mod:`freqcrowd.collision` — the seven nearest/next-nearest-neighbour
  frequency-collision predicates.
- :mod:`freqcrowd.mc` — deterministic Monte Carlo over frequency scatter,
  with spacing optimisation.
- :mod:`freqcrowd.window` — the single-window analytic yield model, its fit,
  and size extrapolation.
- :mod:`freqcrowd.tunesim` — adaptive one-directional resistance-trim
  campaigns.
- :mod:`freqcrowd.cli` — reproducible command-line runs with manifests.
"""

__version__ = "0.1.0"

from .collision import CollisionReport, CollisionRules, DEFAULT_RULES, count_collisions
from .errors import (
    FreqcrowdError,
    InputError,
    ParameterError,
    SingularFitError,
    UnfittableError,
)
from .lattice import (
    DEFAULT_BASE_GHZ,
    DEFAULT_SPACING_MHZ,
    FAMILIES,
    FrequencyPattern,
    Lattice,
    build_lattice,
    set_points_mhz,
)
from .mc import (
    DEFAULT_SIGMA_GRID_MHZ,
    DEFAULT_SPACING_GRID_MHZ,
    AdaptiveTrials,
    FixedTrials,
    SweepPoint,
    optimize_spacing,
    run_point,
    sweep_sigma,
)
from .physics import (
    PowerLawFit,
    critical_current_na,
    fit_power_law,
    grouped_sigma,
    predict_frequency_ghz,
    target_resistance_ohm,
    transmon_f01_ghz,
)
from .tunesim import (
    AnnealResponseModel,
    CampaignResult,
    JunctionRecord,
    TunePolicy,
    generate_population,
    run_campaign,
    tune_junction,
)
from .window import (
    WindowFit,
    WindowTrend,
    fit_trend,
    fit_window,
    predict_delta_f,
    required_sigma,
    window_yield,
)

__all__ = [
    "__version__",
    "AdaptiveTrials",
    "AnnealResponseModel",
    "CampaignResult",
    "CollisionReport",
    "CollisionRules",
    "DEFAULT_BASE_GHZ",
    "DEFAULT_RULES",
    "DEFAULT_SIGMA_GRID_MHZ",
    "DEFAULT_SPACING_GRID_MHZ",
    "DEFAULT_SPACING_MHZ",
    "FAMILIES",
    "FixedTrials",
    "FreqcrowdError",
    "FrequencyPattern",
    "InputError",
    "JunctionRecord",
    "Lattice",
    "ParameterError",
    "PowerLawFit",
    "SingularFitError",
    "SweepPoint",
    "TunePolicy",
    "UnfittableError",
    "WindowFit",
    "WindowTrend",
    "build_lattice",
    "count_collisions",
    "critical_current_na",
    "fit_power_law",
    "fit_trend",
    "fit_window",
    "generate_population",
    "grouped_sigma",
    "optimize_spacing",
    "predict_delta_f",
    "predict_frequency_ghz",
    "required_sigma",
    "run_campaign",
    "run_point",
    "set_points_mhz",
    "sweep_sigma",
    "target_resistance_ohm",
    "transmon_f01_ghz",
    "tune_junction",
    "window_yield",
]
