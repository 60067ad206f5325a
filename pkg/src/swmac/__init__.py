"""Rate regions and outage probability for the two-user wireless MAC with
FGM-correlated Rayleigh fading.

The package has four parts:

* :mod:`swmac.copula` - the FGM dependence model, exponential fading
  marginals, and correlated gain sampling;
* :mod:`swmac.regions` - Gaussian and instantaneous achievable-rate
  regions with membership tests and plot-ready vertices;
* :mod:`swmac.outage` - the sum-rate outage probability via an analytic
  closed form, exact quadrature, and Monte Carlo;
* :mod:`swmac.config` / :mod:`swmac.sweep` / :mod:`swmac.cli` - the
  configuration-driven experiment harness with deterministic CSV output.
"""

from .config import (
    ConfigError,
    ExperimentConfig,
    ParseError,
    RateGrid,
    ValidationError,
    load_config,
    parse_config,
    preset_config,
    preset_names,
)
from .copula import (
    DependenceParameter,
    FadingMarginals,
    GainPair,
    UnitPair,
    conditional_cdf,
    copula_cdf,
    copula_density,
    joint_gain_cdf,
    joint_gain_pdf,
    sample_gain_pair,
    sample_gain_pairs,
    sample_unit_pair,
    sample_unit_pairs,
)
from .outage import (
    CLOSED_FORM,
    METHODS,
    MONTE_CARLO,
    QUADRATURE,
    DegenerateDenominator,
    OutageEstimate,
    OutageEvaluationError,
    OutageQuery,
    QuadratureNonConvergence,
    gamma_threshold,
    outage_closed_form,
    outage_monte_carlo,
    outage_point_to_point,
    outage_quadrature,
)
from .regions import (
    PowerBudget,
    RatePoint,
    RegionBounds,
    ScalingFactors,
    contains,
    gaussian_region_bounds,
    region_vertices,
    scaling_factors,
    wireless_region_bounds,
)
from .streams import derive_seed, substream
from .sweep import (
    SweepRow,
    compare_methods,
    emit_csv,
    emit_region,
    emit_samples,
    run_outage_sweep,
)

__version__ = "0.1.0"

__all__ = [
    "__version__",
    # copula
    "DependenceParameter",
    "UnitPair",
    "FadingMarginals",
    "GainPair",
    "copula_cdf",
    "copula_density",
    "conditional_cdf",
    "sample_unit_pair",
    "sample_unit_pairs",
    "sample_gain_pair",
    "sample_gain_pairs",
    "joint_gain_cdf",
    "joint_gain_pdf",
    # regions
    "PowerBudget",
    "RatePoint",
    "RegionBounds",
    "ScalingFactors",
    "gaussian_region_bounds",
    "wireless_region_bounds",
    "contains",
    "region_vertices",
    "scaling_factors",
    # outage
    "CLOSED_FORM",
    "QUADRATURE",
    "MONTE_CARLO",
    "METHODS",
    "OutageQuery",
    "OutageEstimate",
    "OutageEvaluationError",
    "DegenerateDenominator",
    "QuadratureNonConvergence",
    "gamma_threshold",
    "outage_closed_form",
    "outage_quadrature",
    "outage_monte_carlo",
    "outage_point_to_point",
    # streams
    "substream",
    "derive_seed",
    # config + sweep
    "ConfigError",
    "ParseError",
    "ValidationError",
    "RateGrid",
    "ExperimentConfig",
    "load_config",
    "parse_config",
    "preset_config",
    "preset_names",
    "SweepRow",
    "run_outage_sweep",
    "compare_methods",
    "emit_csv",
    "emit_region",
    "emit_samples",
]
