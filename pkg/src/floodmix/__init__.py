"""floodmix: mixed-distribution flood frequency analysis and dam safety.

The pipeline: compile gaged/historical/paleoflood observations with
measurement-error models (:mod:`floodmix.hydrodata`), evaluate censored,
error-aware likelihoods (:mod:`floodmix.likelihood`) for six candidate
distributions (:mod:`floodmix.distributions`), fit and rank them
(:mod:`floodmix.fitting`), scale and route design hydrographs through a
reservoir (:mod:`floodmix.hydraulics`), and classify overtopping safety
against regulatory return periods (:mod:`floodmix.safety`).
"""

from .distributions import (
    FAMILY_ORDER,
    DistributionModel,
    Family,
    cdf,
    log_pdf,
    model_from_dict,
    model_to_dict,
    pdf,
    quantile,
    sample,
    sf,
)
from .errors import (
    ConfigError,
    DataError,
    FitError,
    FloodmixError,
    NumericError,
    OvertoppingSearchError,
    ParameterError,
    ParseError,
    RoutingError,
)
from .fitting import (
    FitConfig,
    FittedModel,
    default_bounds,
    fit_from_dict,
    fit_mle,
    fit_to_dict,
    information_criteria,
    rank_models,
)
from .hydraulics import (
    Hydrograph,
    RatingCurve,
    ReservoirSpec,
    RoutingTrace,
    cumulative_volume,
    find_overtopping_peak,
    gamma_pulse_hydrograph,
    resample_hydrograph,
    route_level_pool,
    scale_hydrograph,
)
from .hydrodata import (
    AnnualPeak,
    CensoringSpec,
    ErrorModel,
    HistoricalFlood,
    PaleoBound,
    PeakDataset,
    attach_error_models,
    default_censoring,
    empirical_return_periods,
    parse_usgs_rdb,
)
from .likelihood import (
    DiscretizedError,
    LikelihoodConfig,
    discretize_error,
    loglik_censored,
    loglik_gage,
    loglik_paleo,
    total_loglik,
)
from .safety import (
    HazardCurve,
    SafetyThresholds,
    SafetyVerdict,
    classify,
    hazard_band,
    overtopping_return_period,
    quantile_comparison,
)

__version__ = "0.1.0"
