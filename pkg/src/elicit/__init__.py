"""Expert elicitation of priors for a population mean and variance.

The package fits a location prior from quantile judgements, infers
variance quantiles from an interval-proportion judgement, fits a
two-parameter variance prior to them, and feeds Monte Carlo summaries back
to the expert so the judgements can be revised until accepted. A session
layer records the whole exchange as an auditable event log, exposed over
HTTP (``elicit.service``) and a batch CLI (``elicit.cli``).
"""

from .distributions import (
    BetaParams,
    GammaParams,
    InverseGammaParams,
    LogNormalParams,
    NormalParams,
    PrecisionFamily,
)
from .errors import (
    DocumentParseError,
    DocumentValidationError,
    DomainError,
    ElicitError,
    FitFailureError,
    InvalidJudgementError,
    InvalidTransformError,
    SessionNotFoundError,
    StateError,
)
from .feedback import (
    FeedbackBundle,
    FeedbackConfig,
    PopulationModel,
    feedback_bundle,
    pointwise_cdf_band,
    population_quantile_interval,
    proportion_shading_data,
    sample_parameters,
    variance_overlay_densities,
)
from .fitting import (
    LocationPrior,
    ProportionJudgement,
    QuantileJudgement,
    ThetaSensitivity,
    VarianceQuantiles,
    VariancePrior,
    fit_location_family,
    fit_normal_from_two_quantiles,
    fit_variance_prior,
    fit_variance_prior_from_proportion,
    normalize_theta,
    sigma2_quantile_from_theta,
    suggest_c,
    theta_sensitivity,
    variance_quantiles_from_proportion,
)
from .session import (
    Session,
    SessionStore,
    conclude,
    create_session,
    export_json,
    export_session,
    import_session,
    mark_feedback_shown,
    mean_prior_summary,
    record_bounds,
    record_mean_quantiles_and_fit,
    record_proportion_and_fit,
    revise,
    session_view,
)
from .transforms import (
    MedianJudgementSet,
    Transform,
    elicit_median_prior,
    variance_anchor,
    variance_interval_endpoints,
)

__version__ = "0.1.0"

__all__ = [
    "BetaParams",
    "GammaParams",
    "InverseGammaParams",
    "LogNormalParams",
    "NormalParams",
    "PrecisionFamily",
    "ElicitError",
    "DomainError",
    "InvalidJudgementError",
    "InvalidTransformError",
    "FitFailureError",
    "StateError",
    "SessionNotFoundError",
    "DocumentParseError",
    "DocumentValidationError",
    "FeedbackBundle",
    "FeedbackConfig",
    "PopulationModel",
    "feedback_bundle",
    "pointwise_cdf_band",
    "population_quantile_interval",
    "proportion_shading_data",
    "sample_parameters",
    "variance_overlay_densities",
    "LocationPrior",
    "ProportionJudgement",
    "QuantileJudgement",
    "ThetaSensitivity",
    "VarianceQuantiles",
    "VariancePrior",
    "fit_location_family",
    "fit_normal_from_two_quantiles",
    "fit_variance_prior",
    "fit_variance_prior_from_proportion",
    "normalize_theta",
    "sigma2_quantile_from_theta",
    "suggest_c",
    "theta_sensitivity",
    "variance_quantiles_from_proportion",
    "Session",
    "SessionStore",
    "create_session",
    "record_bounds",
    "record_mean_quantiles_and_fit",
    "record_proportion_and_fit",
    "revise",
    "mark_feedback_shown",
    "conclude",
    "mean_prior_summary",
    "session_view",
    "export_session",
    "export_json",
    "import_session",
    "MedianJudgementSet",
    "Transform",
    "elicit_median_prior",
    "variance_anchor",
    "variance_interval_endpoints",
    "__version__",
]
