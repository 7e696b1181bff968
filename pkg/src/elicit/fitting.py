"""Turn elicited judgements into fitted prior distributions.

Three stages, mirroring how a facilitated session proceeds:

1. Two (or more) quantiles of the population mean -> a location prior.
   The two-quantile normal case has a closed form; everything else is a
   least-squares fit of the family CDF through the judged points.
2. An interval-proportion judgement -> quantiles of the population
   variance: a proportion theta of the population inside [anchor,
   anchor + c] pins the variance at (c / Phi^-1(theta + 1/2))^2, and a
   theta judged at tail level p yields the variance quantile at 1 - p.
3. Those variance quantiles -> a two-parameter variance prior by
   minimizing the squared CDF error at the two targets.

All fits are deterministic; the simplex search has no random component.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from . import distributions as dist
from . import special
from .errors import DomainError, FitFailureError, InvalidJudgementError
from .simplex import nelder_mead

__all__ = [
    "QuantileJudgement",
    "ProportionJudgement",
    "VarianceQuantiles",
    "LocationPrior",
    "VariancePrior",
    "ThetaSensitivity",
    "LOCATION_FAMILIES",
    "ROBUST_THETA_BAND",
    "SHAPE_CAP",
    "fit_normal_from_two_quantiles",
    "fit_location_family",
    "sigma2_quantile_from_theta",
    "variance_quantiles_from_proportion",
    "fit_variance_prior",
    "fit_variance_prior_from_proportion",
    "suggest_c",
    "theta_sensitivity",
    "normalize_theta",
]

LOCATION_FAMILIES = ("normal", "lognormal", "beta-scaled")

# Interval over which log(sigma) reacts least to small changes in theta; a
# theta quantile outside it earns a facilitator warning, not an error.
ROBUST_THETA_BAND = (0.2, 0.45)

# Variance-prior shapes above this are treated as degenerate (the two
# sigma^2 targets are too close to separate) and reported as fit failures.
SHAPE_CAP = 1e6

_FIT_TOL = 1e-4  # max |CDF(target) - level| accepted from the variance fit


@dataclass(frozen=True)
class QuantileJudgement:
    """One elicited quantile: P(quantity <= value) = alpha."""

    alpha: float
    value: float

    def __post_init__(self):
        a = float(self.alpha)
        v = float(self.value)
        if not (math.isfinite(a) and 0.0 < a < 1.0):
            raise DomainError(f"quantile level must lie in (0, 1), got {self.alpha!r}")
        if not math.isfinite(v):
            raise DomainError(f"quantile value must be finite, got {self.value!r}")
        object.__setattr__(self, "alpha", a)
        object.__setattr__(self, "value", v)


@dataclass(frozen=True)
class ProportionJudgement:
    """Tail quantiles of the population proportion inside [anchor, anchor+width].

    ``theta_lo`` and ``theta_hi`` are the proportion's quantiles at tail
    levels ``level_lo`` and ``level_hi`` (5th/95th percentiles by default;
    the levels are stored so other choices remain possible).
    """

    anchor: float
    width: float
    theta_lo: float
    theta_hi: float
    level_lo: float = 0.05
    level_hi: float = 0.95

    def __post_init__(self):
        anchor = float(self.anchor)
        width = float(self.width)
        if not math.isfinite(anchor):
            raise DomainError("proportion anchor must be finite")
        if not (math.isfinite(width) and width > 0.0):
            raise DomainError("interval width must be > 0")
        t_lo, t_hi = float(self.theta_lo), float(self.theta_hi)
        for t in (t_lo, t_hi):
            if not (math.isfinite(t) and 0.0 < t < 0.5):
                raise DomainError(
                    f"proportion quantile must lie strictly inside (0, 0.5), got {t!r}"
                )
        if not (t_lo < t_hi):
            raise InvalidJudgementError(
                f"proportion quantiles must increase: theta_lo={t_lo} >= theta_hi={t_hi}"
            )
        l_lo, l_hi = float(self.level_lo), float(self.level_hi)
        if not (0.0 < l_lo < l_hi < 1.0):
            raise DomainError("proportion quantile levels must satisfy 0 < lo < hi < 1")
        object.__setattr__(self, "anchor", anchor)
        object.__setattr__(self, "width", width)
        object.__setattr__(self, "theta_lo", t_lo)
        object.__setattr__(self, "theta_hi", t_hi)
        object.__setattr__(self, "level_lo", l_lo)
        object.__setattr__(self, "level_hi", l_hi)


@dataclass(frozen=True)
class VarianceQuantiles:
    """The 5th and 95th percentiles implied for the population variance."""

    sigma2_05: float
    sigma2_95: float

    def __post_init__(self):
        lo, hi = float(self.sigma2_05), float(self.sigma2_95)
        if not (math.isfinite(lo) and math.isfinite(hi) and 0.0 < lo):
            raise DomainError("variance quantiles must be positive and finite")
        if not lo < hi:
            raise InvalidJudgementError(
                f"variance quantiles must increase: sigma2_05={lo} >= sigma2_95={hi}"
            )
        object.__setattr__(self, "sigma2_05", lo)
        object.__setattr__(self, "sigma2_95", hi)


@dataclass(frozen=True)
class LocationPrior:
    """Fitted prior for the population mean (or median, under a transform)."""

    family: str
    params: object
    fitted_from: tuple[QuantileJudgement, ...] = ()
    residual: float = 0.0

    def __post_init__(self):
        if self.family not in LOCATION_FAMILIES:
            raise DomainError(f"unknown location family {self.family!r}")
        object.__setattr__(self, "fitted_from", tuple(self.fitted_from))

    def cdf(self, x):
        return dist.dist_cdf(x, self.params)

    def pdf(self, x):
        return dist.dist_pdf(x, self.params)

    def quantile(self, alpha):
        return dist.dist_quantile(alpha, self.params)

    def median(self) -> float:
        return float(self.quantile(0.5))

    def params_dict(self) -> dict:
        p = self.params
        if self.family == "normal":
            return {"mean": p.mean, "variance": p.variance}
        if self.family == "lognormal":
            return {"meanlog": p.meanlog, "sdlog": p.sdlog}
        return {"shape1": p.shape1, "shape2": p.shape2, "lower": p.lower, "upper": p.upper}

    @staticmethod
    def from_params_dict(family: str, params: dict, **kwargs) -> "LocationPrior":
        if family == "normal":
            p = dist.NormalParams(params["mean"], params["variance"])
        elif family == "lognormal":
            p = dist.LogNormalParams(params["meanlog"], params["sdlog"])
        elif family == "beta-scaled":
            p = dist.BetaParams(params["shape1"], params["shape2"], params["lower"], params["upper"])
        else:
            raise DomainError(f"unknown location family {family!r}")
        return LocationPrior(family=family, params=p, **kwargs)


@dataclass(frozen=True)
class VariancePrior:
    """Fitted prior for the population variance, any precision family."""

    family: dist.PrecisionFamily
    targets: VarianceQuantiles
    levels: tuple[float, float] = (0.05, 0.95)
    residual: float = 0.0

    def variance_cdf(self, x: float) -> float:
        return self.family.variance_cdf(x)

    def variance_quantile(self, alpha: float) -> float:
        return self.family.variance_quantile(alpha)

    def variance_pdf(self, x: float) -> float:
        return self.family.variance_pdf(x)

    @property
    def tag(self) -> str:
        return self.family.tag

    @property
    def params(self) -> tuple[float, float]:
        return self.family.params


@dataclass(frozen=True)
class ThetaSensitivity:
    """How strongly log(sigma) reacts to the judged proportion."""

    log_sigma: float
    gradient: float
    in_robust_band: bool


def fit_normal_from_two_quantiles(
    q1: QuantileJudgement, q2: QuantileJudgement
) -> dist.NormalParams:
    """Closed-form normal through two quantile judgements.

    With z_i the standard normal quantile at alpha_i:

        mean     = (v1*z2 - v2*z1) / (z2 - z1)
        variance = ((v2 - v1) / (z2 - z1))^2

    The fitted CDF passes exactly through both judgements.
    """
    if not q1.alpha < q2.alpha:
        raise InvalidJudgementError(
            f"quantile levels must increase: {q1.alpha} >= {q2.alpha}"
        )
    if not q1.value < q2.value:
        raise InvalidJudgementError(
            f"quantile values must increase with level: {q1.value} >= {q2.value}"
        )
    z1 = special.standard_normal_quantile(q1.alpha)
    z2 = special.standard_normal_quantile(q2.alpha)
    mean = (q1.value * z2 - q2.value * z1) / (z2 - z1)
    sd = (q2.value - q1.value) / (z2 - z1)
    return dist.NormalParams(mean=mean, variance=sd * sd)


def _validate_increasing(quantiles: list[QuantileJudgement]) -> None:
    for a, b in zip(quantiles, quantiles[1:]):
        if not a.alpha < b.alpha:
            raise InvalidJudgementError(
                f"quantile levels must strictly increase ({a.alpha} then {b.alpha})"
            )
        if not a.value < b.value:
            raise InvalidJudgementError(
                f"quantile values must strictly increase ({a.value} then {b.value})"
            )


def _initial_location_params(quantiles, family, bounds):
    first, last = quantiles[0], quantiles[-1]
    if family == "normal":
        p = fit_normal_from_two_quantiles(first, last)
        return [p.mean, 0.5 * math.log(p.variance)]
    if family == "lognormal":
        lp = fit_normal_from_two_quantiles(
            QuantileJudgement(first.alpha, math.log(first.value)),
            QuantileJudgement(last.alpha, math.log(last.value)),
        )
        return [lp.mean, 0.5 * math.log(lp.variance)]
    # beta-scaled: moment-style guess on the unit interval
    lo, hi = bounds
    width = hi - lo
    u = fit_normal_from_two_quantiles(
        QuantileJudgement(first.alpha, (first.value - lo) / width),
        QuantileJudgement(last.alpha, (last.value - lo) / width),
    )
    m = min(max(u.mean, 0.02), 0.98)
    v = min(u.variance, m * (1.0 - m) * 0.8)
    common = m * (1.0 - m) / v - 1.0
    a = max(m * common, 0.2)
    b = max((1.0 - m) * common, 0.2)
    return [math.log(a), math.log(b)]


def _location_params_from_vector(x, family, bounds):
    if family == "normal":
        return dist.NormalParams(mean=x[0], variance=math.exp(2.0 * x[1]))
    if family == "lognormal":
        return dist.LogNormalParams(meanlog=x[0], sdlog=math.exp(x[1]))
    lo, hi = bounds
    return dist.BetaParams(
        shape1=math.exp(x[0]), shape2=math.exp(x[1]), lower=lo, upper=hi
    )


def fit_location_family(
    quantiles,
    family: str = "normal",
    *,
    bounds: tuple[float, float] | None = None,
    max_iter: int = 500,
) -> LocationPrior:
    """Least-squares fit of a two-parameter family through >= 2 quantiles.

    Minimizes sum_i (F(value_i) - alpha_i)^2 over the family parameters,
    searched on a log scale where positivity is required. When the family
    can interpolate the judgements exactly the residual collapses to the
    simplex tolerance (well below 1e-8).

    ``bounds`` is required for the ``beta-scaled`` family, whose support is
    the plausible range [lower, upper].
    """
    quantiles = [
        q if isinstance(q, QuantileJudgement) else QuantileJudgement(*q) for q in quantiles
    ]
    if family not in LOCATION_FAMILIES:
        raise DomainError(f"unknown location family {family!r}")
    if len(quantiles) < 2:
        raise InvalidJudgementError("at least two quantile judgements are required")
    _validate_increasing(quantiles)
    if family == "lognormal" and quantiles[0].value <= 0.0:
        raise DomainError("lognormal family requires strictly positive quantile values")
    if family == "beta-scaled":
        if bounds is None:
            raise DomainError("beta-scaled family requires explicit support bounds")
        lo, hi = float(bounds[0]), float(bounds[1])
        if not lo < hi:
            raise DomainError("support bounds must satisfy lower < upper")
        if quantiles[0].value <= lo or quantiles[-1].value >= hi:
            raise DomainError("beta-scaled family requires quantile values inside the bounds")
        bounds = (lo, hi)

    alphas = [q.alpha for q in quantiles]
    values = [q.value for q in quantiles]

    def objective(x) -> float:
        try:
            params = _location_params_from_vector(x, family, bounds)
        except (DomainError, OverflowError):
            return 1e6
        total = 0.0
        for v, a in zip(values, alphas):
            diff = dist.dist_cdf(v, params) - a
            total += diff * diff
        return total

    x0 = _initial_location_params(quantiles, family, bounds)
    result = nelder_mead(objective, x0, max_iter=max_iter)
    params = _location_params_from_vector(result.x, family, bounds)
    if not result.converged:
        raise FitFailureError(
            f"location fit did not converge within {max_iter} iterations",
            params=tuple(params.__dict__.values()),
            residual=result.fun,
            details={"family": family},
        )
    return LocationPrior(
        family=family, params=params, fitted_from=tuple(quantiles), residual=result.fun
    )


def sigma2_quantile_from_theta(c: float, theta: float) -> float:
    """Variance quantile implied by an interval-proportion quantile.

        sigma2 = (c / Phi^-1(theta + 1/2))^2

    A proportion quantile judged at tail level p yields the variance
    quantile at level 1 - p (greater certainty of a wide interval means a
    smaller variance, so the labels flip). Strictly decreasing in theta and
    scaling as c^2.
    """
    c = float(c)
    if not (math.isfinite(c) and c > 0.0):
        raise DomainError("interval width c must be > 0")
    theta = float(theta)
    if not (math.isfinite(theta) and 0.0 < theta < 0.5):
        raise DomainError(
            f"proportion must lie strictly inside (0, 0.5), got {theta!r}"
        )
    z = special.standard_normal_quantile(theta + 0.5)
    return (c / z) ** 2


def variance_quantiles_from_proportion(pj: ProportionJudgement) -> VarianceQuantiles:
    """Map both proportion quantiles through the variance relation.

    theta at level ``level_lo`` (default 0.05) gives sigma2_95; theta at
    ``level_hi`` (default 0.95) gives sigma2_05.
    """
    hi = sigma2_quantile_from_theta(pj.width, pj.theta_lo)
    lo = sigma2_quantile_from_theta(pj.width, pj.theta_hi)
    return VarianceQuantiles(sigma2_05=lo, sigma2_95=hi)


def _initial_variance_params(vq: VarianceQuantiles, levels, family_tag):
    # Treat log sigma^2 as normal between the two targets, then match the
    # first two moments of the implied precision to the target family.
    z_lo = special.standard_normal_quantile(levels[0])
    z_hi = special.standard_normal_quantile(levels[1])
    s = (math.log(vq.sigma2_95) - math.log(vq.sigma2_05)) / (z_hi - z_lo)
    mu = math.log(vq.sigma2_05) - s * z_lo
    if family_tag == "lognormal-on-precision":
        return [-mu, math.log(s)]
    spread = math.expm1(s * s)
    shape = max(1.0 / spread, 1e-3)
    mean_precision = math.exp(-mu + 0.5 * s * s)
    rate = shape / mean_precision
    return [math.log(shape), math.log(rate)]


def _variance_family_from_vector(x, tag) -> dist.PrecisionFamily:
    if tag == "lognormal-on-precision":
        return dist.PrecisionFamily(tag, (x[0], math.exp(x[1])))
    return dist.PrecisionFamily(tag, (math.exp(x[0]), math.exp(x[1])))


def fit_variance_prior(
    vq: VarianceQuantiles,
    family: str = "inverse-gamma-on-variance",
    *,
    levels: tuple[float, float] = (0.05, 0.95),
    max_iter: int = 500,
) -> VariancePrior:
    """Fit a two-parameter variance prior through two variance quantiles.

    Minimizes

        (F(sigma2_05) - levels[0])^2 + (F(sigma2_95) - levels[1])^2

    over the family parameters on a log scale. Two parameters meeting two
    constraints: the fit is near-exact, and anything worse than 1e-4 per
    constraint is reported as a failure. Shapes beyond ``SHAPE_CAP`` mean
    the two targets are too close to represent and also fail.
    """
    if family not in dist.PRECISION_FAMILY_TAGS:
        raise DomainError(f"unknown variance-prior family {family!r}")
    l_lo, l_hi = float(levels[0]), float(levels[1])
    if not (0.0 < l_lo < l_hi < 1.0):
        raise DomainError("target levels must satisfy 0 < lo < hi < 1")

    def objective(x) -> float:
        if family != "lognormal-on-precision" and x[0] > math.log(SHAPE_CAP):
            return 1e6 * (1.0 + x[0] - math.log(SHAPE_CAP))
        try:
            fam = _variance_family_from_vector(x, family)
        except (DomainError, OverflowError):
            return 1e6
        d1 = fam.variance_cdf(vq.sigma2_05) - l_lo
        d2 = fam.variance_cdf(vq.sigma2_95) - l_hi
        return d1 * d1 + d2 * d2

    x0 = _initial_variance_params(vq, (l_lo, l_hi), family)
    result = nelder_mead(objective, x0, max_iter=max_iter)
    fam = _variance_family_from_vector(result.x, family)

    err_lo = abs(fam.variance_cdf(vq.sigma2_05) - l_lo)
    err_hi = abs(fam.variance_cdf(vq.sigma2_95) - l_hi)
    shape_hit_cap = (
        family != "lognormal-on-precision" and fam.params[0] >= SHAPE_CAP * 0.999
    )
    if shape_hit_cap or max(err_lo, err_hi) > _FIT_TOL:
        raise FitFailureError(
            "variance-prior fit failed: "
            + (
                f"shape {fam.params[0]:.3g} at the degeneracy cap {SHAPE_CAP:.0e}"
                if shape_hit_cap
                else f"constraint errors ({err_lo:.2e}, {err_hi:.2e}) exceed {_FIT_TOL}"
            ),
            params=fam.params,
            residual=result.fun,
            details={
                "family": family,
                "sigma2_05": vq.sigma2_05,
                "sigma2_95": vq.sigma2_95,
                "iterations": result.iterations,
            },
        )
    return VariancePrior(family=fam, targets=vq, levels=(l_lo, l_hi), residual=result.fun)


def fit_variance_prior_from_proportion(
    pj: ProportionJudgement, family: str = "inverse-gamma-on-variance"
) -> VariancePrior:
    """Variance prior straight from a proportion judgement.

    Maps both theta quantiles to variance quantiles and fits at the
    complementary levels (a theta at tail level p constrains the variance
    CDF at 1 - p). The single entry point for the session and the CLI, so
    both produce bit-identical fits.
    """
    vq = variance_quantiles_from_proportion(pj)
    # decimal-rounded complements keep the default (0.05, 0.95) exact
    levels = (round(1.0 - pj.level_hi, 12), round(1.0 - pj.level_lo, 12))
    return fit_variance_prior(vq, family, levels=levels)


def suggest_c(m_hat: float, upper: float) -> float:
    """Default proportion-interval width: a third of the gap to the upper bound."""
    m_hat, upper = float(m_hat), float(upper)
    if not (math.isfinite(m_hat) and math.isfinite(upper)):
        raise DomainError("bounds must be finite")
    if upper <= m_hat:
        raise DomainError(f"upper bound {upper} must exceed the anchor {m_hat}")
    return (upper - m_hat) / 3.0


def theta_sensitivity(theta: float, c: float) -> ThetaSensitivity:
    """Diagnose how robust the variance relation is at this proportion.

    Reports log(sigma) = log c - log Phi^-1(theta + 1/2), the magnitude of
    its derivative in theta (central finite difference), and whether theta
    sits inside the robust band where that derivative is smallest.
    """
    sigma2 = sigma2_quantile_from_theta(c, theta)  # validates both arguments
    log_sigma = 0.5 * math.log(sigma2)
    h = min(1e-6, 0.5 * theta, 0.5 * (0.5 - theta))
    up = 0.5 * math.log(sigma2_quantile_from_theta(c, theta + h))
    down = 0.5 * math.log(sigma2_quantile_from_theta(c, theta - h))
    gradient = abs(up - down) / (2.0 * h)
    lo, hi = ROBUST_THETA_BAND
    return ThetaSensitivity(
        log_sigma=log_sigma, gradient=gradient, in_robust_band=lo <= theta <= hi
    )


def normalize_theta(value: float, *, percent: bool = False) -> float:
    """Normalize a proportion given either on the 0-0.5 scale or in percent.

    Explicit ``percent=True`` always divides by 100. Bare values of 1 or
    more can only be percentages (a proportion must stay below 0.5), so
    "33" means 0.33. Bare values in [0.5, 1) are rejected rather than
    guessed at: they are invalid as proportions, and a sub-1% percentage
    must be flagged explicitly.
    """
    value = float(value)
    if not math.isfinite(value) or value <= 0.0:
        raise DomainError(f"proportion must be positive, got {value!r}")
    if percent:
        value = value / 100.0
    elif value >= 1.0:
        if value >= 50.0:
            raise DomainError(
                f"proportion {value!r} is out of range (below 0.5, or below 50 as a percentage)"
            )
        value = value / 100.0
    if not value < 0.5:
        raise DomainError(
            f"proportion must stay below 0.5 (or be a percentage below 50), got {value!r}"
        )
    return value
