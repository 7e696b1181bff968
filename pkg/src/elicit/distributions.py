"""Distribution primitives: parameter types plus pdf/cdf/quantile.

Families covered: normal, inverse-gamma, gamma, lognormal, beta (optionally
rescaled to an interval). Conventions, fixed here and relied on elsewhere:

* Probabilities are plain reals in [0, 1]; percentages never appear below
  the interface edges.
* CDFs return 0 below the support and 1 above it; PDFs return 0 outside
  the support (so plotting grids may safely cross the boundary).
* ``invgamma_cdf(x; a, b) == regularized_gamma_q(a, b / x)``, which makes
  the gamma-on-precision and inverse-gamma-on-variance descriptions of the
  same prior numerically interchangeable.

The normal functions vectorize over numpy arrays; the others are scalar
(they are only evaluated on fitting targets and plotting grids).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import special
from .errors import DomainError

__all__ = [
    "NormalParams",
    "GammaParams",
    "InverseGammaParams",
    "LogNormalParams",
    "BetaParams",
    "PrecisionFamily",
    "PRECISION_FAMILY_TAGS",
    "normal_pdf",
    "normal_cdf",
    "normal_quantile",
    "gamma_pdf",
    "gamma_cdf",
    "gamma_quantile",
    "invgamma_pdf",
    "invgamma_cdf",
    "invgamma_quantile",
    "lognormal_pdf",
    "lognormal_cdf",
    "lognormal_quantile",
    "beta_pdf",
    "beta_cdf",
    "beta_quantile",
    "dist_pdf",
    "dist_cdf",
    "dist_quantile",
]


def _require_finite(name: str, value: float) -> float:
    value = float(value)
    if not math.isfinite(value):
        raise DomainError(f"{name} must be finite, got {value!r}")
    return value


def _require_positive(name: str, value: float) -> float:
    value = _require_finite(name, value)
    if value <= 0.0:
        raise DomainError(f"{name} must be > 0, got {value!r}")
    return value


def _check_prob(alpha: float) -> float:
    alpha = float(alpha)
    if not (0.0 < alpha < 1.0) or not math.isfinite(alpha):
        raise DomainError(f"probability must lie strictly inside (0, 1), got {alpha!r}")
    return alpha


@dataclass(frozen=True)
class NormalParams:
    """Normal distribution with mean and variance (not sd)."""

    mean: float
    variance: float

    def __post_init__(self):
        object.__setattr__(self, "mean", _require_finite("mean", self.mean))
        object.__setattr__(self, "variance", _require_positive("variance", self.variance))

    @property
    def sd(self) -> float:
        return math.sqrt(self.variance)


@dataclass(frozen=True)
class GammaParams:
    """Gamma distribution, shape/rate parameterization (mean = shape/rate)."""

    shape: float
    rate: float

    def __post_init__(self):
        object.__setattr__(self, "shape", _require_positive("shape", self.shape))
        object.__setattr__(self, "rate", _require_positive("rate", self.rate))


@dataclass(frozen=True)
class InverseGammaParams:
    """Inverse-gamma distribution, shape/scale parameterization.

    If X ~ InverseGamma(shape=a, scale=b) then 1/X ~ Gamma(shape=a, rate=b);
    the prior mean is b/(a-1) for a > 1.
    """

    shape: float
    scale: float

    def __post_init__(self):
        object.__setattr__(self, "shape", _require_positive("shape", self.shape))
        object.__setattr__(self, "scale", _require_positive("scale", self.scale))


@dataclass(frozen=True)
class LogNormalParams:
    """Lognormal distribution: log X ~ N(meanlog, sdlog^2)."""

    meanlog: float
    sdlog: float

    def __post_init__(self):
        object.__setattr__(self, "meanlog", _require_finite("meanlog", self.meanlog))
        object.__setattr__(self, "sdlog", _require_positive("sdlog", self.sdlog))


@dataclass(frozen=True)
class BetaParams:
    """Beta distribution, optionally rescaled to [lower, upper]."""

    shape1: float
    shape2: float
    lower: float = 0.0
    upper: float = 1.0

    def __post_init__(self):
        object.__setattr__(self, "shape1", _require_positive("shape1", self.shape1))
        object.__setattr__(self, "shape2", _require_positive("shape2", self.shape2))
        object.__setattr__(self, "lower", _require_finite("lower", self.lower))
        object.__setattr__(self, "upper", _require_finite("upper", self.upper))
        if self.lower >= self.upper:
            raise DomainError("beta support requires lower < upper")

    @property
    def width(self) -> float:
        return self.upper - self.lower


# ---------------------------------------------------------------------------
# normal


def normal_pdf(x, p: NormalParams):
    arr = np.asarray(x, dtype=float)
    out = np.exp(-0.5 * (arr - p.mean) ** 2 / p.variance) / (p.sd * math.sqrt(2.0 * math.pi))
    return float(out) if arr.ndim == 0 else out


def normal_cdf(x, p: NormalParams):
    arr = np.asarray(x, dtype=float)
    out = special.standard_normal_cdf((arr - p.mean) / p.sd)
    return out


def normal_quantile(alpha, p: NormalParams):
    arr = np.asarray(alpha, dtype=float)
    if arr.ndim == 0:
        _check_prob(float(arr))
    z = special.standard_normal_quantile(arr)
    return p.mean + p.sd * z


# ---------------------------------------------------------------------------
# gamma (shape/rate)


def gamma_pdf(x: float, p: GammaParams) -> float:
    x = float(x)
    if not math.isfinite(x):
        raise DomainError("gamma pdf requires finite x")
    if x <= 0.0:
        return 0.0
    ln = p.shape * math.log(p.rate) + (p.shape - 1.0) * math.log(x) - p.rate * x - special.log_gamma(p.shape)
    return math.exp(ln)


def gamma_cdf(x: float, p: GammaParams) -> float:
    x = float(x)
    if not math.isfinite(x):
        raise DomainError("gamma cdf requires finite x")
    if x <= 0.0:
        return 0.0
    return special.regularized_gamma_p(p.shape, p.rate * x)


def gamma_quantile(alpha: float, p: GammaParams) -> float:
    alpha = _check_prob(alpha)
    return special.inverse_gamma_p(p.shape, alpha) / p.rate


# ---------------------------------------------------------------------------
# inverse gamma (shape/scale)


def invgamma_pdf(x: float, p: InverseGammaParams) -> float:
    x = float(x)
    if not math.isfinite(x):
        raise DomainError("inverse-gamma pdf requires finite x")
    if x <= 0.0:
        return 0.0
    ln = p.shape * math.log(p.scale) - (p.shape + 1.0) * math.log(x) - p.scale / x - special.log_gamma(p.shape)
    return math.exp(ln)


def invgamma_cdf(x: float, p: InverseGammaParams) -> float:
    """P(X <= x) = Q(shape, scale / x); returns 0 for x <= 0 by convention."""
    x = float(x)
    if not math.isfinite(x):
        raise DomainError("inverse-gamma cdf requires finite x")
    if x <= 0.0:
        return 0.0
    return special.regularized_gamma_q(p.shape, p.scale / x)


def invgamma_quantile(alpha: float, p: InverseGammaParams) -> float:
    alpha = _check_prob(alpha)
    # Q(shape, scale/x) = alpha  <=>  P(shape, scale/x) = 1 - alpha
    return p.scale / special.inverse_gamma_p(p.shape, 1.0 - alpha)


# ---------------------------------------------------------------------------
# lognormal


def lognormal_pdf(x: float, p: LogNormalParams) -> float:
    x = float(x)
    if not math.isfinite(x):
        raise DomainError("lognormal pdf requires finite x")
    if x <= 0.0:
        return 0.0
    z = (math.log(x) - p.meanlog) / p.sdlog
    return math.exp(-0.5 * z * z) / (x * p.sdlog * math.sqrt(2.0 * math.pi))


def lognormal_cdf(x: float, p: LogNormalParams) -> float:
    x = float(x)
    if not math.isfinite(x):
        raise DomainError("lognormal cdf requires finite x")
    if x <= 0.0:
        return 0.0
    return float(special.standard_normal_cdf((math.log(x) - p.meanlog) / p.sdlog))


def lognormal_quantile(alpha: float, p: LogNormalParams) -> float:
    alpha = _check_prob(alpha)
    return math.exp(p.meanlog + p.sdlog * special.standard_normal_quantile(alpha))


# ---------------------------------------------------------------------------
# beta, optionally rescaled


def beta_pdf(x: float, p: BetaParams) -> float:
    x = float(x)
    if not math.isfinite(x):
        raise DomainError("beta pdf requires finite x")
    u = (x - p.lower) / p.width
    if u <= 0.0 or u >= 1.0:
        return 0.0
    ln = (
        special.log_gamma(p.shape1 + p.shape2)
        - special.log_gamma(p.shape1)
        - special.log_gamma(p.shape2)
        + (p.shape1 - 1.0) * math.log(u)
        + (p.shape2 - 1.0) * math.log1p(-u)
    )
    return math.exp(ln) / p.width


def beta_cdf(x: float, p: BetaParams) -> float:
    x = float(x)
    if not math.isfinite(x):
        raise DomainError("beta cdf requires finite x")
    u = (x - p.lower) / p.width
    if u <= 0.0:
        return 0.0
    if u >= 1.0:
        return 1.0
    return special.regularized_beta(p.shape1, p.shape2, u)


def beta_quantile(alpha: float, p: BetaParams) -> float:
    alpha = _check_prob(alpha)
    u = special.inverse_regularized_beta(p.shape1, p.shape2, alpha)
    return p.lower + p.width * u


# ---------------------------------------------------------------------------
# dispatch across families

_PDF = {
    NormalParams: normal_pdf,
    GammaParams: gamma_pdf,
    InverseGammaParams: invgamma_pdf,
    LogNormalParams: lognormal_pdf,
    BetaParams: beta_pdf,
}
_CDF = {
    NormalParams: normal_cdf,
    GammaParams: gamma_cdf,
    InverseGammaParams: invgamma_cdf,
    LogNormalParams: lognormal_cdf,
    BetaParams: beta_cdf,
}
_QUANTILE = {
    NormalParams: normal_quantile,
    GammaParams: gamma_quantile,
    InverseGammaParams: invgamma_quantile,
    LogNormalParams: lognormal_quantile,
    BetaParams: beta_quantile,
}


def _dispatch(table, x, params):
    fn = table.get(type(params))
    if fn is None:
        raise DomainError(f"unsupported distribution parameters: {type(params).__name__}")
    return fn(x, params)


def dist_pdf(x, params):
    """Density of any supported family at x (0 outside the support)."""
    return _dispatch(_PDF, x, params)


def dist_cdf(x, params):
    """CDF of any supported family at x."""
    return _dispatch(_CDF, x, params)


def dist_quantile(alpha, params):
    """Quantile of any supported family at probability alpha."""
    return _dispatch(_QUANTILE, alpha, params)


# ---------------------------------------------------------------------------
# variance-prior families

PRECISION_FAMILY_TAGS = (
    "inverse-gamma-on-variance",
    "gamma-on-precision",
    "lognormal-on-precision",
)


@dataclass(frozen=True)
class PrecisionFamily:
    """A two-parameter prior for the population variance.

    The three tags describe the same object from different angles:

    * ``inverse-gamma-on-variance``: params = (shape, scale) of the
      inverse-gamma on the variance itself.
    * ``gamma-on-precision``: params = (shape, rate) of a gamma on the
      precision 1/variance; identical to an inverse-gamma on the variance
      with scale = rate.
    * ``lognormal-on-precision``: params = (meanlog, sdlog) of a lognormal
      on the precision; the variance is then lognormal with meanlog
      negated.

    All methods are expressed on the variance scale so fitting and feedback
    never have to branch on the tag.
    """

    tag: str
    params: tuple[float, float]

    def __post_init__(self):
        if self.tag not in PRECISION_FAMILY_TAGS:
            raise DomainError(f"unknown variance-prior family {self.tag!r}")
        a, b = (float(self.params[0]), float(self.params[1]))
        if self.tag == "lognormal-on-precision":
            _require_finite("meanlog", a)
            _require_positive("sdlog", b)
        else:
            _require_positive("shape", a)
            _require_positive("rate" if self.tag == "gamma-on-precision" else "scale", b)
        object.__setattr__(self, "params", (a, b))

    def _variance_params(self):
        a, b = self.params
        if self.tag == "lognormal-on-precision":
            return LogNormalParams(meanlog=-a, sdlog=b)
        return InverseGammaParams(shape=a, scale=b)

    def variance_cdf(self, x: float) -> float:
        return dist_cdf(x, self._variance_params())

    def variance_quantile(self, alpha: float) -> float:
        return dist_quantile(alpha, self._variance_params())

    def variance_pdf(self, x: float) -> float:
        return dist_pdf(x, self._variance_params())
