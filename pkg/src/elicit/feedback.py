"""Monte Carlo feedback shown to the expert after fitting.

The algorithm: draw K parameter pairs from the fitted priors, evaluate the
population CDF induced by each pair on a grid of J evenly spaced points
between the plausible bounds (first point = L, last = U), and report
pointwise empirical bands plus empirical intervals for chosen population
quantiles. Also produced here: the fixed-variance density overlays and the
shaded-proportion explainer data used on the earlier screens.

Reproducibility contract
------------------------
The generator is numpy's PCG64. A bundle's seed feeds a SeedSequence whose
first two spawned children drive, in order, the location draws and the
variance draws, so the two streams are independent and splittable. Every
variate is derived from uniform doubles only:

* location: phi = location-prior quantile at u, then mu = g(phi);
* inverse-gamma / gamma-on-precision variance: sigma2 = b / G where G is a
  standard-gamma variate from the Marsaglia-Tsang rejection sampler (valid
  for all shapes; normals obtained by inverse CDF from uniforms);
* lognormal-on-precision variance: sigma2 = exp(-(meanlog + sdlog * z)).

Identical (model, config) therefore give bit-identical bundles on any
platform, and results never depend on evaluation order: the K draws are
generated sequentially up front, after which per-grid-point reductions are
free to run in any order or in parallel.

Empirical quantiles use linear interpolation of order statistics (numpy's
"linear", i.e. the type-7 convention).
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

import numpy as np

from . import special
from .distributions import NormalParams, normal_pdf
from .errors import DomainError
from .fitting import LocationPrior, VariancePrior, VarianceQuantiles
from .transforms import Transform

__all__ = [
    "PopulationModel",
    "FeedbackConfig",
    "FeedbackBundle",
    "OverlayCurve",
    "ShadingData",
    "ParameterDraws",
    "sample_parameters",
    "pointwise_cdf_band",
    "population_quantile_interval",
    "variance_overlay_densities",
    "proportion_shading_data",
    "feedback_bundle",
]

_MAX_SEED = 2**64


@dataclass(frozen=True)
class PopulationModel:
    """Everything the feedback step needs: transform, priors, bounds.

    The location prior always describes the population median on the
    original (observable) scale; the transformed-scale location parameter
    is recovered as g(median draw). Bounds are observable-scale plausible
    limits and must sit inside the transform's support.
    """

    transform: Transform
    location: LocationPrior
    variance: VariancePrior
    bounds: tuple[float, float]

    def __post_init__(self):
        lo, hi = float(self.bounds[0]), float(self.bounds[1])
        if not (math.isfinite(lo) and math.isfinite(hi) and lo < hi):
            raise DomainError(f"plausible bounds must satisfy L < U, got ({lo}, {hi})")
        s_lo, s_hi = self.transform.support
        if not (s_lo < lo and hi < s_hi):
            raise DomainError(
                f"bounds ({lo}, {hi}) must lie inside the "
                f"{self.transform.value} transform's support"
            )
        object.__setattr__(self, "bounds", (lo, hi))


@dataclass(frozen=True)
class FeedbackConfig:
    """Monte Carlo settings; defaults follow the worked example (K = J = 300)."""

    K: int = 300
    J: int = 300
    seed: int = 0
    band_level: float = 0.95
    quantile_interval_level: float = 0.90

    def __post_init__(self):
        if int(self.K) < 2 or int(self.J) < 2:
            raise DomainError("feedback needs K >= 2 draws and J >= 2 grid points")
        object.__setattr__(self, "K", int(self.K))
        object.__setattr__(self, "J", int(self.J))
        seed = int(self.seed)
        if not (0 <= seed < _MAX_SEED):
            raise DomainError("seed must be a 64-bit unsigned integer")
        object.__setattr__(self, "seed", seed)
        for name in ("band_level", "quantile_interval_level"):
            level = float(getattr(self, name))
            if not (0.0 < level < 1.0):
                raise DomainError(f"{name} must lie strictly inside (0, 1)")
            object.__setattr__(self, name, level)


@dataclass(frozen=True)
class OverlayCurve:
    label: str
    grid: np.ndarray
    density: np.ndarray


@dataclass(frozen=True)
class ShadingData:
    """Density series plus the probability mass over a highlighted interval."""

    grid: np.ndarray
    density: np.ndarray
    interval: tuple[float, float]
    mass: float


@dataclass(frozen=True)
class ParameterDraws:
    """K sampled (mu, sigma2) pairs on the transformed scale."""

    mu: np.ndarray
    sigma2: np.ndarray


@dataclass(frozen=True)
class FeedbackBundle:
    grid: np.ndarray
    cdf_lower: np.ndarray
    cdf_median: np.ndarray
    cdf_upper: np.ndarray
    quantile_intervals: dict
    overlay_curves: tuple[OverlayCurve, ...]
    config: FeedbackConfig

    def to_dict(self) -> dict:
        """The documented JSON shape consumed by the CLI and the UI."""
        return {
            "schema_version": 1,
            "config": {
                "K": self.config.K,
                "J": self.config.J,
                "seed": self.config.seed,
                "band_level": self.config.band_level,
                "quantile_interval_level": self.config.quantile_interval_level,
            },
            "grid": [float(x) for x in self.grid],
            "cdf_lower": [float(x) for x in self.cdf_lower],
            "cdf_median": [float(x) for x in self.cdf_median],
            "cdf_upper": [float(x) for x in self.cdf_upper],
            "quantile_intervals": {
                repr(float(alpha)): [float(lo), float(hi)]
                for alpha, (lo, hi) in sorted(self.quantile_intervals.items())
            },
            "overlay_curves": [
                {
                    "label": c.label,
                    "grid": [float(x) for x in c.grid],
                    "density": [float(x) for x in c.density],
                }
                for c in self.overlay_curves
            ],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, separators=(",", ":"))


def _uniforms(rng: np.random.Generator, size: int) -> np.ndarray:
    # open-interval uniforms: a raw 0.0 (probability 2^-53) would break the
    # inverse-CDF maps
    u = rng.random(size)
    return np.maximum(u, 5e-324)


def _standard_gamma(rng: np.random.Generator, shape: float, size: int) -> np.ndarray:
    """Marsaglia-Tsang rejection sampler, valid for every shape > 0."""
    if shape <= 0.0:
        raise DomainError("gamma sampling requires shape > 0")
    boost = None
    a = shape
    if a < 1.0:
        boost = _uniforms(rng, size) ** (1.0 / a)
        a = a + 1.0
    d = a - 1.0 / 3.0
    c = 1.0 / math.sqrt(9.0 * d)
    out = np.empty(size)
    pending = np.arange(size)
    while pending.size:
        z = special.standard_normal_quantile(_uniforms(rng, pending.size))
        v = (1.0 + c * z) ** 3
        u = _uniforms(rng, pending.size)
        with np.errstate(invalid="ignore", divide="ignore"):
            accept = (v > 0.0) & (np.log(u) < 0.5 * z * z + d - d * v + d * np.log(v))
        out[pending[accept]] = d * v[accept]
        pending = pending[~accept]
    if boost is not None:
        out = out * boost
    return out


def _location_draws(prior: LocationPrior, rng: np.random.Generator, size: int) -> np.ndarray:
    u = _uniforms(rng, size)
    if prior.family == "normal":
        p = prior.params
        return p.mean + p.sd * special.standard_normal_quantile(u)
    if prior.family == "lognormal":
        p = prior.params
        return np.exp(p.meanlog + p.sdlog * special.standard_normal_quantile(u))
    p = prior.params  # beta-scaled; scalar inversion, cold path
    unit = np.array(
        [special.inverse_regularized_beta(p.shape1, p.shape2, float(ui)) for ui in u]
    )
    return p.lower + p.width * unit


def _variance_draws(prior: VariancePrior, rng: np.random.Generator, size: int) -> np.ndarray:
    a, b = prior.params
    if prior.tag == "lognormal-on-precision":
        z = special.standard_normal_quantile(_uniforms(rng, size))
        return np.exp(-(a + b * z))
    return b / _standard_gamma(rng, a, size)


def sample_parameters(model: PopulationModel, cfg: FeedbackConfig) -> ParameterDraws:
    """Draw K (mu, sigma2) pairs; deterministic given cfg.seed."""
    loc_seq, var_seq = np.random.SeedSequence(cfg.seed).spawn(2)
    loc_rng = np.random.Generator(np.random.PCG64(loc_seq))
    var_rng = np.random.Generator(np.random.PCG64(var_seq))
    phi = _location_draws(model.location, loc_rng, cfg.K)
    mu = np.asarray(model.transform.apply(phi), dtype=float)
    sigma2 = _variance_draws(model.variance, var_rng, cfg.K)
    return ParameterDraws(mu=mu, sigma2=sigma2)


def _band_levels(band_level: float) -> tuple[float, float, float]:
    return ((1.0 - band_level) / 2.0, 0.5, (1.0 + band_level) / 2.0)


def pointwise_cdf_band(
    model: PopulationModel,
    cfg: FeedbackConfig,
    draws: ParameterDraws | None = None,
) -> FeedbackBundle:
    """Empirical pointwise band for P(X <= x) over the plausible range.

    At each grid point the lower/upper series are the empirical quantiles
    of {Phi((g(x) - mu_k) / sigma_k)} at (1 -/+ band_level)/2, and the
    centre series is the empirical median. Each series is nondecreasing
    because every single draw's CDF is.
    """
    if draws is None:
        draws = sample_parameters(model, cfg)
    lo, hi = model.bounds
    grid = np.linspace(lo, hi, cfg.J)
    tgrid = np.asarray(model.transform.apply(grid), dtype=float)
    sd = np.sqrt(draws.sigma2)
    levels = _band_levels(cfg.band_level)
    lower = np.empty(cfg.J)
    median = np.empty(cfg.J)
    upper = np.empty(cfg.J)
    for j in range(cfg.J):
        f = special.standard_normal_cdf((tgrid[j] - draws.mu) / sd)
        lower[j], median[j], upper[j] = np.quantile(f, levels, method="linear")
    return FeedbackBundle(
        grid=grid,
        cdf_lower=lower,
        cdf_median=median,
        cdf_upper=upper,
        quantile_intervals={},
        overlay_curves=(),
        config=cfg,
    )


def population_quantile_interval(
    model: PopulationModel,
    alpha: float,
    cfg: FeedbackConfig,
    draws: ParameterDraws | None = None,
) -> tuple[float, float]:
    """Empirical central interval for the population alpha-quantile.

    Each draw contributes X_alpha = mu_k + sigma_k * Phi^-1(alpha); the
    interval is taken on the transformed scale and the endpoints mapped
    back through g^-1, so it commutes exactly with the transform.
    """
    alpha = float(alpha)
    if not (0.0 < alpha < 1.0):
        raise DomainError("population quantile level must lie inside (0, 1)")
    if draws is None:
        draws = sample_parameters(model, cfg)
    x = draws.mu + np.sqrt(draws.sigma2) * special.standard_normal_quantile(alpha)
    level = cfg.quantile_interval_level
    lo, hi = np.quantile(x, [(1.0 - level) / 2.0, (1.0 + level) / 2.0], method="linear")
    return (
        float(model.transform.invert(float(lo))),
        float(model.transform.invert(float(hi))),
    )


def variance_overlay_densities(
    m_hat: float,
    vq: VarianceQuantiles,
    bounds: tuple[float, float],
    grid_size: int = 300,
) -> tuple[OverlayCurve, OverlayCurve]:
    """Two population densities with the variance pinned at its 5th/95th quantiles.

    This is the screen that lets the expert see what their proportion
    judgements say: same mean, narrow versus wide spread.
    """
    lo, hi = float(bounds[0]), float(bounds[1])
    if not lo < hi:
        raise DomainError("bounds must satisfy L < U")
    grid = np.linspace(lo, hi, int(grid_size))
    curves = []
    for label, s2 in (("sigma2_05", vq.sigma2_05), ("sigma2_95", vq.sigma2_95)):
        dens = normal_pdf(grid, NormalParams(mean=float(m_hat), variance=s2))
        curves.append(OverlayCurve(label=label, grid=grid, density=dens))
    return tuple(curves)


def _overlay_curves_for_model(model: PopulationModel, grid: np.ndarray):
    """Overlay densities on the observable scale (Jacobian-corrected)."""
    vq = model.variance.targets
    if vq is None:
        vq = VarianceQuantiles(
            sigma2_05=model.variance.variance_quantile(0.05),
            sigma2_95=model.variance.variance_quantile(0.95),
        )
    m_hat = float(model.transform.apply(model.location.median()))
    tgrid = np.asarray(model.transform.apply(grid), dtype=float)
    jac = np.asarray(model.transform.derivative(grid), dtype=float)
    curves = []
    for label, s2 in (("sigma2_05", vq.sigma2_05), ("sigma2_95", vq.sigma2_95)):
        dens = normal_pdf(tgrid, NormalParams(mean=m_hat, variance=s2)) * jac
        curves.append(OverlayCurve(label=label, grid=grid, density=dens))
    return tuple(curves)


def proportion_shading_data(
    m_hat: float,
    sigma: float,
    interval: tuple[float, float],
    bounds: tuple[float, float],
    grid_size: int = 300,
) -> ShadingData:
    """Density curve with the mass over [k1, k2] for the proportion explainer."""
    sigma = float(sigma)
    if not (math.isfinite(sigma) and sigma > 0.0):
        raise DomainError("sigma must be > 0")
    k1, k2 = float(interval[0]), float(interval[1])
    if not k1 <= k2:
        raise DomainError("shading interval must satisfy k1 <= k2")
    lo, hi = float(bounds[0]), float(bounds[1])
    if not lo < hi:
        raise DomainError("bounds must satisfy L < U")
    grid = np.linspace(lo, hi, int(grid_size))
    params = NormalParams(mean=float(m_hat), variance=sigma * sigma)
    dens = normal_pdf(grid, params)
    mass = float(
        special.standard_normal_cdf((k2 - params.mean) / sigma)
        - special.standard_normal_cdf((k1 - params.mean) / sigma)
    )
    return ShadingData(grid=grid, density=dens, interval=(k1, k2), mass=mass)


def feedback_bundle(
    model: PopulationModel,
    cfg: FeedbackConfig,
    alphas: tuple[float, ...] = (0.05, 0.95),
) -> FeedbackBundle:
    """Full bundle: CDF band, quantile intervals, and overlay curves.

    One set of parameter draws feeds every component, so the bundle is a
    single coherent Monte Carlo picture and identical seeds reproduce it
    byte for byte.
    """
    draws = sample_parameters(model, cfg)
    band = pointwise_cdf_band(model, cfg, draws=draws)
    intervals = {
        float(a): population_quantile_interval(model, a, cfg, draws=draws)
        for a in alphas
    }
    return FeedbackBundle(
        grid=band.grid,
        cdf_lower=band.cdf_lower,
        cdf_median=band.cdf_median,
        cdf_upper=band.cdf_upper,
        quantile_intervals=intervals,
        overlay_curves=_overlay_curves_for_model(model, band.grid),
        config=cfg,
    )
