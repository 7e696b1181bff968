"""Monotone transforms linking skewed/bounded populations to the normal model.

A population X is handled by choosing g so that g(X) is normal: identity
for symmetric data, log for positive skewed data, logit for data bounded in
(0, 1). Judgements about the population median are made on the original
scale; the variance question's interval is mapped back through g^-1.

The identity transform is a true passthrough (it returns its argument
unchanged), so a pipeline run with it is bit-identical to one that never
mentions transforms.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .errors import DomainError, InvalidJudgementError, InvalidTransformError
from .fitting import LocationPrior, QuantileJudgement, fit_location_family

__all__ = [
    "Transform",
    "MedianJudgementSet",
    "variance_interval_endpoints",
    "elicit_median_prior",
    "variance_anchor",
]


class Transform(str, Enum):
    """Monotone increasing map g with g(X) modeled as normal."""

    IDENTITY = "identity"
    LOG = "log"
    LOGIT = "logit"

    @classmethod
    def from_tag(cls, tag: str) -> "Transform":
        try:
            return cls(tag)
        except ValueError:
            raise InvalidTransformError(
                f"unknown transform {tag!r}; expected one of "
                + ", ".join(t.value for t in cls)
            ) from None

    @property
    def support(self) -> tuple[float, float]:
        if self is Transform.LOG:
            return (0.0, math.inf)
        if self is Transform.LOGIT:
            return (0.0, 1.0)
        return (-math.inf, math.inf)

    def contains(self, x) -> bool:
        lo, hi = self.support
        arr = np.asarray(x, dtype=float)
        return bool(np.all(np.isfinite(arr)) and np.all(arr > lo) and np.all(arr < hi))

    def _check_support(self, x) -> None:
        if not self.contains(x):
            lo, hi = self.support
            raise DomainError(
                f"value outside the {self.value} transform's support ({lo}, {hi})"
            )

    def apply(self, x):
        """g(x); raises outside the support. Identity returns x unchanged."""
        if self is Transform.IDENTITY:
            return x
        self._check_support(x)
        if self is Transform.LOG:
            return np.log(x) if isinstance(x, np.ndarray) else math.log(x)
        arr_in = isinstance(x, np.ndarray)
        arr = np.asarray(x, dtype=float)
        out = np.log(arr) - np.log1p(-arr)
        return out if arr_in else float(out)

    def invert(self, y):
        """g^-1(y) for any real y. Identity returns y unchanged."""
        if self is Transform.IDENTITY:
            return y
        if self is Transform.LOG:
            return np.exp(y) if isinstance(y, np.ndarray) else math.exp(y)
        arr_in = isinstance(y, np.ndarray)
        arr = np.asarray(y, dtype=float)
        out = 1.0 / (1.0 + np.exp(-arr))
        return out if arr_in else float(out)

    def derivative(self, x):
        """dg/dx, the density Jacobian for mapping curves to the original scale."""
        if self is Transform.IDENTITY:
            return np.ones_like(x, dtype=float) if isinstance(x, np.ndarray) else 1.0
        self._check_support(x)
        if self is Transform.LOG:
            return 1.0 / x if isinstance(x, np.ndarray) else 1.0 / float(x)
        arr_in = isinstance(x, np.ndarray)
        arr = np.asarray(x, dtype=float)
        out = 1.0 / (arr * (1.0 - arr))
        return out if arr_in else float(out)


@dataclass(frozen=True)
class MedianJudgementSet:
    """Three or more quantiles of the population median, original scale."""

    transform: Transform
    quantiles: tuple[QuantileJudgement, ...]

    def __post_init__(self):
        qs = tuple(
            q if isinstance(q, QuantileJudgement) else QuantileJudgement(*q)
            for q in self.quantiles
        )
        if len(qs) < 3:
            raise InvalidJudgementError(
                "median elicitation needs at least three quantile judgements"
            )
        for a, b in zip(qs, qs[1:]):
            if not (a.alpha < b.alpha and a.value < b.value):
                raise InvalidJudgementError(
                    "median quantiles must strictly increase in level and value"
                )
        for q in qs:
            if not self.transform.contains(q.value):
                raise DomainError(
                    f"median quantile {q.value} lies outside the "
                    f"{self.transform.value} transform's support"
                )
        object.__setattr__(self, "quantiles", qs)


def variance_interval_endpoints(
    m_hat: float, c: float, transform: Transform
) -> tuple[float, float]:
    """Original-scale endpoints of the proportion question's interval.

    The interval is [m_hat, m_hat + c] on the transformed scale; the expert
    sees it as [g^-1(m_hat), g^-1(m_hat + c)].
    """
    c = float(c)
    if not (math.isfinite(c) and c > 0.0):
        raise DomainError("interval width c must be > 0")
    k1 = transform.invert(float(m_hat))
    k2 = transform.invert(float(m_hat) + c)
    return (k1, k2)


def elicit_median_prior(
    mjs: MedianJudgementSet,
    family: str = "normal",
    *,
    bounds: tuple[float, float] | None = None,
) -> LocationPrior:
    """Fit the median prior on the original scale.

    Plain least-squares through the judged quantiles; the transform only
    matters later, when the variance anchor is taken as g(fitted median).
    """
    return fit_location_family(mjs.quantiles, family, bounds=bounds)


def variance_anchor(prior: LocationPrior, transform: Transform) -> float:
    """Transformed-scale anchor for the variance question: g(median).

    Medians survive monotone maps, so the fitted median is the one summary
    of the original-scale prior that transfers cleanly to the scale where
    the population is normal.
    """
    return float(transform.apply(prior.median()))
