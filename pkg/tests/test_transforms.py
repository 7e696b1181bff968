"""Transforms: inverses, interval endpoints, median-prior elicitation."""

import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from elicit import distributions as dist
from elicit import fitting as fit
from elicit.errors import DomainError, InvalidJudgementError, InvalidTransformError
from elicit.fitting import QuantileJudgement as Q
from elicit.transforms import (
    MedianJudgementSet,
    Transform,
    elicit_median_prior,
    variance_anchor,
    variance_interval_endpoints,
)


class TestApplyInvert:
    def test_identity_passthrough(self):
        assert Transform.IDENTITY.apply(3.7) == 3.7
        assert Transform.IDENTITY.invert(-2.5) == -2.5

    def test_log(self):
        assert Transform.LOG.apply(1.0) == 0.0
        assert Transform.LOG.invert(0.0) == 1.0
        assert Transform.LOG.invert(1.0) == pytest.approx(math.e, rel=1e-15)

    def test_logit(self):
        assert Transform.LOGIT.apply(0.5) == 0.0
        # 1 / (1 + e^-2), frozen from the closed-form oracle
        assert Transform.LOGIT.invert(2.0) == pytest.approx(0.88079707797788244406, rel=1e-14)

    @given(st.floats(-700.0, 700.0))
    @settings(max_examples=200, deadline=None)
    def test_log_round_trip(self, y):
        assert Transform.LOG.apply(Transform.LOG.invert(y)) == pytest.approx(
            y, abs=1e-12, rel=1e-12
        )

    @given(st.floats(1e-8, 1.0 - 1e-8))
    @settings(max_examples=200, deadline=None)
    def test_logit_round_trip(self, x):
        assert Transform.LOGIT.invert(Transform.LOGIT.apply(x)) == pytest.approx(
            x, abs=1e-12
        )

    def test_monotone(self):
        for t in Transform:
            lo, hi = t.support
            a = max(lo, -50.0) + 1e-3
            b = min(hi, 50.0) - 1e-3
            xs = [a + (b - a) * i / 200 for i in range(201)]
            ys = [t.apply(x) for x in xs]
            assert all(u < v for u, v in zip(ys, ys[1:]))

    def test_out_of_support(self):
        with pytest.raises(DomainError):
            Transform.LOG.apply(0.0)
        with pytest.raises(DomainError):
            Transform.LOG.apply(-3.0)
        with pytest.raises(DomainError):
            Transform.LOGIT.apply(1.0)
        with pytest.raises(DomainError):
            Transform.LOGIT.apply(1.5)

    def test_unknown_tag(self):
        with pytest.raises(InvalidTransformError):
            Transform.from_tag("cubic")


class TestVarianceIntervalEndpoints:
    def test_identity_worked_example(self):
        assert variance_interval_endpoints(35.0, 10.0, Transform.IDENTITY) == (35.0, 45.0)

    def test_log(self):
        k1, k2 = variance_interval_endpoints(0.0, 1.0, Transform.LOG)
        assert k1 == 1.0
        assert k2 == pytest.approx(math.e, rel=1e-15)

    def test_logit(self):
        k1, k2 = variance_interval_endpoints(0.0, 1.0, Transform.LOGIT)
        assert k1 == 0.5
        # 1 / (1 + e^-1), frozen from the closed-form oracle
        assert k2 == pytest.approx(0.73105857863000487925, rel=1e-14)

    def test_ordering_and_errors(self):
        for t in Transform:
            k1, k2 = variance_interval_endpoints(0.1, 0.5, t)
            assert k1 < k2
        with pytest.raises(DomainError):
            variance_interval_endpoints(0.0, 0.0, Transform.IDENTITY)


class TestElicitMedianPrior:
    def test_identity_reduces_to_two_quantile_fit(self):
        closed = fit.fit_normal_from_two_quantiles(Q(0.05, 30.0), Q(0.95, 40.0))
        mjs = MedianJudgementSet(
            Transform.IDENTITY, (Q(0.05, 30.0), Q(0.5, 35.0), Q(0.95, 40.0))
        )
        prior = elicit_median_prior(mjs, "normal")
        assert prior.params.mean == pytest.approx(closed.mean, abs=1e-7)
        assert prior.params.variance == pytest.approx(closed.variance, rel=1e-6)

    def test_log_with_lognormal_consistent_quantiles(self):
        gen = dist.LogNormalParams(1.0, 0.5)
        mjs = MedianJudgementSet(
            Transform.LOG,
            tuple(Q(a, dist.lognormal_quantile(a, gen)) for a in (0.1, 0.5, 0.9)),
        )
        prior = elicit_median_prior(mjs, "lognormal")
        assert prior.params.meanlog == pytest.approx(1.0, abs=1e-6)
        assert prior.params.sdlog == pytest.approx(0.5, abs=1e-6)
        # anchor for the variance step is g(median) = meanlog
        assert variance_anchor(prior, Transform.LOG) == pytest.approx(1.0, abs=1e-6)

    def test_logit_beta_cannot_interpolate(self):
        # a flat-then-jumping quantile pattern no two-parameter beta can hit
        mjs = MedianJudgementSet(
            Transform.LOGIT, (Q(0.1, 0.20), Q(0.5, 0.22), Q(0.9, 0.90))
        )
        prior = elicit_median_prior(mjs, "beta-scaled", bounds=(0.0, 1.0))
        assert prior.residual > 1e-4

    def test_requires_three_quantiles(self):
        with pytest.raises(InvalidJudgementError):
            MedianJudgementSet(Transform.IDENTITY, (Q(0.1, 1.0), Q(0.9, 2.0)))

    def test_support_enforced(self):
        with pytest.raises(DomainError):
            MedianJudgementSet(
                Transform.LOG, (Q(0.1, -1.0), Q(0.5, 1.0), Q(0.9, 2.0))
            )
        with pytest.raises(DomainError):
            MedianJudgementSet(
                Transform.LOGIT, (Q(0.1, 0.2), Q(0.5, 0.5), Q(0.9, 1.5))
            )


class TestTransformInvarianceOfVarianceRelation:
    def test_same_transformed_judgements_same_fit(self):
        # with the same transformed-scale width and proportions, the
        # variance fit cannot depend on which transform produced them
        pj = fit.ProportionJudgement(anchor=1.0, width=0.7, theta_lo=0.30, theta_hi=0.40)
        vq = fit.variance_quantiles_from_proportion(pj)
        fits = [fit.fit_variance_prior(vq) for _ in Transform]
        assert all(f.params == fits[0].params for f in fits)
