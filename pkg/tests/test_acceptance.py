"""Acceptance suite: every primary criterion at its stated tolerance.

Each test prints one CRITERION line (run with ``pytest -s`` or see
test_output.txt) so the gate's status is readable at a glance.
"""

import contextlib
import time

import numpy as np
import pytest

from elicit import distributions as dist
from elicit import fitting as fit
from elicit import session as sess
from elicit.feedback import (
    FeedbackConfig,
    feedback_bundle,
    pointwise_cdf_band,
    population_quantile_interval,
    sample_parameters,
)
from elicit.fitting import QuantileJudgement as Q

from conftest import make_example_model, run_example_session


@contextlib.contextmanager
def criterion(name):
    try:
        yield
    except BaseException:
        print(f"CRITERION FAIL: {name}")
        raise
    print(f"CRITERION PASS: {name}")


def test_normal_mean_fit():
    with criterion("normal mean fit: (0.05, 0.95)->(30, 40) gives N(35, 9.24 +/- 0.005)"):
        params = fit.fit_normal_from_two_quantiles(Q(0.05, 30.0), Q(0.95, 40.0))
        assert params.mean == 35.0
        assert params.variance == pytest.approx(9.24, abs=0.005)


def test_mean_prior_feedback_percentiles():
    with criterion("mean-prior feedback: 1st/99th percentiles round to 28 and 42 minutes"):
        params = fit.fit_normal_from_two_quantiles(Q(0.05, 30.0), Q(0.95, 40.0))
        assert round(float(dist.normal_quantile(0.01, params))) == 28
        assert round(float(dist.normal_quantile(0.99, params))) == 42


def test_variance_fit_a():
    with criterion(
        "variance fit A: c=10, theta (0.33, 0.40) -> IG within 5% of (31.5, 2514), "
        "CDF at targets within 1e-4, under 1 s"
    ):
        start = time.perf_counter()
        pj = fit.ProportionJudgement(anchor=35.0, width=10.0, theta_lo=0.33, theta_hi=0.40)
        vq = fit.variance_quantiles_from_proportion(pj)
        prior = fit.fit_variance_prior_from_proportion(pj)
        elapsed = time.perf_counter() - start
        a, b = prior.params
        assert a == pytest.approx(31.5, rel=0.05)
        assert b == pytest.approx(2514.0, rel=0.05)
        assert prior.variance_cdf(vq.sigma2_05) == pytest.approx(0.05, abs=1e-4)
        assert prior.variance_cdf(vq.sigma2_95) == pytest.approx(0.95, abs=1e-4)
        assert elapsed < 1.0


def test_variance_fit_b_revised():
    with criterion(
        "variance fit B: theta (0.30, 0.35) -> IG within 5% of (62.8, 7114), under 1 s"
    ):
        start = time.perf_counter()
        pj = fit.ProportionJudgement(anchor=35.0, width=10.0, theta_lo=0.30, theta_hi=0.35)
        prior = fit.fit_variance_prior_from_proportion(pj)
        elapsed = time.perf_counter() - start
        a, b = prior.params
        assert a == pytest.approx(62.8, rel=0.05)
        assert b == pytest.approx(7114.0, rel=0.05)
        assert elapsed < 1.0


def test_sigma_quantile_transform():
    with criterion(
        "sigma-quantile transform: c=10, theta {0.25, 0.45} -> sigma {14.83, 6.08} +/- 0.5"
    ):
        sigma_wide = np.sqrt(fit.sigma2_quantile_from_theta(10.0, 0.25))
        sigma_narrow = np.sqrt(fit.sigma2_quantile_from_theta(10.0, 0.45))
        assert sigma_wide == pytest.approx(14.83, abs=0.5)
        assert sigma_narrow == pytest.approx(6.08, abs=0.5)


def test_monte_carlo_quantile_intervals():
    with criterion(
        "Monte Carlo quantile intervals: K=1e5, level 0.90 -> (12, 23) and (47, 58) "
        "within +/- 4 minutes per endpoint, under 5 s"
    ):
        model = make_example_model(thetas=(0.33, 0.40))
        cfg = FeedbackConfig(K=100_000, seed=20160101, quantile_interval_level=0.90)
        start = time.perf_counter()
        draws = sample_parameters(model, cfg)
        lo05, hi05 = population_quantile_interval(model, 0.05, cfg, draws)
        lo95, hi95 = population_quantile_interval(model, 0.95, cfg, draws)
        elapsed = time.perf_counter() - start
        assert lo05 == pytest.approx(12.0, abs=4.0)
        assert hi05 == pytest.approx(23.0, abs=4.0)
        assert lo95 == pytest.approx(47.0, abs=4.0)
        assert hi95 == pytest.approx(58.0, abs=4.0)
        assert elapsed < 5.0


def test_property_cdf_quantile_round_trips():
    with criterion("property: CDF/quantile round trips <= 1e-8 across all families"):
        families = [
            dist.NormalParams(35.0, 9.24),
            dist.GammaParams(2.0, 0.5),
            dist.GammaParams(31.5, 2514.0),
            dist.InverseGammaParams(31.5, 2514.0),
            dist.InverseGammaParams(62.8, 7114.0),
            dist.LogNormalParams(1.0, 0.5),
            dist.BetaParams(2.0, 5.0),
            dist.BetaParams(1.5, 2.5, lower=5.0, upper=70.0),
        ]
        alphas = np.concatenate(
            [np.geomspace(1e-6, 0.5, 20), 1.0 - np.geomspace(1e-6, 0.5, 20)]
        )
        for params in families:
            for alpha in alphas:
                x = float(dist.dist_quantile(float(alpha), params))
                x2 = float(dist.dist_quantile(float(dist.dist_cdf(x, params)), params))
                assert abs(x2 - x) <= 1e-8 * max(abs(x), 1.0)


def test_property_variance_relation():
    with criterion(
        "property: variance relation is monotone, scales as c^2, unit-normal check to 1e-10"
    ):
        thetas = np.linspace(0.01, 0.49, 193)
        values = [fit.sigma2_quantile_from_theta(10.0, float(t)) for t in thetas]
        assert all(a > b for a, b in zip(values, values[1:]))
        for lam in (0.1, 2.0, 17.0):
            for theta in (0.05, 0.25, 0.45):
                assert fit.sigma2_quantile_from_theta(10.0 * lam, theta) == pytest.approx(
                    lam * lam * fit.sigma2_quantile_from_theta(10.0, theta), rel=1e-12
                )
        theta_unit = 0.84134474606854294859 - 0.5
        assert fit.sigma2_quantile_from_theta(1.0, theta_unit) == pytest.approx(
            1.0, abs=1e-10
        )


def test_property_variance_fit_round_trip():
    with criterion(
        "property: IG -> theta -> refit recovers (a0, b0) within 0.1% over "
        "a0 in {2, 10, 50} x b0 in {1, 100, 5000}"
    ):
        for a0 in (2.0, 10.0, 50.0):
            for b0 in (1.0, 100.0, 5000.0):
                ig = dist.InverseGammaParams(a0, b0)
                s05 = dist.invgamma_quantile(0.05, ig)
                s95 = dist.invgamma_quantile(0.95, ig)
                c = 0.7 * np.sqrt(s05)
                theta_lo = float(dist.normal_cdf(c / np.sqrt(s95), dist.NormalParams(0.0, 1.0))) - 0.5
                theta_hi = float(dist.normal_cdf(c / np.sqrt(s05), dist.NormalParams(0.0, 1.0))) - 0.5
                pj = fit.ProportionJudgement(
                    anchor=0.0, width=c, theta_lo=theta_lo, theta_hi=theta_hi
                )
                refit = fit.fit_variance_prior_from_proportion(pj)
                assert refit.params[0] == pytest.approx(a0, rel=1e-3)
                assert refit.params[1] == pytest.approx(b0, rel=1e-3)


def test_property_feedback_determinism_and_coverage():
    with criterion(
        "property: identical seeds give byte-identical bundles; pointwise band "
        "coverage is band_level +/- 0.02 at K=1e5 against an independent-seed oracle"
    ):
        model = make_example_model(thetas=(0.30, 0.35))
        cfg = FeedbackConfig(K=100_000, J=21, seed=99, band_level=0.95)
        assert feedback_bundle(model, cfg).to_json() == feedback_bundle(model, cfg).to_json()

        band = pointwise_cdf_band(model, cfg)
        fresh = sample_parameters(model, FeedbackConfig(K=100_000, seed=424242))
        sd = np.sqrt(fresh.sigma2)
        for j, x in enumerate(band.grid):
            f = dist.normal_cdf((x - fresh.mu) / sd, dist.NormalParams(0.0, 1.0))
            covered = np.mean((f >= band.cdf_lower[j]) & (f <= band.cdf_upper[j]))
            assert covered == pytest.approx(0.95, abs=0.02)


def test_property_identity_transform_reduction():
    with criterion("property: identity-transform pipeline is bit-identical to the base pipeline"):
        model = make_example_model()
        cfg = FeedbackConfig(K=20_000, J=21, seed=7)
        bundle = feedback_bundle(model, cfg, alphas=(0.05, 0.95))
        draws = sample_parameters(model, cfg)
        grid = np.linspace(5.0, 70.0, 21)
        sd = np.sqrt(draws.sigma2)
        band_levels = [(1.0 - 0.95) / 2.0, 0.5, (1.0 + 0.95) / 2.0]
        for j, x in enumerate(grid):
            f = dist.normal_cdf((x - draws.mu) / sd, dist.NormalParams(0.0, 1.0))
            lo, med, hi = np.quantile(f, band_levels, method="linear")
            assert bundle.cdf_lower[j] == lo
            assert bundle.cdf_median[j] == med
            assert bundle.cdf_upper[j] == hi
        for alpha in (0.05, 0.95):
            z = dist.normal_quantile(alpha, dist.NormalParams(0.0, 1.0))
            direct = np.quantile(
                draws.mu + sd * z, [(1.0 - 0.9) / 2.0, (1.0 + 0.9) / 2.0], method="linear"
            )
            assert bundle.quantile_intervals[alpha] == (direct[0], direct[1])


def test_property_session_replay_of_golden_file(golden_document):
    with criterion(
        "property: event-sourcing replay reproduces the golden worked-example session"
    ):
        replayed = sess.replay(golden_document["history"])
        assert sess.export_session(replayed) == golden_document
        assert replayed.state == "Concluded"
        fresh = run_example_session()
        assert sess.export_session(fresh) == golden_document
