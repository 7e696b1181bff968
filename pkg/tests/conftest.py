import itertools
import json
from pathlib import Path

import pytest

from elicit import session as sess
from elicit.distributions import NormalParams
from elicit.feedback import PopulationModel
from elicit.fitting import (
    LocationPrior,
    ProportionJudgement,
    fit_variance_prior,
    variance_quantiles_from_proportion,
)
from elicit.transforms import Transform

DATA_DIR = Path(__file__).parent / "data"

# elicited values from the translation-times worked example, used throughout
EXAMPLE_BOUNDS = (5.0, 70.0)
EXAMPLE_MEAN_QUANTILES = [(0.05, 30.0), (0.95, 40.0)]
EXAMPLE_MEAN = 35.0
EXAMPLE_VARIANCE = 9.24028773670487
EXAMPLE_WIDTH = 10.0
EXAMPLE_THETAS_FIRST = (0.33, 0.40)
EXAMPLE_THETAS_REVISED = (0.30, 0.35)


def make_example_model(thetas=EXAMPLE_THETAS_FIRST) -> PopulationModel:
    location = LocationPrior(
        family="normal", params=NormalParams(EXAMPLE_MEAN, EXAMPLE_VARIANCE)
    )
    pj = ProportionJudgement(
        anchor=EXAMPLE_MEAN, width=EXAMPLE_WIDTH, theta_lo=thetas[0], theta_hi=thetas[1]
    )
    variance = fit_variance_prior(variance_quantiles_from_proportion(pj))
    return PopulationModel(
        transform=Transform.IDENTITY,
        location=location,
        variance=variance,
        bounds=EXAMPLE_BOUNDS,
    )


def fixed_clock():
    counter = itertools.count()
    return lambda: f"2016-01-01T00:00:{next(counter) % 60:02d}.{next(counter):06d}Z"


def run_example_session(clock=None, session_id="golden-example", seed=20160101) -> sess.Session:
    """Drive the whole worked-example workflow, including the revision."""
    s = sess.create_session(
        context={
            "purpose": "elicit the distribution of per-page translation times",
            "quantity": "minutes to translate one randomly selected page",
        },
        transform="identity",
        session_id=session_id,
        seed=seed,
        clock=clock or fixed_clock(),
    )
    sess.record_bounds(s, *EXAMPLE_BOUNDS)
    sess.record_mean_quantiles_and_fit(s, EXAMPLE_MEAN_QUANTILES)
    sess.record_proportion_and_fit(
        s,
        theta_lo=EXAMPLE_THETAS_FIRST[0],
        theta_hi=EXAMPLE_THETAS_FIRST[1],
        width=EXAMPLE_WIDTH,
    )
    sess.mark_feedback_shown(s, {"quantiles": [0.05, 0.95], "interval_level": 0.9})
    sess.revise(
        s,
        "proportion",
        theta_lo=EXAMPLE_THETAS_REVISED[0],
        theta_hi=EXAMPLE_THETAS_REVISED[1],
        width=EXAMPLE_WIDTH,
    )
    sess.mark_feedback_shown(s, {"quantiles": [0.05, 0.95], "interval_level": 0.9})
    sess.conclude(s, "expert accepted the fitted population distribution")
    return s


@pytest.fixture
def example_model():
    return make_example_model()


@pytest.fixture
def golden_document():
    return json.loads((DATA_DIR / "golden_session.json").read_text())
