"""Batch and scripting interface.

Subcommands mirror the interactive workflow for use without the service:

* ``fit-mean``       fit the location prior from quantile judgements
* ``fit-precision``  fit the variance prior from an interval + proportions
* ``feedback``       emit a Monte Carlo feedback bundle (JSON or CSV)
* ``validate-session`` parse, replay-check, and summarize a session file
* ``serve``          run the HTTP service

Every subcommand takes ``--json``; JSON payloads use exactly the same
serializers as the HTTP service, so scripted pipelines can switch between
the two without translation. Numbers are printed with Python's
shortest-round-trip formatting (never locale-dependent).

Exit codes: 0 success, 2 usage, 3 domain or fitting error, 4 I/O or
document error.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import fitting, session as sess
from .distributions import PRECISION_FAMILY_TAGS
from .errors import (
    DocumentParseError,
    DocumentValidationError,
    DomainError,
    FitFailureError,
    InvalidJudgementError,
    InvalidTransformError,
    SessionNotFoundError,
    StateError,
)
from .feedback import FeedbackBundle, FeedbackConfig, PopulationModel, feedback_bundle
from .fitting import (
    LocationPrior,
    QuantileJudgement,
    VarianceQuantiles,
    VariancePrior,
)
from .transforms import Transform

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_DOMAIN = 3
EXIT_IO = 4


class _UsageError(Exception):
    pass


def _floats(raw: str, flag: str) -> list[float]:
    try:
        return [float(part) for part in raw.split(",") if part.strip()]
    except ValueError:
        raise _UsageError(f"{flag} expects a comma-separated list of numbers, got {raw!r}")


def _proportions(raw: str) -> list[float]:
    values = []
    for part in raw.split(","):
        part = part.strip()
        if not part:
            continue
        percent = part.endswith("%")
        try:
            value = float(part.rstrip("%"))
        except ValueError:
            raise _UsageError(f"--propvals expects numbers (optionally %-suffixed), got {part!r}")
        values.append(fitting.normalize_theta(value, percent=percent))
    return values


def _emit(args, payload: dict, human_lines: list[str]) -> None:
    if args.json:
        print(json.dumps(payload, indent=2, sort_keys=False))
    else:
        for line in human_lines:
            print(line)


def _cmd_fit_mean(args) -> int:
    probs = _floats(args.probs, "--probs")
    vals = _floats(args.vals, "--vals")
    if len(probs) != len(vals):
        raise _UsageError(f"--probs has {len(probs)} entries but --vals has {len(vals)}")
    if len(probs) < 2:
        raise _UsageError("at least two prob/value pairs are required")
    quantiles = sorted(
        (QuantileJudgement(alpha, value) for alpha, value in zip(probs, vals)),
        key=lambda q: q.alpha,
    )
    for q in quantiles:
        if not (args.lower < q.value < args.upper):
            raise InvalidJudgementError(
                f"quantile value {q.value} must lie inside the bounds "
                f"({args.lower}, {args.upper})"
            )
    if args.family == "normal" and len(quantiles) == 2:
        params = fitting.fit_normal_from_two_quantiles(quantiles[0], quantiles[1])
        prior = LocationPrior(family="normal", params=params, fitted_from=tuple(quantiles))
    else:
        prior = fitting.fit_location_family(
            quantiles, args.family, bounds=(args.lower, args.upper)
        )

    payload = {"location": sess.location_fit_payload(prior)}
    lines = [f"family: {prior.family}"]
    lines += [f"{name}: {value!r}" for name, value in prior.params_dict().items()]
    lines.append(f"residual: {prior.residual!r}")
    feedback_levels = [lvl for lvl in (args.ql, args.qu) if lvl is not None]
    if feedback_levels:
        summary = {repr(float(lvl)): float(prior.quantile(lvl)) for lvl in feedback_levels}
        payload["mean_summary"] = summary
        lines += [f"quantile {lvl}: {value!r}" for lvl, value in summary.items()]
    _emit(args, payload, lines)
    return EXIT_OK


def _cmd_fit_precision(args) -> int:
    interval = _floats(args.interval, "--interval")
    if len(interval) != 2:
        raise _UsageError("--interval expects exactly two numbers k1,k2")
    propvals = _proportions(args.propvals)
    if len(propvals) != 2:
        raise _UsageError("--propvals expects exactly two proportions t1,t2")
    k1, k2 = interval
    if not k1 < k2:
        raise DomainError(f"interval endpoints must increase, got {k1}, {k2}")
    transform = Transform.from_tag(args.transform)
    anchor = float(transform.apply(k1))
    width = float(transform.apply(k2)) - anchor
    pj = fitting.ProportionJudgement(
        anchor=anchor, width=width, theta_lo=propvals[0], theta_hi=propvals[1]
    )
    vq = fitting.variance_quantiles_from_proportion(pj)
    prior = fitting.fit_variance_prior_from_proportion(pj, args.family)

    lo_band, hi_band = fitting.ROBUST_THETA_BAND
    if not all(lo_band <= t <= hi_band for t in propvals):
        print(
            f"warning: a proportion lies outside the robust band [{lo_band}, {hi_band}]; "
            "implied sigma quantiles are sensitive there - consider a wider interval",
            file=sys.stderr,
        )
    payload = {"variance": sess.variance_fit_payload(prior)}
    a, b = prior.params
    lines = [
        f"family: {prior.tag}",
        f"params: {a!r}, {b!r}",
        f"residual: {prior.residual!r}",
        f"sigma2 quantile 0.05: {vq.sigma2_05!r}",
        f"sigma2 quantile 0.95: {vq.sigma2_95!r}",
    ]
    _emit(args, payload, lines)
    return EXIT_OK


def _model_from_args(args) -> PopulationModel:
    if args.session:
        with open(args.session, "r", encoding="utf-8") as fh:
            s = sess.import_session(fh.read())
        if s.variance_prior is None or s.location_prior is None:
            raise StateError(
                f"session {s.id} is in state {s.state}; feedback needs a variance fit"
            )
        return PopulationModel(
            transform=s.transform,
            location=s.location_prior,
            variance=s.variance_prior,
            bounds=(s.judgements.lower, s.judgements.upper),
        )
    missing = [
        flag
        for flag, value in (
            ("--location-params", args.location_params),
            ("--var-params", args.var_params),
            ("--lower", args.lower),
            ("--upper", args.upper),
        )
        if value is None
    ]
    if missing:
        raise _UsageError(
            "feedback needs --session FILE or explicit parameters; missing: "
            + ", ".join(missing)
        )
    loc_values = _floats(args.location_params, "--location-params")
    if args.location_family == "beta-scaled":
        if len(loc_values) != 2:
            raise _UsageError("--location-params expects shape1,shape2 for beta-scaled")
        params_dict = {
            "shape1": loc_values[0],
            "shape2": loc_values[1],
            "lower": args.lower,
            "upper": args.upper,
        }
    else:
        if len(loc_values) != 2:
            raise _UsageError("--location-params expects exactly two numbers")
        keys = {
            "normal": ("mean", "variance"),
            "lognormal": ("meanlog", "sdlog"),
        }[args.location_family]
        params_dict = dict(zip(keys, loc_values))
    location = LocationPrior.from_params_dict(args.location_family, params_dict)
    var_values = _floats(args.var_params, "--var-params")
    if len(var_values) != 2:
        raise _UsageError("--var-params expects exactly two numbers")
    from .distributions import PrecisionFamily

    family = PrecisionFamily(args.var_family, (var_values[0], var_values[1]))
    variance = VariancePrior(
        family=family,
        targets=VarianceQuantiles(
            family.variance_quantile(0.05), family.variance_quantile(0.95)
        ),
    )
    return PopulationModel(
        transform=Transform.from_tag(args.transform),
        location=location,
        variance=variance,
        bounds=(args.lower, args.upper),
    )


def _bundle_csv(bundle: FeedbackBundle) -> str:
    rows = ["x,cdf_lower,cdf_median,cdf_upper"]
    for x, lo, med, hi in zip(
        bundle.grid, bundle.cdf_lower, bundle.cdf_median, bundle.cdf_upper
    ):
        rows.append(f"{float(x)!r},{float(lo)!r},{float(med)!r},{float(hi)!r}")
    return "\n".join(rows) + "\n"


def _cmd_feedback(args) -> int:
    model = _model_from_args(args)
    alphas = tuple(_floats(args.quantiles, "--quantiles"))
    cfg = FeedbackConfig(
        K=args.draws,
        J=args.grid,
        seed=args.seed,
        band_level=args.band_level,
        quantile_interval_level=args.level,
    )
    bundle = feedback_bundle(model, cfg, alphas)
    if args.format == "csv":
        text = _bundle_csv(bundle)
    else:
        text = json.dumps(bundle.to_dict(), indent=None, sort_keys=True, separators=(",", ":")) + "\n"
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def _cmd_validate_session(args) -> int:
    with open(args.file, "r", encoding="utf-8") as fh:
        s = sess.import_session(fh.read())
    if args.json:
        print(json.dumps(sess.session_view(s), indent=2))
    else:
        print(f"id: {s.id}")
        print(f"state: {s.state}")
        print(f"transform: {s.transform.value}")
        print(f"events: {len(s.history)}")
        print("replay: consistent")
    return EXIT_OK


def _cmd_serve(args) -> int:
    from . import service

    rest = args.rest
    if rest and rest[0] == "--":
        rest = rest[1:]
    return service.main(rest)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="elicit", description="Elicit priors for a population mean and variance."
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("fit-mean", help="fit the location prior from quantile judgements")
    p.add_argument("--probs", required=True, help="comma-separated quantile levels, e.g. 0.05,0.95")
    p.add_argument("--vals", required=True, help="comma-separated quantile values, e.g. 30,40")
    p.add_argument("--lower", type=float, required=True, help="lower plausible bound L")
    p.add_argument("--upper", type=float, required=True, help="upper plausible bound U")
    p.add_argument("--family", default="normal", choices=fitting.LOCATION_FAMILIES)
    p.add_argument("--ql", type=float, default=None, help="also report this lower feedback quantile")
    p.add_argument("--qu", type=float, default=None, help="also report this upper feedback quantile")
    p.add_argument("--json", action="store_true", help="emit the service payload shape")
    p.set_defaults(func=_cmd_fit_mean)

    p = sub.add_parser(
        "fit-precision", help="fit the variance prior from an interval and two proportions"
    )
    p.add_argument("--interval", required=True, help="interval endpoints k1,k2 (observable scale)")
    p.add_argument(
        "--propvals", required=True,
        help="5th,95th percentiles of the proportion inside the interval (%% suffix allowed)",
    )
    p.add_argument("--family", default="inverse-gamma-on-variance", choices=PRECISION_FAMILY_TAGS)
    p.add_argument("--transform", default="identity", choices=[t.value for t in Transform])
    p.add_argument("--json", action="store_true", help="emit the service payload shape")
    p.set_defaults(func=_cmd_fit_precision)

    p = sub.add_parser("feedback", help="emit a Monte Carlo feedback bundle")
    p.add_argument("--session", default=None, help="session document to take the model from")
    p.add_argument("--location-family", default="normal", choices=fitting.LOCATION_FAMILIES)
    p.add_argument("--location-params", default=None, help="e.g. 35,9.24 for normal mean,variance")
    p.add_argument("--var-family", default="inverse-gamma-on-variance", choices=PRECISION_FAMILY_TAGS)
    p.add_argument("--var-params", default=None, help="e.g. 31.5,2514 for shape,scale")
    p.add_argument("--transform", default="identity", choices=[t.value for t in Transform])
    p.add_argument("--lower", type=float, default=None, help="lower plausible bound L")
    p.add_argument("--upper", type=float, default=None, help="upper plausible bound U")
    p.add_argument("--quantiles", default="0.05,0.95", help="population quantiles to interval-ize")
    p.add_argument("--level", type=float, default=0.90, help="level of the quantile intervals")
    p.add_argument("--band-level", type=float, default=0.95, help="level of the pointwise CDF band")
    p.add_argument("--K", dest="draws", type=int, default=300, help="number of parameter draws")
    p.add_argument("--J", dest="grid", type=int, default=300, help="number of grid points")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.add_argument("--out", default=None, help="write to this file instead of stdout")
    p.set_defaults(func=_cmd_feedback, json=True)

    p = sub.add_parser("validate-session", help="parse and replay-check a session document")
    p.add_argument("file")
    p.add_argument("--json", action="store_true", help="print the session view payload")
    p.set_defaults(func=_cmd_validate_session)

    p = sub.add_parser("serve", help="run the HTTP service (see 'elicit serve -- --help')")
    p.add_argument("rest", nargs=argparse.REMAINDER, help="arguments passed to the server")
    p.set_defaults(func=_cmd_serve)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except _UsageError as e:
        print(f"usage error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except (
        DomainError,
        InvalidJudgementError,
        InvalidTransformError,
        FitFailureError,
        StateError,
    ) as e:
        print(f"error ({e.code}): {e.message}", file=sys.stderr)
        return EXIT_DOMAIN
    except (DocumentParseError, DocumentValidationError, SessionNotFoundError) as e:
        print(f"error ({e.code}): {e.message}", file=sys.stderr)
        return EXIT_IO
    except OSError as e:
        print(f"i/o error: {e}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    raise SystemExit(main())
