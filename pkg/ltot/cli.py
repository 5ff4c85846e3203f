"""
Command-line front end.

    ltot run --protocol cks10-rot --alice alice-lost-message --max-restarts 3
    ltot compose 0.8536 0.8536 1 0.5
    ltot sweep loss_rate --values 0,0.3,0.7 --protocol unfair-lt-rot --bob bob-epr
    ltot list
    ltot selftest --trials 10000 --no-timestamp

Reports go to stdout (or --out), logs to stderr. Exit codes: 0 pass,
1 usage or configuration error, 2 prediction mismatch.
"""

import argparse
import csv
import io
import json
import logging
import sys
from typing import Any, Dict, List, Optional, Sequence

import numpy as np

from .adversaries.registry import StrategyOptions, build_strategy, describe_strategies, strategy_names
from .adversaries.report import SUCCESS, build_attack_report, scored_strategy, success_classifier
from .analysis.acceptance import report_clock, run_acceptance
from .analysis.composition import compose_theorem1
from .analysis.estimation import completed_correctness, rot_correct
from .analysis.stats import within_sigma_band
from .config import DEFAULT_SEED, DEFAULT_TRIALS, FIXED_CLOCK, LTOT_VERSION, REPORT_SCHEMA_VERSION
from .engine.messages import ChannelConfig, Party
from .engine.trials import run_trials
from .errors import ConfigError, LtotError
from .logging_config import log_simulation_event, setup_logging
from .metrics import simulation_metrics
from .protocols.cks10 import honest_error
from .protocols.registry import build_protocol, protocol_names
from .quantum.gates import SQRT_HALF
from .schemas.domain import CheatProfile, WcfSpec
from .schemas.report import Certificate, Estimate, Report, Verdict
from .schemas.run_config import RunConfig, load_run_config

EXIT_OK = 0
EXIT_CONFIG = 1
EXIT_MISMATCH = 2

SWEEP_DIMENSIONS = ("loss_rate", "max_restarts", "wcf", "wcf_a", "wcf_b")
CSV_COLUMNS = ["name", "protocol", "dimension", "value", "n", "successes", "estimate",
               "ci_low", "ci_high", "predicted", "within_band"]

logger = logging.getLogger("ltot.cli")


class _Parser(argparse.ArgumentParser):
    """Usage errors exit through the same JSON error path as config errors."""

    def error(self, message: str):
        raise ConfigError(message, code="usage_error")


# experiment plumbing

def build_descriptor(config: RunConfig):
    profile = None
    if config.rot_x is not None or config.rot_y is not None:
        if config.rot_x is None or config.rot_y is None:
            raise ConfigError("--rot-x and --rot-y go together")
        profile = CheatProfile(A=config.rot_x, B=config.rot_y)
    return build_protocol(config.protocol, wcf=WcfSpec(a_wcf=config.wcf_a, b_wcf=config.wcf_b),
                          inner=config.inner, amplitude=config.amplitude, profile=profile)


def build_channel(config: RunConfig) -> ChannelConfig:
    return ChannelConfig(loss_rate=config.loss_rate, classical_loss_rate=config.classical_loss_rate,
                         adversarial_loss_allowed=config.adversarial_loss, max_restarts=config.max_restarts)


def _honest_prediction(descriptor) -> float:
    if descriptor.params.get("family") == "cks10":
        return 1.0 - honest_error(descriptor.params.get("amplitude", SQRT_HALF))
    return 1.0


def execute(config: RunConfig, params: Optional[Dict[str, Any]] = None):
    """Run one configured experiment; returns (estimates, certificates, verdicts)."""
    descriptor = build_descriptor(config)
    options = StrategyOptions(max_restarts=config.max_restarts, declared_losses=config.declared_losses)
    alice = build_strategy(config.alice, Party.ALICE, descriptor, options)
    bob = build_strategy(config.bob, Party.BOB, descriptor, options)
    channel = build_channel(config)
    params = dict(params or {})

    scored = scored_strategy(alice, bob)
    estimates: List[Estimate] = []
    certificates: List[Certificate] = []
    verdicts: List[Verdict] = []

    if scored is not None:
        counts = run_trials(descriptor, alice, bob, channel, config.trials, config.seed,
                            classify=success_classifier(scored), parallel=config.parallel)
        stats = counts.stats(SUCCESS)
        params["outcomes"] = dict(sorted(counts.counts.items()))
        if scored.predicted is None:
            estimates.append(Estimate(name=scored.name, protocol=descriptor.name, stats=stats, params=params))
        else:
            report = build_attack_report(scored, descriptor, stats)
            estimates.append(Estimate(name=scored.name, protocol=descriptor.name, stats=stats,
                                      predicted=scored.predicted, within_band=report.within_band, params=params))
            certificates.extend(report.certificates)
            verdicts.append(Verdict(name=f"{scored.name} on {descriptor.name}", passed=report.status == "PASSED",
                                    detail=f"predicted {scored.predicted:.6f}, estimate {stats.estimate:.6f}"))
    elif descriptor.kind in ("rot", "ot"):
        counts = run_trials(descriptor, alice, bob, channel, config.trials, config.seed,
                            classify=rot_correct, parallel=config.parallel)
        params["outcomes"] = dict(sorted(counts.counts.items()))
        stats = completed_correctness(counts)
        if stats is None:
            verdicts.append(Verdict(name=f"honest correctness on {descriptor.name}", passed=False,
                                    detail="no run completed"))
        else:
            predicted = _honest_prediction(descriptor)
            within = within_sigma_band(stats.estimate, predicted, stats.n)
            estimates.append(Estimate(name="honest correctness", protocol=descriptor.name, stats=stats,
                                      predicted=predicted, within_band=within, params=params))
            verdicts.append(Verdict(name=f"honest correctness on {descriptor.name}", passed=within,
                                    detail=f"{stats.successes}/{stats.n} completed runs correct"))
    else:
        counts = run_trials(descriptor, alice, bob, channel, config.trials, config.seed, parallel=config.parallel)
        params["outcomes"] = dict(sorted(counts.counts.items()))
        stats = counts.stats("completed")
        within = within_sigma_band(stats.estimate, 1.0, stats.n)
        estimates.append(Estimate(name="completion", protocol=descriptor.name, stats=stats, predicted=1.0,
                                  within_band=within, params=params))
        verdicts.append(Verdict(name=f"completion of {descriptor.name}", passed=within))
    return estimates, certificates, verdicts


def make_report(config: Dict[str, Any], no_timestamp: bool, **sections) -> Report:
    generated_at = (FIXED_CLOCK or "") if no_timestamp else report_clock()
    return Report(schema_version=REPORT_SCHEMA_VERSION, version=LTOT_VERSION, generated_at=generated_at,
                  config=config, **sections)


# output

def report_csv(report: Report) -> str:
    buffer = io.StringIO()
    writer = csv.DictWriter(buffer, fieldnames=CSV_COLUMNS, lineterminator="\n")
    writer.writeheader()
    for e in report.estimates:
        writer.writerow({
            "name": e.name, "protocol": e.protocol,
            "dimension": e.params.get("dimension", ""), "value": e.params.get("value", ""),
            "n": e.stats.n, "successes": e.stats.successes, "estimate": repr(e.stats.estimate),
            "ci_low": repr(e.stats.ci_low), "ci_high": repr(e.stats.ci_high),
            "predicted": "" if e.predicted is None else repr(e.predicted),
            "within_band": "" if e.within_band is None else e.within_band,
        })
    return buffer.getvalue()


def render(report: Report, fmt: str) -> str:
    if fmt == "csv":
        return report_csv(report)
    return report.model_dump_json(indent=2) + "\n"


def emit(text: str, out: Optional[str] = None):
    if out:
        with open(out, "w", encoding="utf-8") as f:
            f.write(text)
    else:
        sys.stdout.write(text)


def _finish(report: Report, fmt: str, out: Optional[str], metrics_out: Optional[str] = None) -> int:
    emit(render(report, fmt), out)
    if metrics_out:
        simulation_metrics.write_textfile(metrics_out)
    failed = [v.name for v in report.verdicts if not v.passed]
    log_simulation_event("report_written", "Report written", level=logging.INFO, component="cli",
                         passed=report.passed, failed=failed, out=out or "stdout")
    return EXIT_OK if report.passed else EXIT_MISMATCH


# commands

def _config_overrides(args: argparse.Namespace) -> Dict[str, Any]:
    fields = RunConfig.model_fields
    return {k: v for k, v in vars(args).items() if k in fields}


def cmd_run(args: argparse.Namespace) -> int:
    config = load_run_config(args.config, _config_overrides(args))
    estimates, certificates, verdicts = execute(config)
    report = make_report(config.echo(), config.no_timestamp, estimates=estimates,
                         certificates=certificates, verdicts=verdicts)
    return _finish(report, config.format, config.out, config.metrics_out)


def cmd_compose(args: argparse.Namespace) -> int:
    result = compose_theorem1(args.a_wcf, args.b_wcf, args.a_rot, args.b_rot)
    if args.format == "csv":
        buffer = io.StringIO()
        row = result.model_dump()
        writer = csv.DictWriter(buffer, fieldnames=list(row), lineterminator="\n")
        writer.writeheader()
        writer.writerow(row)
        emit(buffer.getvalue(), args.out)
    else:
        emit(result.model_dump_json(indent=2) + "\n", args.out)
    return EXIT_OK


def parse_values(values: Optional[str], span: Optional[str]) -> List[float]:
    """Sweep points from ``a,b,c`` or an inclusive ``start:stop:step`` range."""
    if values:
        try:
            points = [float(v) for v in values.split(",") if v.strip()]
        except ValueError:
            raise ConfigError(f"cannot parse --values {values!r}")
    elif span:
        try:
            start, stop, step = (float(v) for v in span.split(":"))
        except ValueError:
            raise ConfigError(f"--range must be start:stop:step, got {span!r}")
        if step <= 0 or stop < start:
            raise ConfigError(f"empty range {span!r}")
        points = [round(float(v), 10) for v in np.arange(start, stop + step / 2, step)]
    else:
        raise ConfigError("sweep needs --values or --range")
    if not points:
        raise ConfigError("sweep range is empty")
    return points


def _sweep_update(dimension: str, value: float) -> Dict[str, Any]:
    if dimension == "max_restarts":
        if value != int(value):
            raise ConfigError(f"max_restarts takes integers, got {value}")
        return {"max_restarts": int(value)}
    if dimension == "wcf":
        return {"wcf_a": value, "wcf_b": value}
    return {dimension: value}


def cmd_sweep(args: argparse.Namespace) -> int:
    base = load_run_config(args.config, _config_overrides(args))
    points = parse_values(args.values, args.range)
    estimates: List[Estimate] = []
    certificates: List[Certificate] = []
    verdicts: List[Verdict] = []
    for value in points:
        data = base.model_dump()
        data.update(_sweep_update(args.dimension, value))
        config = load_run_config(None, data)
        e, c, v = execute(config, {"dimension": args.dimension, "value": value})
        estimates.extend(e)
        certificates.extend(c)
        verdicts.extend(Verdict(name=f"{verdict.name} at {args.dimension}={value}", passed=verdict.passed,
                                detail=verdict.detail) for verdict in v)
    echo = base.echo()
    echo["sweep"] = {"dimension": args.dimension, "values": points}
    report = make_report(echo, base.no_timestamp, estimates=estimates, certificates=certificates, verdicts=verdicts)
    # sweeps default to csv unless a flag or the config file picks a format
    fmt = base.format if "format" in base.model_fields_set else "csv"
    return _finish(report, fmt, base.out, base.metrics_out)


def cmd_list(args: argparse.Namespace) -> int:
    protocols = {}
    for name in protocol_names():
        descriptor = build_protocol(name)
        profile = descriptor.profile
        protocols[name] = {
            "kind": descriptor.kind,
            "first_mover": descriptor.first_mover.value,
            "profile": None if profile is None else {"A": profile.A, "B": profile.B},
            "inner": [d.name for d in descriptor.inner],
        }
    emit(json.dumps({"protocols": protocols, "strategies": describe_strategies()}, indent=2) + "\n", args.out)
    return EXIT_OK


def cmd_selftest(args: argparse.Namespace) -> int:
    if args.trials < 100:
        raise ConfigError("selftest needs at least 100 trials")
    generated_at = (FIXED_CLOCK or "") if args.no_timestamp else None
    report = run_acceptance(args.trials, args.seed, args.parallel, generated_at=generated_at)
    return _finish(report, args.format or "json", args.out, args.metrics_out)


# parser

def _add_run_options(parser: argparse.ArgumentParser):
    parser.add_argument("--config", help="YAML run config; flags override its values")
    parser.add_argument("--protocol", choices=protocol_names())
    parser.add_argument("--alice", choices=strategy_names(), help="strategy for the Alice role")
    parser.add_argument("--bob", choices=strategy_names(), help="strategy for the Bob role")
    parser.add_argument("--trials", type=int)
    parser.add_argument("--seed", type=int)
    parser.add_argument("--loss-rate", dest="loss_rate", type=float)
    parser.add_argument("--classical-loss-rate", dest="classical_loss_rate", type=float)
    parser.add_argument("--max-restarts", dest="max_restarts", help="integer or 'unbounded'")
    parser.add_argument("--adversarial-loss", dest="adversarial_loss", action=argparse.BooleanOptionalAction,
                        default=None, help="whether parties may declare received quantum messages lost")
    parser.add_argument("--declared-losses", dest="declared_losses", type=int)
    parser.add_argument("--wcf-a", dest="wcf_a", type=float)
    parser.add_argument("--wcf-b", dest="wcf_b", type=float)
    parser.add_argument("--inner", choices=protocol_names(), help="inner protocol of a composite")
    parser.add_argument("--amplitude", type=float, help="amplitude a of the qutrit Random-OT")
    parser.add_argument("--rot-x", dest="rot_x", type=float, help="Alice cheating probability of ideal-rot")
    parser.add_argument("--rot-y", dest="rot_y", type=float, help="Bob cheating probability of ideal-rot")
    parser.add_argument("--parallel", type=int)
    _add_output_options(parser)


def _add_output_options(parser: argparse.ArgumentParser):
    parser.add_argument("--format", choices=("json", "csv"))
    parser.add_argument("--out", help="write the report here instead of stdout")
    parser.add_argument("--no-timestamp", dest="no_timestamp", action="store_true", default=None)
    parser.add_argument("--metrics-out", dest="metrics_out", help="write Prometheus text exposition here")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="ltot", description="Loss-tolerant oblivious transfer simulator")
    parser.add_argument("--version", action="version", version=f"ltot {LTOT_VERSION}")
    parser.add_argument("--log-level", dest="log_level")
    parser.add_argument("--log-format", dest="log_format", choices=("text", "json"))
    sub = parser.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="run trials of one protocol and strategy pair")
    _add_run_options(run)
    run.set_defaults(handler=cmd_run)

    compose = sub.add_parser("compose", help="evaluate the WCF + Random-OT composition")
    for name in ("a_wcf", "b_wcf", "a_rot", "b_rot"):
        compose.add_argument(name, type=float)
    compose.add_argument("--format", choices=("json", "csv"), default="json")
    compose.add_argument("--out")
    compose.set_defaults(handler=cmd_compose)

    sweep = sub.add_parser("sweep", help="repeat a run over one swept parameter")
    sweep.add_argument("dimension", choices=SWEEP_DIMENSIONS)
    sweep.add_argument("--values", help="comma separated points")
    sweep.add_argument("--range", help="inclusive start:stop:step")
    _add_run_options(sweep)
    sweep.set_defaults(handler=cmd_sweep)

    lister = sub.add_parser("list", help="list registered protocols and strategies")
    lister.add_argument("--out")
    lister.set_defaults(handler=cmd_list)

    selftest = sub.add_parser("selftest", help="run the acceptance suite")
    selftest.add_argument("--trials", type=int, default=DEFAULT_TRIALS)
    selftest.add_argument("--seed", type=int, default=DEFAULT_SEED)
    selftest.add_argument("--parallel", type=int)
    _add_output_options(selftest)
    selftest.set_defaults(handler=cmd_selftest)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    try:
        args = build_parser().parse_args(argv)
        setup_logging(args.log_level, args.log_format)
        return args.handler(args)
    except LtotError as e:
        sys.stderr.write(json.dumps(e.to_dict()) + "\n")
        return e.exit_code


if __name__ == "__main__":
    sys.exit(main())
