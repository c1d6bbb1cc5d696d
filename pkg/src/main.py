"""
This module is the main entry point for the 2-adic zeta certifier.
"""

import argparse
import logging
import sys

from dotenv import load_dotenv
from pydantic import ValidationError

from certificate import certificate
from certifier_config import CertifierConfig
from constants import (
    CONFIG_FILE,
    LOGGER_NAME,
    get_bernoulli_cache_file,
    get_golden_file,
    set_bernoulli_cache_file,
)
from errors import EXIT_OK, EXIT_USAGE, EXIT_VERIFICATION_FAILED, CertifierError
from lemma_checks import (
    archimedean_bound_check,
    delta_probe_check,
    floor_inequality_check,
    kummer_parity_check,
    lemma51_check,
)
from linforms import (
    S_KIND,
    decomposition_cross_check,
    integrality_report,
    leibniz_decomposition,
    linear_form,
    low_precision_direct_check,
    symmetry_report,
    valuation_check,
    valuation_verdict,
)
from numcore import BernoulliCache, growth_diagnostics, set_default_bernoulli_cache
from ratfun import lemma41_check
from report_writer import render, write_session_reports
from run_config import SUITES, RunConfig
from utils.logger import setup_logger
from utils.setup_session import SessionSetup
from utils.verdict import NOT_APPLICABLE, Verdict, all_passed, verdict_from
from volkenborn import IntegrandSpec, translate_check
from zeta import QUARTER, GoldenStore, hurwitz_zeta2, reflection_check, zeta2_at

DEFAULT_PRECISION = 64


def parse_m_list(text):
    """Parse m values from "2,3,4", "2 3 4", ranges "2:4" or "2-4", or a mix."""
    if not text:
        return []
    values = []
    for part in text.replace(" ", ",").split(","):
        part = part.strip()
        if not part:
            continue
        if ":" in part or "-" in part:
            separator = ":" if ":" in part else "-"
            try:
                start, end = (int(v) for v in part.split(separator, 1))
            except ValueError:
                raise ValueError(f"Invalid range format: {part}")
            values.extend(range(start, end + 1))
        else:
            try:
                values.append(int(part))
            except ValueError:
                raise ValueError(f"Invalid m value: {part}")
    return values


def _add_global_flags(parser, suppress=False):
    """Flags accepted both before and after the subcommand."""

    def default(value):
        return argparse.SUPPRESS if suppress else value

    parser.add_argument(
        "--out", choices=["json", "csv", "text"], default=default("json"), help="Report format"
    )
    parser.add_argument(
        "--cache", default=default(None), help="Bernoulli cache file (overrides ZETA2CERT_CACHE)"
    )
    parser.add_argument(
        "--seed", type=int, default=default(0), help="Seed for sampled probes (default: 0)"
    )
    parser.add_argument(
        "--session-name",
        dest="session_name",
        default=default(None),
        help="Store reports under .sessions/<command>/<name_timestamp>/reports",
    )
    parser.add_argument(
        "--config", default=default(CONFIG_FILE), help="Configuration file (src/config.yaml)"
    )
    parser.add_argument(
        "--verbose",
        "-v",
        action="store_true",
        default=default(False),
        help="Enable verbose output (debug level logs)",
    )


def _add_form_params(parser):
    parser.add_argument("--s", type=int, default=0, help="Derivative order s >= 0")
    parser.add_argument("--delta", type=int, default=0, help="Parity choice delta in {0,1}")
    parser.add_argument("--kind", choices=["S", "T"], default="S", help="Linear form kind")


def parse_arguments(argv=None):
    """Parse command line arguments."""
    parser = argparse.ArgumentParser(
        description="2-adic zeta linear-forms certifier", allow_abbrev=False
    )
    _add_global_flags(parser)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("bernoulli", help="Extend and persist the Bernoulli cache")
    _add_global_flags(p, suppress=True)
    p.add_argument("--max", dest="max_index", type=int, required=True, help="Highest index")

    p = sub.add_parser("zeta", help="Hurwitz zeta_2(j, x), or zeta_2(j) without --x")
    _add_global_flags(p, suppress=True)
    p.add_argument("--j", type=int, required=True)
    p.add_argument("--x", help="Rational with v2(x) <= -2, e.g. 1/4")
    p.add_argument("--prec", dest="precision", type=int, help="Precision in bits (default: 64)")
    p.add_argument(
        "--golden", action="store_true", help="Record or compare against the golden-value file"
    )

    p = sub.add_parser("linform", help="Compute S_n or T_n by both routes")
    _add_global_flags(p, suppress=True)
    _add_form_params(p)
    p.add_argument("--n", type=int)
    p.add_argument("--m", type=int, help="Use n = 2^m - 1")
    p.add_argument("--prec", dest="precision", type=int, help="Precision of the scaled form")

    p = sub.add_parser("verify", help="Run a verification suite")
    _add_global_flags(p, suppress=True)
    _add_form_params(p)
    p.add_argument("--suite", choices=SUITES, required=True)
    p.add_argument("--n", type=int)
    p.add_argument("--m", type=int)
    p.add_argument("--m-max", dest="m_max", type=int)
    p.add_argument("--j", type=int)
    p.add_argument("--x")
    p.add_argument("--k", type=int, default=3, help="Translation step for --suite translation")
    p.add_argument("--l-max", dest="l_max", type=int, default=6, help="Taylor order for lemma41")
    p.add_argument("--prec", dest="precision", type=int)

    p = sub.add_parser("certificate", help="Assemble an irrationality certificate")
    _add_global_flags(p, suppress=True)
    _add_form_params(p)
    p.add_argument("--m-list", dest="m_list", required=True, help="e.g. 2,3,4 or 2:4")

    return parser.parse_args(argv)


def build_run_config(args) -> RunConfig:
    params = {
        key: value
        for key, value in vars(args).items()
        if key not in ("out", "cache", "verbose", "config", "golden") and value is not None
    }
    if "m_list" in params:
        params["m_list"] = parse_m_list(params["m_list"])
    return RunConfig(
        **params,
        output_format=args.out,
        cache_path=args.cache or get_bernoulli_cache_file(),
    )


def cmd_bernoulli(cfg: RunConfig, cache: BernoulliCache):
    added = cache.extend_to(cfg.max_index)
    if added:
        cache.save(cfg.cache_path)
    payload = {
        "cache_path": cfg.cache_path,
        "entries": len(cache),
        "highest_index": cache.highest_index,
        "computed": added,
    }
    return payload, [], True


def cmd_zeta(cfg: RunConfig, golden: bool = False):
    A = cfg.precision or DEFAULT_PRECISION
    if cfg.x is None:
        value = zeta2_at(cfg.j, A)
    else:
        value = hurwitz_zeta2(cfg.j, cfg.x_rational, A)
    verdicts = []
    if golden and cfg.x is not None:
        status = GoldenStore(get_golden_file()).check_or_record(value, A)
        verdicts.append(
            verdict_from("golden", "value matches the recorded golden value", status != "mismatch")
        )
    return value.to_dict(), verdicts, all_passed(verdicts)


def cmd_linform(cfg: RunConfig):
    n = cfg.resolved_n()
    report = linear_form(cfg.kind, n, cfg.s, cfg.delta, cfg.precision)
    verdicts = list(report.integrality_verdicts)
    verdicts.append(
        verdict_from("route-agreement", "both evaluation routes agree", report.route_agreement)
    )
    if report.predicted_valuation is not None:
        verdicts.append(valuation_verdict(report, "observed valuation equals the predicted one"))
    else:
        verdicts.append(
            Verdict(
                "valuation-observation",
                "no prediction for n not of the form 2^m - 1",
                NOT_APPLICABLE,
                {"observed": report.valuation.to_dict()},
            )
        )
    payload = report.to_dict()
    payload["verdicts"] = [v.to_dict() for v in verdicts]
    return payload, verdicts, all_passed(verdicts)


def _suite_verdicts(cfg: RunConfig, settings: CertifierConfig):
    suite = cfg.suite
    s, delta, kind = cfg.s, cfg.delta, cfg.kind
    A = cfg.precision or DEFAULT_PRECISION
    x = cfg.x_rational if cfg.x is not None else QUARTER
    extra = {}

    if suite == "integrality":
        verdicts = integrality_report(cfg.resolved_n(3), s, delta)
    elif suite == "valuation":
        verdicts = [valuation_check(cfg.m or 2, s, delta, kind, cfg.precision)]
    elif suite == "symmetry":
        verdicts = symmetry_report(cfg.resolved_n(3), s, delta)
    elif suite == "lemma51":
        verdicts = [lemma51_check(cfg.m_max or 12)]
    elif suite == "kummer":
        verdicts = [kummer_parity_check(cfg.m_max or 10)]
    elif suite == "floor":
        verdicts = [floor_inequality_check()]
    elif suite == "reflection":
        verdicts = [reflection_check(cfg.j or 3, x, A)]
    elif suite == "translation":
        verdicts = [translate_check(IntegrandSpec.inverse_power(x, cfg.j or 3), cfg.k, A)]
    elif suite == "decomposition":
        terms, verdicts = leibniz_decomposition(cfg.m or 2, s, delta)
        verdicts.append(decomposition_cross_check(S_KIND, 2 ** (cfg.m or 2) - 1, s, delta))
        extra["terms"] = [t.to_dict() for t in terms]
    elif suite == "growth":
        verdicts = growth_diagnostics(
            cfg.resolved_n(100000),
            settings.get("growth", "lcm_tolerance", 0.1),
            settings.get("growth", "phi_tolerance", 0.05),
        )
    elif suite == "delta-probe":
        verdicts = delta_probe_check(
            cfg.n or 6,
            cfg.j or 0,
            cfg.m or 3,
            settings.get("probe", "sample_count", 64),
            settings.get("probe", "k_cap", 4096),
            cfg.seed,
        )
    elif suite == "lemma41":
        verdicts = [lemma41_check(cfg.resolved_n(3), cfg.l_max)]
    elif suite == "archimedean":
        verdicts = [archimedean_bound_check(cfg.resolved_n(3), s, delta, kind)]
    else:
        verdicts = [low_precision_direct_check(cfg.resolved_n(1), s, delta, cfg.m_max or 12, kind)]
    return verdicts, extra


def cmd_verify(cfg: RunConfig, settings: CertifierConfig):
    logger = logging.getLogger(LOGGER_NAME)
    verdicts, extra = _suite_verdicts(cfg, settings)
    for v in verdicts:
        logger.info(f"{v.marker} {v.name}: {v.anchor}")
    passed = all_passed(verdicts)
    payload = {"suite": cfg.suite, "passed": passed, "verdicts": verdicts, **extra}
    return payload, verdicts, passed


def cmd_certificate(cfg: RunConfig):
    report = certificate(cfg.s, cfg.delta, cfg.m_list, cfg.kind)
    verdicts = [v for row in report.rows for v in row.verdicts] + [report.decay]
    return report.to_dict(), verdicts, report.passed


def dispatch(cfg: RunConfig, settings: CertifierConfig, cache: BernoulliCache, golden=False):
    if cfg.command == "bernoulli":
        return cmd_bernoulli(cfg, cache)
    if cfg.command == "zeta":
        return cmd_zeta(cfg, golden)
    if cfg.command == "linform":
        return cmd_linform(cfg)
    if cfg.command == "verify":
        return cmd_verify(cfg, settings)
    return cmd_certificate(cfg)


def main(argv=None):
    """Main entry point for the certifier."""

    load_dotenv()
    args = parse_arguments(argv)

    log_level = logging.DEBUG if args.verbose else logging.INFO
    setup_logger(LOGGER_NAME, level=log_level)
    logger = logging.getLogger(LOGGER_NAME)
    logger.debug(f"Command {args.command} started")

    settings = CertifierConfig(args.config).apply()
    if args.cache:
        set_bernoulli_cache_file(args.cache)

    try:
        cfg = build_run_config(args)
    except (ValidationError, ValueError) as e:
        logger.error(f"Invalid parameters: {e}")
        return EXIT_USAGE

    try:
        cache = BernoulliCache.load(cfg.cache_path)
        set_default_bernoulli_cache(cache)
        cached = len(cache)
        payload, verdicts, ok = dispatch(cfg, settings, cache, getattr(args, "golden", False))
        if cfg.command != "bernoulli" and len(cache) > cached:
            cache.save(cfg.cache_path)
    except CertifierError as e:
        logger.error(f"{type(e).__name__}: {e}")
        return e.exit_code

    sys.stdout.write(render(payload, cfg.output_format))

    if cfg.session_name:
        session = SessionSetup(cfg.command, custom_session_name=cfg.session_name)
        path = write_session_reports(
            session.session_reports_dir, cfg.command, payload, verdicts, cfg.output_format
        )
        logger.info(f"Report written to {path}")

    if not ok:
        logger.error(f"[✗] {cfg.command} finished with failing checks")
        return EXIT_VERIFICATION_FAILED
    logger.info(f"[✓] {cfg.command} finished")
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
