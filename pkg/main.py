#!/usr/bin/env python3
# ============================================================
# GDOF - MIMO Interference Channel GDoF Toolkit
# main.py — Application Entry Point
# ============================================================
#
# Usage:
#   gdof region --antennas 3,3,2,2 --alpha 1,3/5,3/5,1
#   gdof split  --antennas 3,3,2,2 --alpha 1,3/5,3/5,1 --point 1,2
#   gdof curve  --antennas 3,2,3,2 --format csv > w_curve.dat
#   gdof verify --suite outer-bounds --trials 5 --seed 7
#   gdof version
#
# Exit codes: 0 success, 1 verification failure, 2 invalid input.
# ============================================================

import functools
import os
import sys

import click
from loguru import logger
from rich.console import Console

# Add project root to path
sys.path.insert(0, os.path.dirname(__file__))

from config import OutputFormat, RunConfig, app_config, load_run_config
from core import output_formatter as fmt
from core.gdof import AntennaConfig, Bound7Form, ExponentProfile, gdof_region, split_region, symmetric_curve
from core.numeric_verify import Suite, run_suite, suite_names
from core.polytope import Region2, find_split
from core.specializations import (
    InsightCurve,
    MacConfig,
    default_alpha_grid,
    dof_region,
    dof_region_raw,
    insight_curves,
    mac_gdof_region,
    siso_region,
    tin_gdof_region,
)
from utils.helpers import parse_int_list, parse_rational_list, to_fraction
from utils.logger import LEVELS, setup_logger

FORMATS = click.Choice([f.value for f in OutputFormat])


@click.group()
@click.option("--log-level", type=click.Choice(LEVELS, case_sensitive=False), default=None,
              help="Log file level (default GDOF_APP_LOG_LEVEL).")
@click.option("-v", "--verbose", is_flag=True, help="Echo log records at --log-level to stderr.")
def cli(log_level, verbose):
    """GDOF — exact GDoF regions of the 2-user MIMO interference channel."""
    level = log_level or app_config.log_level
    setup_logger(app_config.log_file, level, console_level=level if verbose else None)


def _guarded(func):
    """Map input errors to exit 2 and numeric breakdowns to exit 1."""
    @functools.wraps(func)
    def wrapper(*args, **kwargs):
        try:
            return func(*args, **kwargs)
        except ValueError as e:
            logger.debug(f"{func.__name__} rejected input: {e}")
            click.echo(f"Error: {e}", err=True)
            sys.exit(2)
        except ArithmeticError as e:
            logger.error(f"{func.__name__} failed: {e}")
            click.echo(f"Error: {e}", err=True)
            sys.exit(1)
    return wrapper


_load = _guarded(load_run_config)


def _channel_options(func):
    func = click.option("--config", "config_path", type=click.Path(dir_okay=False), default=None,
                        help="JSON file with run settings; flags take precedence.")(func)
    func = click.option("--format", "output_format", type=FORMATS, default=None, help="Output format (default json).")(func)
    func = click.option("--alpha", default=None, help="a11,a12,a21,a22 as exact rationals, e.g. 1,3/5,3/5,1.")(func)
    func = click.option("--antennas", default=None, help="M1,N1,M2,N2.")(func)
    return func


# ── Commands ──────────────────────────────────────────────────

@cli.command()
@_channel_options
@click.option("--bound7", type=click.Choice([f.value for f in Bound7Form]), default=Bound7Form.DERIVED.value,
              help="First term of the receiver-2 double bound.")
def region(antennas, alpha, output_format, config_path, bound7):
    """Exact GDoF region: bounds and counterclockwise vertices."""
    run_region(_load("region", config_path, antennas=antennas, alpha=alpha, format=output_format),
               Bound7Form(bound7))


@cli.command()
@_channel_options
@click.option("--point", required=True, help="d1,d2 to split into private/public parts.")
def split(antennas, alpha, output_format, config_path, point):
    """Split constraints and a private/public witness for a GDoF pair."""
    run_split(_load("split", config_path, antennas=antennas, alpha=alpha, format=output_format), point)


@cli.command()
@click.option("--antennas", default=None, help="M1,N1,M2,N2.")
@click.option("--alphas", default=None, help="Comma-separated α grid (default 0..3 step 1/12).")
@click.option("--format", "output_format", type=FORMATS, default=None)
@click.option("--config", "config_path", type=click.Path(dir_okay=False), default=None)
def curve(antennas, alphas, output_format, config_path):
    """Symmetric GDoF d_s(α) under exponents [1, α, α, 1]."""
    run_curve(_load("curve", config_path, antennas=antennas, format=output_format), alphas)


@cli.command()
@click.option("--antennas", default=None, help="M1,N1,M2,N2.")
@click.option("--raw", is_flag=True, help="Keep all seven bounds instead of the three facets.")
@click.option("--format", "output_format", type=FORMATS, default=None)
@click.option("--config", "config_path", type=click.Path(dir_okay=False), default=None)
def dof(antennas, raw, output_format, config_path):
    """DoF region (all exponents 1)."""
    run_dof(_load("dof", config_path, antennas=antennas, format=output_format), raw)


@cli.command()
@click.option("--alpha", default=None, help="a11,a12,a21,a22.")
@click.option("--format", "output_format", type=FORMATS, default=None)
@click.option("--config", "config_path", type=click.Path(dir_okay=False), default=None)
def siso(alpha, output_format, config_path):
    """Single-antenna GDoF region."""
    run_siso(_load("siso", config_path, alpha=alpha, format=output_format))


@cli.command()
@click.option("--antennas", "mac_antennas", required=True, help="M1,M2,N.")
@click.option("--alpha", "mac_alpha", required=True, help="SNR exponent of user 2.")
@click.option("--format", "output_format", type=FORMATS, default=None)
def mac(mac_antennas, mac_alpha, output_format):
    """Two-user MIMO MAC GDoF region."""
    run_mac(_load("mac", None, format=output_format), mac_antennas, mac_alpha)


@cli.command()
@click.option("--m", "m", type=int, required=True, help="Antennas per transmitter.")
@click.option("--n", "n", type=int, required=True, help="Antennas per receiver.")
@click.option("--alpha", "tin_alpha", required=True, help="Cross-link exponent.")
@click.option("--format", "output_format", type=FORMATS, default=None)
def tin(m, n, tin_alpha, output_format):
    """Region achieved by treating interference as noise."""
    run_tin(_load("tin", None, format=output_format), m, n, tin_alpha)


@cli.command()
@click.argument("name", type=click.Choice([c.value for c in InsightCurve]))
@click.option("--m", "m", type=int, default=None)
@click.option("--n", "n", type=int, default=None)
@click.option("--alphas", default=None, help="Comma-separated α grid.")
@click.option("--format", "output_format", type=FORMATS, default=None)
def insight(name, m, n, alphas, output_format):
    """Named closed-form curves (W-curve, V-curve, TIN overlay)."""
    run_insight(_load("insight", None, format=output_format), name, m, n, alphas)


@cli.command()
@_channel_options
@click.option("--suite", type=click.Choice(suite_names()), default=Suite.ALL.value)
@click.option("--trials", type=int, default=None)
@click.option("--seed", type=int, default=None, help="Base seed; GDOF_SEED overrides.")
@click.option("--rho-lo", "rho_lo", type=float, default=None)
@click.option("--rho-hi", "rho_hi", type=float, default=None)
@click.option("--tolerance", type=float, default=None)
@click.option("--workers", type=int, default=None)
def verify(antennas, alpha, output_format, config_path, suite, trials, seed, rho_lo, rho_hi, tolerance, workers):
    """Monte Carlo slope checks of the closed-form bounds."""
    run_verify(
        _load(
            "verify", config_path, antennas=antennas, alpha=alpha, format=output_format,
            trials=trials, seed=seed, rho_lo=rho_lo, rho_hi=rho_hi, tolerance=tolerance, workers=workers,
        ),
        suite,
    )


@cli.command()
def version():
    """Display GDOF version information."""
    show_version()


# ── Run Functions ─────────────────────────────────────────────

def _channel(config: RunConfig):
    return AntennaConfig.from_sequence(config.antennas), ExponentProfile.from_sequence(config.alpha)


def _emit_region(config: RunConfig, result: Region2, title: str):
    if config.format is OutputFormat.CSV:
        click.echo(fmt.vertices_to_csv(result), nl=False)
    elif config.format is OutputFormat.TABLE:
        fmt.OutputFormatter(Console()).print_region(result, title=title)
    else:
        click.echo(fmt.region_to_json(result))


def _emit_curve(config: RunConfig, result, title: str):
    if config.format is OutputFormat.CSV:
        click.echo(fmt.curve_to_csv(result), nl=False)
    elif config.format is OutputFormat.TABLE:
        fmt.OutputFormatter(Console()).print_curve(result, title=title)
    else:
        click.echo(fmt.curve_to_json(result))


@_guarded
def run_region(config: RunConfig, bound7: Bound7Form = Bound7Form.DERIVED):
    cfg, exp = _channel(config)
    logger.info(f"region {cfg.as_tuple()} alpha={[str(a) for a in exp.as_tuple()]} bound7={bound7.value}")
    _emit_region(config, gdof_region(cfg, exp, bound7=bound7), "GDoF region")


@_guarded
def run_split(config: RunConfig, point: str):
    cfg, exp = _channel(config)
    d1, d2 = parse_rational_list(point, expected=2)
    constraints = split_region(cfg, exp)
    witness = find_split(constraints, d1, d2)
    logger.info(f"split {cfg.as_tuple()} at ({d1}, {d2}): {witness!r}")
    if config.format is OutputFormat.CSV:
        click.echo(fmt.split_to_csv(constraints), nl=False)
    elif config.format is OutputFormat.TABLE:
        fmt.OutputFormatter(Console()).print_split(constraints, witness)
    else:
        click.echo(fmt.split_to_json(constraints, witness))


@_guarded
def run_curve(config: RunConfig, alphas: str = None):
    cfg = AntennaConfig.from_sequence(config.antennas)
    sweep = parse_rational_list(alphas) if alphas else default_alpha_grid()
    logger.info(f"curve {cfg.as_tuple()} over {len(sweep)} α samples")
    _emit_curve(config, symmetric_curve(cfg, sweep), f"Symmetric GDoF {cfg.as_tuple()}")


@_guarded
def run_dof(config: RunConfig, raw: bool = False):
    cfg = AntennaConfig.from_sequence(config.antennas)
    result = dof_region_raw(cfg) if raw else dof_region(cfg)
    _emit_region(config, result, f"DoF region {cfg.as_tuple()}")


@_guarded
def run_siso(config: RunConfig):
    exp = ExponentProfile.from_sequence(config.alpha)
    _emit_region(config, siso_region(exp), "SISO GDoF region")


@_guarded
def run_mac(config: RunConfig, antennas: str, alpha: str):
    m1, m2, n = parse_int_list(antennas, expected=3)
    params = MacConfig(m1, m2, n, to_fraction(alpha))
    _emit_region(config, mac_gdof_region(params), f"MAC GDoF region ({m1},{m2},{n})")


@_guarded
def run_tin(config: RunConfig, m: int, n: int, alpha: str):
    _emit_region(config, tin_gdof_region(m, n, alpha), f"TIN region ({m},{n},{m},{n})")


@_guarded
def run_insight(config: RunConfig, name: str, m: int = None, n: int = None, alphas: str = None):
    params = {"m": m, "n": n}
    if alphas:
        params["alphas"] = parse_rational_list(alphas)
    _emit_curve(config, insight_curves(name, {k: v for k, v in params.items() if v is not None}), name)


@_guarded
def run_verify(config: RunConfig, suite: str):
    cfg, exp = _channel(config)
    logger.info(f"verify suite={suite} trials={config.trials} seed={config.seed} rho={config.rho_pair}")
    result = run_suite(
        suite, cfg=cfg, exp=exp, trials=config.trials, seed=config.seed,
        rho_pair=config.rho_pair, tolerance=config.tolerance, workers=config.workers,
    )
    if config.format is OutputFormat.CSV:
        click.echo(fmt.suite_to_csv(result), nl=False)
    elif config.format is OutputFormat.TABLE:
        fmt.OutputFormatter(Console()).print_suite(result)
    else:
        click.echo(fmt.suite_to_json(result))
    if not result.passed:
        sys.exit(1)


def show_version():
    """Display version and configuration info."""
    print(f"""
╔══════════════════════════════════════════════════════╗
║        GDOF — MIMO Interference Channel GDoF         ║
╠══════════════════════════════════════════════════════╣
║  Version    : {app_config.version:<38}║
║  Log level  : {app_config.log_level:<38}║
║  Log file   : {(app_config.log_file or 'disabled'):<38}║
╚══════════════════════════════════════════════════════╝
""")


# ── Entry Point ───────────────────────────────────────────────

if __name__ == "__main__":
    cli()
