#!/usr/bin/env python3
"""Thermal SQL detector model - Main CLI entry point."""

import logging
from contextlib import contextmanager
from pathlib import Path
from typing import Callable, List, Optional

import typer
from dotenv import load_dotenv
from rich.console import Console
from rich.logging import RichHandler

from cli.commands import (
    cmd_constants,
    cmd_signal,
    cmd_sql,
    cmd_sweep,
    cmd_verify,
    resolve_profile,
    verification_table,
)
from cli.config import AppSettings, RunConfig, build_run_config
from cli.output import Table, render, write_output
from oracle.evolution import build_oracle_config
from sensitivity.sweep import build_grid
from utils.errors import GwSqlError, ParameterError, VerificationError

# Load environment variables
load_dotenv()
settings = AppSettings()

# Logs and status lines go to stderr, tables to stdout
err_console = Console(stderr=True)

logging.basicConfig(
    level=settings.log_level.upper(),
    format="%(message)s",
    handlers=[RichHandler(rich_tracebacks=True, console=err_console)],
)
logger = logging.getLogger(__name__)

app = typer.Typer(
    name="gw-thermal-sql",
    help="Exactly solvable quantum model of an interferometric gravitational-wave detector: "
    "signal statistics, thermal standard quantum limit and brute-force verification",
    add_completion=False,
)


@contextmanager
def reported_errors():
    """Turn project errors into their exit codes; anything else exits 1."""
    try:
        yield
    except GwSqlError as e:
        err_console.print(f"[red]Error: {e}[/red]")
        logger.debug("Traceback:", exc_info=True)
        raise typer.Exit(code=e.exit_code) from e
    except typer.Exit:
        raise
    except Exception as e:
        err_console.print(f"\n[red]Error: {e}[/red]")
        logger.exception("Fatal error")
        raise typer.Exit(code=1) from e


def _run_config(ctx: typer.Context, command: str) -> RunConfig:
    state = ctx.obj
    return build_run_config(
        command,
        flags=state["flags"],
        config_path=state["config"],
        output_format=state["format"],
        output_path=state["out"],
    )


def _emit(table: Table, config: RunConfig):
    text = render(table, config.output_format)
    if not write_output(text, config.output_path):
        typer.echo(text, nl=False)


def _run(ctx: typer.Context, command: str, build: Callable[[RunConfig], Table]):
    with reported_errors():
        config = _run_config(ctx, command)
        _emit(build(config), config)


@app.callback()
def main(
    ctx: typer.Context,
    omega: Optional[float] = typer.Option(None, "--omega", help="Optical angular frequency omega [1/s]"),
    length: Optional[float] = typer.Option(None, "--length", help="Cavity length L [m]"),
    mass: Optional[float] = typer.Option(None, "--mass", help="Oscillator mass m [kg]"),
    omega0: Optional[float] = typer.Option(None, "--omega0", help="Oscillator eigenfrequency [1/s]"),
    omega_g: Optional[float] = typer.Option(None, "--omega-g", help="Gravitational-wave angular frequency [1/s]"),
    h0: Optional[float] = typer.Option(None, "--h0", help="Metric perturbation amplitude [-]"),
    photons: Optional[float] = typer.Option(None, "--photons", help="Mean photon number N [-]"),
    temperature: Optional[float] = typer.Option(None, "--temperature", help="Oscillator temperature T [K]"),
    t_obs: Optional[float] = typer.Option(None, "--t-obs", help="Observation time [s]"),
    intensity: Optional[float] = typer.Option(None, "--intensity", help="Output power scale I_N"),
    output_format: Optional[str] = typer.Option(None, "--format", help="Output format: csv or json (default from .env)"),
    out: Optional[Path] = typer.Option(None, "--out", help="Write output to this file instead of stdout"),
    config: Optional[Path] = typer.Option(None, "--config", help="Flat key=value parameter file"),
    verbose: bool = typer.Option(False, "--verbose", "-v", help="Debug logging"),
):
    """Detector parameters default to LIGO-II values; config file < flags."""
    if verbose:
        logging.getLogger().setLevel(logging.DEBUG)
    ctx.obj = {
        "flags": {
            "omega": omega,
            "length": length,
            "mass": mass,
            "omega0": omega0,
            "omega_g": omega_g,
            "h0": h0,
            "photons": photons,
            "temperature": temperature,
            "t_obs": t_obs,
            "intensity": intensity,
        },
        "config": config,
        "format": output_format or settings.output_format,
        "out": out,
    }


@app.command()
def constants(ctx: typer.Context):
    """Couplings g and kappa, occupation, attenuation and max light-pressure phase."""
    _run(ctx, "constants", cmd_constants)


@app.command()
def signal(
    ctx: typer.Context,
    t_min: float = typer.Option(0.0, "--t-min", help="First time [s]"),
    t_max: Optional[float] = typer.Option(None, "--t-max", help="Last time [s] (default: t_obs)"),
    t_steps: int = typer.Option(11, "--t-steps", help="Number of time points"),
    log_grid: bool = typer.Option(False, "--log-grid", help="Geometric spacing"),
    photon_average: str = typer.Option("gaussian", "--photon-average", help="gaussian or exact"),
):
    """Phases, mean output and dispersion over a time grid."""

    def build(config: RunConfig) -> Table:
        upper = config.params.t_obs if t_max is None else t_max
        return cmd_signal(config, build_grid(t_min, upper, t_steps, log_grid), photon_average)

    _run(ctx, "signal", build)


@app.command()
def sql(
    ctx: typer.Context,
    semiclassical: bool = typer.Option(False, "--semiclassical", help="Drop photon-number fluctuations in the solver"),
    exact_thermal: bool = typer.Option(False, "--exact-thermal", help="Use 2 nbar instead of kT/(hbar omega0)"),
):
    """Vacuum, thermal and linearized strain thresholds."""
    _run(ctx, "sql", lambda config: cmd_sql(config, semiclassical, exact_thermal))


@app.command()
def sweep(
    ctx: typer.Context,
    over: str = typer.Option("T", "--over", help="Sweep axis: T (temperature) or t (observation time)"),
    T_min: float = typer.Option(0.0, "--T-min", help="First temperature [K]"),
    T_max: float = typer.Option(300.0, "--T-max", help="Last temperature [K]"),
    T_steps: int = typer.Option(7, "--T-steps", help="Number of temperatures"),
    t_min: float = typer.Option(0.1, "--t-min", help="First observation time [s]"),
    t_max: float = typer.Option(10.0, "--t-max", help="Last observation time [s]"),
    t_steps: int = typer.Option(7, "--t-steps", help="Number of observation times"),
    log_grid: bool = typer.Option(False, "--log-grid", help="Geometric spacing"),
    semiclassical: bool = typer.Option(False, "--semiclassical", help="Drop photon-number fluctuations in the solver"),
    exact_thermal: bool = typer.Option(False, "--exact-thermal", help="Use 2 nbar instead of kT/(hbar omega0)"),
    workers: Optional[int] = typer.Option(None, "--workers", help="Threads (default from .env)"),
):
    """Thresholds of all three methods over a temperature or observation-time grid."""

    def build(config: RunConfig) -> Table:
        max_workers = workers or settings.max_workers
        if over == "T":
            grid = build_grid(T_min, T_max, T_steps, log_grid)
            return cmd_sweep(config, T_grid=grid, max_workers=max_workers,
                             semiclassical=semiclassical, exact_thermal=exact_thermal)
        if over == "t":
            grid = build_grid(t_min, t_max, t_steps, log_grid)
            return cmd_sweep(config, t_grid=grid, max_workers=max_workers,
                             semiclassical=semiclassical, exact_thermal=exact_thermal)
        raise ParameterError(f"Unknown sweep axis '{over}', expected T or t")

    _run(ctx, "sweep", build)


@app.command()
def verify(
    ctx: typer.Context,
    profile: str = typer.Option("default", "--profile", help="Desk profile name"),
    profiles: Optional[Path] = typer.Option(None, "--profiles", help="Desk profile JSON (default: packaged)"),
    n_osc: Optional[int] = typer.Option(None, "--n-osc", help="Oscillator Fock dimension (default from .env)"),
    n_field: Optional[int] = typer.Option(None, "--n-field", help="Photon sectors kept (default: from tol-trunc)"),
    tol_trunc: Optional[float] = typer.Option(None, "--tol-trunc", help="Allowed discarded probability"),
    tol_match: Optional[float] = typer.Option(None, "--tol-match", help="Oracle vs closed-form tolerance"),
    workers: Optional[int] = typer.Option(None, "--workers", help="Threads for sector evaluation"),
    printed_ground: bool = typer.Option(False, "--printed-ground-exponent", help="Use exp(-(g^2 - N theta_l^2)/2) in the ground-state mean"),
    printed_thermal: bool = typer.Option(False, "--printed-thermal-prefactor", help="Use alpha exp(+g^2/2) in the thermal mean"),
    desk_g: Optional[float] = typer.Option(None, "--desk-g", help="Override profile coupling g"),
    desk_photons: Optional[float] = typer.Option(None, "--desk-photons", help="Override profile photon number"),
    desk_theta_l: Optional[float] = typer.Option(None, "--desk-theta-l", help="Override profile theta_l"),
    desk_theta_g: Optional[float] = typer.Option(None, "--desk-theta-g", help="Override profile theta_g"),
    desk_nbar: Optional[List[float]] = typer.Option(None, "--desk-nbar", help="Override profile occupations (repeatable)"),
):
    """Brute-force Fock-space check of the closed forms at desk scale."""
    with reported_errors():
        config = _run_config(ctx, "verify")
        oracle_config = build_oracle_config({
            "n_osc": n_osc if n_osc is not None else settings.oracle_n_osc,
            "n_field": n_field,
            "tol_trunc": tol_trunc if tol_trunc is not None else settings.oracle_tol_trunc,
            "tol_match": tol_match if tol_match is not None else settings.oracle_tol_match,
            "max_workers": workers or settings.max_workers,
        })
        desk = resolve_profile(
            profile,
            {"g": desk_g, "N": desk_photons, "theta_l": desk_theta_l, "theta_g": desk_theta_g, "nbar": desk_nbar or None},
            profiles,
        )
        report = cmd_verify(oracle_config, desk, printed_ground, printed_thermal)
        _emit(verification_table(report), config)

        if not report.passed:
            names = ", ".join(c.check for c in report.failures)
            raise VerificationError(f"{len(report.failures)} of {len(report.checks)} checks failed: {names}")
        err_console.print(f"[green]✓[/green] All {len(report.checks)} checks passed for profile '{desk.name}'")


if __name__ == "__main__":
    app()
