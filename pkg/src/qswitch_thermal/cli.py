# Copyright 2026 The qswitch-thermal Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""Command-line front end.

Subcommands::

    qswitch-thermal betaf    --beta-t1 1 --n 1 --beta-i 1 --r 1 --theta 1.5708 --Theta 1.5708
    qswitch-thermal oracle   (same flags as betaf)
    qswitch-thermal optimize --beta-t1 1 --n 2 --beta-i 1 --r 1 --theta 1.0472
    qswitch-thermal sweep    --kind heatmap --beta-t1 1 --n 1 --beta-i 1 --r 1 --output map.csv
    qswitch-thermal popt     --beta-t1 1 --beta-i 1 --theta 0.7854

Exit codes: 0 success, 1 oracle/closed-form disagreement, 2 usage or
validation error, 3 physical degeneracy.
"""

from __future__ import annotations

import argparse
import logging
import math
import sys
from dataclasses import replace
from pathlib import Path
from typing import Any, Callable, Dict, List, Mapping, Optional, TextIO

import numpy as np
from pydantic import ValidationError

from . import closed_form, optimize, output, switch_sim
from .config import RunConfig, build_run_config, load_config_file
from .exceptions import InvalidParameter, QSwitchError
from .thermal import BathConfig
from .version import __version__

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_DISAGREEMENT = 1
EXIT_USAGE = 2
EXIT_DEGENERATE = 3

ORACLE_AGREEMENT = 1e-9

_BETA_COLUMNS = (
    "beta_f",
    "delta_beta",
    "beta_f_max",
    "beta_f_min",
    "beta_f_closed_form",
    "agreement",
)


def _add_bath_flags(p: argparse.ArgumentParser) -> None:
    group = p.add_argument_group("baths")
    group.add_argument("--beta-t1", type=float, help="β_T1·Δ of the first bath.")
    exclusive = group.add_mutually_exclusive_group()
    exclusive.add_argument("--beta-t2", type=float, help="β_T2·Δ of the second bath.")
    exclusive.add_argument("--n", type=float, help="Asymmetry ratio β_T2/β_T1.")
    group.add_argument("--beta-i", type=float, help="β_i·Δ of the initial system state.")
    group.add_argument("--delta", type=float, help="Qubit gap; β flags are scaled by it (default: 1).")


def _add_control_flags(p: argparse.ArgumentParser, radius_help: str = "Bloch radius r of the control.") -> None:
    group = p.add_argument_group("control")
    group.add_argument("--r", help=radius_help)
    group.add_argument("--theta", type=float, help="Control polar angle θ.")
    group.add_argument("--phi", type=float, help="Control azimuth φ (default: 0).")


def _add_measure_flags(p: argparse.ArgumentParser) -> None:
    group = p.add_argument_group("measurement")
    group.add_argument("--Theta", type=float, help="Postselection polar angle Θ.")
    group.add_argument("--Phi", type=float, help="Postselection azimuth Φ (default: 0).")


def _add_search_flags(p: argparse.ArgumentParser) -> None:
    group = p.add_argument_group("search")
    group.add_argument("--grid-theta", type=int, help="Coarse Θ points (default: 181).")
    group.add_argument("--grid-phi", type=int, help="Coarse Φ points, 2π included (default: 73).")
    group.add_argument("--verify", action="store_true", help="Exhaustive brute grid, no refinement.")
    group.add_argument("--min-prob", type=float, help="Success-probability floor for extrema.")
    group.add_argument("--angle-tol", type=float, help="Refinement tolerance in radians.")


def _add_common_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--config", help="Flat key=value file; flags override it.")
    p.add_argument("--degrees", action="store_true", help="Angles are given in degrees.")
    p.add_argument("--p-min", type=float, help="Postselection probability floor.")
    p.add_argument("--output", help="Write to this file instead of stdout.")
    p.add_argument("--format", choices=output.FORMATS, help="Output format.")
    p.add_argument("--log-level", choices=["DEBUG", "INFO", "WARNING", "ERROR"])
    p.add_argument("-v", "--verbose", action="store_true", help="Same as --log-level DEBUG.")


def build_parser() -> argparse.ArgumentParser:
    # SUPPRESS keeps unset flags out of the namespace so config-file values survive.
    parser = argparse.ArgumentParser(
        prog="qswitch-thermal",
        description="Effective temperatures of a qubit thermalized through a quantum SWITCH.",
        argument_default=argparse.SUPPRESS,
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def subparser(name: str, text: str) -> argparse.ArgumentParser:
        p = sub.add_parser(name, help=text, argument_default=argparse.SUPPRESS)
        _add_common_flags(p)
        _add_bath_flags(p)
        return p

    for name, text in (
        ("betaf", "Closed-form β_f and success probability."),
        ("oracle", "Brute-force simulation compared with the closed form."),
    ):
        p = subparser(name, text)
        _add_control_flags(p)
        _add_measure_flags(p)

    p = subparser("optimize", "Extremize β_f over measurement directions.")
    _add_control_flags(p)
    _add_search_flags(p)

    p = subparser("sweep", "Write a sweep table for plotting.")
    _add_control_flags(p, radius_help="Bloch radius; a comma-separated list for extrema-vs-n.")
    _add_search_flags(p)
    group = p.add_argument_group("sweep")
    group.add_argument("--kind", choices=list(optimize.SWEEP_KINDS))
    group.add_argument("--delta-phi", type=float, help="Φ-φ for heat maps (default: 0).")
    group.add_argument("--theta-steps", type=int, help="Control θ points.")
    group.add_argument("--Theta-steps", type=int, help="Measurement Θ points (default: 181).")
    group.add_argument("--n-min", type=float, help="Smallest n (default: 0.25).")
    group.add_argument("--n-max", type=float, help="Largest n (default: 4).")
    group.add_argument("--n-steps", type=int, help="Geometric n points (default: 31).")
    group.add_argument("--workers", type=int, help="Threads for independent cells (default: 1).")

    p = subparser("popt", "Success probabilities at the identical-bath optima, three ways.")
    _add_control_flags(p, radius_help="Bloch radius (default: 1).")
    return parser


def _configure_logging(cfg: RunConfig) -> None:
    level = logging.DEBUG if cfg.verbose else getattr(logging, cfg.log_level)
    logging.basicConfig(stream=sys.stderr, format="%(levelname)s %(name)s: %(message)s")
    logging.getLogger("qswitch_thermal").setLevel(level)


def _to_user_units(record: Mapping[str, Any], cfg: RunConfig) -> Dict[str, Any]:
    return {
        k: v / cfg.delta if k in _BETA_COLUMNS and isinstance(v, float) else v
        for k, v in record.items()
    }


def _emit(record: Mapping[str, Any], cfg: RunConfig, stdout: TextIO) -> None:
    text = output.report_to_csv(record) if cfg.format == "csv" else output.format_report(record) + "\n"
    if cfg.output:
        output.atomic_write(cfg.output, text)
    else:
        stdout.write(text)


def cmd_betaf(cfg: RunConfig, stdout: TextIO) -> int:
    report = closed_form.effective_temperature_report(
        cfg.bath, cfg.control, cfg.measure, p_min=cfg.p_min
    )
    _emit(_to_user_units(report, cfg), cfg, stdout)
    return EXIT_OK


def cmd_oracle(cfg: RunConfig, stdout: TextIO) -> int:
    b, c, m = cfg.bath, cfg.control, cfg.measure
    result = switch_sim.oracle_beta_f(b, c, m, p_min=cfg.p_min)
    beta_closed = closed_form.beta_f_general(b, c, m)
    prob_closed = closed_form.success_prob_general(b, c, m)
    agreement = abs(result.beta_f - beta_closed)
    record = {
        "beta_f": result.beta_f,
        "p_success": result.prob,
        "max_offdiag": result.max_offdiag,
        "beta_f_closed_form": beta_closed,
        "p_closed_form": prob_closed,
        "agreement": agreement,
        "prob_agreement": abs(result.prob - prob_closed),
    }
    record = _to_user_units(record, cfg)
    _emit(record, cfg, stdout)
    if agreement > ORACLE_AGREEMENT:
        logger.error("Oracle and closed form differ by %.3e", agreement)
        return EXIT_DISAGREEMENT
    return EXIT_OK


def cmd_optimize(cfg: RunConfig, stdout: TextIO) -> int:
    result = optimize.find_extrema(
        cfg.bath,
        cfg.control,
        grid=(cfg.grid_theta, cfg.grid_phi),
        verify=cfg.verify,
        p_min=cfg.p_min,
        min_prob=cfg.min_prob,
        angle_tol=cfg.angle_tol,
    )
    _emit(_to_user_units(result.as_dict(), cfg), cfg, stdout)
    return EXIT_OK


def _rescale(table: optimize.SweepTable, delta: float) -> optimize.SweepTable:
    if delta == 1.0:
        return table
    columns = {
        name: values / delta if name in _BETA_COLUMNS else values
        for name, values in table.columns.items()
    }
    return replace(table, columns=columns, metadata={**table.metadata, "delta": repr(delta)})


def build_sweep(cfg: RunConfig) -> optimize.SweepTable:
    """Run the sweep selected by ``cfg.kind``."""
    common: Dict[str, Any] = dict(p_min=cfg.p_min)
    theta_grid = np.linspace(0.0, math.pi, cfg.steps_theta)
    if cfg.kind == "heatmap":
        return optimize.heatmap(
            cfg.bath, cfg.radius, cfg.delta_phi, theta_grid,
            np.linspace(0.0, math.pi, cfg.Theta_steps), **common,
        )
    common.update(angle_tol=cfg.angle_tol, workers=cfg.workers)
    if cfg.kind == "theta-curve":
        return optimize.optimal_theta_curve(
            cfg.bath, cfg.radius, optimize.theta_curve_grid(cfg.steps_theta),
            Theta_points=cfg.Theta_steps, verify=cfg.verify, **common,
        )
    grid = (cfg.grid_theta, cfg.grid_phi)
    if cfg.kind == "extrema-vs-theta":
        return optimize.extrema_vs_theta(cfg.bath, cfg.radius, theta_grid, grid=grid, **common)
    if cfg.beta_t1 is None or cfg.beta_i is None or cfg.r is None:
        raise InvalidParameter("extrema-vs-n needs beta-t1, beta-i and r.")
    return optimize.extrema_vs_n(
        cfg.beta_t1, cfg.beta_i,
        np.geomspace(cfg.n_min, cfg.n_max, cfg.n_steps),
        cfg.r, theta_grid, grid=grid, **common,
    )


def cmd_sweep(cfg: RunConfig, stdout: TextIO) -> int:
    table = _rescale(build_sweep(cfg), cfg.delta)
    fmt = cfg.format
    if fmt is None:
        fmt = "json" if cfg.output and Path(cfg.output).suffix == ".json" else "csv"
    if cfg.output:
        path = output.write_sweep(table, cfg.output, fmt)
        logger.info("Wrote %s sweep (%s) to %s", table.kind, "x".join(map(str, table.shape)), path)
    else:
        stdout.write(output.sweep_to_csv(table) if fmt == "csv" else output.sweep_to_json(table))
    return EXIT_OK


def cmd_popt(cfg: RunConfig, stdout: TextIO) -> int:
    if cfg.beta_t1 is None or cfg.beta_i is None:
        raise InvalidParameter("popt needs beta-t1 and beta-i.")
    c = cfg.control
    b = BathConfig.identical(cfg.beta_t1, cfg.beta_i)
    literal = closed_form.success_prob_opt(cfg.beta_t1, cfg.beta_i, c.theta)
    stationary = closed_form.success_prob_at_optimum(cfg.beta_t1, cfg.beta_i, c)
    points = closed_form.analytic_optima_identical(c)
    oracle = tuple(
        switch_sim.oracle_beta_f(b, c, m, p_min=cfg.p_min).prob
        for m in (points.maximum, points.minimum)
    )
    record: Dict[str, Any] = {"r": c.r, "theta": c.theta}
    for i, branch in enumerate(("plus", "minus")):
        record[f"p_literal_{branch}"] = literal[i]
        record[f"p_stationary_{branch}"] = stationary[i]
        record[f"p_oracle_{branch}"] = oracle[i]
        record[f"delta_literal_{branch}"] = literal[i] - oracle[i]
        record[f"delta_stationary_{branch}"] = stationary[i] - oracle[i]
    _emit(record, cfg, stdout)
    return EXIT_OK


COMMANDS: Dict[str, Callable[[RunConfig, TextIO], int]] = {
    "betaf": cmd_betaf,
    "oracle": cmd_oracle,
    "optimize": cmd_optimize,
    "sweep": cmd_sweep,
    "popt": cmd_popt,
}


def main(argv: Optional[List[str]] = None, stdout: Optional[TextIO] = None) -> int:
    stdout = sys.stdout if stdout is None else stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    flags = vars(args)
    try:
        file_values = load_config_file(flags["config"]) if "config" in flags else {}
        cfg = build_run_config(file_values, flags)
    except (ValidationError, InvalidParameter, OSError) as exc:
        print(f"qswitch-thermal: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    _configure_logging(cfg)
    logger.debug("Running %s with %s", cfg.command, cfg)
    try:
        return COMMANDS[cfg.command](cfg, stdout)
    except (InvalidParameter, OSError) as exc:
        print(f"qswitch-thermal: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except QSwitchError as exc:
        print(f"qswitch-thermal: degenerate: {exc}", file=sys.stderr)
        return EXIT_DEGENERATE

