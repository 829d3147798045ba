"""Command-line front end for the two-emitter correlation pipelines.

Commands
--------
g2-scan     second-order fringe and coincidence probability over a grid of
            phase differences (or detector angles with --xi-start/--xi-stop)
bell-test   normalized CH74 margin at the Bell angles over a visibility grid
mc-bell     seeded Monte Carlo estimates of the CH74 margin at the Bell angles
path-check  consistency of the quantum-path model against the operator
            algebra, plus the Schmidt rank of the post-selected state

A flat ``key = value`` config file (# comments allowed) can pre-set any
option of the active command; explicit flags win over the file. Results are
written as CSV with LF line endings to --output, or to stdout. Numbers carry
17 significant digits so every field parses back to the exact computed
value. Diagnostics go to stderr; exit status is 0 on success, 2 for usage
errors, 3 for invalid configuration, 4 when the output cannot be written.
"""

from __future__ import annotations

import argparse
import math
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Callable, Sequence

import numpy as np

from .bell import bell_angle_settings, ch_statistic
from .correlations import (
    Efficiency,
    UNIT_VISIBILITY,
    Visibility,
    g2,
    g2_at_phase,
    joint_probability,
    joint_probability_at_phase,
)
from .geometry import DetectorSetting, EmitterPair, phase_at, phase_difference
from .montecarlo import McConfig, estimate_ch
from .pathmodel import (
    DETECTOR_BIPARTITION,
    g2_path,
    postselected_state,
    schmidt_rank,
)
from .quantum_core import FieldParams, two_photon_amplitude

TWO_PI = 2.0 * math.pi
HALF_PI = math.pi / 2


class ConfigError(ValueError):
    """Raised for semantically invalid configuration (exit status 3).

    Subclasses ValueError so argparse treats it as a normal conversion
    failure (usage error) when raised inside a flag's type callable.
    """


@dataclass
class RunConfig:
    """Fully merged and type-checked options for one command invocation."""

    command: str
    output: str | None = None
    kd: float = TWO_PI
    e0: float = 1.0
    visibility: float = 1.0
    eta: float = 1.0
    phi_start: float = 0.0
    phi_stop: float = TWO_PI
    points: int = 100
    xi_start: float | None = None
    xi_stop: float | None = None
    xi_ref: float = 0.0
    v_grid: tuple[float, ...] | None = None
    v_start: float = 0.0
    v_stop: float = 1.0
    v_points: int = 101
    trials: int = 1_000_000
    num_seeds: int = 20
    seed_start: int = 0
    grid_points: int = 100


def _fmt(value: float) -> str:
    return format(float(value), ".17g")


def _parse_float_list(text: str) -> tuple[float, ...]:
    try:
        values = tuple(float(part) for part in text.split(",") if part.strip())
    except ValueError as exc:
        raise ConfigError(f"bad float list {text!r}: {exc}") from None
    if not values:
        raise ConfigError(f"empty value list {text!r}")
    return values


# Option tables per command: config-file key -> converter from string.
_COMMON: dict[str, Callable[[str], object]] = {"output": str}

_OPTION_TYPES: dict[str, dict[str, Callable[[str], object]]] = {
    "g2-scan": {
        **_COMMON,
        "kd": float,
        "e0": float,
        "visibility": float,
        "eta": float,
        "phi_start": float,
        "phi_stop": float,
        "points": int,
        "xi_start": float,
        "xi_stop": float,
        "xi_ref": float,
    },
    "bell-test": {
        **_COMMON,
        "eta": float,
        "v_grid": _parse_float_list,
        "v_start": float,
        "v_stop": float,
        "v_points": int,
    },
    "mc-bell": {
        **_COMMON,
        "visibility": float,
        "eta": float,
        "trials": int,
        "num_seeds": int,
        "seed_start": int,
    },
    "path-check": {
        **_COMMON,
        "kd": float,
        "e0": float,
        "grid_points": int,
    },
}


def _read_config_file(path: str) -> dict[str, str]:
    try:
        lines = Path(path).read_text().splitlines()
    except OSError as exc:
        raise ConfigError(f"cannot read config file {path!r}: {exc}") from None
    entries: dict[str, str] = {}
    for lineno, raw in enumerate(lines, start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"{path}:{lineno}: expected 'key = value', got {raw!r}")
        key, value = line.split("=", 1)
        entries[key.strip().replace("-", "_")] = value.strip()
    return entries


def _build_config(args: argparse.Namespace) -> RunConfig:
    """Merge defaults, config file, and flags (flags win) into a RunConfig."""
    command = args.command
    types = _OPTION_TYPES[command]
    config = RunConfig(command=command)

    if args.config is not None:
        for key, raw_value in _read_config_file(args.config).items():
            if key not in types:
                raise ConfigError(f"unknown config key {key!r} for command {command!r}")
            try:
                value = types[key](raw_value)
            except ValueError as exc:
                raise ConfigError(f"bad value for {key!r}: {exc}") from None
            setattr(config, key, value)

    for key in types:
        flag_value = getattr(args, key, None)
        if flag_value is not None:
            setattr(config, key, flag_value)
    return config


def _domain(factory: Callable[..., object], **kwargs) -> object:
    try:
        return factory(**kwargs)
    except ValueError as exc:
        raise ConfigError(str(exc)) from None


def _linspace(start: float, stop: float, count: int, what: str) -> np.ndarray:
    if count < 1:
        raise ConfigError(f"{what} must be >= 1, got {count}")
    return np.linspace(start, stop, count)


def _run_g2_scan(cfg: RunConfig) -> str:
    params: FieldParams = _domain(FieldParams, e0=cfg.e0)
    vis: Visibility = _domain(Visibility, v=cfg.visibility)
    eff: Efficiency = _domain(Efficiency, eta=cfg.eta)

    angle_mode = cfg.xi_start is not None or cfg.xi_stop is not None
    rows = ["delta_phi,g2,joint_probability"]
    if angle_mode:
        if cfg.xi_start is None or cfg.xi_stop is None:
            raise ConfigError("angle mode needs both xi_start and xi_stop")
        geometry: EmitterPair = _domain(EmitterPair, kd=cfg.kd)
        det_ref: DetectorSetting = _domain(DetectorSetting, xi=cfg.xi_ref)
        for xi in _linspace(cfg.xi_start, cfg.xi_stop, cfg.points, "points"):
            det: DetectorSetting = _domain(DetectorSetting, xi=float(xi))
            delta = phase_difference(geometry, det_ref, det)
            rows.append(
                f"{_fmt(delta)},{_fmt(g2(geometry, det_ref, det, params, vis))},"
                f"{_fmt(joint_probability(geometry, det_ref, det, params, vis, eff))}"
            )
    else:
        for delta in _linspace(cfg.phi_start, cfg.phi_stop, cfg.points, "points"):
            delta = float(delta)
            rows.append(
                f"{_fmt(delta)},{_fmt(g2_at_phase(delta, params, vis))},"
                f"{_fmt(joint_probability_at_phase(delta, vis, eff))}"
            )
    return "\n".join(rows) + "\n"


def _run_bell_test(cfg: RunConfig) -> str:
    eff: Efficiency = _domain(Efficiency, eta=cfg.eta)
    if cfg.v_grid is not None:
        v_values = cfg.v_grid
    else:
        v_values = tuple(
            float(v) for v in _linspace(cfg.v_start, cfg.v_stop, cfg.v_points, "v_points")
        )
    rows = ["v,statistic,lower_margin,violated"]
    for v in v_values:
        vis: Visibility = _domain(Visibility, v=v)
        result = ch_statistic(bell_angle_settings(vis, eff))
        flag = "true" if result.violated else "false"
        rows.append(
            f"{_fmt(v)},{_fmt(result.statistic)},{_fmt(result.lower_margin)},{flag}"
        )
    return "\n".join(rows) + "\n"


def _run_mc_bell(cfg: RunConfig) -> str:
    vis: Visibility = _domain(Visibility, v=cfg.visibility)
    eff: Efficiency = _domain(Efficiency, eta=cfg.eta)
    if cfg.num_seeds < 1:
        raise ConfigError(f"num_seeds must be >= 1, got {cfg.num_seeds}")
    settings = bell_angle_settings(vis, eff)
    rows = ["seed,trials,statistic_hat,std_error,sigma_violation"]
    for seed in range(cfg.seed_start, cfg.seed_start + cfg.num_seeds):
        mc_config: McConfig = _domain(
            McConfig, seed=seed, trials_per_setting=cfg.trials, settings=settings
        )
        estimate = estimate_ch(mc_config)
        rows.append(
            f"{seed},{estimate.trials},{_fmt(estimate.statistic_hat)},"
            f"{_fmt(estimate.std_error)},{_fmt(estimate.sigma_violation)}"
        )
    return "\n".join(rows) + "\n"


def _run_path_check(cfg: RunConfig) -> str:
    geometry: EmitterPair = _domain(EmitterPair, kd=cfg.kd)
    params: FieldParams = _domain(FieldParams, e0=cfg.e0)
    if cfg.grid_points < 2:
        raise ConfigError(f"grid_points must be >= 2, got {cfg.grid_points}")

    # Path-model coincidence signal vs the operator-algebra result over a
    # detector-angle grid; the scale factor e0^4/4 links the two.
    scale = 0.25 * params.e0**4
    angles = np.linspace(-HALF_PI, HALF_PI, cfg.grid_points)
    deviation = 0.0
    for xi1 in angles:
        det1 = DetectorSetting(xi=float(xi1))
        phi1 = phase_at(geometry, det1)
        for xi2 in angles:
            det2 = DetectorSetting(xi=float(xi2))
            phi2 = phase_at(geometry, det2)
            operator_g2 = abs(two_photon_amplitude(geometry, det1, det2, params)) ** 2
            path_g2 = scale * g2_path(phi1, phi2, UNIT_VISIBILITY)
            deviation = max(deviation, abs(path_g2 - operator_g2))

    rank = schmidt_rank(postselected_state(normalized=True), DETECTOR_BIPARTITION)
    return f"max_abs_deviation={_fmt(deviation)} schmidt_rank={rank}\n"


_RUNNERS: dict[str, Callable[[RunConfig], str]] = {
    "g2-scan": _run_g2_scan,
    "bell-test": _run_bell_test,
    "mc-bell": _run_mc_bell,
    "path-check": _run_path_check,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pathent",
        description="Two-emitter photon correlations, CH74 Bell tests and the quantum-path model.",
    )
    sub = parser.add_subparsers(dest="command", required=True, metavar="command")

    def add_common(p: argparse.ArgumentParser) -> None:
        p.add_argument("--config", help="flat key = value config file")
        p.add_argument("-o", "--output", help="output file (default: stdout)")

    p = sub.add_parser("g2-scan", help="scan the coincidence fringe")
    add_common(p)
    p.add_argument("--kd", type=float, help="emitter separation times wavenumber")
    p.add_argument("--e0", type=float, help="field amplitude")
    p.add_argument("--visibility", type=float, help="fringe visibility in [0, 1]")
    p.add_argument("--eta", type=float, help="detection efficiency in (0, 1]")
    p.add_argument("--phi-start", type=float, dest="phi_start", help="first phase difference")
    p.add_argument("--phi-stop", type=float, dest="phi_stop", help="last phase difference")
    p.add_argument("--points", type=int, help="number of grid points")
    p.add_argument("--xi-start", type=float, dest="xi_start", help="first detector angle (angle mode)")
    p.add_argument("--xi-stop", type=float, dest="xi_stop", help="last detector angle (angle mode)")
    p.add_argument("--xi-ref", type=float, dest="xi_ref", help="fixed reference detector angle")

    p = sub.add_parser("bell-test", help="CH74 margin over a visibility grid")
    add_common(p)
    p.add_argument("--eta", type=float, help="detection efficiency in (0, 1]")
    p.add_argument("--v-grid", type=_parse_float_list, dest="v_grid", help="comma-separated visibilities")
    p.add_argument("--v-start", type=float, dest="v_start", help="first visibility")
    p.add_argument("--v-stop", type=float, dest="v_stop", help="last visibility")
    p.add_argument("--v-points", type=int, dest="v_points", help="number of visibilities")

    p = sub.add_parser("mc-bell", help="Monte Carlo CH74 estimates")
    add_common(p)
    p.add_argument("--visibility", type=float, help="fringe visibility in [0, 1]")
    p.add_argument("--eta", type=float, help="detection efficiency in (0, 1]")
    p.add_argument("--trials", type=int, help="trials per setting pair")
    p.add_argument("--num-seeds", type=int, dest="num_seeds", help="number of seeds")
    p.add_argument("--seed-start", type=int, dest="seed_start", help="first seed")

    p = sub.add_parser("path-check", help="path model vs operator algebra")
    add_common(p)
    p.add_argument("--kd", type=float, help="emitter separation times wavenumber")
    p.add_argument("--e0", type=float, help="field amplitude")
    p.add_argument("--grid-points", type=int, dest="grid_points", help="detector angles per axis")

    return parser


def _write_output(destination: str | None, text: str) -> None:
    if destination is None:
        sys.stdout.write(text)
        return
    with open(destination, "w", newline="\n") as handle:
        handle.write(text)


def run(argv: Sequence[str] | None = None) -> int:
    """Parse arguments, execute the selected command, write its output."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        code = exc.code
        return code if isinstance(code, int) else 0 if code is None else 2

    try:
        config = _build_config(args)
        text = _RUNNERS[config.command](config)
    except ConfigError as exc:
        print(f"pathent: invalid configuration: {exc}", file=sys.stderr)
        return 3

    try:
        _write_output(config.output, text)
    except OSError as exc:
        print(f"pathent: cannot write output: {exc}", file=sys.stderr)
        return 4
    return 0


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
