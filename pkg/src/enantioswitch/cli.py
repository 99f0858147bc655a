"""Command-line front end: config files, simulation runs, CSV/JSON output, sweeps.

Configuration files are JSON (human-writable, tree-structured); unknown keys
are rejected and every value is range-checked before any simulation starts.
Trajectory output is plot-ready CSV with a fixed column order and full
precision scientific notation, so identical configurations produce
byte-identical files.
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, replace
from pathlib import Path

import numpy as np

from . import schemes
from .core import DriveScheme, StateVector
from .errors import (
    ConfigError,
    ConfigKeyError,
    ConfigSyntaxError,
    EnantioSwitchError,
    InvalidParameterError,
)
from .propagation import IntegratorConfig, Trajectory, propagate, sample_times
from .spectral import EigenTrack, adiabatic_overlap, detect_crossings, instantaneous_spectrum

COMMANDS = ("discriminator", "converter", "two-step", "spectrum", "sweep")
SWEEP_AXES = ("phi", "omega_max", "tau", "r_prefactor", "r_prime_prefactor")
WORKERS_ENV_VAR = "ENANTIOSWITCH_WORKERS"

FLOAT_FORMAT = "{:.16e}"


@dataclass(frozen=True)
class RunConfig:
    """Fully resolved run configuration with all defaults applied."""

    command: str
    omega_max: float
    tau: float
    enantiomer: str = "L"
    r_sign: int = 1
    r_prime_sign: int = 1
    converter_omega_max: float = schemes.DEFAULT_CONVERTER_OMEGA_MAX
    converter_tau: float = schemes.DEFAULT_CONVERTER_TAU
    method: str = "adaptive"
    rel_tol: float = 1e-10
    abs_tol: float = 1e-12
    max_step: float | None = None
    sample_stride: float | None = None
    n_steps: int = 100_000
    output: str | None = None
    workers: int = 1
    include_overlaps: bool = False
    gap_tol: float | None = None
    sweep_axis: str | None = None
    sweep_from: float | None = None
    sweep_to: float | None = None
    sweep_count: int = 1

    def integrator_config(self) -> IntegratorConfig:
        return IntegratorConfig(
            method=self.method,
            rel_tol=self.rel_tol,
            abs_tol=self.abs_tol,
            max_step=self.max_step if self.max_step is not None else np.inf,
            sample_stride=self.sample_stride,
            n_steps=self.n_steps,
        )


def _expect(mapping: dict, allowed: dict[str, type | tuple], context: str) -> None:
    for key in mapping:
        if key not in allowed:
            raise ConfigKeyError(f"unknown key {key!r} in {context}", key=key)
    for key, value in mapping.items():
        expected = allowed[key]
        if expected is float:
            if isinstance(value, bool) or not isinstance(value, (int, float)):
                raise ConfigKeyError(f"key {key!r} must be a number", key=key)
        elif not isinstance(value, expected):
            name = expected.__name__ if isinstance(expected, type) else str(expected)
            raise ConfigKeyError(f"key {key!r} must be of type {name}", key=key)


_TOP_LEVEL_KEYS = {
    "command": str,
    "omega_max": float,
    "tau": float,
    "enantiomer": str,
    "sign_config": dict,
    "converter": dict,
    "integrator": dict,
    "output": str,
    "workers": int,
    "include_overlaps": bool,
    "gap_tol": float,
    "sweep": dict,
}


def parse_config(text: str) -> RunConfig:
    """Parse and validate a JSON configuration into a :class:`RunConfig`.

    Defaults depend on the command: the converter command (and converter-side
    sweep axes) default to the strong short pulse set, everything else to the
    discriminator set.  Unknown keys anywhere raise
    :class:`~enantioswitch.errors.ConfigKeyError`; malformed JSON raises
    :class:`~enantioswitch.errors.ConfigSyntaxError` with line and column.
    """
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigSyntaxError(exc.msg, line=exc.lineno, column=exc.colno) from exc
    if not isinstance(raw, dict):
        raise ConfigSyntaxError("configuration must be a JSON object", line=1, column=1)
    _expect(raw, _TOP_LEVEL_KEYS, "configuration")

    if "command" not in raw:
        raise ConfigKeyError("missing required key 'command'", key="command")
    command = raw["command"]
    if command not in COMMANDS:
        raise ConfigKeyError(
            f"command must be one of {', '.join(COMMANDS)}; got {command!r}",
            key="command",
        )

    sweep = raw.get("sweep", {})
    _expect(sweep, {"axis": str, "from": float, "to": float, "count": int}, "sweep")
    sweep_axis = sweep.get("axis")
    if command == "sweep":
        for key in ("axis", "from", "to", "count"):
            if key not in sweep:
                raise ConfigKeyError(f"sweep requires key {key!r}", key=key)
        if sweep_axis not in SWEEP_AXES:
            raise ConfigKeyError(
                f"sweep axis must be one of {', '.join(SWEEP_AXES)}; got {sweep_axis!r}",
                key="axis",
            )
        if not (math.isfinite(sweep["from"]) and math.isfinite(sweep["to"])):
            raise ConfigKeyError("sweep range must be finite", key="from")
        if sweep["count"] < 1:
            raise ConfigKeyError("sweep count must be at least 1", key="count")

    converter_side = command == "converter" or (
        command == "sweep" and sweep_axis in ("r_prefactor", "r_prime_prefactor")
    )
    defaults_omega = (
        schemes.DEFAULT_CONVERTER_OMEGA_MAX if converter_side
        else schemes.DEFAULT_DISCRIMINATOR_OMEGA_MAX
    )
    defaults_tau = (
        schemes.DEFAULT_CONVERTER_TAU if converter_side
        else schemes.DEFAULT_DISCRIMINATOR_TAU
    )

    sign_config = raw.get("sign_config", {})
    _expect(sign_config, {"r_sign": int, "r_prime_sign": int}, "sign_config")
    for key in sign_config:
        if sign_config[key] not in (-1, 1):
            raise ConfigKeyError(f"{key} must be +1 or -1", key=key)

    converter = raw.get("converter", {})
    _expect(converter, {"omega_max": float, "tau": float}, "converter")

    integrator = raw.get("integrator", {})
    _expect(
        integrator,
        {"method": str, "rel_tol": float, "abs_tol": float, "max_step": float,
         "sample_stride": float, "n_steps": int},
        "integrator",
    )

    enantiomer = raw.get("enantiomer", "L")
    if enantiomer not in ("L", "D"):
        raise ConfigKeyError("enantiomer must be 'L' or 'D'", key="enantiomer")

    workers = raw.get("workers", _default_workers())
    if workers < 1:
        raise ConfigKeyError("workers must be at least 1", key="workers")

    cfg = RunConfig(
        command=command,
        omega_max=float(raw.get("omega_max", defaults_omega)),
        tau=float(raw.get("tau", defaults_tau)),
        enantiomer=enantiomer,
        r_sign=sign_config.get("r_sign", 1),
        r_prime_sign=sign_config.get("r_prime_sign", 1),
        converter_omega_max=float(converter.get("omega_max", schemes.DEFAULT_CONVERTER_OMEGA_MAX)),
        converter_tau=float(converter.get("tau", schemes.DEFAULT_CONVERTER_TAU)),
        method=integrator.get("method", "adaptive"),
        rel_tol=float(integrator.get("rel_tol", 1e-10)),
        abs_tol=float(integrator.get("abs_tol", 1e-12)),
        max_step=(float(integrator["max_step"]) if "max_step" in integrator else None),
        sample_stride=(float(integrator["sample_stride"])
                       if "sample_stride" in integrator else None),
        n_steps=integrator.get("n_steps", 100_000),
        output=raw.get("output"),
        workers=workers,
        include_overlaps=raw.get("include_overlaps", False),
        gap_tol=(float(raw["gap_tol"]) if "gap_tol" in raw else None),
        sweep_axis=sweep_axis,
        sweep_from=(float(sweep["from"]) if "from" in sweep else None),
        sweep_to=(float(sweep["to"]) if "to" in sweep else None),
        sweep_count=sweep.get("count", 1),
    )
    _validate_config(cfg)
    return cfg


def _validate_config(cfg: RunConfig) -> None:
    checks = {
        "omega_max": cfg.omega_max > 0 and math.isfinite(cfg.omega_max),
        "tau": cfg.tau > 0 and math.isfinite(cfg.tau),
        "converter.omega_max": cfg.converter_omega_max > 0,
        "converter.tau": cfg.converter_tau > 0,
        "rel_tol": cfg.rel_tol > 0,
        "abs_tol": cfg.abs_tol > 0,
        "max_step": cfg.max_step is None or cfg.max_step > 0,
        "sample_stride": cfg.sample_stride is None or cfg.sample_stride > 0,
        "n_steps": cfg.n_steps >= 1,
        "gap_tol": cfg.gap_tol is None or cfg.gap_tol > 0,
    }
    for key, ok in checks.items():
        if not ok:
            raise ConfigKeyError(f"invalid value for {key}", key=key)


def emit_config(cfg: RunConfig) -> str:
    """Serialize a :class:`RunConfig` to canonical JSON text.

    ``parse_config(emit_config(cfg))`` reproduces ``cfg`` exactly.
    """
    payload: dict = {
        "command": cfg.command,
        "omega_max": cfg.omega_max,
        "tau": cfg.tau,
        "enantiomer": cfg.enantiomer,
        "sign_config": {"r_sign": cfg.r_sign, "r_prime_sign": cfg.r_prime_sign},
        "converter": {"omega_max": cfg.converter_omega_max, "tau": cfg.converter_tau},
        "integrator": {
            "method": cfg.method,
            "rel_tol": cfg.rel_tol,
            "abs_tol": cfg.abs_tol,
            "n_steps": cfg.n_steps,
        },
        "workers": cfg.workers,
        "include_overlaps": cfg.include_overlaps,
    }
    if cfg.max_step is not None:
        payload["integrator"]["max_step"] = cfg.max_step
    if cfg.sample_stride is not None:
        payload["integrator"]["sample_stride"] = cfg.sample_stride
    if cfg.output is not None:
        payload["output"] = cfg.output
    if cfg.gap_tol is not None:
        payload["gap_tol"] = cfg.gap_tol
    if cfg.sweep_axis is not None:
        payload["sweep"] = {
            "axis": cfg.sweep_axis,
            "from": cfg.sweep_from,
            "to": cfg.sweep_to,
            "count": cfg.sweep_count,
        }
    return json.dumps(payload, indent=2, sort_keys=True) + "\n"


def _default_workers() -> int:
    raw = os.environ.get(WORKERS_ENV_VAR)
    if raw is None:
        return 1
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


# ---------------------------------------------------------------------------
# trajectory / spectrum / sweep output
# ---------------------------------------------------------------------------

def emit_trajectory(traj: Trajectory, path, track: EigenTrack | None = None,
                    overlaps: np.ndarray | None = None) -> Path:
    """Write a trajectory (optionally with eigenvalue tracks and overlaps) as CSV.

    Columns: ``t_ns``, one ``p_<label>`` per level, then ``E_1..E_N`` (rad/ns)
    when a track is given and ``overlap_1..overlap_N`` when overlaps are
    given.  One row per sample, full precision scientific notation, UTF-8
    with LF line endings.
    """
    path = Path(path)
    header = ["t_ns"] + [f"p_{label}" for label in traj.labels]
    columns = [traj.times] + [traj.populations[:, i] for i in range(len(traj.labels))]
    if track is not None:
        if len(track.times) != len(traj.times) or not np.allclose(
            track.times, traj.times, rtol=0.0, atol=1e-9
        ):
            raise InvalidParameterError("trajectory and track are on different grids")
        for k in range(track.n_tracks):
            header.append(f"E_{k + 1}")
            columns.append(track.values[:, k])
    if overlaps is not None:
        overlaps = np.asarray(overlaps)
        if overlaps.shape != (len(traj.times), len(traj.labels)):
            raise InvalidParameterError("overlap array shape does not match the grid")
        for k in range(overlaps.shape[1]):
            header.append(f"overlap_{k + 1}")
            columns.append(overlaps[:, k])
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(",".join(header) + "\n")
        for row in zip(*columns):
            fh.write(",".join(FLOAT_FORMAT.format(x) for x in row) + "\n")
    return path


def _emit_spectrum(track: EigenTrack, path) -> Path:
    path = Path(path)
    header = ["t_ns"] + [f"E_{k + 1}" for k in range(track.n_tracks)]
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(",".join(header) + "\n")
        for i, t in enumerate(track.times):
            row = [t] + list(track.values[i])
            fh.write(",".join(FLOAT_FORMAT.format(x) for x in row) + "\n")
    return path


def _sweep_scheme_and_state(cfg: RunConfig, value: float) -> tuple[DriveScheme, StateVector]:
    axis = cfg.sweep_axis
    if axis == "phi":
        scheme = schemes.make_discriminator(cfg.omega_max, cfg.tau)
        pump12 = scheme.couplings[0]
        scheme = replace(
            scheme,
            couplings=(replace(pump12, static_phase=value % (2 * math.pi)),)
            + scheme.couplings[1:],
        )
        return scheme, StateVector.basis(scheme.labels, "1")
    if axis == "omega_max":
        scheme = schemes.make_discriminator(value, cfg.tau, cfg.enantiomer)
        return scheme, StateVector.basis(scheme.labels, "1")
    if axis == "tau":
        scheme = schemes.make_discriminator(cfg.omega_max, value, cfg.enantiomer)
        return scheme, StateVector.basis(scheme.labels, "1")
    if axis == "r_prefactor":
        prefactors = (1.0, value, 0.4, -1.0)
    elif axis == "r_prime_prefactor":
        prefactors = (1.0, 0.5, 0.4, value)
    else:
        raise InvalidParameterError(f"unknown sweep axis {axis!r}")
    scheme = schemes.make_converter(
        cfg.omega_max, cfg.tau, (cfg.r_sign, cfg.r_prime_sign), prefactors
    )
    return scheme, StateVector.basis(scheme.labels, "3L")


def _sweep_labels(cfg: RunConfig) -> tuple[str, ...]:
    if cfg.sweep_axis in ("r_prefactor", "r_prime_prefactor"):
        return schemes.CONVERTER_LABELS
    return schemes.DISCRIMINATOR_LABELS


def _sweep_point(cfg: RunConfig, value: float) -> dict:
    """One sweep row; failures are captured, not raised, so the sweep continues."""
    labels = _sweep_labels(cfg)
    try:
        scheme, c0 = _sweep_scheme_and_state(cfg, value)
        traj = propagate(scheme, c0, cfg.integrator_config())
        final = traj.final_populations
        argmax = max(final, key=final.get)
        return {
            "value": value,
            "status": "ok",
            "argmax": argmax,
            "fidelity": final[argmax],
            "norm_drift": traj.norm_drift,
            "populations": [final[label] for label in labels],
            "error": "",
        }
    except Exception as exc:  # recorded per-row; the sweep keeps going
        return {
            "value": value,
            "status": "error",
            "argmax": "",
            "fidelity": math.nan,
            "norm_drift": math.nan,
            "populations": [math.nan] * len(labels),
            "error": f"{type(exc).__name__}: {exc}",
        }


def run_sweep(cfg: RunConfig, path) -> Path:
    """Run a parameter sweep and write one CSV summary row per point.

    Points execute independently (in parallel when ``cfg.workers`` > 1) and
    rows are written in axis order regardless of completion order.
    """
    if cfg.sweep_axis is None or cfg.sweep_from is None or cfg.sweep_to is None:
        raise InvalidParameterError("sweep requires axis, from, to and count")
    values = np.linspace(cfg.sweep_from, cfg.sweep_to, cfg.sweep_count)
    if cfg.workers > 1:
        with ProcessPoolExecutor(max_workers=cfg.workers) as pool:
            rows = list(pool.map(_sweep_point, [cfg] * len(values), values))
    else:
        rows = [_sweep_point(cfg, v) for v in values]

    labels = _sweep_labels(cfg)
    path = Path(path)
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(
            ["axis", "value", "status", "argmax", "fidelity", "norm_drift"]
            + [f"p_{label}" for label in labels] + ["error"]
        )
        for row in rows:
            writer.writerow(
                [cfg.sweep_axis, FLOAT_FORMAT.format(row["value"]), row["status"],
                 row["argmax"], FLOAT_FORMAT.format(row["fidelity"]),
                 FLOAT_FORMAT.format(row["norm_drift"])]
                + [FLOAT_FORMAT.format(p) for p in row["populations"]]
                + [row["error"]]
            )
    return path


# ---------------------------------------------------------------------------
# command dispatch
# ---------------------------------------------------------------------------

def _default_output(cfg: RunConfig) -> str:
    if cfg.output is not None:
        return cfg.output
    stem = cfg.command.replace("-", "_")
    return f"{stem}.json" if cfg.command == "two-step" else f"{stem}.csv"


def _cmd_discriminator(cfg: RunConfig) -> int:
    scheme = schemes.make_discriminator(cfg.omega_max, cfg.tau, cfg.enantiomer)
    traj = propagate(scheme, StateVector.basis(scheme.labels, "1"), cfg.integrator_config())
    track = instantaneous_spectrum(scheme, traj.times)
    overlaps = adiabatic_overlap(traj, track) if cfg.include_overlaps else None
    out = emit_trajectory(traj, _default_output(cfg), track, overlaps)
    _print_final(traj)
    print(f"wrote {out}")
    return 0


def _cmd_converter(cfg: RunConfig) -> int:
    scheme = schemes.make_converter(cfg.omega_max, cfg.tau, (cfg.r_sign, cfg.r_prime_sign))
    traj = propagate(scheme, StateVector.basis(scheme.labels, "3L"), cfg.integrator_config())
    track = instantaneous_spectrum(scheme, traj.times)
    overlaps = adiabatic_overlap(traj, track) if cfg.include_overlaps else None
    out = emit_trajectory(traj, _default_output(cfg), track, overlaps)
    _print_final(traj)
    print(f"wrote {out}")
    return 0


def _cmd_spectrum(cfg: RunConfig) -> int:
    scheme = schemes.make_discriminator(cfg.omega_max, cfg.tau, cfg.enantiomer)
    track = instantaneous_spectrum(scheme, sample_times(scheme, cfg.sample_stride))
    gap_tol = cfg.gap_tol if cfg.gap_tol is not None else 0.01 * cfg.omega_max
    crossings = detect_crossings(track, gap_tol)
    out = _emit_spectrum(track, _default_output(cfg))
    if crossings:
        for c in crossings:
            print(f"crossing: t={c.time:.4f} ns tracks={c.tracks} gap={c.gap:.3e} rad/ns")
    else:
        print(f"no crossings below gap tolerance {gap_tol:g} rad/ns")
    print(f"wrote {out}")
    return 0


def _cmd_two_step(cfg: RunConfig) -> int:
    result = schemes.run_two_step(
        cfg.omega_max, cfg.tau, cfg.converter_omega_max, cfg.converter_tau,
        cfg.integrator_config(),
    )
    payload = {
        "excited_enantiomer": result.excited_enantiomer,
        "target_enantiomer": result.target_enantiomer,
        "discrimination_fidelity": result.discrimination_fidelity,
        "conversion_fidelity": result.conversion_fidelity,
        "enantiomeric_excess": result.enantiomeric_excess,
        "initial_populations": result.initial_populations,
        "final_populations": result.final_populations,
    }
    out = Path(_default_output(cfg))
    with open(out, "w", encoding="utf-8", newline="\n") as fh:
        json.dump(payload, fh, indent=2, sort_keys=True)
        fh.write("\n")
    print(
        f"excited={result.excited_enantiomer} target={result.target_enantiomer} "
        f"ee={result.enantiomeric_excess:.6f}"
    )
    print(f"wrote {out}")
    return 0


def _cmd_sweep(cfg: RunConfig) -> int:
    out = run_sweep(cfg, _default_output(cfg))
    print(f"wrote {out} ({cfg.sweep_count} rows)")
    return 0


def _print_final(traj: Trajectory) -> None:
    parts = [f"{label}={p:.6f}" for label, p in traj.final_populations.items()]
    print("final populations: " + " ".join(parts))


_DISPATCH = {
    "discriminator": _cmd_discriminator,
    "converter": _cmd_converter,
    "spectrum": _cmd_spectrum,
    "two-step": _cmd_two_step,
    "sweep": _cmd_sweep,
}


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="enantioswitch",
        description="Simulate the two-stage enantio-selective optical switch.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        p = sub.add_parser(name, help=f"run the {name} command")
        p.add_argument("--config", type=str, default=None, help="JSON config file")
        p.add_argument("--out", type=str, default=None, help="output file path")
        p.add_argument("--omega-max", type=float, default=None, help="peak Rabi rate, rad/ns")
        p.add_argument("--tau", type=float, default=None, help="pulse width, ns")
        p.add_argument("--enantiomer", choices=("L", "D"), default=None)
        p.add_argument("--rel-tol", type=float, default=None, help="integrator relative tolerance")
        p.add_argument("--workers", type=int, default=None, help="parallel sweep workers")
        if name in ("converter", "sweep"):
            p.add_argument("--r-sign", type=int, choices=(-1, 1), default=None)
            p.add_argument("--r-prime-sign", type=int, choices=(-1, 1), default=None)
        if name in ("discriminator", "converter"):
            p.add_argument("--overlaps", action="store_true",
                           help="add adiabatic overlap columns")
        if name == "spectrum":
            p.add_argument("--gap-tol", type=float, default=None,
                           help="crossing gap tolerance, rad/ns")
        if name == "sweep":
            p.add_argument("--axis", choices=SWEEP_AXES, default=None)
            p.add_argument("--from", dest="sweep_from", type=float, default=None)
            p.add_argument("--to", dest="sweep_to", type=float, default=None)
            p.add_argument("--count", type=int, default=None)
    return parser


def _config_from_args(args: argparse.Namespace) -> RunConfig:
    if args.config is not None:
        text = Path(args.config).read_text(encoding="utf-8")
        base = parse_config(text)
        if base.command != args.command:
            raise ConfigKeyError(
                f"config file is for command {base.command!r}, "
                f"but {args.command!r} was requested",
                key="command",
            )
    else:
        # synthesize a minimal config so per-command defaults apply uniformly
        minimal: dict = {"command": args.command}
        if args.command == "sweep":
            if args.axis is None or args.sweep_from is None or args.sweep_to is None \
                    or args.count is None:
                raise ConfigKeyError(
                    "sweep needs --axis, --from, --to and --count (or a config file)",
                    key="axis",
                )
            minimal["sweep"] = {
                "axis": args.axis, "from": args.sweep_from,
                "to": args.sweep_to, "count": args.count,
            }
        base = parse_config(json.dumps(minimal))

    overrides: dict = {}
    if args.out is not None:
        overrides["output"] = args.out
    if args.omega_max is not None:
        overrides["omega_max"] = args.omega_max
    if args.tau is not None:
        overrides["tau"] = args.tau
    if args.enantiomer is not None:
        overrides["enantiomer"] = args.enantiomer
    if args.rel_tol is not None:
        overrides["rel_tol"] = args.rel_tol
    if args.workers is not None:
        overrides["workers"] = args.workers
    if getattr(args, "r_sign", None) is not None:
        overrides["r_sign"] = args.r_sign
    if getattr(args, "r_prime_sign", None) is not None:
        overrides["r_prime_sign"] = args.r_prime_sign
    if getattr(args, "overlaps", False):
        overrides["include_overlaps"] = True
    if getattr(args, "gap_tol", None) is not None:
        overrides["gap_tol"] = args.gap_tol
    if args.command == "sweep" and args.config is not None:
        for attr, field_name in (("axis", "sweep_axis"), ("sweep_from", "sweep_from"),
                                 ("sweep_to", "sweep_to"), ("count", "sweep_count")):
            value = getattr(args, attr, None)
            if value is not None:
                overrides[field_name] = value
    cfg = replace(base, **overrides) if overrides else base
    _validate_config(cfg)
    return cfg


def main(argv=None) -> int:
    """CLI entry point; returns 0 on success, 1/2 with a machine-parsable error line."""
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = _config_from_args(args)
        return _DISPATCH[cfg.command](cfg)
    except (ConfigError, InvalidParameterError) as exc:
        print(f"error[{type(exc).__name__}]: {exc}", file=sys.stderr)
        return 2
    except (EnantioSwitchError, OSError) as exc:
        print(f"error[{type(exc).__name__}]: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
