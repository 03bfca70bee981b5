"""Command-line interface.

Subcommands::

    modxl snr       one evaluation of one model
    modxl sweep     sweep one parameter, write CSV
    modxl figure    run a figure preset, write CSV
    modxl validate  closed form vs. exact sum and degeneration checks

Angles are given in degrees and the transmit SNR in dB; everything is
converted to radians / linear once, here.  A JSON config file with flat keys
named like the flags (``"pbar-db"`` or ``"pbar_db"``) supplies defaults that
explicit flags override.

Exit status: 0 success, 2 input or I/O error, 3 validation failure.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from dataclasses import asdict, dataclass, fields, replace

from .channel import LinkBudget
from .closedform import ModelTag, evaluate
from .geometry import (
    REFERENCE_FREQUENCY_HZ,
    REFERENCE_SPACING,
    ArrayConfig,
    UserLocation,
    isotropic_area,
    wavelength_from_frequency,
)
from .sweep import FIGURES, Series, SweepSpec, SweepVariable, figure_preset, run_sweep
from .validation import run_checks

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_VALIDATION = 3

SWEEP_VARIABLES = {
    "modules-z": SweepVariable.MODULES_Z,
    "modules-y": SweepVariable.MODULES_Y,
    "modules-both": SweepVariable.MODULES_BOTH,
    "zenith": SweepVariable.ZENITH,
    "separation": SweepVariable.MODULE_SEPARATION,
    "distance": SweepVariable.DISTANCE,
    "total-elements-1d": SweepVariable.TOTAL_ELEMENTS_1D,
}


@dataclass(frozen=True)
class RunConfig:
    """Scenario in human units (metres, GHz, degrees, dB).

    ``area`` defaults to the isotropic element area ``lambda^2 / (4 pi e)``
    and ``beta0`` to ``(lambda / 4 pi)^2``.
    """

    M: int = 9
    Ny: int = 64
    Nz: int = 64
    Ky: int = 10
    Kz: int = 10
    d: float = REFERENCE_SPACING
    freq_ghz: float = REFERENCE_FREQUENCY_HZ / 1e9
    efficiency: float = 1.0
    area: float | None = None
    r: float = 25.0
    theta: float = 60.0
    phi: float = 30.0
    pbar_db: float = 90.0
    beta0: float | None = None
    model: str = ModelTag.NUSW_CLOSED.value

    @classmethod
    def from_mapping(cls, data: dict) -> RunConfig:
        known = {f.name for f in fields(cls)}
        values = {}
        for key, value in data.items():
            name = key.replace("-", "_")
            if name not in known:
                raise ValueError(f"unknown config key {key!r}")
            values[name] = value
        return cls(**values)

    def to_json(self) -> str:
        return json.dumps(asdict(self), indent=2, sort_keys=True)

    def array_config(self) -> ArrayConfig:
        lam = wavelength_from_frequency(self.freq_ghz * 1e9)
        area = self.area if self.area is not None else isotropic_area(lam, self.efficiency)
        return ArrayConfig(
            elements_per_module=self.M, modules_y=self.Ny, modules_z=self.Nz,
            spacing_mult_y=self.Ky, spacing_mult_z=self.Kz, element_spacing=self.d,
            element_area=area, aperture_efficiency=self.efficiency, wavelength=lam)

    def location(self) -> UserLocation:
        return UserLocation.from_degrees(self.r, self.theta, self.phi)

    def budget(self) -> LinkBudget:
        return LinkBudget.from_db(self.pbar_db, self.beta0)


def _scenario_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--config", help="JSON file with flat keys named like the flags")
    p.add_argument("--M", type=int, help="elements per module (default 9)")
    p.add_argument("--Ny", type=int, help="modules along y (default 64)")
    p.add_argument("--Nz", type=int, help="modules along z (default 64)")
    p.add_argument("--Ky", type=int, help="y module separation in units of d (default 10)")
    p.add_argument("--Kz", type=int, help="z module separation in units of d (default 10)")
    p.add_argument("--d", type=float, help="element spacing in m (default 0.0628)")
    p.add_argument("--freq-ghz", type=float, help="carrier frequency in GHz (default 2.38)")
    p.add_argument("--efficiency", type=float, help="aperture efficiency e (default 1)")
    p.add_argument("--area", type=float, help="element area in m^2 (default isotropic)")
    p.add_argument("--r", type=float, help="user distance in m (default 25)")
    p.add_argument("--theta", type=float, help="zenith angle in degrees (default 60)")
    p.add_argument("--phi", type=float, help="azimuth angle in degrees (default 30)")
    p.add_argument("--pbar-db", type=float, help="transmit SNR in dB (default 90)")
    p.add_argument("--beta0", type=float, help="1 m reference gain, linear (default (lambda/4pi)^2)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="modxl", description=__doc__.split("\n\n")[0])
    sub = parser.add_subparsers(dest="command", required=True)
    models = [m.value for m in ModelTag]

    p = sub.add_parser("snr", help="evaluate one model at one point")
    _scenario_flags(p)
    p.add_argument("--model", choices=models)

    p = sub.add_parser("sweep", help="sweep one parameter and write CSV")
    _scenario_flags(p)
    p.add_argument("--variable", required=True, choices=sorted(SWEEP_VARIABLES))
    p.add_argument("--grid", required=True,
                   help="comma-separated values, or start:stop:step (inclusive); "
                        "zenith in degrees")
    p.add_argument("--models", default="nusw-sum,nusw-closed",
                   help="comma-separated model tags")
    p.add_argument("--out", help="output CSV (default stdout)")
    p.add_argument("--workers", type=int, default=1)

    p = sub.add_parser("figure", help="run a figure preset and write CSV")
    p.add_argument("name", choices=FIGURES)
    p.add_argument("--out", help="output CSV (default stdout)")
    p.add_argument("--workers", type=int, default=1)

    sub.add_parser("validate", help="run the closed-form self-checks")
    return parser


def _load_run_config(args: argparse.Namespace) -> RunConfig:
    run = RunConfig()
    if args.config:
        with open(args.config, encoding="utf-8") as fh:
            data = json.load(fh)
        if not isinstance(data, dict):
            raise ValueError(f"{args.config}: expected a JSON object")
        run = RunConfig.from_mapping({**asdict(run), **data})
    overrides = {f.name: getattr(args, f.name) for f in fields(RunConfig)
                 if getattr(args, f.name, None) is not None}
    return replace(run, **overrides)


def parse_grid(text: str) -> tuple[float, ...]:
    text = text.strip()
    if ":" in text:
        parts = [float(x) for x in text.split(":")]
        if len(parts) != 3 or parts[2] <= 0:
            raise ValueError(f"range grid must be start:stop:step with step > 0, got {text!r}")
        start, stop, step = parts
        n = int(math.floor((stop - start) / step + 1e-9)) + 1
        return tuple(start + i * step for i in range(max(n, 0)))
    return tuple(float(x) for x in text.split(",") if x.strip())


def _write(text: str, out: str | None) -> None:
    if out:
        with open(out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _cmd_snr(args: argparse.Namespace) -> int:
    run = _load_run_config(args)
    value = evaluate(ModelTag(run.model), run.array_config(), run.location(), run.budget())
    if value.warning:
        print(f"warning: {value.warning}", file=sys.stderr)
    print(f"model={value.model.value} snr_linear={value.linear:.12g} snr_db={value.db:.4f}")
    return EXIT_OK


def _cmd_sweep(args: argparse.Namespace) -> int:
    run = _load_run_config(args)
    variable = SWEEP_VARIABLES[args.variable]
    grid = parse_grid(args.grid)
    if variable is SweepVariable.ZENITH:
        grid = tuple(math.radians(v) for v in grid)
    models = tuple(Series(ModelTag(m.strip())) for m in args.models.split(",") if m.strip())
    spec = SweepSpec(run.array_config(), run.location(), run.budget(), variable, grid, models)
    _write(run_sweep(spec, workers=args.workers).to_csv(), args.out)
    return EXIT_OK


def _cmd_figure(args: argparse.Namespace) -> int:
    table = run_sweep(figure_preset(args.name), workers=args.workers)
    _write(table.to_csv(), args.out)
    return EXIT_OK


def _cmd_validate(args: argparse.Namespace) -> int:
    results = run_checks()
    for res in results:
        print(res.line())
    return EXIT_OK if all(r.passed for r in results) else EXIT_VALIDATION


COMMANDS = {"snr": _cmd_snr, "sweep": _cmd_sweep, "figure": _cmd_figure, "validate": _cmd_validate}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse reports usage errors with status 2
        return int(exc.code or 0)
    try:
        return COMMANDS[args.command](args)
    except (ValueError, TypeError) as exc:
        print(f"modxl: error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except OSError as exc:
        print(f"modxl: error: {exc.filename or ''}: {exc.strerror or exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
