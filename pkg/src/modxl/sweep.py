"""Parameter sweeps and the figure presets of the numerical study.

A :class:`SweepSpec` varies one parameter over a grid and evaluates a list
of model series at every point.  A series is a model tag, optionally with
its own user direction or configuration overrides, so that a single table
can hold e.g. modular and collocated curves for two user directions.
"""

from __future__ import annotations

import csv
import enum
import io
import json
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field

import numpy as np

from .channel import LinkBudget
from .closedform import ModelTag, evaluate
from .geometry import ArrayConfig, ConfigError, UserLocation

CSV_HEADER = ("variable", "value", "model", "snr_linear", "snr_db")
NOT_AVAILABLE = "n/a"


class SweepVariable(enum.Enum):
    MODULES_Z = "modules_z"
    MODULES_Y = "modules_y"
    MODULES_BOTH = "modules_both"
    ZENITH = "zenith_rad"
    MODULE_SEPARATION = "separation_mult"
    DISTANCE = "distance_m"
    TOTAL_ELEMENTS_1D = "total_elements"


@dataclass(frozen=True)
class Series:
    """One curve of a sweep.

    ``direction`` is an optional ``(theta, phi)`` pair in radians replacing
    the base direction; ``overrides`` replaces :class:`ArrayConfig` fields
    before the swept variable is applied.
    """

    model: ModelTag
    label: str | None = None
    direction: tuple[float, float] | None = None
    overrides: tuple[tuple[str, int | float], ...] = ()

    @property
    def name(self) -> str:
        return self.label or self.model.value


@dataclass(frozen=True)
class SweepSpec:
    base_config: ArrayConfig
    base_location: UserLocation
    budget: LinkBudget
    variable: SweepVariable
    grid: tuple[float, ...]
    models: tuple[Series, ...]

    def __post_init__(self) -> None:
        grid = tuple(float(v) for v in self.grid)
        if not grid:
            raise ConfigError("sweep grid is empty")
        steps = np.diff(grid)
        if not (np.all(steps > 0) or np.all(steps < 0)):
            raise ConfigError("sweep grid must be strictly monotone")
        models = tuple(m if isinstance(m, Series) else Series(ModelTag(m)) for m in self.models)
        if not models:
            raise ConfigError("sweep needs at least one model")
        names = [m.name for m in models]
        if len(set(names)) != len(names):
            raise ConfigError(f"series labels must be unique, got {names}")
        object.__setattr__(self, "grid", grid)
        object.__setattr__(self, "models", models)


@dataclass(frozen=True)
class SweepRow:
    variable: str
    value: float
    model: str
    snr_linear: float | None
    snr_db: float | None
    note: str | None = None

    @property
    def available(self) -> bool:
        return self.snr_linear is not None


@dataclass
class SweepTable:
    rows: list[SweepRow]
    provenance: dict = field(default_factory=dict)

    def column(self, model: str) -> tuple[np.ndarray, np.ndarray]:
        """``(values, snr_linear)`` of one series; unavailable points are NaN."""
        sel = [r for r in self.rows if r.model == model]
        if not sel:
            raise KeyError(model)
        vals = np.array([r.value for r in sel])
        snr = np.array([r.snr_linear if r.available else math.nan for r in sel])
        return vals, snr

    def to_csv(self, provenance: bool = True) -> str:
        buf = io.StringIO()
        if provenance and self.provenance:
            buf.write("# " + json.dumps(self.provenance, sort_keys=True) + "\n")
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(CSV_HEADER)
        for row in self.rows:
            writer.writerow([row.variable, _fmt(row.value), row.model,
                             _fmt(row.snr_linear), _fmt(row.snr_db)])
        return buf.getvalue()


def _fmt(x: float | None) -> str:
    if x is None:
        return NOT_AVAILABLE
    if math.isinf(x):
        return "-inf" if x < 0 else "inf"
    return format(x, ".12g")


def _point(spec: SweepSpec, series: Series, value: float) -> tuple[ArrayConfig, UserLocation]:
    cfg = spec.base_config
    if series.overrides:
        cfg = cfg.with_(**dict(series.overrides))
    loc = spec.base_location
    if series.direction is not None:
        loc = loc.with_(theta=series.direction[0], phi=series.direction[1])

    var = spec.variable
    if var is SweepVariable.MODULES_Z:
        cfg = cfg.with_(modules_z=_count(value))
    elif var is SweepVariable.MODULES_Y:
        cfg = cfg.with_(modules_y=_count(value))
    elif var is SweepVariable.MODULES_BOTH:
        cfg = cfg.with_(modules_y=_count(value), modules_z=_count(value))
    elif var is SweepVariable.ZENITH:
        loc = loc.with_(theta=value)
    elif var is SweepVariable.MODULE_SEPARATION:
        cfg = cfg.with_(spacing_mult_y=_count(value), spacing_mult_z=_count(value))
    elif var is SweepVariable.DISTANCE:
        loc = loc.with_(r=value)
    elif var is SweepVariable.TOTAL_ELEMENTS_1D:
        M = cfg.elements_per_module
        if value % M:
            raise ConfigError(f"total element count {value:g} is not a multiple of M={M}")
        cfg = cfg.with_(modules_y=1, modules_z=_count(value / M))
    return cfg, loc


def _count(value: float) -> int:
    if value != round(value) or value < 1:
        raise ConfigError(f"count must be a positive integer, got {value:g}")
    return int(round(value))


def _evaluate_row(spec: SweepSpec, value: float, series: Series) -> SweepRow:
    name = spec.variable.value
    try:
        cfg, loc = _point(spec, series, value)
        snr = evaluate(series.model, cfg, loc, spec.budget)
    except ValueError as exc:  # precondition violated at this point
        return SweepRow(name, value, series.name, None, None, str(exc))
    return SweepRow(name, value, series.name, snr.linear, snr.db, snr.warning)


def _provenance(spec: SweepSpec) -> dict:
    return {
        "variable": spec.variable.value,
        "config": asdict(spec.base_config),
        "location": asdict(spec.base_location),
        "budget": asdict(spec.budget),
        "series": [{"name": s.name, "model": s.model.value,
                    "direction": list(s.direction) if s.direction else None,
                    "overrides": dict(s.overrides)} for s in spec.models],
    }


def run_sweep(spec: SweepSpec, workers: int = 1) -> SweepTable:
    """Evaluate every ``(grid value, series)`` pair.

    Rows are in grid-major order.  Points whose model preconditions fail
    become rows without a value instead of raising.  ``workers > 1``
    evaluates points on a thread pool; the table is identical either way.
    """
    tasks = [(value, series) for value in spec.grid for series in spec.models]
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(lambda t: _evaluate_row(spec, *t), tasks))
    else:
        rows = [_evaluate_row(spec, v, s) for v, s in tasks]
    return SweepTable(rows, _provenance(spec))


# -- figure presets -----------------------------------------------------------

FIGURES = ("fig5a", "fig5b", "fig6", "fig7", "fig8", "fig9", "fig10")


def _deg(theta: float, phi: float) -> tuple[float, float]:
    return math.radians(theta), math.radians(phi)


def _module_grid() -> tuple[float, ...]:
    # every count up to 129 (dense enough to compare sum and closed form),
    # then a sparse tail showing the saturation
    return tuple(range(1, 130)) + (160, 200, 256, 320, 400, 512)


def _odd_log_grid(lo: int, hi: int, n: int) -> tuple[float, ...]:
    vals = sorted({int(v) | 1 for v in np.geomspace(lo, hi, n)})
    return tuple(float(v) for v in vals)


def figure_preset(name: str) -> SweepSpec:
    """Sweep reproducing one figure of the numerical study.

    Defaults: M = 9, Ny = Nz = 64, Ky = Kz = 10, d = 0.0628 m, 2.38 GHz,
    e = 1 with isotropic elements, P = 90 dB, r = 25 m and user direction
    (60 deg, 30 deg) unless the figure states otherwise.
    """
    cfg = ArrayConfig.reference()
    loc = UserLocation.from_degrees(25.0, 60.0, 30.0)
    budget = LinkBudget.reference()
    T = ModelTag

    if name == "fig5a":
        return SweepSpec(cfg, loc, budget, SweepVariable.MODULES_Z, _module_grid(),
                         (Series(T.NUSW_SUM), Series(T.NUSW_CLOSED), Series(T.UPW_PROJECTED),
                          Series(T.UPW_CONVENTIONAL), Series(T.LIMIT_NZ),
                          Series(T.LIMIT_ISOTROPIC)))
    if name == "fig5b":
        return SweepSpec(cfg, loc, budget, SweepVariable.MODULES_Y, _module_grid(),
                         (Series(T.NUSW_SUM), Series(T.NUSW_CLOSED), Series(T.UPW_PROJECTED),
                          Series(T.UPW_CONVENTIONAL), Series(T.LIMIT_NY),
                          Series(T.LIMIT_ISOTROPIC)))
    if name == "fig6":
        grid = tuple(math.radians(t) for t in range(0, 181, 2))
        return SweepSpec(cfg, loc, budget, SweepVariable.ZENITH, grid,
                         (Series(T.NUSW_SUM), Series(T.NUSW_CLOSED), Series(T.UPW_PROJECTED),
                          Series(T.UPW_CONVENTIONAL)))
    if name == "fig7":
        series = []
        for theta in (30, 120):
            for tag in (T.NUSW_CLOSED, T.UPW_PROJECTED, T.UPW_CONVENTIONAL):
                series.append(Series(tag, f"{tag.value}@theta={theta}", _deg(theta, 30)))
        return SweepSpec(cfg, loc, budget, SweepVariable.MODULE_SEPARATION,
                         tuple(range(1, 41)), tuple(series))
    if name in ("fig8", "fig9"):
        collocated = (("spacing_mult_y", 1), ("spacing_mult_z", 1))
        series = []
        for theta, phi in ((30, 60), (45, 45)):
            tag = f"theta={theta},phi={phi}"
            series.append(Series(T.NUSW_CLOSED, f"modular@{tag}", _deg(theta, phi)))
            series.append(Series(T.COLLOCATED, f"collocated@{tag}", _deg(theta, phi), collocated))
        if name == "fig8":
            series.append(Series(T.LIMIT_BOTH, "modular-limit"))
            series.append(Series(T.LIMIT_BOTH, "collocated-limit", None, collocated))
            return SweepSpec(cfg, loc, budget, SweepVariable.MODULES_BOTH,
                             _odd_log_grid(1, 20001, 60), tuple(series))
        series.append(Series(T.BORESIGHT, "modular-boresight"))
        grid = tuple(float(f"{v:.6g}") for v in np.geomspace(2.0, 2000.0, 61))
        return SweepSpec(cfg, loc, budget, SweepVariable.DISTANCE, grid, tuple(series))
    if name == "fig10":
        ula = cfg.with_(modules_y=1, spacing_mult_y=1)
        grid = tuple(float(n * ula.elements_per_module) for n in _odd_log_grid(1, 40001, 60))
        return SweepSpec(ula, loc, budget, SweepVariable.TOTAL_ELEMENTS_1D, grid,
                         (Series(T.ULA_CLOSED), Series(T.ULA_UPW), Series(T.UPW_CONVENTIONAL),
                          Series(T.ULA_LIMIT)))
    raise ConfigError(f"unknown figure preset {name!r}; choose from {', '.join(FIGURES)}")
