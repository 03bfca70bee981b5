"""Self-checks run by ``modxl validate``.

Each check compares a closed form with the exact element sum or with the
limit it should degenerate to, at configurations where the integral
approximation is expected to hold.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

from .channel import LinkBudget, snr_mrc_exact
from .closedform import (
    LimitCase,
    collocated_modular_ratio,
    snr_closed,
    snr_collocated,
    snr_limit,
    snr_limit_collocated,
    snr_ula_closed,
    snr_upw,
)
from .geometry import ArrayConfig, UserLocation, derive_geometry

REL_TOL = 0.01


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str

    def line(self) -> str:
        return f"{'PASS' if self.passed else 'FAIL'} {self.name}: {self.detail}"


def _rel(a: float, b: float) -> float:
    return abs(a - b) / abs(b)


def check_closed_vs_sum() -> CheckResult:
    cfg, budget = ArrayConfig.reference(), LinkBudget.reference()
    loc = UserLocation.from_degrees(25.0, 60.0, 30.0)
    worst = 0.0
    for nz in (1, 2, 9, 33, 64, 129):
        for ny in (1, 64):
            c = cfg.with_(modules_y=ny, modules_z=nz)
            worst = max(worst, _rel(snr_closed(c, loc, budget).linear, snr_mrc_exact(c, loc, budget)))
    return CheckResult("closed-vs-sum", worst < REL_TOL, f"worst relative gap {worst:.3e}")


def check_collocated() -> CheckResult:
    cfg = ArrayConfig.reference().with_(spacing_mult_y=1, spacing_mult_z=1)
    budget = LinkBudget.reference()
    r = cfg.element_spacing / 1e-3
    worst = 0.0
    for theta in (30.0, 60.0, 90.0, 120.0, 150.0):
        for phi in (-60.0, 0.0, 45.0):
            loc = UserLocation.from_degrees(r, theta, phi)
            worst = max(worst, _rel(snr_collocated(cfg, loc, budget).linear,
                                    snr_closed(cfg, loc, budget).linear))
    return CheckResult("collocated-degeneration", worst < REL_TOL, f"worst relative gap {worst:.3e}")


def check_ula() -> CheckResult:
    cfg = ArrayConfig.reference().with_(modules_y=1, spacing_mult_y=1)
    budget = LinkBudget.reference()
    r = cfg.element_spacing / 1e-3
    worst = 0.0
    for theta in (15.0, 45.0, 90.0, 135.0, 165.0):
        loc = UserLocation.from_degrees(r, theta, 30.0)
        worst = max(worst, _rel(snr_ula_closed(cfg, loc, budget)[0].linear,
                                snr_closed(cfg, loc, budget).linear))
    return CheckResult("ula-degeneration", worst < REL_TOL, f"worst relative gap {worst:.3e}")


def check_limits() -> CheckResult:
    cfg, budget = ArrayConfig.reference(), LinkBudget.reference()
    loc = UserLocation.from_degrees(25.0, 60.0, 30.0)
    gaps = {}
    for case, grow in ((LimitCase.NZ_INF, {"modules_z": 100_001}),
                       (LimitCase.NY_INF, {"modules_y": 100_001}),
                       (LimitCase.BOTH_INF, {"modules_y": 100_001, "modules_z": 100_001})):
        limit = snr_limit(cfg, loc, budget, case).linear
        gaps[case.value] = _rel(snr_closed(cfg.with_(**grow), loc, budget).linear, limit)
    ok = all(g < REL_TOL for g in gaps.values())
    detail = ", ".join(f"{k}: {v:.2e}" for k, v in gaps.items())
    return CheckResult("limit-convergence", ok, detail)


def check_far_field() -> CheckResult:
    cfg, budget = ArrayConfig.reference(), LinkBudget.reference()
    g = derive_geometry(cfg)
    probe = UserLocation.from_degrees(1.0, 60.0, 30.0)
    loc = probe.with_(r=100 * max(g.Lt_y, g.Lt_z) / probe.cos_x)
    gap = _rel(snr_closed(cfg, loc, budget).linear, snr_upw(cfg, loc, budget).linear)
    return CheckResult("far-field", gap < REL_TOL, f"relative gap to projected UPW {gap:.3e}")


def check_architecture_gap() -> CheckResult:
    cfg, budget = ArrayConfig.reference(), LinkBudget.reference()
    ratio = snr_limit_collocated(cfg, budget).linear / snr_limit(cfg, None, budget, LimitCase.BOTH_INF).linear
    gamma = collocated_modular_ratio(cfg)
    ok = abs(ratio - gamma) <= 1e-9 * gamma
    return CheckResult("architecture-gap", ok,
                       f"collocated/modular limit {10 * math.log10(ratio):.3f} dB, "
                       f"ratio formula {10 * math.log10(gamma):.3f} dB")


CHECKS: tuple[Callable[[], CheckResult], ...] = (
    check_closed_vs_sum,
    check_collocated,
    check_ula,
    check_limits,
    check_far_field,
    check_architecture_gap,
)


def run_checks() -> list[CheckResult]:
    results = []
    for check in CHECKS:
        try:
            results.append(check())
        except (ValueError, ArithmeticError) as exc:
            results.append(CheckResult(check.__name__.removeprefix("check_"), False, str(exc)))
    return results
