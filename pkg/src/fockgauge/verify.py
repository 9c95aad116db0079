"""Brute-force oracles: random-ensemble sweeps, calibration audit, figure data.

The sweep is the package's own adversary: seeded random pure and mixed states
are pushed through the full moment/ellipse/gauge pipeline and every inequality
is tallied for violations.  A passing sweep means zero violations at the
configured slack tolerances.  Runs are deterministic: per-state seeds derive
from (seed, index), and serialized reports are byte-stable.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .errors import CalibrationError, SchemaError
from .gauges import C_LAMBDA_PLUS, C_TRACE, full_report, tight_bound
from .moments import ellipse, summarize
from .states import approx_strong_field, coherent, random_state

DEFAULT_TOLERANCES = {
    "tight_scan": 1e-9,
    "closed_form_agreement": 1e-9,  # relative: |closed - scan| / (1 + scan)
    "canonical_pair_x": 1e-9,
    "canonical_pair_p": 1e-9,
    "covariance_floor": 1e-9,
    "uncertainty_area": 1e-9,
    "second_order_floor": 1e-9,
    "relaxed_lambda_plus": 1e-9,
    "relaxed_trace": 1e-9,
    "hierarchy": 1e-10,
    "hyperboloid_surface": 1e-10,
}

CALIBRATION_ANCHORS = (0.5 + 0.0j, 1.0 + 0.0j, 2.0 + 0.0j, 1.0 + 2.0j)
ANCHOR_AGREEMENT_TOL = 1e-8

FIGURE_NAMES = ("fig2", "fig3", "fig4")
MIN_RESOLUTION, MAX_RESOLUTION = 16, 2048


@dataclass(frozen=True)
class SweepConfig:
    n_pure: int
    n_mixed: int
    cutoff: int
    rank: int = 1
    seed: int = 0
    tolerances: dict = field(default_factory=dict)

    def __post_init__(self) -> None:
        if self.n_pure < 0 or self.n_mixed < 0:
            raise ValueError("state counts must be non-negative")
        if not 0 <= self.cutoff <= 256:
            raise ValueError("sweep cutoff must lie in [0, 256]")
        unknown = set(self.tolerances) - set(DEFAULT_TOLERANCES)
        if unknown:
            raise ValueError(f"unknown tolerance keys: {', '.join(sorted(unknown))}")

    def tolerance(self, name: str) -> float:
        return self.tolerances.get(name, DEFAULT_TOLERANCES[name])


def sweep_config_from_dict(data: dict) -> SweepConfig:
    """Parse a sweep configuration JSON object."""
    if not isinstance(data, dict):
        raise SchemaError("sweep config must be a JSON object")
    allowed = {"n_pure", "n_mixed", "cutoff", "rank", "seed", "tolerances"}
    extra = set(data) - allowed
    if extra:
        raise SchemaError(f"unknown sweep config fields: {', '.join(sorted(extra))}")
    missing = {"n_pure", "n_mixed", "cutoff"} - set(data)
    if missing:
        raise SchemaError(f"sweep config is missing fields: {', '.join(sorted(missing))}")
    for name in ("n_pure", "n_mixed", "cutoff", "rank", "seed"):
        if name in data and (isinstance(data[name], bool) or not isinstance(data[name], int)):
            raise SchemaError(f'field "{name}" must be an integer')
    tolerances = data.get("tolerances", {})
    if not isinstance(tolerances, dict):
        raise SchemaError('field "tolerances" must be an object')
    try:
        return SweepConfig(
            n_pure=data["n_pure"],
            n_mixed=data["n_mixed"],
            cutoff=data["cutoff"],
            rank=data.get("rank", 1),
            seed=data.get("seed", 0),
            tolerances=dict(tolerances),
        )
    except ValueError as exc:
        raise SchemaError(str(exc)) from exc


class _Tally:
    __slots__ = ("checked", "violations", "worst_slack", "worst_seed_index")

    def __init__(self) -> None:
        self.checked = 0
        self.violations = 0
        self.worst_slack = math.inf
        self.worst_seed_index: Optional[int] = None

    def update(self, slack: float, index: int, tolerance: float) -> None:
        self.checked += 1
        if slack < -tolerance:
            self.violations += 1
        # ties broken by lowest index: strict < keeps the earliest
        if slack < self.worst_slack:
            self.worst_slack = slack
            self.worst_seed_index = index

    def to_dict(self) -> dict:
        return {
            "checked": self.checked,
            "violations": self.violations,
            "worst_slack": None if self.checked == 0 else self.worst_slack,
            "worst_seed_index": self.worst_seed_index,
        }


@dataclass
class SweepReport:
    """Per-inequality violation tallies for one sweep.

    `wall_time` is measured but excluded from `to_dict` so that serialized
    reports stay byte-identical across runs of the same configuration.
    """

    tallies: dict
    skipped: int
    min_trace_ratio: Optional[float]
    wall_time: float

    @property
    def total_violations(self) -> int:
        return sum(t.violations for t in self.tallies.values())

    def violated_names(self) -> list[str]:
        return [name for name, t in self.tallies.items() if t.violations > 0]

    def to_dict(self) -> dict:
        return {
            "tallies": {name: tally.to_dict() for name, tally in self.tallies.items()},
            "skipped": self.skipped,
            "min_trace_ratio": self.min_trace_ratio,
            "total_violations": self.total_violations,
        }


def _sweep_states(config: SweepConfig):
    for i in range(config.n_pure):
        yield i, random_state(config.cutoff, "pure", seed=[config.seed, i])
    for j in range(config.n_mixed):
        index = config.n_pure + j
        rank = 1 + (j % max(1, config.rank))
        yield index, random_state(config.cutoff, "mixed", rank=rank, seed=[config.seed, index])


def sweep(config: SweepConfig) -> SweepReport:
    """Run the seeded ensemble through every inequality and tally violations."""
    start = time.perf_counter()
    tallies = {name: _Tally() for name in DEFAULT_TOLERANCES}
    skipped = 0
    min_trace_ratio = math.inf
    for index, state in _sweep_states(config):
        summary = summarize(state)
        if summary.truncation_warning:
            skipped += 1
            continue
        ell = ellipse(summary)
        report = full_report(summary, ell)
        tight = report.tight
        amp_sq = abs(summary.mean_a) ** 2
        if tight.applicable:
            tallies["tight_scan"].update(tight.slack, index, config.tolerance("tight_scan"))
            deviation = abs(tight.bound_closed - tight.bound_scan) / (1.0 + tight.bound_scan)
            tallies["closed_form_agreement"].update(
                -deviation, index, config.tolerance("closed_form_agreement")
            )
            floor_lambda = C_LAMBDA_PLUS * amp_sq / ell.lambda_plus_sq
            floor_trace = C_TRACE * amp_sq / summary.cov_ada
            hierarchy_slack = min(
                tight.bound_scan - floor_lambda, tight.bound_scan - floor_trace
            )
            tallies["hierarchy"].update(hierarchy_slack, index, config.tolerance("hierarchy"))
            if summary.var_n > 0.0 and amp_sq > 0.0:
                min_trace_ratio = min(
                    min_trace_ratio, summary.var_n * summary.cov_ada / (C_TRACE * amp_sq)
                )
        for name, record in report.all_records().items():
            if name == "squeezing":
                continue  # classification, not an inequality
            tallies[name].update(record.slack, index, config.tolerance(name))
        hyper_slack = summary.cov_ada - math.sqrt(0.25 + abs(summary.var_a) ** 2)
        tallies["hyperboloid_surface"].update(
            hyper_slack, index, config.tolerance("hyperboloid_surface")
        )
    return SweepReport(
        tallies=tallies,
        skipped=skipped,
        min_trace_ratio=None if math.isinf(min_trace_ratio) else min_trace_ratio,
        wall_time=time.perf_counter() - start,
    )


@dataclass(frozen=True)
class CalibrationReport:
    """Derived bound constants and the printed-versus-derived audit table."""

    c_tight: float
    c1: float
    c2: float
    anchors: list
    printed_vs_derived: list

    def to_dict(self) -> dict:
        return {
            "c_tight": self.c_tight,
            "c1": self.c1,
            "c2": self.c2,
            "anchors": self.anchors,
            "printed_vs_derived": self.printed_vs_derived,
        }


def calibrate() -> CalibrationReport:
    """Fix the bound constants from coherent anchors and audit printed variants.

    The tight constant comes from requiring zero closed-form slack on each
    coherent anchor; anchors disagreeing beyond tolerance raise
    CalibrationError (a convention bug).  The trace constant follows
    analytically from summing the theta = 0 canonical pair, using
    |<x>|^2 + |<p>|^2 = 2 |<a>|^2 and Var x + Var p = 2 Cov(a^dag, a):
    the pair sum bounds Var n * Cov by |<a>|^2 / 4.  The lambda-plus constant
    inherits the tight constant through inf over angles of the interpolated
    semiaxis.
    """
    estimates = []
    anchors = []
    geometry = []
    for alpha in CALIBRATION_ANCHORS:
        summary = summarize(coherent(alpha))
        ell = ellipse(summary)
        tight = tight_bound(summary, ell)
        chi = ell.stick_angle - ell.major_axis_angle
        lam2 = ell.lambda_plus_sq * math.cos(chi) ** 2 + ell.lambda_minus_sq * math.sin(chi) ** 2
        amp_sq = abs(summary.mean_a) ** 2
        estimate = summary.var_n * ell.lambda_plus_sq * ell.lambda_minus_sq / (amp_sq * lam2)
        estimates.append(estimate)
        geometry.append((summary.var_n, amp_sq * lam2 / (ell.lambda_plus_sq * ell.lambda_minus_sq)))
        anchors.append(
            {
                "alpha": {"re": alpha.real, "im": alpha.imag},
                "c_estimate": estimate,
                "scan_slack": tight.slack,
            }
        )
    if max(estimates) - min(estimates) > ANCHOR_AGREEMENT_TOL:
        raise CalibrationError(
            f"coherent anchors disagree: estimates span {min(estimates)!r}..{max(estimates)!r}"
        )
    c_tight = sum(estimates) / len(estimates)
    c1 = c_tight
    c2 = 0.25  # (|<x>|^2 + |<p>|^2) / 4 = |<a>|^2 / 2, spread over 2 Cov
    for anchor, (var_n, shape) in zip(anchors, geometry):
        anchor["closed_slack"] = var_n - c_tight * shape
    table = [
        {"tag": "tight_closed_form", "printed": 1.0, "derived": c_tight, "ratio": 1.0 / c_tight},
        {"tag": "relaxed_lambda_plus", "printed": 1.0, "derived": c1, "ratio": 1.0 / c1},
        {"tag": "relaxed_trace", "printed": 1.0, "derived": c2, "ratio": 1.0 / c2},
    ]
    return CalibrationReport(
        c_tight=c_tight, c1=c1, c2=c2, anchors=anchors, printed_vs_derived=table
    )


def _check_resolution(resolution: int) -> None:
    if not MIN_RESOLUTION <= resolution <= MAX_RESOLUTION:
        raise ValueError(
            f"resolution must lie in [{MIN_RESOLUTION}, {MAX_RESOLUTION}], got {resolution}"
        )


def figure_rows(which: str, resolution: int) -> tuple[list[str], list[tuple]]:
    """Deterministic figure datasets as (header, rows).

    fig2: grid over (|Var a|, Cov) with both relaxed Var-n floors at unit
    amplitude.  fig3: the physicality hyperboloid and the squeezing cone over
    the complex Var a plane.  fig4: moment trajectories of the strong-field
    superposition at alpha = 3 over an admixture grid, against the trace
    floor; the relative gap is reported, never asserted against.
    """
    _check_resolution(resolution)
    if which == "fig2":
        header = ["var_a_abs", "cov_ada", "bound_lambda_plus", "bound_trace"]
        rows = []
        for v in np.linspace(0.0, 2.0, resolution):
            floor = math.sqrt(0.25 + v * v)
            for c in np.linspace(floor, floor + 2.0, resolution):
                rows.append(
                    (float(v), float(c), C_LAMBDA_PLUS / (c + v), C_TRACE / c)
                )
        return header, rows
    if which == "fig3":
        header = ["re_var_a", "im_var_a", "hyperboloid", "cone"]
        axis = np.linspace(-2.0, 2.0, resolution)
        rows = []
        for re in axis:
            for im in axis:
                spread = math.hypot(re, im)
                rows.append(
                    (float(re), float(im), math.sqrt(0.25 + spread * spread), spread + 0.5)
                )
        return header, rows
    if which == "fig4":
        header = ["gamma_re", "gamma_im", "cov_ada", "var_n", "bound", "rel_gap"]
        alpha = 3.0
        rows = []
        for phase in (0.0, math.pi / 4.0, math.pi / 2.0):
            for mag in np.linspace(0.0, 1.0, resolution):
                gamma = mag * complex(math.cos(phase), math.sin(phase))
                summary = summarize(approx_strong_field(alpha, gamma))
                amp_sq = abs(summary.mean_a) ** 2
                bound = C_TRACE * amp_sq / summary.cov_ada
                rows.append(
                    (
                        gamma.real,
                        gamma.imag,
                        summary.cov_ada,
                        summary.var_n,
                        bound,
                        (summary.var_n - bound) / bound,
                    )
                )
        return header, rows
    raise ValueError(f"unknown figure {which!r}; expected one of {FIGURE_NAMES}")
