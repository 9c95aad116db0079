"""Number-quadrature uncertainty bounds and the nonclassicality gauges.

The canonical tight bound is a scan: for each local-oscillator angle theta the
exact inequality Var n * Var x_theta >= |<p_theta>|^2 / 4 holds, so

    B = max_theta |<p_theta>|^2 / (4 Var x_theta)

is the sharpest angle-independent floor on Var n.  A closed form for B follows
from maximizing a rank-1 generalized Rayleigh quotient over the noise ellipse:

    B = C_TIGHT * |<a>|^2 * Lambda^2 / (lp^2 * lm^2),
    Lambda^2 = lp^2 cos^2 chi + lm^2 sin^2 chi,  chi = stick - major axis,

with lp/lm the ellipse semiaxes.  C_TIGHT is a calibration constant fixed by
requiring coherent states to saturate the scan; under the pinned quadrature
normalization it equals 1/2.  The relaxed bounds inherit their constants from
the same calibration (see verify.calibrate, which also audits them against
their commonly printed variants).

G1 = Var n / B reads exactly 1 on the extremal (intelligent) states; for
zero-amplitude states the scan is trivial and G2, built from the second-order
pair covariance, takes over with value 1 exactly on eigenstates of a^2.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .moments import MomentSummary, NoiseEllipse, ellipse as make_ellipse

# Pinned by coherent saturation under the x_theta normalization of `moments`;
# re-derived and audited by verify.calibrate.
C_TIGHT = 0.5
C_LAMBDA_PLUS = 0.5  # from inf over angles of the interpolated semiaxis
C_TRACE = 0.25  # from summing the theta = 0 canonical pair

SATURATION_TOL = 1e-8
HIERARCHY_TOL = 1e-10
AMPLITUDE_FLAG_TOL = 1e-8
# classification margin: coherent states sit exactly on the boundary and must
# not flip to "squeezed" through round-off
SQUEEZING_TOL = 1e-10

_GRID_SIZE = 1024
_THETA_GRID = np.linspace(0.0, math.pi, _GRID_SIZE, endpoint=False)
_SIN = np.sin(_THETA_GRID)
_COS = np.cos(_THETA_GRID)
_SIN2 = np.sin(2.0 * _THETA_GRID)
_COS2 = np.cos(2.0 * _THETA_GRID)
_GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0


@dataclass(frozen=True)
class InequalityRecord:
    """One inequality lhs >= rhs with its slack and saturation flag."""

    name: str
    lhs: float
    rhs: float
    slack: float
    saturated: bool

    def to_dict(self) -> dict:
        return {
            "lhs": self.lhs,
            "rhs": self.rhs,
            "slack": self.slack,
            "saturated": self.saturated,
        }


def _record(name: str, lhs: float, rhs: float) -> InequalityRecord:
    slack = lhs - rhs
    return InequalityRecord(name, lhs, rhs, slack, abs(slack) <= SATURATION_TOL)


@dataclass(frozen=True)
class TightBoundReport:
    """Scanned and closed-form tight floor on Var n for one state."""

    bound_scan: float
    theta_star: float
    bound_closed: float
    slack: float
    applicable: bool

    def to_dict(self) -> dict:
        return {
            "bound_scan": self.bound_scan,
            "theta_star": self.theta_star,
            "bound_closed": self.bound_closed,
            "slack": self.slack,
            "applicable": self.applicable,
        }


@dataclass(frozen=True)
class G2Result:
    g2: float
    g2_alt: Optional[float]
    amplitude_warning: bool


@dataclass(frozen=True)
class GaugeReport:
    """Every bound, slack and gauge value for one state."""

    tight: TightBoundReport
    g1: Optional[float]
    g2: float
    g2_alt: Optional[float]
    g2_amplitude_warning: bool
    relaxed_lambda_plus: InequalityRecord
    relaxed_trace: InequalityRecord
    canonical_pair: tuple[InequalityRecord, InequalityRecord]
    constraints: dict[str, InequalityRecord]
    squeezed: bool
    hierarchy_ok: bool

    def to_dict(self) -> dict:
        return {
            "tight": self.tight.to_dict(),
            "g1": self.g1,
            "g2": self.g2,
            "g2_alt": self.g2_alt,
            "g2_amplitude_warning": self.g2_amplitude_warning,
            "relaxed_lambda_plus": self.relaxed_lambda_plus.to_dict(),
            "relaxed_trace": self.relaxed_trace.to_dict(),
            "canonical_pair": [rec.to_dict() for rec in self.canonical_pair],
            "constraints": {name: rec.to_dict() for name, rec in self.constraints.items()},
            "squeezed": self.squeezed,
            "hierarchy_ok": self.hierarchy_ok,
        }

    def all_records(self) -> dict[str, InequalityRecord]:
        out = {
            "relaxed_lambda_plus": self.relaxed_lambda_plus,
            "relaxed_trace": self.relaxed_trace,
            "canonical_pair_x": self.canonical_pair[0],
            "canonical_pair_p": self.canonical_pair[1],
        }
        out.update(self.constraints)
        return out


def _objective(summary: MomentSummary, theta: float) -> float:
    # |<p_theta>|^2 / (4 Var x_theta), written out for scalar speed
    s, c = math.sin(theta), math.cos(theta)
    p = summary.mean_a.real * s + summary.mean_a.imag * c
    var_x = (
        summary.cov_ada
        + summary.var_a.real * (c * c - s * s)
        - summary.var_a.imag * 2.0 * s * c
    )
    return p * p / (2.0 * var_x)


def scan_bound(summary: MomentSummary, refine_tol: float = 1e-10) -> tuple[float, float]:
    """Maximize the angle-dependent floor over a half period.

    A 1024-point grid brackets the maximum (the objective is a ratio of two
    second-degree trigonometric polynomials, so the grid cannot miss it);
    golden-section refinement then narrows the angle below refine_tol.
    """
    ar, ai = summary.mean_a.real, summary.mean_a.imag
    p = ar * _SIN + ai * _COS
    var_x = summary.cov_ada + summary.var_a.real * _COS2 - summary.var_a.imag * _SIN2
    values = p * p / (2.0 * var_x)
    best = int(np.argmax(values))
    step = math.pi / _GRID_SIZE
    lo, hi = _THETA_GRID[best] - step, _THETA_GRID[best] + step
    c = hi - _GOLDEN * (hi - lo)
    d = lo + _GOLDEN * (hi - lo)
    fc, fd = _objective(summary, c), _objective(summary, d)
    while hi - lo > refine_tol:
        if fc > fd:
            hi, d, fd = d, c, fc
            c = hi - _GOLDEN * (hi - lo)
            fc = _objective(summary, c)
        else:
            lo, c, fc = c, d, fd
            d = lo + _GOLDEN * (hi - lo)
            fd = _objective(summary, d)
    theta = ((lo + hi) / 2.0) % math.pi
    return _objective(summary, theta), theta


def closed_bound(summary: MomentSummary, ell: NoiseEllipse) -> float:
    """Closed form of the scanned bound (rank-1 Rayleigh maximization)."""
    chi = ell.stick_angle - ell.major_axis_angle
    lam2 = ell.lambda_plus_sq * math.cos(chi) ** 2 + ell.lambda_minus_sq * math.sin(chi) ** 2
    return (
        C_TIGHT
        * abs(summary.mean_a) ** 2
        * lam2
        / (ell.lambda_plus_sq * ell.lambda_minus_sq)
    )


def tight_bound(summary: MomentSummary, ell: NoiseEllipse) -> TightBoundReport:
    """Scan-based tight floor on Var n, with the calibrated closed form alongside.

    Inapplicable (zero-amplitude) states get bound 0 and applicable=False.
    """
    if ell.zero_stick_flag:
        return TightBoundReport(0.0, 0.0, 0.0, summary.var_n, False)
    bound, theta = scan_bound(summary)
    return TightBoundReport(
        bound_scan=bound,
        theta_star=theta,
        bound_closed=closed_bound(summary, ell),
        slack=summary.var_n - bound,
        applicable=True,
    )


def relaxed_bounds(
    summary: MomentSummary, ell: NoiseEllipse
) -> tuple[InequalityRecord, InequalityRecord, tuple[InequalityRecord, InequalityRecord]]:
    """Orientation-independent relaxations and the theta = 0 canonical pair."""
    amp_sq = abs(summary.mean_a) ** 2
    mean_x = math.sqrt(2.0) * summary.mean_a.real
    mean_p = math.sqrt(2.0) * summary.mean_a.imag
    var_x = summary.cov_ada + summary.var_a.real
    var_p = summary.cov_ada - summary.var_a.real
    lam_plus = _record(
        "relaxed_lambda_plus", summary.var_n * ell.lambda_plus_sq, C_LAMBDA_PLUS * amp_sq
    )
    trace = _record("relaxed_trace", summary.var_n * summary.cov_ada, C_TRACE * amp_sq)
    pair = (
        _record("canonical_pair_x", summary.var_n * var_x, mean_p**2 / 4.0),
        _record("canonical_pair_p", summary.var_n * var_p, mean_x**2 / 4.0),
    )
    return lam_plus, trace, pair


def moment_constraints(
    summary: MomentSummary, ell: NoiseEllipse
) -> tuple[dict[str, InequalityRecord], bool]:
    """Second-order moment constraints and the squeezing classification.

    Squeezed means the minor quadrature variance lies below the coherent
    level 1/2 by more than the classification margin.
    """
    records = {
        "covariance_floor": _record("covariance_floor", summary.cov_ada, 0.5),
        "uncertainty_area": _record(
            "uncertainty_area", summary.cov_ada**2 - 0.25, abs(summary.var_a) ** 2
        ),
        "squeezing": _record("squeezing", ell.lambda_minus_sq, 0.5),
        "second_order_floor": _record(
            "second_order_floor", summary.cov_a2, 2.0 * summary.mean_n + 1.0
        ),
    }
    return records, ell.lambda_minus_sq < 0.5 - SQUEEZING_TOL


def gauge_g1(summary: MomentSummary, ell: NoiseEllipse) -> Optional[float]:
    """Var n over the scanned tight bound; >= 1, exactly 1 on extremal states.

    None (not applicable) for zero-amplitude states.
    """
    if ell.zero_stick_flag:
        return None
    bound, _ = scan_bound(summary)
    return summary.var_n / bound


def gauge_g2(summary: MomentSummary) -> G2Result:
    """Pair-covariance gauge for zero-amplitude states.

    g2 is the second-order pair covariance over its floor 2<n> + 1; exactly 1
    on eigenstates of a^2.  g2_alt is an alternative printed expression kept
    for comparison only: it disagrees with g2 on simple states (|1> gives 1
    versus 8), is undefined for <n> = 0, and is never asserted against.
    A warning flag marks summaries whose amplitude is not actually zero.
    """
    g2 = summary.cov_a2 / (2.0 * summary.mean_n + 1.0)
    if summary.mean_n == 0.0:
        alt: Optional[float] = None
    else:
        spread = abs(summary.var_a)
        lam_plus = summary.cov_ada + spread
        lam_minus = summary.cov_ada - spread
        alt = (summary.var_n + 4.0 * (lam_plus - 0.5) * (lam_minus + 0.5)) / summary.mean_n
    return G2Result(g2, alt, abs(summary.mean_a) > AMPLITUDE_FLAG_TOL)


def hierarchy_check(
    summary: MomentSummary, ell: NoiseEllipse, tight: TightBoundReport
) -> bool:
    """The scanned bound must dominate both relaxed floors on Var n."""
    if not tight.applicable:
        return True
    amp_sq = abs(summary.mean_a) ** 2
    floor_lambda = C_LAMBDA_PLUS * amp_sq / ell.lambda_plus_sq
    floor_trace = C_TRACE * amp_sq / summary.cov_ada
    if floor_lambda < 0.0:
        return False
    return (
        tight.bound_scan >= floor_lambda - HIERARCHY_TOL
        and tight.bound_scan >= floor_trace - HIERARCHY_TOL
    )


def full_report(summary: MomentSummary, ell: Optional[NoiseEllipse] = None) -> GaugeReport:
    """Evaluate every bound and gauge for one moment summary."""
    if ell is None:
        ell = make_ellipse(summary)
    tight = tight_bound(summary, ell)
    lam_plus, trace, pair = relaxed_bounds(summary, ell)
    constraints, squeezed = moment_constraints(summary, ell)
    g1 = summary.var_n / tight.bound_scan if tight.applicable else None
    g2 = gauge_g2(summary)
    return GaugeReport(
        tight=tight,
        g1=g1,
        g2=g2.g2,
        g2_alt=g2.g2_alt,
        g2_amplitude_warning=g2.amplitude_warning,
        relaxed_lambda_plus=lam_plus,
        relaxed_trace=trace,
        canonical_pair=pair,
        constraints=constraints,
        squeezed=squeezed,
        hierarchy_ok=hierarchy_check(summary, ell, tight),
    )
