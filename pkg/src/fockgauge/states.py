"""Factories for the state families under study.

Every constructor returns a normalized `FockVector` (or `DensityMatrix` for
the mixed random ensemble) whose neglected amplitude mass is below the
requested tail tolerance, with a few zero amplitudes appended on top so the
register boundary stays empty for well-converged constructions.

The sheared near-number eigenstates ("crescent" states) come in two
independent constructions: repeated ladder applications of (a^dag + alpha^*)
on a coherent state, and the closed-form Fock expansion through generalized
Laguerre polynomials of negative upper index.  The two must agree on the same
ray; tests enforce this cross-validation.
"""

from __future__ import annotations

import math
import numbers
from typing import Union

import numpy as np

from .errors import CutoffExplosionError, SchemaError, ZeroNormError
from .fock import (
    BOUNDARY_PAD,
    DensityMatrix,
    FockVector,
    QuantumState,
    _raised,
    max_cutoff,
)

DEFAULT_EPS_TAIL = 1e-14
EPS_TAIL_CEILING = 1e-6
MAX_ADDED_PHOTONS = 16
MAX_RANDOM_CUTOFF = 256
MAX_LAGUERRE_DEGREE = 4096

Seed = Union[int, tuple, list]


def _check_eps(eps_tail: float) -> None:
    if not (0.0 < eps_tail <= EPS_TAIL_CEILING):
        raise ValueError(f"eps_tail must lie in (0, {EPS_TAIL_CEILING}], got {eps_tail!r}")


def _finalize(amps: np.ndarray) -> FockVector:
    norm = float(np.linalg.norm(amps))
    if norm < 1e-13:
        raise ZeroNormError("state construction cancelled to zero norm")
    return FockVector(np.pad(amps / norm, (0, BOUNDARY_PAD)))


def _coherent_amps(alpha: complex, eps_tail: float) -> np.ndarray:
    """Normalized coherent amplitudes c_n = e^{-|a|^2/2} a^n / sqrt(n!), unpadded.

    The cutoff is grown until a geometric bound on the neglected Poisson tail
    drops below eps_tail; this stays reliable long after 1 - cumsum would
    drown in round-off.
    """
    alpha = complex(alpha)
    lam = abs(alpha) ** 2
    if lam == 0.0:
        return np.ones(1, dtype=np.complex128)
    ceiling = max_cutoff()
    amps = [1.0 + 0.0j]
    cum = 1.0
    n = 0
    while True:
        amps.append(amps[-1] * alpha / math.sqrt(n + 1))
        n += 1
        cum += abs(amps[-1]) ** 2
        if n + 2 > lam:
            p_next = abs(amps[-1]) ** 2 * lam / (n + 1)
            if p_next / (1.0 - lam / (n + 2)) < eps_tail * cum:
                break
        if n >= ceiling:
            raise CutoffExplosionError(
                f"coherent amplitude {alpha!r} needs a cutoff beyond {ceiling}"
            )
    v = np.array(amps, dtype=np.complex128)
    return v / np.linalg.norm(v)


def coherent(alpha: complex, eps_tail: float = DEFAULT_EPS_TAIL) -> FockVector:
    """Coherent state |alpha> truncated to the requested tail tolerance."""
    _check_eps(eps_tail)
    return _finalize(_coherent_amps(alpha, eps_tail))


def fock(n: int) -> FockVector:
    """Number state |n>."""
    if n < 0:
        raise ValueError("Fock index must be non-negative")
    if n > max_cutoff():
        raise CutoffExplosionError(f"Fock index {n} exceeds the cutoff ceiling {max_cutoff()}")
    amps = np.zeros(n + 1, dtype=np.complex128)
    amps[n] = 1.0
    return _finalize(amps)


def squeezed_coherent(
    alpha: complex, r: float, phi_s: float = 0.0, eps_tail: float = DEFAULT_EPS_TAIL
) -> FockVector:
    """Displaced squeezed vacuum D(alpha) S(r e^{i phi_s}) |0>.

    Convention pin: phi_s = 0 squeezes the p quadrature at theta = 0, so the
    minor variance e^{-2r}/2 sits along p and the major e^{+2r}/2 along x.
    Amplitudes follow the two-term recurrence of Gaussian pure states,
    (mu a + nu a^dag)|psi> = (mu alpha + nu alpha^*)|psi> with mu = cosh r and
    nu = -e^{i phi_s} sinh r.
    """
    _check_eps(eps_tail)
    if abs(r) > 3.0:
        raise ValueError("squeezing magnitude |r| is limited to 3 for truncation safety")
    alpha = complex(alpha)
    mu = math.cosh(r)
    nu = -np.exp(1j * phi_s) * math.sinh(r)
    beta = mu * alpha + nu * np.conjugate(alpha)
    ceiling = max_cutoff()
    chunk = 64
    c = [1.0 + 0.0j, beta / mu]
    while True:
        for _ in range(chunk):
            n = len(c) - 1
            c.append((beta * c[n] - nu * math.sqrt(n) * c[n - 1]) / (mu * math.sqrt(n + 1)))
        p = np.abs(np.array(c)) ** 2
        cum = float(p.sum())
        w_last = float(p[-chunk:].sum())
        if w_last == 0.0:
            break
        if len(p) >= 2 * chunk:
            w_prev = float(p[-2 * chunk:-chunk].sum())
            if 0.0 < w_last < w_prev:
                q = w_last / w_prev
                if w_last * q / (1.0 - q) < eps_tail * cum:
                    break
        if len(c) > ceiling:
            raise CutoffExplosionError(
                f"squeezed state (alpha={alpha!r}, r={r}) needs a cutoff beyond {ceiling}"
            )
    return _finalize(np.array(c, dtype=np.complex128))


def _crescent_operator_amps(alpha: complex, added: int, eps_tail: float) -> np.ndarray:
    c = _coherent_amps(alpha, eps_tail)
    for _ in range(added):
        raised = _raised(c)
        raised[: c.size] += np.conjugate(alpha) * c
        c = raised
    return c


def _crescent_laguerre_amps(alpha: complex, added: int, eps_tail: float) -> np.ndarray:
    # Closed-form expansion: c_n proportional to
    #   sqrt(n!) (alpha^*)^{added-n} L_n^{(added-n)}(-|alpha|^2).
    # The diagonal Laguerre value expands into the finite sum
    #   sum_i C(added, n-i) |alpha|^{2i} / i!,
    # whose terms are all non-negative; evaluated in log space it is stable at
    # every depth, unlike the fixed-upper-index three-term recurrence whose
    # tail values drown in cancellation noise.
    aa2 = abs(alpha) ** 2
    top = _coherent_amps(alpha, eps_tail).size - 1 + added
    phase = np.exp(-1j * np.angle(alpha))
    logs = np.empty(top + 1)
    for n in range(top + 1):
        terms = [
            math.log(math.comb(added, n - i)) + i * math.log(aa2) - math.lgamma(i + 1)
            for i in range(max(0, n - added), n + 1)
        ]
        peak = max(terms)
        logs[n] = (
            0.5 * math.lgamma(n + 1)
            + (added - n) * math.log(abs(alpha))
            + peak
            + math.log(sum(math.exp(t - peak) for t in terms))
        )
    logs -= logs.max()
    return np.exp(logs) * phase ** (added - np.arange(top + 1))


def crescent(
    alpha: complex,
    added: int,
    method: str = "operator",
    eps_tail: float = DEFAULT_EPS_TAIL,
) -> FockVector:
    """Sheared near-number eigenstate: normalized (a^dag + alpha^*)^added |alpha>.

    `method="operator"` applies the ladder construction directly (the
    canonical, numerically robust route); `method="laguerre"` evaluates the
    closed-form Fock expansion.  Both represent the same ray.
    """
    _check_eps(eps_tail)
    if not 0 <= added <= MAX_ADDED_PHOTONS:
        raise ValueError(f"photon addition order must lie in [0, {MAX_ADDED_PHOTONS}]")
    alpha = complex(alpha)
    if method == "operator":
        return _finalize(_crescent_operator_amps(alpha, added, eps_tail))
    if method == "laguerre":
        if alpha == 0:
            return fock(added)
        return _finalize(_crescent_laguerre_amps(alpha, added, eps_tail))
    raise ValueError(f"unknown crescent method {method!r}")


def photon_added(alpha: complex, added: int, eps_tail: float = DEFAULT_EPS_TAIL) -> FockVector:
    """Photon-added coherent state: normalized a^dag^added |alpha>."""
    _check_eps(eps_tail)
    if not 0 <= added <= MAX_ADDED_PHOTONS:
        raise ValueError(f"photon addition order must lie in [0, {MAX_ADDED_PHOTONS}]")
    c = _coherent_amps(complex(alpha), eps_tail)
    for _ in range(added):
        c = _raised(c)
    return _finalize(c)


def strong_field_norm_inverse(alpha: complex, gamma: complex) -> float:
    """Analytic squared norm of |alpha> + gamma a^dag |alpha| before normalization."""
    alpha, gamma = complex(alpha), complex(gamma)
    return float(
        1.0
        + 2.0 * (gamma * np.conjugate(alpha)).real
        + abs(gamma) ** 2 * (1.0 + abs(alpha) ** 2)
    )


def approx_strong_field(
    alpha: complex, gamma: complex, eps_tail: float = DEFAULT_EPS_TAIL
) -> FockVector:
    """Normalized superposition |alpha> + gamma a^dag |alpha>.

    With gamma = added/alpha^* this approximates the crescent state in the
    strong-field regime.  Raises ZeroNormError on cancellation.
    """
    _check_eps(eps_tail)
    alpha, gamma = complex(alpha), complex(gamma)
    c = _coherent_amps(alpha, eps_tail)
    combined = gamma * _raised(c)
    combined[: c.size] += c
    return _finalize(combined)


def cat(alpha: complex, beta: float = 0.0, eps_tail: float = DEFAULT_EPS_TAIL) -> FockVector:
    """Normalized |alpha> + e^{i beta} |-alpha> (beta = 0 even, beta = pi odd).

    Any such superposition is an eigenstate of a^2 with eigenvalue alpha^2.
    Raises ZeroNormError on (numerically) exact cancellation.
    """
    _check_eps(eps_tail)
    c = _coherent_amps(complex(alpha), eps_tail)
    signs = np.where(np.arange(c.size) % 2 == 0, 1.0, -1.0)
    return _finalize(c * (1.0 + np.exp(1j * beta) * signs))


def random_state(cutoff: int, kind: str, rank: int = 1, seed: Seed = 0) -> QuantumState:
    """Seeded random pure (Haar on the truncated sphere) or mixed (Ginibre) state."""
    if not 0 <= cutoff <= MAX_RANDOM_CUTOFF:
        raise ValueError(f"random-state cutoff must lie in [0, {MAX_RANDOM_CUTOFF}]")
    rng = np.random.default_rng(seed)
    dim = cutoff + 1
    if kind == "pure":
        v = rng.standard_normal(dim) + 1j * rng.standard_normal(dim)
        v /= np.linalg.norm(v)
        return FockVector(np.pad(v, (0, BOUNDARY_PAD)))
    if kind == "mixed":
        if not 1 <= rank <= dim:
            raise ValueError("mixed-state rank must lie in [1, cutoff + 1]")
        g = rng.standard_normal((dim, rank)) + 1j * rng.standard_normal((dim, rank))
        rho = g @ g.conj().T
        rho /= np.trace(rho).real
        padded = np.zeros((dim + BOUNDARY_PAD, dim + BOUNDARY_PAD), dtype=np.complex128)
        padded[:dim, :dim] = rho
        return DensityMatrix(padded)
    raise ValueError(f"unknown random state kind {kind!r}")


def laguerre(n: int, a: float, x: float) -> float:
    """Generalized Laguerre polynomial L_n^{(a)}(x) by the three-term recurrence in n.

    Exact at the base cases L_0 = 1 and L_1 = 1 + a - x; the upper index may
    be any integer, including negative values.
    """
    if n < 0:
        raise ValueError("degree must be non-negative")
    if n > MAX_LAGUERRE_DEGREE:
        raise ValueError(f"degree {n} exceeds the supported maximum {MAX_LAGUERRE_DEGREE}")
    if n == 0:
        return 1.0
    prev, cur = 1.0, 1.0 + a - x
    for k in range(1, n):
        prev, cur = cur, ((2 * k + 1 + a - x) * cur - (k + a) * prev) / (k + 1)
    return cur


# ---------------------------------------------------------------------------
# StateSpec JSON schema
# ---------------------------------------------------------------------------

_SPEC_FIELDS = {
    "coherent": ({"alpha"}, {"eps_tail"}),
    "fock": ({"n"}, set()),
    "squeezed_coherent": ({"alpha", "r", "phi_s"}, {"eps_tail"}),
    "crescent": ({"alpha", "M"}, {"method", "eps_tail"}),
    "photon_added": ({"alpha", "M"}, {"eps_tail"}),
    "approx_strong_field": ({"alpha", "gamma"}, {"eps_tail"}),
    "cat": ({"alpha", "beta"}, {"eps_tail"}),
    "random_pure": ({"cutoff", "seed"}, set()),
    "random_mixed": ({"cutoff", "rank", "seed"}, set()),
}


def _spec_complex(spec: dict, field: str) -> complex:
    value = spec[field]
    if not isinstance(value, dict) or set(value) != {"re", "im"}:
        raise SchemaError(f'field "{field}" must be an object {{"re": x, "im": y}}')
    re, im = value["re"], value["im"]
    if not isinstance(re, numbers.Real) or not isinstance(im, numbers.Real):
        raise SchemaError(f'field "{field}" components must be numbers')
    return complex(re, im)


def _spec_real(spec: dict, field: str) -> float:
    value = spec[field]
    if isinstance(value, bool) or not isinstance(value, numbers.Real):
        raise SchemaError(f'field "{field}" must be a number')
    return float(value)


def _spec_int(spec: dict, field: str) -> int:
    value = spec[field]
    if isinstance(value, bool) or not isinstance(value, numbers.Integral):
        raise SchemaError(f'field "{field}" must be an integer')
    return int(value)


def state_from_spec(spec: dict) -> QuantumState:
    """Build a state from its JSON description; kind-irrelevant fields are rejected."""
    if not isinstance(spec, dict):
        raise SchemaError("state spec must be a JSON object")
    kind = spec.get("kind")
    if kind not in _SPEC_FIELDS:
        known = ", ".join(sorted(_SPEC_FIELDS))
        raise SchemaError(f'field "kind" must be one of: {known}')
    required, optional = _SPEC_FIELDS[kind]
    present = set(spec) - {"kind"}
    missing = required - present
    if missing:
        raise SchemaError(f'kind "{kind}" is missing fields: {", ".join(sorted(missing))}')
    extra = present - required - optional
    if extra:
        raise SchemaError(f'fields not allowed for kind "{kind}": {", ".join(sorted(extra))}')
    eps = _spec_real(spec, "eps_tail") if "eps_tail" in spec else DEFAULT_EPS_TAIL
    try:
        if kind == "coherent":
            return coherent(_spec_complex(spec, "alpha"), eps)
        if kind == "fock":
            return fock(_spec_int(spec, "n"))
        if kind == "squeezed_coherent":
            return squeezed_coherent(
                _spec_complex(spec, "alpha"), _spec_real(spec, "r"), _spec_real(spec, "phi_s"), eps
            )
        if kind == "crescent":
            method = spec.get("method", "operator")
            if method not in ("operator", "laguerre"):
                raise SchemaError('field "method" must be "operator" or "laguerre"')
            return crescent(_spec_complex(spec, "alpha"), _spec_int(spec, "M"), method, eps)
        if kind == "photon_added":
            return photon_added(_spec_complex(spec, "alpha"), _spec_int(spec, "M"), eps)
        if kind == "approx_strong_field":
            return approx_strong_field(
                _spec_complex(spec, "alpha"), _spec_complex(spec, "gamma"), eps
            )
        if kind == "cat":
            return cat(_spec_complex(spec, "alpha"), _spec_real(spec, "beta"), eps)
        if kind == "random_pure":
            return random_state(_spec_int(spec, "cutoff"), "pure", seed=_spec_int(spec, "seed"))
        return random_state(
            _spec_int(spec, "cutoff"), "mixed", _spec_int(spec, "rank"), _spec_int(spec, "seed")
        )
    except ValueError as exc:
        raise SchemaError(f'invalid parameters for kind "{kind}": {exc}') from exc
