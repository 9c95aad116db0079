"""Independent brute-force oracles used across the test suite.

Everything here is deliberately primitive (explicit sums, ladder
applications, dense matrices) so it shares no code path with the formulas it
checks.
"""

import math

import numpy as np

from fockgauge import apply_ladder


def poisson_tail(lam: float, m: int, terms: int = 200) -> float:
    """Sum of e^-lam lam^n / n! for n >= m by direct summation."""
    term = math.exp(-lam)
    for n in range(1, m + 1):
        term *= lam / n
    total = 0.0
    for n in range(m, m + terms):
        total += term
        term *= lam / (n + 1)
    return total


def laguerre_series(n: int, a: float, x: float) -> float:
    """Generalized Laguerre value from the explicit finite series.

    Uses the generalized binomial C(n + a, n - i) written as a product, so it
    is valid for any (including negative integer) upper index.
    """
    total = 0.0
    for i in range(n + 1):
        binom = 1.0
        for j in range(1, n - i + 1):
            binom *= a + i + j
        binom /= math.factorial(n - i)
        total += (-1) ** i * binom * x**i / math.factorial(i)
    return total


def padded(amps: np.ndarray, size: int) -> np.ndarray:
    return np.pad(amps, (0, size - amps.size))


def quadrature_apply(state, theta: float) -> np.ndarray:
    """Amplitudes of x_theta |psi> built from ladder applications only."""
    lowered = apply_ladder(state, "lower").amplitudes
    raised = apply_ladder(state, "raise").amplitudes
    size = raised.size
    out = (
        np.exp(1j * theta) * padded(lowered, size) + np.exp(-1j * theta) * raised
    ) / math.sqrt(2.0)
    return out


def quadrature_var_direct(state, theta: float) -> float:
    """Var x_theta from ||x psi||^2 - <psi|x psi>^2, no covariance formulas."""
    xpsi = quadrature_apply(state, theta)
    psi = padded(state.amplitudes, xpsi.size)
    mean = np.vdot(psi, xpsi).real
    return float(np.vdot(xpsi, xpsi).real - mean * mean)


def quadrature_mean_direct(state, theta: float) -> float:
    xpsi = quadrature_apply(state, theta)
    psi = padded(state.amplitudes, xpsi.size)
    return float(np.vdot(psi, xpsi).real)


def crescent_eigen_residual(state, alpha: complex) -> tuple[float, complex]:
    """Residual of the defining non-Hermitian eigenvalue problem.

    The operator is n - i r x_theta with r = sqrt(2) |alpha| and
    theta = pi/2 - arg(alpha), applied through ladder operators; the
    eigenvalue estimate is its expectation in the state.  Returns
    (residual norm, eigenvalue estimate).
    """
    alpha = complex(alpha)
    r = math.sqrt(2.0) * abs(alpha)
    theta = math.pi / 2.0 - np.angle(alpha)
    xpsi = quadrature_apply(state, theta)
    size = xpsi.size
    psi = padded(state.amplitudes, size)
    npsi = padded(np.arange(state.amplitudes.size) * state.amplitudes, size)
    kpsi = npsi - 1j * r * xpsi
    omega = complex(np.vdot(psi, kpsi))
    return float(np.linalg.norm(kpsi - omega * psi)), omega


def square_annihilate_residual(state, eigenvalue: complex) -> float:
    """Norm of (a^2 - eigenvalue) |psi> via two ladder applications."""
    twice = apply_ladder(apply_ladder(state, "lower"), "lower").amplitudes
    size = max(twice.size, state.amplitudes.size)
    return float(
        np.linalg.norm(padded(twice, size) - eigenvalue * padded(state.amplitudes, size))
    )


def dense_moment(state, j: int, k: int) -> complex:
    """<a^dag^j a^k> through dense matrices on an enlarged space."""
    dim = state.cutoff + 1 + j + k + 1
    a = np.zeros((dim, dim), dtype=complex)
    a[np.arange(dim - 1), np.arange(1, dim)] = np.sqrt(np.arange(1, dim))
    op = np.linalg.matrix_power(a.conj().T, j) @ np.linalg.matrix_power(a, k)
    if hasattr(state, "amplitudes"):
        v = padded(state.amplitudes, dim)
        return complex(np.vdot(v, op @ v))
    rho = np.zeros((dim, dim), dtype=complex)
    n = state.entries.shape[0]
    rho[:n, :n] = state.entries
    return complex(np.trace(rho @ op))
