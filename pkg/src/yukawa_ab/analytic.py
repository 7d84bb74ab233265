"""Closed-form bound states of the screened 2D problem.

Substituting s = e^(-delta*r) and the exponential surrogates for 1/r, 1/r^2
turns the radial equation into a hypergeometric one. The ansatz
R(s) = s^lam (1-s)^nu P(s) terminates P into a degree-n polynomial exactly
when the energy hits the quantization condition; both the resulting
closed-form energy and the independently coded quantization-chain energy are
implemented, and they must agree to machine precision.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np
from scipy.integrate import quad

from .errors import DomainError, QuadratureError
from .model import DimensionlessParams, FieldConfig, PhysicalParams, QuantumNumbers, reduce

__all__ = [
    "Exponents",
    "BoundState",
    "energy_closed_form",
    "energy_from_quantization",
    "exponents",
    "hypergeometric_terminating",
    "radial_wavefunction",
    "full_wavefunction",
    "normalize",
    "solve",
]


@dataclass(frozen=True)
class Exponents:
    """Powers of the two boundary factors of the ansatz.

    lam: exponent of s^lam; lam*delta is the large-r decay rate.
    nu: exponent of (1-s)^nu, controlling the r -> 0 vanishing (roughly r^nu).
    """

    lam: float
    nu: float

    def __post_init__(self) -> None:
        if self.lam < 0:
            raise ValueError("lam must be >= 0")
        if self.nu < 0.5:
            raise ValueError("nu must be >= 1/2")


@dataclass(frozen=True)
class BoundState:
    """A solved radial state. norm_constant is 1.0 until normalize() runs."""

    qn: QuantumNumbers
    energy: float
    epsilon: float
    exponents: Exponents
    poly_coeffs: tuple
    norm_constant: float
    is_bound: bool


def _nu_radicand(dp: DimensionlessParams) -> float:
    # equals beta2 + beta1 + (m+xi)^2; a perfect square for physical
    # reductions, negative only for hand-detuned couplings
    return dp.beta2 + dp.beta1 + dp.eta + 0.25


def energy_closed_form(dp: DimensionlessParams, n: int, params: PhysicalParams) -> float:
    """Energy of the n-th radial level, written exactly as the closed form:

        E = k*eta - (k/4)*((beta0 + beta2 - eta - N^2)/N)^2,
        N = n + 1/2 + sqrt(beta2 + beta1 + (m+xi)^2),  k = hbar^2 delta^2 / (2 mu).

    Positive outputs are returned as-is; callers flag them is_bound=False.
    """
    if n < 0:
        raise DomainError("n must be >= 0")
    rad = _nu_radicand(dp)
    if rad < 0:
        raise DomainError(
            f"nu radicand negative ({rad!r}); no real exponent for these couplings"
        )
    big_n = n + 0.5 + math.sqrt(rad)
    k = params.hbar * params.hbar * params.delta * params.delta / (2.0 * params.mu)
    bracket = (dp.beta0 + dp.beta2 - dp.eta - big_n * big_n) / big_n
    return k * dp.eta - (k / 4.0) * bracket * bracket


def energy_from_quantization(dp: DimensionlessParams, n: int, params: PhysicalParams) -> float:
    """Energy via the termination condition (lam + nu) - sqrt(eps + beta0 + beta2) = -n.

    Independently coded from energy_closed_form; agreement to machine
    precision is the package's standing transcription check.
    """
    if n < 0:
        raise DomainError("n must be >= 0")
    rad = _nu_radicand(dp)
    if rad < 0:
        raise DomainError(
            f"nu radicand negative ({rad!r}); no real exponent for these couplings"
        )
    big_n = n + 0.5 + math.sqrt(rad)
    nn = big_n * big_n
    c = dp.beta0 + dp.beta2 - dp.eta
    root = (c + nn) / (2.0 * big_n)  # principal root sqrt(epsilon + beta0 + beta2)
    if root <= 0:
        raise DomainError("quantization condition has no positive principal root")
    # root**2 - beta0 - beta2 sheds ~6 digits near the continuum threshold;
    # ((c - nn)/(2N))**2 - eta is the same quantity carried exactly
    epsilon = ((c - nn) / (2.0 * big_n)) ** 2 - dp.eta
    return -params.hbar * params.hbar * params.delta * params.delta * epsilon / (2.0 * params.mu)


def exponents(dp: DimensionlessParams, epsilon: float) -> Exponents:
    """Boundary exponents for a state of dimensionless energy epsilon."""
    lam_rad = epsilon + dp.eta
    if lam_rad < 0:
        raise DomainError(f"lam radicand negative: epsilon + eta = {lam_rad!r}")
    nu_rad = 0.25 + dp.beta2 + dp.beta1 + dp.eta
    if nu_rad < 0:
        raise DomainError(f"nu radicand negative: 1/4 + beta2 + beta1 + eta = {nu_rad!r}")
    return Exponents(lam=math.sqrt(lam_rad), nu=0.5 + math.sqrt(nu_rad))


def _check_series_denominator(n: int, c: float) -> None:
    # (c)_k vanishes for some k <= n exactly when c is one of 0, -1, ..., -(n-1);
    # c = -n is safe, the last factor used is c + n - 1 = -1
    if n >= 1 and c <= 0 and c > -n and c == round(c):
        raise DomainError(
            f"series denominator hits a zero Pochhammer factor: c = {c!r} with n = {n}"
        )


def _series_coefficients(a: float, n: int, c: float) -> tuple:
    """Coefficients of the terminating series, index k = 0..n, leading entry 1."""
    _check_series_denominator(n, c)
    coeffs = [1.0]
    for k in range(n):
        coeffs.append(coeffs[-1] * (a + k) * (-n + k) / ((c + k) * (k + 1.0)))
    return tuple(coeffs)


def hypergeometric_terminating(a: float, n: int, c: float, s: float) -> float:
    """Degree-n polynomial sum_k (a)_k (-n)_k / ((c)_k k!) s^k.

    n is the symbolic termination order (an integer, never a float compared
    against one), so the sum is exact with no truncation tolerance.
    """
    if n < 0:
        raise DomainError("n must be >= 0")
    _check_series_denominator(n, c)
    total = 1.0
    term = 1.0
    for k in range(n):
        term *= (a + k) * (-n + k) / ((c + k) * (k + 1.0)) * s
        total += term
    return total


def radial_wavefunction(state: BoundState, r, delta: float):
    """R(r) = norm * s^lam * (1-s)^nu * P(s) at s = e^(-delta*r).

    Accepts scalar or array r > 0. Evaluated as
    exp(-lam*delta*r) * (-expm1(-delta*r))^nu * P so both tails stay accurate.
    """
    rr = np.asarray(r, dtype=float)
    if np.any(rr <= 0):
        raise DomainError("r must be > 0")
    lam = state.exponents.lam
    nu = state.exponents.nu
    s = np.exp(-delta * rr)
    one_minus_s = -np.expm1(-delta * rr)
    poly = np.zeros_like(rr)
    for coeff in reversed(state.poly_coeffs):
        poly = poly * s + coeff
    out = state.norm_constant * np.exp(-lam * delta * rr) * one_minus_s**nu * poly
    if np.isscalar(r) or getattr(r, "ndim", 1) == 0:
        return float(out)
    return out


def full_wavefunction(state: BoundState, r, phi, delta: float):
    """2D wavefunction psi(r, phi) = R(r) e^(i m phi) / sqrt(2 pi r)."""
    rr = np.asarray(r, dtype=float)
    radial = radial_wavefunction(state, rr, delta)
    angular = np.exp(1j * state.qn.m * np.asarray(phi))
    return radial * angular / np.sqrt(2.0 * np.pi * rr)


def normalize(state: BoundState, delta: float, *, tol: float = 1e-8, limit: int = 200) -> BoundState:
    """Rescale norm_constant so the radial density integrates to 1.

    The 1/sqrt(2 pi r) prefactor of the full wavefunction turns the 2D norm
    into the line integral of R^2 dr, which is what is computed here.
    """
    if not state.is_bound:
        raise QuadratureError("cannot normalize an unbound state (E >= 0)")
    lam = state.exponents.lam
    if lam <= 0:
        raise QuadratureError("state with lam <= 0 is not normalizable")
    # truncate where s^(2*lam) < 1e-40, capped to keep the interval finite.
    # The budget is deliberately generous: excited states nearly cancel
    # their polynomial factor over most of the decay region, which inflates
    # the amplitude of the far tail relative to the naive s^lam picture.
    r_cut = min(20.0 * math.log(10.0) / (lam * delta), 1e6 / delta)

    def density(rr: float) -> float:
        if rr <= 0.0:
            return 0.0
        value = radial_wavefunction(state, rr, delta)
        return value * value

    # epsabs=0 keeps the error control purely relative; the unnormalized
    # integral can be many orders below 1, where any absolute floor would
    # dominate the returned error estimate
    total, err = quad(density, 0.0, r_cut, epsabs=0.0, epsrel=1e-12, limit=limit)
    if not math.isfinite(total) or total <= 0.0:
        raise QuadratureError(f"normalization integral did not converge (value {total!r})")
    # mass beyond the cut, assuming pure exponential decay from there with a
    # factor of 10 headroom for the slow variation of the prefactor
    tail = 10.0 * density(r_cut) / (2.0 * lam * delta)
    if err + tail > tol * total:
        raise QuadratureError(
            f"normalization quadrature error {err + tail!r} exceeds {tol!r} of the integral"
        )
    return replace(state, norm_constant=state.norm_constant / math.sqrt(total))


def solve(params: PhysicalParams, fields: FieldConfig, n: int, m: int, *, normalized: bool = True) -> BoundState:
    """Full closed-form state for quantum numbers (n, m).

    Unbound outputs (E >= 0) are returned flagged is_bound=False, never
    dropped. normalized=False skips the quadrature for energy-only callers.
    """
    qn = QuantumNumbers(n=n, m=m)
    dp = reduce(params, fields, m)
    energy = energy_closed_form(dp, n, params)
    epsilon = -2.0 * params.mu * energy / (params.hbar * params.delta) ** 2
    exps = exponents(dp, epsilon)
    # epsilon + beta0 + beta2 is a perfect square algebraically; clip the
    # rounding dust so the root stays real at the edge of the spectrum
    root = math.sqrt(max(epsilon + dp.beta0 + dp.beta2, 0.0))
    a = exps.lam + exps.nu + root
    c = 2.0 * exps.lam + 1.0
    coeffs = _series_coefficients(a, n, c)
    state = BoundState(
        qn=qn,
        energy=energy,
        epsilon=epsilon,
        exponents=exps,
        poly_coeffs=coeffs,
        norm_constant=1.0,
        is_bound=energy < 0.0,
    )
    if normalized and state.is_bound:
        state = normalize(state, params.delta)
    return state
