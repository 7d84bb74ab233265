"""Physical inputs and potentials for a charged particle in two dimensions
bound by a screened Coulomb (Yukawa) interaction, with an optional uniform
magnetic field and an Aharonov-Bohm flux line through the origin.

The screening makes every 1/r and 1/r^2 in the radial problem replaceable by
exponential surrogates (the Greene-Aldrich substitution); that substitution is
what renders the spectrum solvable in closed form, so both the exact and the
substituted effective potentials live here, side by side.
"""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np

from .errors import DomainError

__all__ = [
    "PhysicalParams",
    "FieldConfig",
    "QuantumNumbers",
    "DimensionlessParams",
    "NonIntegerXiWarning",
    "omega_c_from_b_field",
    "reduce",
    "effective_potential",
    "greene_aldrich",
    "approximated_effective_potential",
]


class NonIntegerXiWarning(UserWarning):
    """Flux ratio xi is conventionally an integer; a real value still works."""


@dataclass(frozen=True)
class PhysicalParams:
    """Unit constants and interaction parameters.

    Defaults are the natural-unit golden set (hbar = mu = e = c = 1,
    V1 = 2, delta = 0.005) used by the reference energy table.
    """

    hbar: float = 1.0
    mu: float = 1.0
    e_charge: float = 1.0
    c_light: float = 1.0
    v1: float = 2.0
    delta: float = 0.005

    def __post_init__(self) -> None:
        if not self.hbar > 0:
            raise ValueError("hbar must be > 0")
        if not self.mu > 0:
            raise ValueError("mu must be > 0")
        if not self.c_light > 0:
            raise ValueError("c_light must be > 0")
        if not self.v1 > 0:
            raise ValueError("v1 must be > 0")
        if not self.delta > 0:
            raise ValueError("delta must be > 0")


@dataclass(frozen=True)
class FieldConfig:
    """External field configuration: cyclotron frequency and AB flux ratio."""

    omega_c: float = 0.0
    xi: float = 0.0

    def __post_init__(self) -> None:
        if not self.omega_c >= 0:
            raise ValueError("omega_c must be >= 0")
        if not math.isfinite(self.xi):
            raise ValueError("xi must be finite")
        if self.xi != round(self.xi):
            # static message so repeated sweep constructions dedup to one warning
            warnings.warn(
                "AB flux ratio xi is not an integer; formulas remain valid, "
                "proceeding",
                NonIntegerXiWarning,
                stacklevel=2,
            )


@dataclass(frozen=True)
class QuantumNumbers:
    n: int
    m: int

    def __post_init__(self) -> None:
        if not isinstance(self.n, int) or isinstance(self.n, bool):
            raise ValueError("n must be an integer")
        if not isinstance(self.m, int) or isinstance(self.m, bool):
            raise ValueError("m must be an integer")
        if self.n < 0:
            raise ValueError("n must be >= 0")


@dataclass(frozen=True)
class DimensionlessParams:
    """Screening-scaled couplings of the radial problem.

    beta0 = 2*mu*V1/(hbar^2*delta)         attraction strength
    beta1 = 2*mu*omega_c*(m+xi)/(hbar*delta)   linear field coupling
    beta2 = mu^2*omega_c^2/(hbar^2*delta^2)    quadratic field coupling
    eta   = (m+xi)^2 - 1/4                 centrifugal coefficient

    Physical reductions always satisfy beta1^2 = 4*beta2*(eta + 1/4); the
    constructor does not force it, so detuned values stay constructible (that
    is the only way the negative-radicand error paths downstream can fire).
    """

    beta0: float
    beta1: float
    beta2: float
    eta: float

    def __post_init__(self) -> None:
        if not self.beta0 > 0:
            raise ValueError("beta0 must be > 0")
        if not self.beta2 >= 0:
            raise ValueError("beta2 must be >= 0")
        if not self.eta >= -0.25:
            raise ValueError("eta must be >= -1/4")


def omega_c_from_b_field(b_field: float, params: PhysicalParams) -> float:
    """Magnetic field strength to cyclotron frequency, e*B/(mu*c)."""
    return params.e_charge * b_field / (params.mu * params.c_light)


def reduce(params: PhysicalParams, fields: FieldConfig, m: int) -> DimensionlessParams:
    """Map physical inputs to the dimensionless couplings. Pure, deterministic."""
    shifted = m + fields.xi
    beta0 = 2.0 * params.mu * params.v1 / (params.hbar * params.hbar * params.delta)
    beta1 = 2.0 * params.mu * fields.omega_c / (params.hbar * params.delta) * shifted
    beta2 = (params.mu * fields.omega_c) ** 2 / (params.hbar * params.delta) ** 2
    eta = shifted * shifted - 0.25
    return DimensionlessParams(beta0=beta0, beta1=beta1, beta2=beta2, eta=eta)


def _as_positive_radii(r):
    arr = np.asarray(r, dtype=float)
    if np.any(arr <= 0):
        raise DomainError("r must be > 0")
    return arr


def _maybe_scalar(values, r):
    if np.isscalar(r) or getattr(r, "ndim", 1) == 0:
        return float(values)
    return values


def effective_potential(r, params: PhysicalParams, fields: FieldConfig, m: int):
    """Full radial effective potential at r (scalar or array).

    Four terms: screened attraction, linear and quadratic field terms, and
    the centrifugal term with coefficient (m+xi)^2 - 1/4.
    """
    rr = _as_positive_radii(r)
    shifted = m + fields.xi
    s = np.exp(-params.delta * rr)
    one_minus_s = -np.expm1(-params.delta * rr)
    v = -params.v1 * s / rr
    if fields.omega_c != 0.0:
        v = v + params.hbar * fields.omega_c * shifted * s / (one_minus_s * rr)
        v = v + 0.5 * params.mu * fields.omega_c**2 * s * s / (one_minus_s * one_minus_s)
    eta = shifted * shifted - 0.25
    v = v + (params.hbar * params.hbar / (2.0 * params.mu)) * eta / (rr * rr)
    return _maybe_scalar(v, r)


def greene_aldrich(r, delta: float):
    """Exponential surrogate for 1/r^2: delta^2/(1 - e^(-delta*r))^2."""
    if not delta > 0:
        raise DomainError("delta must be > 0")
    rr = _as_positive_radii(r)
    one_minus_s = -np.expm1(-delta * rr)
    return _maybe_scalar((delta / one_minus_s) ** 2, r)


def approximated_effective_potential(r, params: PhysicalParams, fields: FieldConfig, m: int):
    """Effective potential with every 1/r and 1/r^2 replaced by its
    exponential surrogate (1/r -> delta/(1-e^(-delta*r)) and the
    greene_aldrich stand-in for 1/r^2).

    The closed-form spectrum in `analytic` is exact for this potential, which
    is what the finite-difference oracle's approximated mode checks.
    """
    rr = _as_positive_radii(r)
    shifted = m + fields.xi
    d = params.delta
    s = np.exp(-d * rr)
    one_minus_s = -np.expm1(-d * rr)
    inv_r = d / one_minus_s
    v = -params.v1 * s * inv_r
    if fields.omega_c != 0.0:
        v = v + params.hbar * fields.omega_c * shifted * s * inv_r / one_minus_s
        v = v + 0.5 * params.mu * fields.omega_c**2 * s * s / (one_minus_s * one_minus_s)
    eta = shifted * shifted - 0.25
    v = v + (params.hbar * params.hbar / (2.0 * params.mu)) * eta * inv_r * inv_r
    return _maybe_scalar(v, r)
