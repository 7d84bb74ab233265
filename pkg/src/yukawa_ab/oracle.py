"""Independent finite-difference eigensolver for the radial problem.

A uniform-grid 3-point discretization with Dirichlet walls gives a symmetric
tridiagonal Hamiltonian; eigenvalues come from Sturm-count bisection and
eigenvectors from shifted inverse iteration. Run in two potential modes it
serves two distinct jobs:

  * GREENE_ALDRICH mode discretizes the surrogate potential whose spectrum
    the closed form solves exactly, so agreement validates the algebra.
  * EXACT mode discretizes the true effective potential, so the gap to the
    closed form measures the quality of the surrogate itself.

Caveat that matters for m + xi = 0 states: there the centrifugal coefficient
is -1/4 and the effective potential carries an attractive -hbar^2/(8 mu r^2),
the critical inverse-square strength. A Dirichlet wall at any representable
r_min then shifts the whole spectrum by O(1/|ln r_min|) relative to the
closed form, and no affordable grid removes the shift. Reports are still
produced; their gaps are real properties of the cutoff problem, not solver
bugs. See the README for the full story.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from . import kernels
from .analytic import solve
from .errors import DomainError, SingularShift
from .model import (
    FieldConfig,
    PhysicalParams,
    approximated_effective_potential,
    effective_potential,
)

__all__ = [
    "PotentialMode",
    "RadialGrid",
    "TridiagonalHamiltonian",
    "NumericSpectrum",
    "VerificationReport",
    "default_grid",
    "assemble_hamiltonian",
    "build_hamiltonian",
    "eigenvalues_lowest",
    "sturm_count_below",
    "eigenvector",
    "with_eigenvectors",
    "richardson_pair",
    "verify_closed_form",
]


class PotentialMode(enum.Enum):
    EXACT = "exact"
    GREENE_ALDRICH = "greene_aldrich"


@dataclass(frozen=True)
class RadialGrid:
    """Uniform grid of interior nodes on (r_min, r_max).

    The num_points unknowns all lie strictly inside; the Dirichlet zeros sit
    on the walls themselves, so spacing = (r_max - r_min)/(num_points + 1).
    """

    r_min: float
    r_max: float
    num_points: int

    def __post_init__(self) -> None:
        if not 0 < self.r_min < self.r_max:
            raise ValueError("need 0 < r_min < r_max")
        if self.num_points < 100:
            raise ValueError("num_points must be >= 100")

    @property
    def spacing(self) -> float:
        return (self.r_max - self.r_min) / (self.num_points + 1)

    def nodes(self) -> np.ndarray:
        return self.r_min + self.spacing * np.arange(1, self.num_points + 1)


@dataclass(frozen=True, eq=False)
class TridiagonalHamiltonian:
    diagonal: np.ndarray
    off_diagonal: np.ndarray
    grid: RadialGrid
    potential_mode: PotentialMode


@dataclass(eq=False)
class NumericSpectrum:
    eigenvalues: np.ndarray
    eigenvectors: np.ndarray | None
    node_counts: np.ndarray | None
    mode: PotentialMode


def default_grid(params: PhysicalParams, num_points: int = 4000, r_min: float | None = None, r_max: float | None = None) -> RadialGrid:
    """Default box: r_min = 1e-6/delta, r_max = 40/delta, both overridable."""
    if r_min is None:
        r_min = 1e-6 / params.delta
    if r_max is None:
        r_max = 40.0 / params.delta
    return RadialGrid(r_min=r_min, r_max=r_max, num_points=num_points)


def assemble_hamiltonian(grid: RadialGrid, potential_values, hbar: float = 1.0, mu: float = 1.0, mode: PotentialMode = PotentialMode.EXACT) -> TridiagonalHamiltonian:
    """3-point Laplacian plus a sampled potential, Dirichlet walls.

    potential_values: array over grid.nodes(), or a callable evaluated there.
    Used directly by the self-tests (box, oscillator); build_hamiltonian is
    the physics-aware front end.
    """
    if callable(potential_values):
        v = np.asarray(potential_values(grid.nodes()), dtype=float)
    else:
        v = np.asarray(potential_values, dtype=float)
    if v.shape != (grid.num_points,):
        raise ValueError("potential_values length must equal num_points")
    h = grid.spacing
    kinetic = hbar * hbar / (mu * h * h)
    diagonal = kinetic + v
    off_diagonal = np.full(grid.num_points - 1, -0.5 * kinetic)
    return TridiagonalHamiltonian(
        diagonal=diagonal, off_diagonal=off_diagonal, grid=grid, potential_mode=mode
    )


def build_hamiltonian(grid: RadialGrid, params: PhysicalParams, fields: FieldConfig, m: int, mode: PotentialMode, overflow_factor: float = 1e12) -> TridiagonalHamiltonian:
    """Discretized Hamiltonian for the chosen potential mode.

    Rejects grids whose r_min drives |V| beyond overflow_factor times the
    energy scale hbar^2 delta^2/(2 mu); such matrices drown the spectrum in
    rounding noise long before they overflow.
    """
    r = grid.nodes()
    if mode is PotentialMode.EXACT:
        v = effective_potential(r, params, fields, m)
    elif mode is PotentialMode.GREENE_ALDRICH:
        v = approximated_effective_potential(r, params, fields, m)
    else:
        raise ValueError(f"unknown potential mode {mode!r}")
    scale = params.hbar**2 * params.delta**2 / (2.0 * params.mu)
    peak = float(np.max(np.abs(v)))
    if not math.isfinite(peak) or peak > overflow_factor * scale:
        raise DomainError(
            f"potential magnitude {peak!r} at this r_min exceeds the overflow "
            f"guard {overflow_factor:g} * {scale!r}"
        )
    return assemble_hamiltonian(grid, v, hbar=params.hbar, mu=params.mu, mode=mode)


def eigenvalues_lowest(ham: TridiagonalHamiltonian, k: int) -> NumericSpectrum:
    """The k algebraically smallest eigenvalues by Sturm bisection."""
    n = ham.diagonal.shape[0]
    if not 1 <= k <= n:
        raise ValueError(f"k must be in 1..{n}, got {k}")
    values = kernels.lowest_eigenvalues(ham.diagonal, ham.off_diagonal, k)
    return NumericSpectrum(
        eigenvalues=values, eigenvectors=None, node_counts=None, mode=ham.potential_mode
    )


def sturm_count_below(ham: TridiagonalHamiltonian, sigma: float) -> int:
    """Number of eigenvalues below the shift sigma."""
    return kernels.sturm_count(ham.diagonal, ham.off_diagonal, sigma)


def _count_sign_changes(v: np.ndarray) -> int:
    # ignore components below 1e-10 of the peak so rounding dust near the
    # walls cannot masquerade as nodes
    significant = v[np.abs(v) > 1e-10 * np.max(np.abs(v))]
    signs = np.sign(significant)
    return int(np.sum(signs[1:] * signs[:-1] < 0))


def eigenvector(ham: TridiagonalHamiltonian, eigenvalue: float, *, max_iter: int = 8) -> tuple[np.ndarray, int]:
    """Grid-sampled eigenfunction by shifted inverse iteration.

    Returns (vector, node_count); the vector is normalized so the trapezoidal
    integral of R^2 dr over the walls-included profile equals 1, with its
    peak component made positive.
    """
    n = ham.diagonal.shape[0]
    shift = eigenvalue
    scale = float(np.max(np.abs(ham.diagonal))) + 2.0 * float(
        np.max(np.abs(ham.off_diagonal), initial=0.0)
    )
    v = np.full(n, 1.0 / math.sqrt(n))
    for _ in range(max_iter):
        try:
            w = kernels.solve_shifted(ham.diagonal, ham.off_diagonal, shift, v)
        except SingularShift:
            # converged shift can sit exactly on the eigenvalue; nudge it
            shift = shift + 1e-12 * (abs(eigenvalue) if eigenvalue != 0.0 else 1.0)
            continue
        v = w / np.linalg.norm(w)
        residual = v * (ham.diagonal - eigenvalue)
        residual[:-1] += ham.off_diagonal * v[1:]
        residual[1:] += ham.off_diagonal * v[:-1]
        if np.linalg.norm(residual) <= 1e-10 * scale:
            break
    v = v * np.sign(v[int(np.argmax(np.abs(v)))])
    nodes = _count_sign_changes(v)
    # trapezoid over [wall, nodes..., wall]; the wall values are exact zeros
    v = v / math.sqrt(ham.grid.spacing * float(np.sum(v * v)))
    return v, nodes


def with_eigenvectors(ham: TridiagonalHamiltonian, spectrum: NumericSpectrum) -> NumericSpectrum:
    """Fill in eigenvectors and node counts for an eigenvalue-only spectrum."""
    vectors = []
    counts = []
    for value in spectrum.eigenvalues:
        vec, nodes = eigenvector(ham, float(value))
        vectors.append(vec)
        counts.append(nodes)
    return NumericSpectrum(
        eigenvalues=spectrum.eigenvalues,
        eigenvectors=np.array(vectors),
        node_counts=np.array(counts),
        mode=spectrum.mode,
    )


def richardson_pair(coarse_value: float, fine_value: float, coarse_spacing: float, fine_spacing: float) -> float:
    """Two-grid limit estimate cancelling the leading O(h^2) error term.

    Weights use the actual spacings, so grids whose point counts are not an
    exact 2x refinement still extrapolate cleanly.
    """
    denom = coarse_spacing**2 - fine_spacing**2
    if denom <= 0:
        raise ValueError("fine grid must be finer than coarse grid")
    return fine_value + fine_spacing**2 * (fine_value - coarse_value) / denom


@dataclass(frozen=True)
class VerificationReport:
    n: int
    m: int
    closed_form: float
    oracle_approx: float
    oracle_exact: float
    richardson_approx: float
    richardson_exact: float
    abs_gap_approx: float
    rel_gap_approx: float
    abs_gap_exact: float
    rel_gap_exact: float
    discretization_error: float
    unresolvable: bool
    r_min_sensitivity_approx: float
    r_min_sensitivity_exact: float
    r_min: float
    r_max: float
    coarse_points: int
    fine_points: int


def _nth_eigenvalue(grid: RadialGrid, params, fields, m: int, mode: PotentialMode, n: int, overflow_factor: float) -> float:
    ham = build_hamiltonian(grid, params, fields, m, mode, overflow_factor=overflow_factor)
    return float(eigenvalues_lowest(ham, n + 1).eigenvalues[n])


def verify_closed_form(params: PhysicalParams, fields: FieldConfig, n: int, m: int, grid: RadialGrid | None = None, *, num_points: int | None = None, r_min: float | None = None, r_max: float | None = None, refine_factor: int = 2, overflow_factor: float = 1e12) -> VerificationReport:
    """Cross-check one closed-form level against both oracle modes.

    Runs each mode on the given grid and a refine_factor-times finer one,
    Richardson-extrapolates, and reports gaps plus two honesty signals: an
    `unresolvable` flag when |E| sits under 10x the discretization error, and
    the spectrum's sensitivity to moving r_min up by a factor of 10 (large
    exactly when the Dirichlet cutoff is doing physics, as at m + xi = 0).

    With grid=None a state-adapted box is used: r_min = 1e-6/delta and
    r_max = min(40/delta, 38/(lam*delta)), since lam*delta is the state's
    decay rate and a box much wider than the state starves it of points.
    num_points, r_min, and r_max override individual pieces of that default
    and are rejected when an explicit grid is also given.
    """
    state = solve(params, fields, n, m, normalized=False)
    if not state.is_bound:
        raise DomainError(
            f"closed-form state (n={n}, m={m}) is unbound (E = {state.energy!r}); "
            "nothing to verify"
        )
    if grid is None:
        lam_delta = state.exponents.lam * params.delta
        if r_min is None:
            r_min = 1e-6 / params.delta
        if r_max is None:
            r_max = min(40.0 / params.delta, 38.0 / lam_delta)
        grid = RadialGrid(r_min=r_min, r_max=r_max, num_points=num_points or 4000)
    elif num_points is not None or r_min is not None or r_max is not None:
        raise ValueError("pass either grid or its overrides, not both")
    if refine_factor < 2:
        raise ValueError("refine_factor must be >= 2")

    fine = RadialGrid(grid.r_min, grid.r_max, grid.num_points * refine_factor)
    results = {}
    for mode in (PotentialMode.GREENE_ALDRICH, PotentialMode.EXACT):
        coarse_e = _nth_eigenvalue(grid, params, fields, m, mode, n, overflow_factor)
        fine_e = _nth_eigenvalue(fine, params, fields, m, mode, n, overflow_factor)
        rich = richardson_pair(coarse_e, fine_e, grid.spacing, fine.spacing)
        shifted = RadialGrid(grid.r_min * 10.0, grid.r_max, fine.num_points)
        moved_e = _nth_eigenvalue(shifted, params, fields, m, mode, n, overflow_factor)
        results[mode] = (coarse_e, fine_e, rich, abs(fine_e - moved_e))

    _, fine_a, rich_a, sens_a = results[PotentialMode.GREENE_ALDRICH]
    _, fine_x, rich_x, sens_x = results[PotentialMode.EXACT]
    disc_error = abs(fine_a - rich_a)
    closed = state.energy
    return VerificationReport(
        n=n,
        m=m,
        closed_form=closed,
        oracle_approx=fine_a,
        oracle_exact=fine_x,
        richardson_approx=rich_a,
        richardson_exact=rich_x,
        abs_gap_approx=abs(rich_a - closed),
        rel_gap_approx=abs(rich_a - closed) / abs(closed),
        abs_gap_exact=abs(rich_x - closed),
        rel_gap_exact=abs(rich_x - closed) / abs(closed),
        discretization_error=disc_error,
        unresolvable=abs(closed) < 10.0 * disc_error,
        r_min_sensitivity_approx=sens_a,
        r_min_sensitivity_exact=sens_x,
        r_min=grid.r_min,
        r_max=grid.r_max,
        coarse_points=grid.num_points,
        fine_points=fine.num_points,
    )
