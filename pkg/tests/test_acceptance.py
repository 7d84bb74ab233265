"""Acceptance gate: one test per release criterion.

Each test carries the `acceptance` marker so the terminal summary prints a
PASS/FAIL line per criterion. Tolerances here are contractual; do not relax
them. The oracle-validation criterion is expected to fail in its m=0 slice,
for the reason spelled out in the assertion message and in the README's
known-limitations section.
"""
import math
import time
import warnings

import numpy as np
import pytest

from yukawa_ab import (
    FieldConfig,
    NonIntegerXiWarning,
    PhysicalParams,
    energy_closed_form,
    energy_from_quantization,
    radial_wavefunction,
    reduce,
    solve,
)
from yukawa_ab.analysis import (
    MATCH,
    MISMATCH_DOCUMENTED,
    MISMATCH_NEW,
    reproduce_table1,
)
from yukawa_ab.oracle import (
    RadialGrid,
    assemble_hamiltonian,
    eigenvalues_lowest,
    verify_closed_form,
    with_eigenvectors,
)

P = PhysicalParams()
ZERO = FieldConfig()
GOLDEN = [(n, m) for n in range(4) for m in (0, -1, 1)]


@pytest.mark.acceptance("table1-reproduction")
def test_reference_table_reproduction():
    start = time.perf_counter()
    table = reproduce_table1()
    elapsed = time.perf_counter() - start
    assert elapsed < 1.0

    assert len(table.rows) == 48
    assert len(table.by_status(MATCH)) == 47
    assert len(table.by_status(MISMATCH_NEW)) == 0
    (exception,) = table.by_status(MISMATCH_DOCUMENTED)
    assert (exception.m, exception.n, exception.scenario) == (-1, 1, "omega5_xi0")
    # the formula's value sits one decade above the printed one
    assert exception.computed == pytest.approx(9.249e-06, abs=5e-10)
    assert exception.published == pytest.approx(9.25e-07)
    assert table.max_matched_diff < 1e-6


@pytest.mark.acceptance("dual-formula-identity")
def test_closed_form_matches_quantization_route():
    rng = np.random.default_rng(20260816)
    draws = []
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", NonIntegerXiWarning)
        while len(draws) < 1000:
            delta = 10.0 ** rng.uniform(-4.0, math.log10(0.5))
            v1 = rng.uniform(0.5, 10.0)
            omega_c = 0.0 if rng.random() < 0.5 else rng.uniform(0.0, 10.0)
            xi = 0.0 if rng.random() < 0.5 else rng.uniform(0.0, 6.0)
            m = int(rng.integers(-3, 4))
            n = int(rng.integers(0, 7))
            params = PhysicalParams(v1=float(v1), delta=float(delta))
            dp = reduce(params, FieldConfig(omega_c=float(omega_c), xi=float(xi)), m)
            radicand = dp.beta2 + dp.beta1 + dp.eta + 0.25
            if radicand < 0:
                continue
            big_n = n + 0.5 + math.sqrt(radicand)
            c = dp.beta0 + dp.beta2 - dp.eta
            if (c + big_n * big_n) / (2.0 * big_n) <= 0:
                continue
            epsilon = ((c - big_n * big_n) / (2.0 * big_n)) ** 2 - dp.eta
            if epsilon <= 1e-2 * max(1.0, dp.eta):
                continue  # keep clear of the unbound threshold
            draws.append((dp, n, params))

    start = time.perf_counter()
    worst = 0.0
    for dp, n, params in draws:
        e1 = energy_closed_form(dp, n, params)
        e2 = energy_from_quantization(dp, n, params)
        worst = max(worst, abs(e1 - e2) / abs(e1))
    elapsed = time.perf_counter() - start
    assert elapsed < 1.0
    assert len(draws) == 1000
    assert worst <= 1e-12


@pytest.mark.acceptance("oracle-validation")
def test_numeric_oracle_confirms_zero_field_levels():
    start = time.perf_counter()
    gaps = {}
    for n, m in GOLDEN:
        report = verify_closed_form(P, ZERO, n, m)
        gaps[(n, m)] = report.rel_gap_approx
    elapsed = time.perf_counter() - start
    assert elapsed < 30.0

    failing = {state: gap for state, gap in gaps.items() if gap > 1e-3}
    assert not failing, (
        "finite-difference eigenvalues disagree with the closed form beyond "
        f"1e-3 relative for {sorted(failing)}: gaps "
        f"{[f'{failing[s]:.3g}' for s in sorted(failing)]}. Every failing state "
        "has m + xi = 0, where the centrifugal coefficient reaches the "
        "critical inverse-square strength -hbar^2/(8 mu r^2); a Dirichlet "
        "cutoff at r_min then converges only as O(1/|ln r_min|), so no "
        "affordable grid reaches 1e-3. See README, known limitations."
    )


@pytest.mark.acceptance("coulomb-limit")
def test_screening_free_limit_recovers_coulomb():
    start = time.perf_counter()
    weak = PhysicalParams(delta=1e-6)
    worst = 0.0
    for n in range(4):
        for m in range(-2, 3):
            computed = solve(weak, ZERO, n, m, normalized=False).energy
            coulomb = -weak.mu * weak.v1**2 / (
                2.0 * weak.hbar**2 * (n + abs(m) + 0.5) ** 2
            )
            worst = max(worst, abs(computed - coulomb) / abs(coulomb))
    # the printed ground cell is the delta=0.005 remnant of E -> -8
    tiny = PhysicalParams(delta=1e-9)
    limit_energy = solve(tiny, ZERO, 0, 0, normalized=False).energy
    printed = solve(P, ZERO, 0, 0, normalized=False).energy
    elapsed = time.perf_counter() - start
    assert elapsed < 1.0
    assert worst <= 1e-4
    assert limit_energy == pytest.approx(-8.0, abs=1e-9)
    assert f"{printed:.7f}" == "-8.0000031"


@pytest.mark.acceptance("degeneracy-structure")
def test_field_free_degeneracy_and_its_lifting():
    start = time.perf_counter()
    flux = FieldConfig(xi=5.0)
    both = FieldConfig(omega_c=5.0, xi=5.0)
    for n in range(4):
        plus = solve(P, ZERO, n, 1, normalized=False).energy
        minus = solve(P, ZERO, n, -1, normalized=False).energy
        assert plus == minus  # exact, not approximate
        split = abs(
            solve(P, flux, n, 1, normalized=False).energy
            - solve(P, flux, n, -1, normalized=False).energy
        )
        assert split > 1e-9
    for n, m in GOLDEN:
        lifted = solve(P, both, n, m, normalized=False).energy
        base = solve(P, ZERO, n, m, normalized=False).energy
        assert lifted > base
    elapsed = time.perf_counter() - start
    assert elapsed < 1.0


@pytest.mark.acceptance("oracle-self-tests")
def test_oracle_on_exactly_solvable_problems():
    start = time.perf_counter()

    box = RadialGrid(1e-9, 1.0, 2000)
    box_ham = assemble_hamiltonian(box, np.zeros(2000))
    box_e0 = float(eigenvalues_lowest(box_ham, 1).eigenvalues[0])

    osc = RadialGrid(1e-9, 12.0, 3000)
    osc_ham = assemble_hamiltonian(osc, 0.5 * osc.nodes() ** 2)
    osc_spectrum = with_eigenvectors(osc_ham, eigenvalues_lowest(osc_ham, 3))

    coarse = assemble_hamiltonian(RadialGrid(1e-9, 1.0, 500), np.zeros(500))
    fine = assemble_hamiltonian(RadialGrid(1e-9, 1.0, 1001), np.zeros(1001))
    e_coarse = float(eigenvalues_lowest(coarse, 1).eigenvalues[0])
    e_fine = float(eigenvalues_lowest(fine, 1).eigenvalues[0])

    elapsed = time.perf_counter() - start
    assert elapsed < 10.0

    assert abs(box_e0 - math.pi**2 / 2) / (math.pi**2 / 2) <= 1e-3
    assert osc_spectrum.eigenvalues == pytest.approx([1.5, 3.5, 5.5], rel=1e-3)
    assert osc_spectrum.node_counts.tolist() == [0, 1, 2]
    exact = math.pi**2 / 2 / (1.0 - 1e-9) ** 2
    ratio = (e_coarse - exact) / (e_fine - exact)
    assert 3.5 <= ratio <= 4.5


@pytest.mark.acceptance("wavefunction-properties")
def test_analytic_wavefunctions_behave():
    from scipy.integrate import quad

    start = time.perf_counter()
    # all four states decay within r ~ 40 at these parameters
    r = np.linspace(1e-6, 200.0, 40001)
    states = {}
    for n in range(4):
        state = solve(P, ZERO, n, 0, normalized=True)
        states[n] = state
        profile = radial_wavefunction(state, r, P.delta)
        peak = np.max(np.abs(profile))

        # vanishes at both ends
        assert abs(profile[0]) < 1e-2 * peak
        assert abs(profile[-1]) < 1e-6 * peak

        # exactly n interior nodes
        signs = profile[np.abs(profile) > 1e-10 * peak]
        flips = int(np.sum(signs[:-1] * signs[1:] < 0))
        assert flips == n

        # unit norm, integrated at the precision the claim demands
        norm, _ = quad(
            lambda x: radial_wavefunction(state, x, P.delta) ** 2,
            1e-12,
            300.0,
            epsabs=0.0,
            epsrel=1e-12,
            limit=400,
        )
        assert norm == pytest.approx(1.0, abs=1e-8)

    for n_hi in range(1, 4):
        for n_lo in range(n_hi):
            with warnings.catch_warnings():
                # the overlap is a cancellation integral of magnitude ~1e-11;
                # quad flags that its relative target is roundoff-limited there
                warnings.simplefilter("ignore")
                overlap, _ = quad(
                    lambda x: radial_wavefunction(states[n_hi], x, P.delta)
                    * radial_wavefunction(states[n_lo], x, P.delta),
                    1e-12,
                    300.0,
                    epsabs=1e-14,
                    epsrel=1e-10,
                    limit=400,
                )
            assert abs(overlap) < 1e-6
    elapsed = time.perf_counter() - start
    assert elapsed < 5.0
