"""Reference-table reproduction and spectrum-structure reports.

Everything here is a pure report generator over immutable inputs: the golden
48-cell energy table diffed against embedded published values, degeneracy
grouping, one-axis parameter sweeps with explicit per-cell flags, and the
study of how far the surrogate closed form drifts from the exact-potential
numerics as the screening parameter grows.
"""
from __future__ import annotations

import csv
import math
from dataclasses import dataclass, replace
from importlib import resources

import numpy as np

from .analytic import solve
from .errors import DomainError
from .model import FieldConfig, PhysicalParams
from .oracle import RadialGrid, verify_closed_form

__all__ = [
    "SCENARIOS",
    "GOLDEN_M",
    "GOLDEN_N",
    "MATCH",
    "MISMATCH_DOCUMENTED",
    "MISMATCH_NEW",
    "PublishedEnergy",
    "TableCell",
    "SpectrumTable",
    "DegeneracyGroup",
    "DegeneracyReport",
    "SweepCell",
    "SweepResult",
    "ApproximationErrorCell",
    "ApproximationErrorStudy",
    "load_published",
    "reproduce_table1",
    "degeneracy_report",
    "sweep",
    "approximation_error_study",
]

# the four field scenarios of the golden table, in column order
SCENARIOS: tuple[tuple[str, FieldConfig], ...] = (
    ("omega0_xi0", FieldConfig(omega_c=0.0, xi=0.0)),
    ("omega5_xi0", FieldConfig(omega_c=5.0, xi=0.0)),
    ("omega0_xi5", FieldConfig(omega_c=0.0, xi=5.0)),
    ("omega5_xi5", FieldConfig(omega_c=5.0, xi=5.0)),
)
GOLDEN_M: tuple[int, ...] = (0, -1, 1)
GOLDEN_N: tuple[int, ...] = (0, 1, 2, 3)

MATCH = "MATCH"
MISMATCH_DOCUMENTED = "MISMATCH-DOCUMENTED"
MISMATCH_NEW = "MISMATCH-NEW"

# published energies carry 7 decimals, so agreement is meaningful to 1e-6
TABLE_TOLERANCE = 1e-6


@dataclass(frozen=True)
class PublishedEnergy:
    energy: float
    known_exception: bool


def load_published() -> dict[tuple[int, int, str], PublishedEnergy]:
    """Published golden-table energies keyed by (m, n, scenario)."""
    text = resources.files("yukawa_ab").joinpath("data/reference_energies.csv").read_text()
    table = {}
    for row in csv.DictReader(text.splitlines()):
        key = (int(row["m"]), int(row["n"]), row["scenario"])
        table[key] = PublishedEnergy(
            energy=float(row["energy"]),
            known_exception=row["known_exception"] == "1",
        )
    return table


@dataclass(frozen=True)
class TableCell:
    m: int
    n: int
    scenario: str
    computed: float
    published: float
    abs_diff: float
    status: str


@dataclass(frozen=True)
class SpectrumTable:
    rows: tuple[TableCell, ...]
    scenarios: tuple[str, ...]
    params: PhysicalParams

    def by_status(self, status: str) -> tuple[TableCell, ...]:
        return tuple(cell for cell in self.rows if cell.status == status)

    @property
    def max_matched_diff(self) -> float:
        diffs = [cell.abs_diff for cell in self.rows if cell.status == MATCH]
        return max(diffs) if diffs else math.nan


def reproduce_table1(params: PhysicalParams | None = None) -> SpectrumTable:
    """Recompute the 48 golden cells and classify each against publication.

    A cell is MATCH when |computed - published| <= 1e-6 (the printed
    precision), MISMATCH-DOCUMENTED when it misses but sits on the known
    exceptions list shipped beside the data, and MISMATCH-NEW otherwise.
    """
    if params is None:
        params = PhysicalParams()
    published = load_published()
    rows = []
    for m in GOLDEN_M:
        for name, fields in SCENARIOS:
            for n in GOLDEN_N:
                state = solve(params, fields, n, m, normalized=False)
                ref = published[(m, n, name)]
                diff = abs(state.energy - ref.energy)
                if diff <= TABLE_TOLERANCE:
                    status = MATCH
                elif ref.known_exception:
                    status = MISMATCH_DOCUMENTED
                else:
                    status = MISMATCH_NEW
                rows.append(
                    TableCell(
                        m=m,
                        n=n,
                        scenario=name,
                        computed=state.energy,
                        published=ref.energy,
                        abs_diff=diff,
                        status=status,
                    )
                )
    return SpectrumTable(
        rows=tuple(rows),
        scenarios=tuple(name for name, _ in SCENARIOS),
        params=params,
    )


@dataclass(frozen=True)
class DegeneracyGroup:
    energy: float
    members: tuple[tuple[int, int], ...]
    max_gap: float


@dataclass(frozen=True)
class DegeneracyReport:
    groups: tuple[DegeneracyGroup, ...]
    tolerance: float
    fields: FieldConfig


def degeneracy_report(params: PhysicalParams, fields: FieldConfig, n_max: int, m_set: tuple[int, ...], tolerance: float | None = None) -> DegeneracyReport:
    """Group the (n, m) spectrum into energy levels.

    States sort by energy and a group break opens wherever consecutive
    energies differ by more than the tolerance, so each group's diameter
    (max_gap) is reported alongside. Default tolerance is 1e-12 * max|E|,
    suitable for closed-form-vs-closed-form comparison; pass ~1e-6 when any
    input came from the numeric oracle. tolerance=inf is legal and collapses
    everything into a single group.
    """
    if tolerance is not None and not tolerance > 0:
        raise ValueError("tolerance must be > 0")
    states = [(n, m) for n in range(n_max + 1) for m in sorted(m_set)]
    energies = [
        (solve(params, fields, n, m, normalized=False).energy, (n, m))
        for n, m in states
    ]
    if tolerance is None:
        tolerance = 1e-12 * max(abs(e) for e, _ in energies)
    energies.sort(key=lambda pair: pair[0])
    groups = []
    current = [energies[0]]
    for entry in energies[1:]:
        if entry[0] - current[-1][0] > tolerance:
            groups.append(current)
            current = [entry]
        else:
            current.append(entry)
    groups.append(current)
    return DegeneracyReport(
        groups=tuple(
            DegeneracyGroup(
                energy=sum(e for e, _ in group) / len(group),
                members=tuple(sorted(state for _, state in group)),
                max_gap=group[-1][0] - group[0][0],
            )
            for group in groups
        ),
        tolerance=tolerance,
        fields=fields,
    )


@dataclass(frozen=True)
class SweepCell:
    axis_value: float
    n: int
    m: int
    energy: float | None
    flag: str | None  # None, "unbound", or "non-existent"


@dataclass(frozen=True)
class SweepResult:
    axis: str
    values: tuple[float, ...]
    states: tuple[tuple[int, int], ...]
    cells: tuple[SweepCell, ...]
    monotonicity: dict[tuple[int, int], str]

    def energy_matrix(self) -> np.ndarray:
        """(len(values), len(states)) matrix, NaN where a cell has no energy."""
        out = np.full((len(self.values), len(self.states)), math.nan)
        index = {state: j for j, state in enumerate(self.states)}
        for pos, cell in enumerate(self.cells):
            out[pos // len(self.states), index[(cell.n, cell.m)]] = (
                math.nan if cell.energy is None else cell.energy
            )
        return out


_PARAM_AXES = ("delta", "v1")
_FIELD_AXES = ("omega_c", "xi")


def sweep(params: PhysicalParams, fields: FieldConfig, axis: str, values, states) -> SweepResult:
    """Closed-form energies along one parameter axis for a list of states.

    Every (value, state) cell is reported: bound states carry their energy,
    states pushed into the continuum carry the energy plus an "unbound"
    flag, and states whose quantization condition has no root carry a
    "non-existent" flag. Axis values that violate a physical invariant
    (e.g. delta <= 0) raise ValueError outright.

    Cells are ordered by (value index, n, m); monotonicity per state is
    "increasing", "decreasing", "mixed", or "undefined" (fewer than two
    energies or any missing cell).
    """
    if axis not in _PARAM_AXES + _FIELD_AXES:
        raise ValueError(f"axis must be one of {_PARAM_AXES + _FIELD_AXES}, got {axis!r}")
    values = tuple(float(v) for v in values)
    states = tuple(sorted((int(n), int(m)) for n, m in states))
    cells = []
    for value in values:
        if axis in _PARAM_AXES:
            p, f = replace(params, **{axis: value}), fields
        else:
            p, f = params, replace(fields, **{axis: value})
        for n, m in states:
            try:
                state = solve(p, f, n, m, normalized=False)
            except DomainError:
                cells.append(SweepCell(value, n, m, None, "non-existent"))
            else:
                flag = None if state.is_bound else "unbound"
                cells.append(SweepCell(value, n, m, state.energy, flag))

    monotonicity = {}
    for n, m in states:
        series = [c.energy for c in cells if (c.n, c.m) == (n, m)]
        if len(series) < 2 or any(e is None for e in series):
            monotonicity[(n, m)] = "undefined"
        else:
            diffs = [b - a for a, b in zip(series, series[1:])]
            if all(d > 0 for d in diffs):
                monotonicity[(n, m)] = "increasing"
            elif all(d < 0 for d in diffs):
                monotonicity[(n, m)] = "decreasing"
            else:
                monotonicity[(n, m)] = "mixed"
    return SweepResult(
        axis=axis,
        values=values,
        states=states,
        cells=tuple(cells),
        monotonicity=monotonicity,
    )


@dataclass(frozen=True)
class ApproximationErrorCell:
    delta: float
    n: int
    m: int
    closed_form: float
    exact_numeric: float
    abs_gap: float
    unresolvable: bool


@dataclass(frozen=True)
class ApproximationErrorStudy:
    delta_values: tuple[float, ...]
    states: tuple[tuple[int, int], ...]
    cells: tuple[ApproximationErrorCell, ...]
    monotone: dict[tuple[int, int], bool]


def approximation_error_study(params: PhysicalParams, fields: FieldConfig, states, delta_values, grid: RadialGrid | None = None) -> ApproximationErrorStudy:
    """Gap between the closed form and exact-potential numerics versus delta.

    The screened substitution underlying the closed form is a small-delta
    approximation, so |E_exact_numeric - E_closed_form| should grow with
    delta; the per-state monotone flag records whether it did. Each cell is
    marked unresolvable when the measured gap sits below 10x the exact-mode
    discretization error, meaning the grid cannot distinguish the two
    energies. delta values are processed in ascending order. With grid=None
    every cell gets the state-adapted default box for its own delta.
    """
    delta_values = tuple(sorted(float(d) for d in delta_values))
    states = tuple(sorted((int(n), int(m)) for n, m in states))
    cells = []
    for delta in delta_values:
        p = replace(params, delta=delta)
        for n, m in states:
            report = verify_closed_form(p, fields, n, m, grid=grid)
            gap = abs(report.richardson_exact - report.closed_form)
            exact_disc = abs(report.oracle_exact - report.richardson_exact)
            cells.append(
                ApproximationErrorCell(
                    delta=delta,
                    n=n,
                    m=m,
                    closed_form=report.closed_form,
                    exact_numeric=report.richardson_exact,
                    abs_gap=gap,
                    unresolvable=gap < 10.0 * exact_disc,
                )
            )
    monotone = {}
    for n, m in states:
        series = [c.abs_gap for c in cells if (c.n, c.m) == (n, m)]
        monotone[(n, m)] = all(b > a for a, b in zip(series, series[1:]))
    return ApproximationErrorStudy(
        delta_values=delta_values,
        states=states,
        cells=tuple(cells),
        monotone=monotone,
    )
