"""Command-line front end.

Eight subcommands (energy, spectrum, wavefunction, potential, table1,
verify, sweep, degeneracy) share one set of global flags for the physical
configuration and serialize to CSV or JSON. Output is deterministic:
identical invocations produce byte-identical bytes. Energies in CSV carry
7 decimals to mirror the published table; JSON carries full precision and
round-trips exactly. Exit codes: 0 success, 1 verification failure or a
computation error (serialized into the output), 2 usage error.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import pathlib
import sys
from dataclasses import dataclass

import numpy as np

from .analysis import (
    MISMATCH_NEW,
    degeneracy_report,
    reproduce_table1,
    sweep,
)
from .analytic import radial_wavefunction, solve
from .errors import DomainError, UsageError, YukawaABError
from .model import (
    FieldConfig,
    PhysicalParams,
    approximated_effective_potential,
    effective_potential,
    omega_c_from_b_field,
)
from .oracle import verify_closed_form

__all__ = ["RunConfig", "parse_args", "run", "main"]

COMMANDS = (
    "energy",
    "spectrum",
    "wavefunction",
    "potential",
    "table1",
    "verify",
    "sweep",
    "degeneracy",
)

# verify exit gate: relative gap between closed form and extrapolated
# surrogate-mode numerics beyond this is a reportable failure
VERIFY_REL_TOLERANCE = 1e-3


@dataclass
class RunConfig:
    command: str
    physical: PhysicalParams
    fields: FieldConfig
    n: int | None = None
    m: int | None = None
    n_max: int = 3
    m_set: tuple[int, ...] = (0, -1, 1)
    r_min: float | None = None
    r_max: float | None = None
    points: int | None = None
    axis: str | None = None
    values: tuple[float, ...] = ()
    tolerance: float | None = None
    fmt: str = "csv"
    output: str | None = None
    strict_integer_xi: bool = False


def _parse_int_list(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(tok) for tok in text.split(",") if tok.strip())
    except ValueError:
        raise UsageError("m-set must be a comma-separated list of integers") from None


def _parse_float_list(text: str) -> tuple[float, ...]:
    try:
        return tuple(float(tok) for tok in text.split(",") if tok.strip())
    except ValueError:
        raise UsageError("values must be a comma-separated list of numbers") from None


def _build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    phys = common.add_argument_group("physical configuration")
    phys.add_argument("--hbar", type=float, default=1.0)
    phys.add_argument("--mu", type=float, default=1.0)
    phys.add_argument("--e-charge", type=float, default=1.0)
    phys.add_argument("--c-light", type=float, default=1.0)
    phys.add_argument("--v1", type=float, default=2.0)
    phys.add_argument("--delta", type=float, default=0.005)
    field_group = common.add_mutually_exclusive_group()
    field_group.add_argument("--omega-c", type=float, default=None)
    field_group.add_argument("--b-field", type=float, default=None)
    common.add_argument("--xi", type=float, default=0.0)
    common.add_argument("--format", choices=("csv", "json"), default=None)
    common.add_argument("--output", default=None)
    common.add_argument("--strict-integer-xi", action="store_true")

    parser = argparse.ArgumentParser(
        prog="yukawa-ab",
        description="Bound states of a screened Coulomb system in magnetic and flux fields",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("energy", parents=[common], help="one closed-form energy level")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--m", type=int, required=True)

    p = sub.add_parser("spectrum", parents=[common], help="energy grid over n and m")
    p.add_argument("--n-max", type=int, default=3)
    p.add_argument("--m-set", default="0,-1,1")

    p = sub.add_parser("wavefunction", parents=[common], help="normalized radial profile")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--r-min", type=float, default=None)
    p.add_argument("--r-max", type=float, default=None)
    p.add_argument("--points", type=int, default=500)

    p = sub.add_parser("potential", parents=[common], help="effective potential profiles")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--r-min", type=float, default=None)
    p.add_argument("--r-max", type=float, default=None)
    p.add_argument("--points", type=int, default=500)

    sub.add_parser("table1", parents=[common], help="reproduce the published energy table")

    p = sub.add_parser("verify", parents=[common], help="finite-difference cross-check")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--r-min", type=float, default=None)
    p.add_argument("--r-max", type=float, default=None)
    p.add_argument("--points", type=int, default=None)

    p = sub.add_parser("sweep", parents=[common], help="energies along one parameter axis")
    p.add_argument("--axis", choices=("delta", "v1", "omega_c", "xi"), required=True)
    p.add_argument("--values", required=True)
    p.add_argument("--n-max", type=int, default=3)
    p.add_argument("--m-set", default="0,-1,1")

    p = sub.add_parser("degeneracy", parents=[common], help="energy-level grouping")
    p.add_argument("--n-max", type=int, default=3)
    p.add_argument("--m-set", default="0,-1,1")
    p.add_argument("--tolerance", type=float, default=None)

    return parser


def parse_args(argv=None) -> RunConfig:
    """Parse and validate; raises UsageError naming the violated invariant."""
    ns = _build_parser().parse_args(argv)
    try:
        physical = PhysicalParams(
            hbar=ns.hbar,
            mu=ns.mu,
            e_charge=ns.e_charge,
            c_light=ns.c_light,
            v1=ns.v1,
            delta=ns.delta,
        )
        if ns.strict_integer_xi and not float(ns.xi).is_integer():
            raise ValueError("xi must be an integer when --strict-integer-xi is set")
        if ns.b_field is not None:
            omega_c = omega_c_from_b_field(ns.b_field, physical)
        elif ns.omega_c is not None:
            omega_c = ns.omega_c
        else:
            omega_c = 0.0
        fields = FieldConfig(omega_c=omega_c, xi=ns.xi)

        config = RunConfig(
            command=ns.command,
            physical=physical,
            fields=fields,
            fmt=ns.format or ("json" if ns.command == "verify" else "csv"),
            output=ns.output,
            strict_integer_xi=ns.strict_integer_xi,
        )
        if hasattr(ns, "n"):
            config.n = ns.n
            config.m = ns.m
            if ns.n < 0:
                raise ValueError("n must be >= 0")
        if ns.command == "potential":
            config.m = ns.m
        if hasattr(ns, "n_max"):
            if ns.n_max < 0:
                raise ValueError("n_max must be >= 0")
            config.n_max = ns.n_max
            config.m_set = _parse_int_list(ns.m_set)
            if not config.m_set:
                raise ValueError("m-set must not be empty")
        if hasattr(ns, "r_min"):
            config.r_min = ns.r_min
            config.r_max = ns.r_max
            config.points = ns.points
            if ns.r_min is not None and not ns.r_min > 0:
                raise ValueError("r_min must be > 0")
            if ns.r_min is not None and ns.r_max is not None and not ns.r_min < ns.r_max:
                raise ValueError("need 0 < r_min < r_max")
            if ns.command == "verify":
                if ns.points is not None and ns.points < 100:
                    raise ValueError("num_points must be >= 100")
            elif ns.points < 2:
                raise ValueError("points must be >= 2")
        if ns.command == "sweep":
            config.axis = ns.axis
            config.values = _parse_float_list(ns.values)
        if ns.command == "degeneracy":
            config.tolerance = ns.tolerance
            if ns.tolerance is not None and not ns.tolerance > 0:
                raise ValueError("tolerance must be > 0")
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    return config


def _csv_text(header, rows) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buf.getvalue()


def _json_text(obj) -> str:
    return json.dumps(obj, indent=2, allow_nan=False) + "\n"


def _energy_7dp(value: float) -> str:
    return f"{value:.7f}"


def _bool_csv(value: bool) -> str:
    return "true" if value else "false"


def _energy_rows(config: RunConfig, states) -> tuple[int, str]:
    solved = [
        (m, n, solve(config.physical, config.fields, n, m, normalized=False))
        for n, m in states
    ]
    if config.fmt == "json":
        rows = [
            {
                "m": m,
                "n": n,
                "omega_c": config.fields.omega_c,
                "xi": config.fields.xi,
                "energy": st.energy,
                "is_bound": st.is_bound,
            }
            for m, n, st in solved
        ]
        return 0, _json_text(rows[0] if config.command == "energy" else {"rows": rows})
    rows = [
        [
            m,
            n,
            repr(config.fields.omega_c),
            repr(config.fields.xi),
            _energy_7dp(st.energy),
            _bool_csv(st.is_bound),
        ]
        for m, n, st in solved
    ]
    return 0, _csv_text(["m", "n", "omega_c", "xi", "energy", "is_bound"], rows)


def _run_energy(config: RunConfig) -> tuple[int, str]:
    return _energy_rows(config, [(config.n, config.m)])


def _run_spectrum(config: RunConfig) -> tuple[int, str]:
    states = [(n, m) for n in range(config.n_max + 1) for m in sorted(config.m_set)]
    return _energy_rows(config, states)


def _run_wavefunction(config: RunConfig) -> tuple[int, str]:
    params = config.physical
    state = solve(params, config.fields, config.n, config.m, normalized=True)
    if not state.is_bound:
        raise DomainError(
            f"state (n={config.n}, m={config.m}) is unbound (E = {state.energy!r}); "
            "no normalizable wavefunction"
        )
    r_min = config.r_min if config.r_min is not None else 1e-6 / params.delta
    if config.r_max is not None:
        r_max = config.r_max
    else:
        # same cutoff rule as the normalization integral: the point where
        # the envelope has decayed by 8 decades, capped at 1e6/delta
        r_max = min(8.0 * math.log(10.0) / (state.exponents.lam * params.delta), 1e6 / params.delta)
    if not r_min < r_max:
        raise UsageError("need 0 < r_min < r_max")
    r = np.linspace(r_min, r_max, config.points)
    values = radial_wavefunction(state, r, params.delta)
    if config.fmt == "json":
        return 0, _json_text(
            {
                "n": config.n,
                "m": config.m,
                "energy": state.energy,
                "r": [float(x) for x in r],
                "R": [float(y) for y in values],
            }
        )
    rows = [[repr(float(x)), repr(float(y))] for x, y in zip(r, values)]
    return 0, _csv_text(["r", "R"], rows)


def _run_potential(config: RunConfig) -> tuple[int, str]:
    params = config.physical
    r_min = config.r_min if config.r_min is not None else 1e-6 / params.delta
    r_max = config.r_max if config.r_max is not None else 40.0 / params.delta
    if not r_min < r_max:
        raise UsageError("need 0 < r_min < r_max")
    r = np.linspace(r_min, r_max, config.points)
    v_exact = effective_potential(r, params, config.fields, config.m)
    v_approx = approximated_effective_potential(r, params, config.fields, config.m)
    if config.fmt == "json":
        return 0, _json_text(
            {
                "m": config.m,
                "r": [float(x) for x in r],
                "v_exact": [float(v) for v in v_exact],
                "v_approx": [float(v) for v in v_approx],
            }
        )
    rows = [
        [repr(float(x)), repr(float(a)), repr(float(b))]
        for x, a, b in zip(r, v_exact, v_approx)
    ]
    return 0, _csv_text(["r", "v_exact", "v_approx"], rows)


def _run_table1(config: RunConfig) -> tuple[int, str]:
    table = reproduce_table1(config.physical)
    failed = any(cell.status == MISMATCH_NEW for cell in table.rows)
    if config.fmt == "json":
        payload = {
            "rows": [
                {
                    "m": c.m,
                    "n": c.n,
                    "scenario": c.scenario,
                    "computed": c.computed,
                    "published": c.published,
                    "abs_diff": c.abs_diff,
                    "status": c.status,
                }
                for c in table.rows
            ],
            "summary": {
                "match": len(table.by_status("MATCH")),
                "mismatch_documented": len(table.by_status("MISMATCH-DOCUMENTED")),
                "mismatch_new": len(table.by_status(MISMATCH_NEW)),
            },
        }
        return (1 if failed else 0), _json_text(payload)
    rows = [
        [
            c.m,
            c.n,
            c.scenario,
            _energy_7dp(c.computed),
            _energy_7dp(c.published),
            c.status,
        ]
        for c in table.rows
    ]
    text = _csv_text(["m", "n", "scenario", "computed", "published", "status"], rows)
    return (1 if failed else 0), text


def _run_verify(config: RunConfig) -> tuple[int, str]:
    report = verify_closed_form(
        config.physical,
        config.fields,
        config.n,
        config.m,
        num_points=config.points,
        r_min=config.r_min,
        r_max=config.r_max,
    )
    failed = report.rel_gap_approx > VERIFY_REL_TOLERANCE and not report.unresolvable
    items = [
        ("n", report.n),
        ("m", report.m),
        ("closed_form", report.closed_form),
        ("oracle_approx", report.oracle_approx),
        ("oracle_exact", report.oracle_exact),
        ("richardson_approx", report.richardson_approx),
        ("richardson_exact", report.richardson_exact),
        ("abs_gap_approx", report.abs_gap_approx),
        ("rel_gap_approx", report.rel_gap_approx),
        ("abs_gap_exact", report.abs_gap_exact),
        ("rel_gap_exact", report.rel_gap_exact),
        ("discretization_error", report.discretization_error),
        ("unresolvable", report.unresolvable),
        ("r_min_sensitivity_approx", report.r_min_sensitivity_approx),
        ("r_min_sensitivity_exact", report.r_min_sensitivity_exact),
        ("r_min", report.r_min),
        ("r_max", report.r_max),
        ("coarse_points", report.coarse_points),
        ("fine_points", report.fine_points),
        ("passed", not failed),
    ]
    if config.fmt == "json":
        return (1 if failed else 0), _json_text(dict(items))
    rows = [
        [name, _bool_csv(value) if isinstance(value, bool) else repr(value)]
        for name, value in items
    ]
    return (1 if failed else 0), _csv_text(["quantity", "value"], rows)


def _run_sweep(config: RunConfig) -> tuple[int, str]:
    states = [(n, m) for n in range(config.n_max + 1) for m in config.m_set]
    result = sweep(config.physical, config.fields, config.axis, config.values, states)
    if config.fmt == "json":
        payload = {
            "axis": result.axis,
            "values": list(result.values),
            "cells": [
                {
                    "value": c.axis_value,
                    "n": c.n,
                    "m": c.m,
                    "energy": c.energy,
                    "flag": c.flag,
                }
                for c in result.cells
            ],
            "monotonicity": {
                f"{n},{m}": verdict for (n, m), verdict in sorted(result.monotonicity.items())
            },
        }
        return 0, _json_text(payload)
    rows = [
        [
            result.axis,
            repr(c.axis_value),
            c.n,
            c.m,
            "" if c.energy is None else _energy_7dp(c.energy),
            c.flag or "",
        ]
        for c in result.cells
    ]
    return 0, _csv_text(["axis", "value", "n", "m", "energy", "flag"], rows)


def _run_degeneracy(config: RunConfig) -> tuple[int, str]:
    report = degeneracy_report(
        config.physical,
        config.fields,
        config.n_max,
        config.m_set,
        tolerance=config.tolerance,
    )
    if config.fmt == "json":
        payload = {
            "tolerance": report.tolerance,
            "omega_c": report.fields.omega_c,
            "xi": report.fields.xi,
            "groups": [
                {
                    "energy": g.energy,
                    "max_gap": g.max_gap,
                    "members": [[n, m] for n, m in g.members],
                }
                for g in report.groups
            ],
        }
        return 0, _json_text(payload)
    rows = [
        [idx, n, m, _energy_7dp(g.energy), repr(g.max_gap)]
        for idx, g in enumerate(report.groups)
        for n, m in g.members
    ]
    return 0, _csv_text(["group", "n", "m", "energy", "max_gap"], rows)


_HANDLERS = {
    "energy": _run_energy,
    "spectrum": _run_spectrum,
    "wavefunction": _run_wavefunction,
    "potential": _run_potential,
    "table1": _run_table1,
    "verify": _run_verify,
    "sweep": _run_sweep,
    "degeneracy": _run_degeneracy,
}


def _error_text(fmt: str, message: str) -> str:
    if fmt == "json":
        return _json_text({"error": message})
    return _csv_text(["error"], [[message]])


def run(config: RunConfig) -> tuple[int, str]:
    """Execute one parsed command; returns (exit_code, serialized output)."""
    try:
        return _HANDLERS[config.command](config)
    except UsageError as exc:
        return 2, _error_text(config.fmt, str(exc))
    except YukawaABError as exc:
        return 1, _error_text(config.fmt, str(exc))
    except ValueError as exc:
        return 2, _error_text(config.fmt, str(exc))


def main(argv=None) -> int:
    try:
        config = parse_args(argv)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except SystemExit as exc:
        return int(exc.code or 0)
    code, text = run(config)
    if config.output is not None:
        pathlib.Path(config.output).write_text(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
