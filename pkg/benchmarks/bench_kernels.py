"""Time the compiled kernel backend against the pure one.

Builds the screened-potential Hamiltonian (m=1, approximate mode) on the
grid sizes the verification oracle actually uses, then times the two hot
calls on each backend. Run from the repository root:

    python3 benchmarks/bench_kernels.py [--repeats N]
"""
import argparse
import statistics
import time

import numpy as np

from yukawa_ab import FieldConfig, PhysicalParams
from yukawa_ab.oracle import PotentialMode, RadialGrid, build_hamiltonian
from yukawa_ab.kernels import _pure

try:
    from yukawa_ab.kernels import _core
except ImportError:
    _core = None


def timed(fn, repeats):
    samples = []
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn()
        samples.append(time.perf_counter() - t0)
    return statistics.median(samples)


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeats", type=int, default=5)
    parser.add_argument("--points", type=int, nargs="*", default=[4000, 8000])
    args = parser.parse_args()

    backends = [_pure] if _core is None else [_pure, _core]
    if _core is None:
        print("compiled backend not built; timing the pure backend only\n")

    params = PhysicalParams()
    fields = FieldConfig()
    rows = []
    for num_points in args.points:
        grid = RadialGrid(1e-6 / params.delta, 40.0 / params.delta, num_points)
        ham = build_hamiltonian(grid, params, fields, 1, PotentialMode.GREENE_ALDRICH)
        d, e = ham.diagonal, ham.off_diagonal
        rhs = np.ones(num_points)
        shift = -0.8
        for impl in backends:
            eig = timed(lambda: impl.lowest_eigenvalues(d, e, 4), args.repeats)
            slv = timed(lambda: impl.solve_shifted(d, e, shift, rhs), args.repeats)
            rows.append((num_points, impl.name, eig, slv))

    print(f"{'points':>8}  {'backend':<9} {'eigenvalues(k=4)':>17} {'solve_shifted':>14}")
    for num_points, name, eig, slv in rows:
        print(f"{num_points:>8}  {name:<9} {eig * 1e3:>15.2f} ms {slv * 1e3:>11.3f} ms")

    if _core is not None:
        for num_points in args.points:
            pure = [r for r in rows if r[0] == num_points and r[1] == "pure"][0]
            comp = [r for r in rows if r[0] == num_points and r[1] == "compiled"][0]
            print(
                f"\n{num_points} points: compiled is {pure[2] / comp[2]:.1f}x the pure "
                f"eigenvalue throughput, {pure[3] / comp[3]:.1f}x on the solve"
            )


if __name__ == "__main__":
    main()
