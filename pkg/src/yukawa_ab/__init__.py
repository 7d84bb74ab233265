"""Bound states of a 2D screened Coulomb system in magnetic and flux fields.

The analytic layer produces closed-form energies and radial wavefunctions
for a charged particle in a screened Coulomb well threaded by a uniform
magnetic field and a flux line; the oracle layer cross-checks those results
with an independent finite-difference eigensolver; the analysis layer turns
both into reference tables and reports, and the cli layer serializes them.
"""
from .analysis import (
    ApproximationErrorStudy,
    DegeneracyReport,
    SpectrumTable,
    SweepResult,
    approximation_error_study,
    degeneracy_report,
    load_published,
    reproduce_table1,
    sweep,
)
from .analytic import (
    BoundState,
    Exponents,
    energy_closed_form,
    energy_from_quantization,
    full_wavefunction,
    hypergeometric_terminating,
    normalize,
    radial_wavefunction,
    solve,
)
from .errors import (
    DomainError,
    IterationLimit,
    QuadratureError,
    SingularShift,
    UsageError,
    YukawaABError,
)
from .model import (
    DimensionlessParams,
    FieldConfig,
    NonIntegerXiWarning,
    PhysicalParams,
    QuantumNumbers,
    approximated_effective_potential,
    effective_potential,
    greene_aldrich,
    omega_c_from_b_field,
    reduce,
)
from .oracle import (
    NumericSpectrum,
    PotentialMode,
    RadialGrid,
    TridiagonalHamiltonian,
    VerificationReport,
    build_hamiltonian,
    eigenvalues_lowest,
    eigenvector,
    verify_closed_form,
)

__version__ = "1.0.0"

__all__ = [
    "__version__",
    "ApproximationErrorStudy",
    "BoundState",
    "DegeneracyReport",
    "DimensionlessParams",
    "DomainError",
    "Exponents",
    "FieldConfig",
    "IterationLimit",
    "NonIntegerXiWarning",
    "NumericSpectrum",
    "PhysicalParams",
    "PotentialMode",
    "QuadratureError",
    "QuantumNumbers",
    "RadialGrid",
    "SingularShift",
    "SpectrumTable",
    "SweepResult",
    "TridiagonalHamiltonian",
    "UsageError",
    "VerificationReport",
    "YukawaABError",
    "approximated_effective_potential",
    "approximation_error_study",
    "build_hamiltonian",
    "degeneracy_report",
    "effective_potential",
    "eigenvalues_lowest",
    "eigenvector",
    "energy_closed_form",
    "energy_from_quantization",
    "full_wavefunction",
    "greene_aldrich",
    "hypergeometric_terminating",
    "load_published",
    "normalize",
    "omega_c_from_b_field",
    "radial_wavefunction",
    "reduce",
    "reproduce_table1",
    "solve",
    "sweep",
    "verify_closed_form",
]
