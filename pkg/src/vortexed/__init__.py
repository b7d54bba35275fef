"""Exact diagonalization of rotating, weakly anisotropic trapped bosons.

Ground states over truncated Landau-level Fock bases, natural-orbital
structure, two-mode decompositions, and quantum Fisher information, with
parameter-scan drivers and a CLI (`vortexed`).
"""

from .basis import (
    BasisSpec,
    FockBasis,
    SpMode,
    block_of,
    build_basis,
    count_dimension,
    enumerate_modes,
    landau_index,
)
from .config import RunConfig, make_config, parse_config
from .eigensolver import EigenResult, dense_spectrum, lowest_eigenpairs
from .errors import (
    ConfigError,
    DimensionCapError,
    EmptyBasisError,
    LeakageError,
    NoCrossingError,
    OrbitalConsistencyError,
    TableCoverageError,
    UnnormalizedStateError,
    VortexedError,
)
from .hamiltonian import HamiltonianParts, assemble, combine_dense, matvec
from .matelems import (
    AnisotropyTable,
    InteractionTable,
    anisotropy_element,
    build_tables,
    interaction_element,
    lll_interaction_element,
    radial_wavefunction,
)
from .observables import (
    AnnihilationLadder,
    MetrologyReport,
    NaturalOrbitals,
    QfiResult,
    SPDM,
    TwoModeDecomposition,
    leading_pair,
    mode_rotate,
    natural_orbitals,
    qfi,
    spdm,
    two_mode_decompose,
)
from .scanner import (
    CriticalPoint,
    ModelParams,
    PerLSpectrum,
    SweepEngine,
    SweepPoint,
    TruncationComparison,
    WidthResult,
    compare_truncations,
    find_critical,
    isotropic_spectrum_per_l,
    lmax_convergence,
    qfi_width,
    sweep_omega,
    validity_diagnostics,
)

__version__ = "0.1.0"

__all__ = [
    "AnisotropyTable", "AnnihilationLadder", "BasisSpec", "ConfigError",
    "CriticalPoint", "DimensionCapError", "EigenResult", "EmptyBasisError",
    "FockBasis", "HamiltonianParts", "InteractionTable", "LeakageError",
    "MetrologyReport", "ModelParams", "NaturalOrbitals", "NoCrossingError",
    "OrbitalConsistencyError", "PerLSpectrum", "QfiResult", "RunConfig",
    "SPDM", "SpMode", "SweepEngine", "SweepPoint", "TableCoverageError",
    "TruncationComparison",
    "TwoModeDecomposition", "UnnormalizedStateError", "VortexedError",
    "WidthResult", "anisotropy_element", "assemble", "block_of",
    "build_basis", "build_tables", "combine_dense", "compare_truncations",
    "count_dimension", "dense_spectrum", "enumerate_modes", "find_critical",
    "interaction_element", "isotropic_spectrum_per_l", "landau_index",
    "leading_pair", "lll_interaction_element", "lmax_convergence",
    "lowest_eigenpairs", "make_config", "matvec", "mode_rotate",
    "natural_orbitals", "parse_config", "qfi", "qfi_width",
    "radial_wavefunction", "spdm", "sweep_omega", "two_mode_decompose",
    "validity_diagnostics",
]
