"""Frame-averaging entropy laboratory for finite periodic spin chains.

Builds Gibbs states of small translation-invariant chain Hamiltonians, kicks
them with local unitaries, and pushes the kicked states through
translation-frame and time-frame averaging channels.  Every finite-size-exact
entropy identity relating work, relative entropy, and the averaged states is
verified to round-off; convergence experiments track how the averaged
entropy production decays with chain length.
"""

from .averaging import (
    AveragingKind,
    ConjugatedPerturbation,
    DeviationReport,
    average_translates,
    averaged_E_deviation,
    conjugate_normalization,
    conjugated_perturbation,
    deviation_report,
    distance_weights,
    frame_average,
    temporal_average,
    temporal_average_matrix,
    weighted_average_translates,
    weighted_frame_average,
)
from .entropy import (
    EntropyValue,
    bs_relative_entropy,
    eta,
    relative_entropy,
    thermo_entropy_production,
    von_neumann_entropy,
)
from .experiments import (
    ConfigError,
    ExperimentConfig,
    ExperimentRecord,
    IdentityCheck,
    IdentityReport,
    ProbeRow,
    config_from_mapping,
    convergence_sweep,
    emit_csv,
    load_config,
    locality_probe,
    saturation_scan,
    verify_identities,
)
from .lattice import (
    HamiltonianSpec,
    LatticeSizeError,
    LatticeSpec,
    SiteOperator,
    build_hamiltonian,
    embed_site_operator,
    pauli,
    reduce_to_site,
    sigma_x,
    sigma_y,
    sigma_z,
    translation_operator,
)
from .operators import (
    DensityMatrix,
    EigensolverError,
    HermitianOperator,
    MatrixFunctionDomainError,
    OverflowGuardError,
    SpectralDecomposition,
    UnitaryOperator,
    commutator,
    frobenius_norm,
    matrix_function,
    max_norm,
    operator_norm,
    random_density_matrix,
    random_unitary,
    spectral_decompose,
    trace_product,
)
from .thermal import (
    PerturbationSpec,
    ThermalState,
    WorkReport,
    local_kick,
    perturb,
    thermal_state,
    work,
)

__all__ = [
    "AveragingKind",
    "ConfigError",
    "ConjugatedPerturbation",
    "DensityMatrix",
    "DeviationReport",
    "EigensolverError",
    "EntropyValue",
    "ExperimentConfig",
    "ExperimentRecord",
    "HamiltonianSpec",
    "HermitianOperator",
    "IdentityCheck",
    "IdentityReport",
    "LatticeSizeError",
    "LatticeSpec",
    "MatrixFunctionDomainError",
    "OverflowGuardError",
    "PerturbationSpec",
    "ProbeRow",
    "SiteOperator",
    "SpectralDecomposition",
    "ThermalState",
    "UnitaryOperator",
    "WorkReport",
    "average_translates",
    "averaged_E_deviation",
    "bs_relative_entropy",
    "build_hamiltonian",
    "commutator",
    "config_from_mapping",
    "conjugate_normalization",
    "conjugated_perturbation",
    "convergence_sweep",
    "deviation_report",
    "distance_weights",
    "embed_site_operator",
    "emit_csv",
    "eta",
    "frame_average",
    "frobenius_norm",
    "load_config",
    "local_kick",
    "locality_probe",
    "matrix_function",
    "max_norm",
    "operator_norm",
    "pauli",
    "perturb",
    "random_density_matrix",
    "random_unitary",
    "reduce_to_site",
    "relative_entropy",
    "saturation_scan",
    "sigma_x",
    "sigma_y",
    "sigma_z",
    "spectral_decompose",
    "temporal_average",
    "temporal_average_matrix",
    "thermal_state",
    "thermo_entropy_production",
    "trace_product",
    "translation_operator",
    "verify_identities",
    "von_neumann_entropy",
    "weighted_average_translates",
    "weighted_frame_average",
    "work",
]
