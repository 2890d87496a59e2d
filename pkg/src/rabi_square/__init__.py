"""Solver and oracle toolkit for a square plaquette of four Rabi cavities.

Closed-form critical points and excitation spectra, superradiant
mean-field solutions, gauge-phase equivalence maps to a four-site ring,
a classical spin-model cross-check, and a truncated-Fock-space exact
diagonalization engine that validates the analytics at desk scale.
"""

from .core import (
    BranchSpectrum,
    ModelParams,
    MomentumBranch,
    branch_spectrum,
    critical_coupling,
    dominant_branch,
    mode_frequency,
    np_excitation_energy,
    np_ground_energy,
    squeeze_parameter,
)
from .errors import (
    BelowCritical,
    ComplexEnergy,
    DimensionOverflow,
    DivergentSqueeze,
    DomainError,
    EmptySubspace,
    InsufficientWindow,
    NoConvergence,
    NoCriticalPoint,
    NoRoot,
    RabiSquareError,
    UnitarityLossWarning,
)
from .fock import (
    FockSpace,
    OperatorMatrix,
    SpectralResult,
    build_hamiltonian,
    cyclic_shift_operator,
    displacement_operator,
    ed_ground_point,
    fidelity,
    ground_state,
    meanfield_infidelity,
    meanfield_state,
    momentum_squeeze_operator,
    observables,
    parity_operator,
    variational_energy,
)
from .gauge import (
    CorrespondenceResult,
    GaugeParams,
    Regime,
    TriplePoint,
    equivalence_residual,
    map_afrp,
    map_frustrated,
    map_frustrated_critical,
    map_order_parameter,
    negative_j1_map,
    qrr_critical_coupling,
    qrr_excitation,
    qrr_gap_closes_at_critical,
    qrr_mode_frequency,
    triple_point,
)
from .meanfield import (
    Displacements,
    PhaseLabel,
    PhasePoint,
    SrpSolution,
    classify_phase,
    mean_field_energy,
    minimize_mean_field_energy,
    order_parameter,
    renormalized_params,
    scaling_exponent,
    srp_displacements,
    srp_excitation_energy,
    srp_ground_energy,
    stationarity_residual,
)
from .spinmap import (
    SpinBranch,
    SpinComparison,
    compare_to_displacements,
    minimize_spin_energy,
    spin_branch_solution,
    spin_energy,
)

__version__ = "0.1.0"
