"""Nonlinear-resonator quantum Rabi models in truncated Fock spaces.

Dense-matrix builders for Kerr and quartic resonators, gauge-consistent
resonator-qubit models, two-mode polaritons with an effective single-mode
reduction, plus spectra sweeps, Wigner functions and squeezing measures.
"""

__version__ = "0.1.0"

from .fock import (
    Operator,
    Space,
    State,
    adjoint,
    create,
    destroy,
    displacement,
    expectation,
    fock_state,
    hermitian_function,
    identity,
    pauli,
    tensor,
)
from .hamiltonians import (
    RabiParams,
    ResonatorParams,
    bare_cavity,
    build_model,
    corrected_nonlinear_dipole,
    corrected_nonlinear_dipole_conjugated,
    default_cutoff,
    gauge_unitary,
    naive_nonlinear_dipole,
    nonlinear_cavity,
    nonlinear_coulomb,
    nonlinear_potential,
    rabi_coulomb,
    rabi_dipole,
    renormalize_cavity_frequency,
)
from .phase_space import (
    SqueezingReport,
    WignerGrid,
    normalized_squeezing,
    principal_squeezing,
    quadrature_stats,
    squeezing_report,
    wigner,
)
from .polariton import (
    HopfieldParams,
    HopfieldSolution,
    effective_polariton_hamiltonian,
    hopfield_coefficients,
    polariton_frequencies,
    two_mode_oracle,
)
from .spectra import (
    Spectrum,
    SweepTable,
    convergence_check,
    decoupling_check,
    eigen_spectrum,
    gauge_invariance_check,
    sweep,
)
