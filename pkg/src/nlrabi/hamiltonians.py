"""Model Hamiltonians for nonlinear resonators, alone and coupled to a qubit.

Builders come in three families:

* cavity only: harmonic term plus a Kerr or quartic (a+ +- a)^4 potential;
* linear resonator-qubit models in the two standard gauges;
* nonlinear resonator-qubit models: the "naive" combination that simply adds
  the bare potential to the dipole-gauge model, and the consistent versions
  obtained either by substituting the shifted photon operator
  a' = a + i eta sigma_x (dipole gauge) or by conjugating the qubit term with
  the gauge unitary (Coulomb form).

The substitution form is a finite polynomial identity, so it is exact at any
truncation; the conjugated variants carry cutoff artifacts of the unitary and
are kept as cross-checks.  Energies are in units of the bare cavity frequency
unless stated otherwise.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
import scipy.optimize

from .fock import Operator, Space, _embed, destroy, hermitian_function, pauli

VARIANTS = ("kerr", "plus", "minus")
GAUGES = ("dipole", "coulomb")
FLAVORS = ("linear", "naive_nonlinear", "corrected_nonlinear")


@dataclass(frozen=True)
class ResonatorParams:
    """Cavity frequency, normalized nonlinear coefficient and variant."""

    omega_c: float = 1.0
    J: float = 0.0
    variant: str = "kerr"

    def __post_init__(self):
        if self.omega_c <= 0:
            raise ValueError("omega_c must be positive")
        if self.J < 0:
            raise ValueError("J must be non-negative")
        if self.variant not in VARIANTS:
            raise ValueError(f"variant must be one of {VARIANTS}, got {self.variant!r}")


@dataclass(frozen=True)
class RabiParams:
    resonator: ResonatorParams
    omega_q: float = 1.0
    eta: float = 0.0
    gauge: str = "dipole"
    flavor: str = "linear"

    def __post_init__(self):
        if self.omega_q <= 0:
            raise ValueError("omega_q must be positive")
        if self.eta < 0:
            raise ValueError("eta must be non-negative")
        if self.gauge not in GAUGES:
            raise ValueError(f"gauge must be one of {GAUGES}")
        if self.flavor not in FLAVORS:
            raise ValueError(f"flavor must be one of {FLAVORS}")


def default_cutoff(eta: float, J: float) -> int:
    """Photon cutoff that keeps doubled-cutoff drift below 1e-6.

    The coupling displaces the field by ~eta and the quartic widens the
    support, so the budget grows with eta and J(1+eta)^2.  The coefficients
    were fixed empirically: across eta <= 10, J <= 0.1 the doubling drift of
    the lowest six levels stays under 1e-8 and all cross-gauge agreement
    targets pass with at least a factor-10 margin.
    """
    return max(60, math.ceil(20 + 2 * eta**2 + 20 * eta + 40 * J * (1 + eta) ** 2))


def _number_diag(space: Space, fn) -> np.ndarray:
    """Exact diagonal fn(n) on the photon factor, identity elsewhere."""
    block = np.diag(np.array([fn(n) for n in range(space.photon)], dtype=complex))
    return _embed(block, "photon", space)


def bare_cavity(p: ResonatorParams, space: Space) -> Operator:
    """Harmonic term: exact diagonal n * omega_c."""
    return Operator(space, _number_diag(space, lambda n: p.omega_c * n))


def nonlinear_potential(p: ResonatorParams, space: Space) -> Operator:
    """Kerr diagonal J w_c n(n-1), or the quartic (J w_c / 6)(a+ +- a)^4."""
    if p.variant == "kerr":
        return Operator(space, _number_diag(space, lambda n: p.J * p.omega_c * n * (n - 1)))
    a = destroy(space).mat
    sign = 1.0 if p.variant == "plus" else -1.0
    quad = a.conj().T + sign * a
    return Operator(space, (p.J * p.omega_c / 6.0) * np.linalg.matrix_power(quad, 4))


def nonlinear_cavity(p: ResonatorParams, space: Space) -> Operator:
    return bare_cavity(p, space) + nonlinear_potential(p, space)


def renormalize_cavity_frequency(
    variant: str, J: float, target_gap: float, space: Space
) -> float:
    """Bare frequency at which the first cavity transition equals target_gap.

    Solved by bracketed root-finding on [target_gap/4, 4*target_gap]; the gap
    is monotone increasing in the frequency there.
    """
    if variant not in ("plus", "minus"):
        raise ValueError("renormalization applies to the quartic variants only")
    if space.qubit or space.matter is not None:
        raise ValueError("renormalization uses a photon-only space")
    if J < 0 or target_gap <= 0:
        raise ValueError("need J >= 0 and target_gap > 0")

    def gap(omega: float) -> float:
        evals = np.linalg.eigvalsh(
            nonlinear_cavity(ResonatorParams(omega, J, variant), space).mat
        )
        return evals[1] - evals[0]

    lo, hi = target_gap / 4.0, 4.0 * target_gap
    f_lo, f_hi = gap(lo) - target_gap, gap(hi) - target_gap
    if f_lo * f_hi > 0:
        raise ValueError(
            f"gap-target not bracketed on [{lo}, {hi}]: "
            f"gap(lo)-target={f_lo:.3e}, gap(hi)-target={f_hi:.3e}"
        )
    return float(
        scipy.optimize.brentq(
            lambda w: gap(w) - target_gap, lo, hi, xtol=1e-14, rtol=8.9e-16
        )
    )


def _require_qubit_photon(space: Space):
    if not space.qubit or space.photon is None:
        raise ValueError("model needs a photon (x) qubit space")


def gauge_unitary(eta: float, space: Space) -> Operator:
    """exp[i eta sigma_x (a + a+)], via the spectral decomposition."""
    _require_qubit_photon(space)
    a = destroy(space).mat
    sx = pauli("x", space).mat
    exponent = Operator(space, eta * sx @ (a + a.conj().T))
    return hermitian_function(exponent, lambda t: np.exp(1j * t))


def qubit_term(omega_q: float, space: Space) -> Operator:
    return 0.5 * omega_q * pauli("z", space)


def conjugated_qubit_term(omega_q: float, eta: float, space: Space) -> Operator:
    """(w_q/2) U sigma_z U+ with the gauge unitary above."""
    U = gauge_unitary(eta, space).mat
    sz = pauli("z", space).mat
    return Operator(space, 0.5 * omega_q * (U @ sz @ U.conj().T))


def rabi_dipole(p: RabiParams, space: Space) -> Operator:
    """Linear resonator-qubit model in the dipole gauge.

    Harmonic cavity, qubit splitting, i eta w_c (a+ - a) sigma_x coupling and
    the constant eta^2 w_c term.  The resonator's J is not used here.
    """
    _require_qubit_photon(space)
    wc = p.resonator.omega_c
    a = destroy(space).mat
    sx = pauli("x", space).mat
    H = (
        _number_diag(space, lambda n: wc * n)
        + 0.5 * p.omega_q * pauli("z", space).mat
        + 1j * p.eta * wc * ((a.conj().T - a) @ sx)
        + p.eta**2 * wc * np.eye(space.dim)
    )
    return Operator(space, H)


def rabi_coulomb(p: RabiParams, space: Space) -> Operator:
    """Linear model in the Coulomb gauge, trigonometric closed form."""
    _require_qubit_photon(space)
    wc = p.resonator.omega_c
    a = destroy(space).mat
    x2 = Operator(space, 2.0 * p.eta * (a + a.conj().T))
    cos_x = hermitian_function(x2, np.cos).mat
    sin_x = hermitian_function(x2, np.sin).mat
    H = _number_diag(space, lambda n: wc * n) + 0.5 * p.omega_q * (
        pauli("z", space).mat @ cos_x + pauli("y", space).mat @ sin_x
    )
    return Operator(space, H)


def naive_nonlinear_dipole(p: RabiParams, space: Space) -> Operator:
    """Dipole-gauge model plus the bare potential; breaks gauge invariance.

    Restricted to the kerr and minus variants (the plus variant is untouched
    by the operator substitution, so its naive and consistent forms coincide
    and are built by corrected_nonlinear_dipole).
    """
    if p.resonator.variant not in ("kerr", "minus"):
        raise ValueError("naive model is defined for variants 'kerr' and 'minus'")
    return rabi_dipole(p, space) + nonlinear_potential(p.resonator, space)


def corrected_nonlinear_dipole(p: RabiParams, space: Space) -> Operator:
    """Consistent dipole-gauge model: every a replaced by a' = a + i eta sigma_x.

    The substitution is polynomial, hence exact at any truncation.  For the
    minus variant the quartic becomes (J w_c / 6)(a+ - a - 2 i eta sigma_x)^4;
    the plus variant's quartic is unchanged because sigma_x cancels in
    a'+ + a'.
    """
    _require_qubit_photon(space)
    wc, J = p.resonator.omega_c, p.resonator.J
    a = destroy(space).mat
    sx = pauli("x", space).mat
    ap = a + 1j * p.eta * sx
    apd = ap.conj().T
    H = wc * (apd @ ap) + 0.5 * p.omega_q * pauli("z", space).mat
    if p.resonator.variant == "kerr":
        H = H + J * wc * (apd @ apd @ ap @ ap)
    else:
        sign = 1.0 if p.resonator.variant == "plus" else -1.0
        quad = apd + sign * ap
        H = H + (J * wc / 6.0) * np.linalg.matrix_power(quad, 4)
    return Operator(space, H)


def corrected_nonlinear_dipole_conjugated(p: RabiParams, space: Space) -> Operator:
    """Conjugation form U+ H_cavity U + qubit term; cross-check oracle.

    Equals corrected_nonlinear_dipole only in the infinite-dimensional limit;
    at finite cutoff the unitary's boundary artifacts leak in, which is
    exactly why the substitution form is the production builder.
    """
    _require_qubit_photon(space)
    U = gauge_unitary(p.eta, space).mat
    Hc = nonlinear_cavity(p.resonator, space).mat
    H = U.conj().T @ Hc @ U + 0.5 * p.omega_q * pauli("z", space).mat
    return Operator(space, H)


def nonlinear_coulomb(p: RabiParams, space: Space) -> Operator:
    """Coulomb-gauge nonlinear model: cavity plus conjugated qubit term."""
    _require_qubit_photon(space)
    return nonlinear_cavity(p.resonator, space) + conjugated_qubit_term(
        p.omega_q, p.eta, space
    )


CAVITY_LABELS = ("kerr", "plus", "minus")
COUPLED_LABELS = (
    "rabi-dipole",
    "rabi-coulomb",
    "naive-dipole",
    "corrected-dipole",
    "nonlinear-coulomb",
)
MODEL_LABELS = CAVITY_LABELS + COUPLED_LABELS


def model_space(label: str, cutoff: int) -> Space:
    if label in CAVITY_LABELS:
        return Space(photon=cutoff)
    if label in COUPLED_LABELS:
        return Space(photon=cutoff, qubit=True)
    raise ValueError(f"unknown model label {label!r}")


def build_model(
    label: str,
    space: Space,
    *,
    eta: float = 0.0,
    J: float = 0.0,
    omega_c: float = 1.0,
    omega_q: float = 1.0,
    variant: str = "minus",
) -> Operator:
    """Build any model by its CLI label; cavity labels fix their own variant."""
    if label in CAVITY_LABELS:
        return nonlinear_cavity(ResonatorParams(omega_c, J, label), space)
    if label not in COUPLED_LABELS:
        raise ValueError(f"unknown model label {label!r}")
    flavor = {
        "rabi-dipole": "linear",
        "rabi-coulomb": "linear",
        "naive-dipole": "naive_nonlinear",
        "corrected-dipole": "corrected_nonlinear",
        "nonlinear-coulomb": "corrected_nonlinear",
    }[label]
    gauge = "coulomb" if label.endswith("coulomb") else "dipole"
    p = RabiParams(
        ResonatorParams(omega_c, J, variant), omega_q, eta, gauge=gauge, flavor=flavor
    )
    builder = {
        "rabi-dipole": rabi_dipole,
        "rabi-coulomb": rabi_coulomb,
        "naive-dipole": naive_nonlinear_dipole,
        "corrected-dipole": corrected_nonlinear_dipole,
        "nonlinear-coulomb": nonlinear_coulomb,
    }[label]
    return builder(p, space)
