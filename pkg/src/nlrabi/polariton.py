"""Two-mode light-matter model, its polaritons, and the reduced photon model.

The microscopic model couples a photon mode (frequency omega_photon, operator
a) to a bosonic matter mode (omega_matter, operator b):

    H = wp a+a + wm b+b + wp [ i lam (a+ - a)(b + b+) + lam^2 (b + b+)^2 ]
        + (J_b wm / 6)(b + b+)^4.

With J_b = 0 the model is quadratic and diagonalized by two polariton modes

    P_n = A_n* a + B_n* b - A'_n a+ - B'_n b+,     [P_n, H] = w_n P_n,

whose frequencies are the positive roots of

    w^4 - (wp^2 + wm^2 + 4 lam^2 wp wm) w^2 + wp^2 wm^2 = 0.

The closed-form coefficients below were obtained by solving the eigenoperator
equation directly and are pinned against the dense two-mode oracle in the
tests; phases are fixed so that P_1, P_2 reduce to the bare lower/upper modes
as lam -> 0.  Keeping only the lower (photon-like, in the dispersive regime)
polariton maps the matter nonlinearity onto an effective quartic photon
nonlinearity of strength J_eff = J_b C_1^4.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .fock import Operator, Space, destroy
from .hamiltonians import ResonatorParams, _number_diag, nonlinear_cavity


@dataclass(frozen=True)
class HopfieldParams:
    """lam is the dimensionless coupling; J_b the matter-mode nonlinearity."""

    omega_photon: float
    omega_matter: float
    lam: float = 0.0
    J_b: float = 0.0

    def __post_init__(self):
        if self.omega_photon <= 0 or self.omega_matter <= 0:
            raise ValueError("mode frequencies must be positive")
        if self.lam < 0 or self.J_b < 0:
            raise ValueError("lam and J_b must be non-negative")


@dataclass(frozen=True)
class HopfieldSolution:
    """Coefficients of P_n = A_n* a + B_n* b - A'_n a+ - B'_n b+ for n = 1, 2."""

    omega_n: tuple[float, float]
    A_n: tuple[complex, complex]
    A_prime_n: tuple[complex, complex]
    B_n: tuple[complex, complex]
    B_prime_n: tuple[complex, complex]
    phi_n: tuple[float, float]
    C_n: tuple[float, float]
    J_eff: float


def polariton_frequencies(p: HopfieldParams) -> tuple[float, float]:
    """The two positive normal-mode frequencies, ascending."""
    wp, wm = p.omega_photon, p.omega_matter
    if p.lam == 0.0:
        return (min(wp, wm), max(wp, wm))
    b = wp**2 + wm**2 + 4.0 * p.lam**2 * wp * wm
    disc = b * b - 4.0 * (wp * wm) ** 2
    assert disc >= 0.0, "biquadratic discriminant cannot be negative for real lam"
    root = np.sqrt(disc)
    return (float(np.sqrt((b - root) / 2.0)), float(np.sqrt((b + root) / 2.0)))


def _mode_coefficients(wp: float, wm: float, lam: float, w: float):
    beta_sq = ((wm + w) ** 2 * (wp**2 - w**2) ** 2) / (
        4.0 * wm * w * ((wp**2 - w**2) ** 2 + 4.0 * lam**2 * wp**3 * wm)
    )
    beta = np.sqrt(beta_sq)
    B = beta + 0j
    B_prime = beta * (wm - w) / (wm + w) + 0j
    A = -2j * lam * wp * wm * beta / ((wp - w) * (wm + w))
    A_prime = -2j * lam * wp * wm * beta / ((wp + w) * (wm + w))
    # Overall phase per mode is free; rotate so the dominant bare component
    # is real positive, which reproduces the bare modes as lam -> 0.
    dominant = A if abs(A) >= abs(B) else B
    u = dominant / abs(dominant)
    return np.conj(u) * A, u * A_prime, np.conj(u) * B, u * B_prime


def hopfield_coefficients(p: HopfieldParams) -> HopfieldSolution:
    """Bogoliubov coefficients of both polaritons; explicit branch at lam=0."""
    wp, wm = p.omega_photon, p.omega_matter
    w1, w2 = polariton_frequencies(p)
    if p.lam == 0.0:
        photon_first = wp <= wm
        A = (1 + 0j, 0j) if photon_first else (0j, 1 + 0j)
        B = (0j, 1 + 0j) if photon_first else (1 + 0j, 0j)
        zero = (0j, 0j)
        C = tuple(abs(b) * 2.0 * wm / (w + wm) for b, w in zip(B, (w1, w2)))
        return HopfieldSolution(
            (w1, w2), A, zero, B, zero, (np.pi / 2, np.pi), C, p.J_b * C[0] ** 4
        )
    coeffs = [_mode_coefficients(wp, wm, p.lam, w) for w in (w1, w2)]
    A, A_prime, B, B_prime = (tuple(c[i] for c in coeffs) for i in range(4))
    C = tuple(abs(b) * 2.0 * wm / (w + wm) for b, w in zip(B, (w1, w2)))
    return HopfieldSolution(
        (w1, w2), A, A_prime, B, B_prime, (np.pi / 2, np.pi), C, p.J_b * C[0] ** 4
    )


def two_mode_oracle(p: HopfieldParams, space: Space) -> Operator:
    """Dense two-mode Hamiltonian; the ground truth for everything above."""
    if space.photon is None or space.matter is None or space.qubit:
        raise ValueError("oracle needs a photon (x) matter space without a qubit")
    wp, wm = p.omega_photon, p.omega_matter
    a = destroy(space, "photon").mat
    b = destroy(space, "matter").mat
    xb = b + b.conj().T
    H = _number_diag(space, lambda n: wp * n)
    H = H + wm * (b.conj().T @ b)
    H = H + wp * (1j * p.lam * ((a.conj().T - a) @ xb) + p.lam**2 * (xb @ xb))
    if p.J_b:
        H = H + (p.J_b * wm / 6.0) * np.linalg.matrix_power(xb, 4)
    return Operator(space, H)


def polariton_operator(sol: HopfieldSolution, n: int, space: Space) -> Operator:
    """Matrix form of P_n on a two-mode space (n is 1 or 2)."""
    if n not in (1, 2):
        raise ValueError("polariton index must be 1 or 2")
    i = n - 1
    a = destroy(space, "photon").mat
    b = destroy(space, "matter").mat
    P = (
        np.conj(sol.A_n[i]) * a
        + np.conj(sol.B_n[i]) * b
        - sol.A_prime_n[i] * a.conj().T
        - sol.B_prime_n[i] * b.conj().T
    )
    return Operator(space, P)


def commutator_residual(
    p: HopfieldParams, space: Space, n: int, boundary: int = 3
) -> float:
    """max |[P_n, H] - w_n P_n| away from the truncation boundary (J_b = 0)."""
    sol = hopfield_coefficients(p)
    H = two_mode_oracle(
        HopfieldParams(p.omega_photon, p.omega_matter, p.lam, 0.0), space
    ).mat
    P = polariton_operator(sol, n, space).mat
    R = P @ H - H @ P - sol.omega_n[n - 1] * P
    Na, Mb = space.photon, space.matter
    occ_a, occ_b = np.divmod(np.arange(Na * Mb), Mb)
    keep = (occ_a < Na - boundary) & (occ_b < Mb - boundary)
    return float(np.abs(R[np.ix_(keep, keep)]).max())


def effective_polariton_hamiltonian(p: HopfieldParams, space: Space) -> Operator:
    """Single-mode model of the lower polariton with its inherited quartic.

    Built as a minus-variant nonlinear cavity at frequency w_1 whose quartic
    prefactor equals J_b C_1^4 omega_matter / 6.
    """
    if space.qubit or space.matter is not None:
        raise ValueError("effective model lives on a photon-only space")
    sol = hopfield_coefficients(p)
    w1 = sol.omega_n[0]
    J_adjusted = sol.J_eff * p.omega_matter / w1
    return nonlinear_cavity(ResonatorParams(w1, J_adjusted, "minus"), space)


def oracle_photon_ladder(
    p: HopfieldParams, space: Space, count: int, scan: int = 60
) -> tuple[np.ndarray, np.ndarray]:
    """Transitions of the photon-like eigenstates of the full quartic oracle.

    Eigenstates of the two-mode model are labeled photon-like when their
    matter-like polariton occupation <P_2+ P_2> is below 1/2; the lowest
    `scan` eigenstates are examined.  Returns (transitions, occupations): the
    first `count` ladder transitions referenced to the ladder ground, and the
    matter-polariton occupation of every scanned state (diagnostics for when
    the labeling degrades near resonance).
    """
    H = two_mode_oracle(p, space)
    evals, evecs = np.linalg.eigh(H.mat)
    sol = hopfield_coefficients(p)
    P2 = polariton_operator(sol, 2, space).mat
    N2 = P2.conj().T @ P2
    scan = min(scan, evals.size)
    block = evecs[:, :scan]
    occ = np.real(np.sum(block.conj() * (N2 @ block), axis=0))
    ladder = np.flatnonzero(occ < 0.5)
    if ladder.size < 2:
        raise RuntimeError(
            "fewer than two photon-like states found; labeling has broken down"
        )
    energies = evals[ladder[: count + 1]]
    return energies[1:] - energies[0], occ
