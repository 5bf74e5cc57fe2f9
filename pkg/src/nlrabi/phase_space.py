"""Wigner functions and squeezing measures for single-mode states.

The Wigner map uses the displaced-parity form

    W(x, p) = (1/pi) sum_k (-1)^k |<k| D(alpha)+ |psi>|^2,  alpha = (x+ip)/sqrt(2),

under which the vacuum peaks at 1/pi and the p-integral of W reproduces
|psi(x)|^2 with x the sqrt(2)-scaled quadrature (vacuum variance 1/2).  The
squeezing quantities instead follow the X = (a+a+)/2, P = i(a+ - a)/2
convention (vacuum variance 1/4); both conventions are fixed here and used
consistently by the serialization and the plots.

A state is normalized against its own reference eigenstate, so S^2 = 1 holds
exactly for bare Fock states by construction.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .fock import Operator, Space, State, destroy, expectation, fock_state
from .spectra import fmt_float

TAIL_TOLERANCE = 1e-8


@dataclass(frozen=True)
class WignerGrid:
    x_min: float
    x_max: float
    p_min: float
    p_max: float
    resolution: int
    values: np.ndarray  # (resolution, resolution), rows index p, columns x

    def __post_init__(self):
        v = np.array(self.values, dtype=float)
        if v.shape != (self.resolution, self.resolution):
            raise ValueError("values must be a resolution x resolution matrix")
        v.flags.writeable = False
        object.__setattr__(self, "values", v)

    def xs(self) -> np.ndarray:
        return np.linspace(self.x_min, self.x_max, self.resolution)

    def ps(self) -> np.ndarray:
        return np.linspace(self.p_min, self.p_max, self.resolution)


@dataclass(frozen=True)
class SqueezingReport:
    var_x: float
    var_p: float
    cov_xp: float
    zeta_sq: float
    s_sq: float
    reference_level: int


def _require_photon_only(psi: State):
    if psi.space.qubit or psi.space.matter is not None:
        raise ValueError("phase-space quantities are defined for photon-only states")


def wigner(
    psi: State,
    x_min: float = -5.0,
    x_max: float = 5.0,
    p_min: float = -5.0,
    p_max: float = 5.0,
    resolution: int = 201,
) -> WignerGrid:
    """Wigner function on a rectangular grid.

    Per grid point the displacement acts through the exact truncated identity
    D(alpha) = R(theta) exp(r(a+ - a)) R(theta)+ with R(theta) = diag(e^{i n theta}),
    so one eigendecomposition of i(a - a+) serves the whole grid.
    """
    _require_photon_only(psi)
    N = psi.space.photon
    tail = float(np.sum(np.abs(psi.vec[max(N - 5, 0):]) ** 2))
    if tail >= TAIL_TOLERANCE:
        raise ValueError(
            f"population {tail:.2e} in the top 5 Fock levels; increase the cutoff"
        )

    # Displacing by the far grid corner spreads the state up to roughly
    # |beta|^2 + a few standard deviations in photon number; zero-pad so the
    # displaced state still fits regardless of the caller's cutoff.
    b_corner = np.sqrt((max(abs(x_min), abs(x_max)) ** 2
                        + max(abs(p_min), abs(p_max)) ** 2) / 2.0)
    N_work = max(N, int(np.ceil(b_corner**2 + 6.0 * b_corner + 10.0)))
    vec = psi.vec if N_work == N else np.concatenate(
        [psi.vec, np.zeros(N_work - N, dtype=complex)]
    )
    N = N_work

    a = np.diag(np.sqrt(np.arange(1, N, dtype=float)), 1).astype(complex)
    mu, V = np.linalg.eigh(-1j * (a.conj().T - a))
    xs = np.linspace(x_min, x_max, resolution)
    ps = np.linspace(p_min, p_max, resolution)
    X, P = np.meshgrid(xs, ps)
    beta = (-(X + 1j * P) / np.sqrt(2.0)).ravel()  # D(alpha)+ = D(-alpha)
    r, theta = np.abs(beta), np.angle(beta)

    n = np.arange(N)
    phases = np.exp(1j * np.outer(n, theta))
    T = V.conj().T @ (np.conj(phases) * vec[:, None])
    T = V @ (np.exp(1j * np.outer(mu, r)) * T)
    np.multiply(phases, T, out=T)
    W = (((-1.0) ** n)[:, None] * np.abs(T) ** 2).sum(axis=0) / np.pi
    return WignerGrid(x_min, x_max, p_min, p_max, resolution, W.reshape(X.shape))


def write_wigner_csv(grid: WignerGrid, path) -> None:
    """Header row carries the x grid, first column the p grid."""
    lines = [",".join([""] + [fmt_float(x) for x in grid.xs()])]
    for p_val, row in zip(grid.ps(), grid.values):
        lines.append(",".join([fmt_float(p_val)] + [fmt_float(w) for w in row]))
    with open(path, "w") as fh:
        fh.write("\n".join(lines) + "\n")


def wigner_grid_meta(grid: WignerGrid) -> dict:
    return {
        "x_min": grid.x_min,
        "x_max": grid.x_max,
        "p_min": grid.p_min,
        "p_max": grid.p_max,
        "resolution": grid.resolution,
    }


def _quadratures(space: Space) -> tuple[Operator, Operator]:
    a = destroy(space)
    x = 0.5 * (a + a.dag())
    p = 0.5j * (a.dag() - a)
    return x, p


def quadrature_stats(psi: State) -> tuple[float, float, float]:
    """(Var X, Var P, Cov XP) with X = (a+a+)/2, P = i(a+-a)/2."""
    _require_photon_only(psi)
    x, p = _quadratures(psi.space)
    ex = expectation(x, psi).real
    ep = expectation(p, psi).real
    var_x = expectation(x @ x, psi).real - ex**2
    var_p = expectation(p @ p, psi).real - ep**2
    cov = 0.5 * expectation(x @ p + p @ x, psi).real - ex * ep
    return var_x, var_p, cov


def principal_squeezing(psi: State) -> float:
    """Smallest variance over all rotated quadratures."""
    var_x, var_p, cov = quadrature_stats(psi)
    return 0.5 * (var_x + var_p - np.sqrt((var_x - var_p) ** 2 + 4.0 * cov**2))


def normalized_squeezing(psi: State, n: int) -> float:
    """Principal squeezing relative to the Fock state |n> on the same space."""
    if n < 0:
        raise ValueError("reference level must be non-negative")
    return principal_squeezing(psi) / principal_squeezing(fock_state(psi.space, n))


def squeezing_report(psi: State, n: int) -> SqueezingReport:
    var_x, var_p, cov = quadrature_stats(psi)
    zeta_sq = 0.5 * (var_x + var_p - np.sqrt((var_x - var_p) ** 2 + 4.0 * cov**2))
    return SqueezingReport(
        var_x=float(var_x),
        var_p=float(var_p),
        cov_xp=float(cov),
        zeta_sq=float(zeta_sq),
        s_sq=float(zeta_sq / principal_squeezing(fock_state(psi.space, n))),
        reference_level=int(n),
    )
