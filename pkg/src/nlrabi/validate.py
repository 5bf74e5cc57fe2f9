"""Invariant suite behind the `validate` subcommand.

Each check measures one number and compares it against a pinned tolerance;
most require the measurement to stay below it, the deliberate negative
controls require it to exceed it (the naive model must visibly break gauge
invariance, otherwise something is wrong with the checks themselves).

Model builders are resolved through the module namespaces at call time so a
test harness can inject faults (say, a sign flip in the quartic potential)
and confirm the suite notices.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass

import numpy as np

from . import hamiltonians, phase_space, polariton, spectra
from .fock import Space, State, fock_state
from .hamiltonians import RabiParams, ResonatorParams

BELOW = "measured < tolerance"
ABOVE = "measured > tolerance"


@dataclass(frozen=True)
class CheckResult:
    name: str
    tolerance: float
    measured: float
    requirement: str
    passed: bool


def _result(name: str, tol: float, measured: float, requirement: str = BELOW,
            extra_ok: bool = True) -> CheckResult:
    ok = measured < tol if requirement == BELOW else measured > tol
    return CheckResult(name, float(tol), float(measured), requirement, bool(ok and extra_ok))


def _check_kerr_analytic() -> CheckResult:
    worst = 0.0
    space = Space(photon=40)
    for J in (0.05, 0.1):
        evals = np.linalg.eigvalsh(
            hamiltonians.nonlinear_cavity(ResonatorParams(1.0, J, "kerr"), space).mat
        )
        n = np.arange(11)
        worst = max(worst, float(np.abs(evals[:11] - (n + J * n * (n - 1))).max()))
    return _result("kerr-analytic-spectrum", 1e-12, worst)


def _check_plus_minus() -> CheckResult:
    k, J = 8, 0.1
    N = hamiltonians.default_cutoff(0.0, J)
    levels = {}
    for variant in ("plus", "minus"):
        spec, _ = spectra.convergence_check(
            lambda n: hamiltonians.nonlinear_cavity(
                ResonatorParams(1.0, J, variant), Space(photon=n)
            ),
            k, N, 1e-8,
        )
        levels[variant] = spec.eigenvalues
    return _result(
        "plus-minus-equivalence", 1e-8, float(np.abs(levels["plus"] - levels["minus"]).max())
    )


def _check_exact_gauge_identity() -> CheckResult:
    worst = 0.0
    for variant in ("kerr", "minus"):
        worst = max(
            worst,
            spectra._exact_identity_residual(
                "corrected-dipole", variant, 1.0, 0.1, 1.0, 1.0, 60
            ),
        )
    return _result("exact-gauge-identity", 1e-10, worst)


def _check_physical_gauge() -> CheckResult:
    report = spectra.gauge_invariance_check((0.0, 1.5, 3.0), (0.1,), k=6, variant="minus")
    return _result(
        "physical-gauge-invariance", 1e-6, report.max_discrepancy,
        extra_ok=all(r.converged for r in report.rows),
    )


def _check_gauge_violation() -> CheckResult:
    report = spectra.gauge_invariance_check(
        (2.0,), (0.1,), k=6, variant="kerr", model="naive-dipole"
    )
    return _result("gauge-violation-naive", 1e-2, report.max_discrepancy, ABOVE)


def _check_decoupling() -> CheckResult:
    report = spectra.decoupling_check(0.05, 10.0, 6)
    return _result(
        "decoupling-strong-coupling", 1e-3, float(report.deviations[-1]),
        extra_ok=report.passed,
    )


def _check_decoupling_naive() -> CheckResult:
    report = spectra.decoupling_check(0.05, 4.0, 6, model="naive-dipole")
    return _result(
        "decoupling-naive-control", 1e-3, float(report.deviations[-1]), ABOVE
    )


def _fig1_second_transition_deviation(J: float) -> float:
    space = Space(photon=hamiltonians.default_cutoff(0.0, J))
    target = 2.0 + 2.0 * J  # Kerr second transition at unit frequency
    omega = hamiltonians.renormalize_cavity_frequency("minus", J, 1.0, space)
    evals = np.linalg.eigvalsh(
        hamiltonians.nonlinear_cavity(ResonatorParams(omega, J, "minus"), space).mat
    )
    return abs((evals[2] - evals[0]) - target) / target


def _check_fig1_below() -> CheckResult:
    return _result("renormalized-agreement-small-J", 0.01,
                   _fig1_second_transition_deviation(0.03))


def _check_fig1_above() -> CheckResult:
    return _result("renormalized-deviation-large-J", 0.01,
                   _fig1_second_transition_deviation(0.06), ABOVE)


def _check_bosonicity() -> CheckResult:
    worst = 0.0
    for lam in (0.01, 0.1, 0.3, 0.5):
        for ratio in (1.1, 2.0, 3.0):
            sol = polariton.hopfield_coefficients(
                polariton.HopfieldParams(1.0, ratio, lam)
            )
            for i in (0, 1):
                boso = (
                    abs(sol.A_n[i]) ** 2 + abs(sol.B_n[i]) ** 2
                    - abs(sol.A_prime_n[i]) ** 2 - abs(sol.B_prime_n[i]) ** 2
                )
                worst = max(worst, abs(boso - 1.0))
    return _result("hopfield-bosonicity", 1e-10, worst)


def _check_polariton_frequencies() -> CheckResult:
    p = polariton.HopfieldParams(1.0, 2.0, 0.1)
    spec, _ = spectra.convergence_check(
        lambda n: polariton.two_mode_oracle(p, Space(photon=n, matter=n)),
        8, 20, 1e-6,
    )
    rel = spec.eigenvalues - spec.eigenvalues[0]
    worst = max(
        float(np.abs(rel - w).min()) for w in polariton.polariton_frequencies(p)
    )
    return _result("hopfield-frequencies-vs-oracle", 1e-6, worst,
                   extra_ok=bool(spec.converged))


def _check_polariton_commutator() -> CheckResult:
    p = polariton.HopfieldParams(1.0, 1.5, 0.2)
    space = Space(photon=30, matter=30)
    worst = max(polariton.commutator_residual(p, space, n) for n in (1, 2))
    return _result("hopfield-commutator", 1e-6, worst)


def _minus_eigenstates(J: float, count: int, N: int = 60) -> list[State]:
    space = Space(photon=N)
    H = hamiltonians.nonlinear_cavity(ResonatorParams(1.0, J, "minus"), space)
    _, vecs = np.linalg.eigh(H.mat)
    return [State(space, vecs[:, i]) for i in range(count)]


def _check_wigner_normalization() -> CheckResult:
    states = [fock_state(Space(photon=40), 0)] + _minus_eigenstates(0.1, 4)
    worst = 0.0
    for st in states:
        grid = phase_space.wigner(st)
        dx = (grid.x_max - grid.x_min) / (grid.resolution - 1)
        dp = (grid.p_max - grid.p_min) / (grid.resolution - 1)
        worst = max(worst, abs(float(grid.values.sum()) * dx * dp - 1.0))
    return _result("wigner-normalization", 1e-3, worst)


def _check_kerr_squeezing() -> CheckResult:
    space = Space(photon=40)
    worst = max(
        abs(phase_space.normalized_squeezing(fock_state(space, n), n) - 1.0)
        for n in range(4)
    )
    return _result("kerr-squeezing-unity", 1e-14, worst)


def _check_noise_reduction() -> CheckResult:
    s_sq = {J: phase_space.squeezing_report(_minus_eigenstates(J, 1)[0], 0).s_sq
            for J in (0.05, 0.1)}
    return _result("squeezing-noise-reduction", 1.0, s_sq[0.1], BELOW,
                   extra_ok=s_sq[0.1] < s_sq[0.05] < 1.0)


def _check_zeta_rotation_pair() -> CheckResult:
    space = Space(photon=60)
    worst = 0.0
    stats = {}
    for variant in ("plus", "minus"):
        H = hamiltonians.nonlinear_cavity(ResonatorParams(1.0, 0.1, variant), space)
        _, vecs = np.linalg.eigh(H.mat)
        stats[variant] = [
            (
                phase_space.principal_squeezing(State(space, vecs[:, n])),
                phase_space.quadrature_stats(State(space, vecs[:, n])),
            )
            for n in range(4)
        ]
    for n in range(4):
        z_plus, (vx_p, vp_p, _) = stats["plus"][n]
        z_minus, (vx_m, vp_m, _) = stats["minus"][n]
        worst = max(worst, abs(z_plus - z_minus), abs(vx_p - vp_m), abs(vp_p - vx_m))
    return _result("principal-squeezing-axis-swap", 1e-8, worst)


CHECKS = {
    "kerr-analytic-spectrum": _check_kerr_analytic,
    "plus-minus-equivalence": _check_plus_minus,
    "exact-gauge-identity": _check_exact_gauge_identity,
    "physical-gauge-invariance": _check_physical_gauge,
    "gauge-violation-naive": _check_gauge_violation,
    "decoupling-strong-coupling": _check_decoupling,
    "decoupling-naive-control": _check_decoupling_naive,
    "renormalized-agreement-small-J": _check_fig1_below,
    "renormalized-deviation-large-J": _check_fig1_above,
    "hopfield-bosonicity": _check_bosonicity,
    "hopfield-frequencies-vs-oracle": _check_polariton_frequencies,
    "hopfield-commutator": _check_polariton_commutator,
    "wigner-normalization": _check_wigner_normalization,
    "kerr-squeezing-unity": _check_kerr_squeezing,
    "squeezing-noise-reduction": _check_noise_reduction,
    "principal-squeezing-axis-swap": _check_zeta_rotation_pair,
}


def run_checks(names: list[str] | None = None) -> list[CheckResult]:
    selected = names if names is not None else list(CHECKS)
    unknown = [n for n in selected if n not in CHECKS]
    if unknown:
        raise ValueError(f"unknown checks: {unknown}")
    return [CHECKS[name]() for name in selected]


def report(results: list[CheckResult], tool_version: str) -> dict:
    return {
        "schema_version": "1",
        "tool": "nlrabi",
        "tool_version": tool_version,
        "checks": [asdict(r) for r in results],
        "passed": all(r.passed for r in results),
    }
