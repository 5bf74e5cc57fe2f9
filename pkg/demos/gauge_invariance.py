#!/usr/bin/env python3
"""Why the nonlinear potential must be transformed along with the gauge.

Adding V(a) verbatim to the dipole-gauge model gives levels that depend on
the gauge you started from -- an unphysical artifact.  Substituting
a -> a + i eta sigma_x first makes both gauges agree.
"""

import numpy as np

from nlrabi.hamiltonians import build_model, default_cutoff, model_space
from nlrabi.spectra import gauge_invariance_check

J, variant = 0.1, "minus"

print(f"Low levels, {variant} variant, J = {J}:\n")
print(f"{'eta':>5} {'naive vs coulomb':>18} {'corrected vs coulomb':>22}")
for eta in (0.1, 0.5, 1.0, 2.0):
    N = default_cutoff(eta, J)

    def low6(label):
        H = build_model(label, model_space(label, N), eta=eta, J=J, variant=variant)
        e = np.linalg.eigvalsh(H.mat)[:6]
        return e - e[0]

    coulomb = low6("nonlinear-coulomb")
    naive_gap = np.abs(low6("naive-dipole") - coulomb).max()
    corrected_gap = np.abs(low6("corrected-dipole") - coulomb).max()
    print(f"{eta:>5} {naive_gap:>18.3e} {corrected_gap:>22.3e}")

print("""
The corrected model agrees to truncation error at every coupling; the naive
model drifts off as soon as eta is appreciable.  The library bundles this
comparison (with cutoff-doubling convergence control) as a single call:
""")

report = gauge_invariance_check(np.linspace(0.0, 3.0, 7), (J,), k=6, variant=variant)
print(f"  corrected-dipole: max discrepancy {report.max_discrepancy:.3e} "
      f"(exact conjugation pairing: {report.max_exact_identity:.3e})")
print(f"  all rows converged and within tolerance: {report.passed}")
