import numpy as np
import pytest

from nlrabi.fock import Operator, Space
from nlrabi.hamiltonians import ResonatorParams, build_model, model_space, nonlinear_cavity
from nlrabi.spectra import (
    convergence_check,
    decoupling_check,
    eigen_spectrum,
    fmt_float,
    gauge_invariance_check,
    sweep,
    write_sweep_csv,
)


def diag_op(values):
    return Operator(Space(photon=len(values)), np.diag(np.array(values, dtype=float)))


class TestEigenSpectrum:
    def test_sorted_lowest_k(self):
        spec = eigen_spectrum(diag_op([3.0, 1.0, 2.0, 5.0]), 2)
        assert spec.eigenvalues == pytest.approx([1.0, 2.0])
        assert spec.ground_referenced is False

    def test_ground_referencing(self):
        spec = eigen_spectrum(diag_op([3.0, 1.0, 2.0, 5.0]), 2, ground_referenced=True)
        assert spec.eigenvalues == pytest.approx([0.0, 1.0])

    def test_upper_half_refused(self):
        op = diag_op([0.0, 1.0, 2.0, 3.0])
        with pytest.raises(ValueError, match="dim/2"):
            eigen_spectrum(op, 3)
        with pytest.raises(ValueError):
            eigen_spectrum(op, 0)


class TestConvergenceCheck:
    def test_flags_truncation_drift(self):
        builder = lambda n: nonlinear_cavity(
            ResonatorParams(1.0, 0.1, "minus"), Space(photon=n)
        )
        spec, drift = convergence_check(builder, 6, 16, 1e-6)
        assert not spec.converged and drift > 1e-6
        spec, drift = convergence_check(builder, 6, 60, 1e-6)
        assert spec.converged and drift < 1e-8

    def test_cutoff_must_leave_headroom(self):
        builder = lambda n: nonlinear_cavity(ResonatorParams(), Space(photon=n))
        with pytest.raises(ValueError, match="2k"):
            convergence_check(builder, 6, 10, 1e-6)


class TestSweep:
    @staticmethod
    def cavity_builder(eta, J, n):
        return nonlinear_cavity(ResonatorParams(1.0, J, "kerr"), Space(photon=n))

    def test_levels_follow_control(self):
        table = sweep(self.cavity_builder, "J", [0.0, 0.1], 3, cutoff=20)
        assert table.levels[0] == pytest.approx([0.0, 1.0, 2.0], abs=1e-12)
        assert table.levels[1] == pytest.approx([0.0, 1.0, 2.2], abs=1e-12)
        assert all(table.converged)
        assert list(table.cutoffs) == [20, 20]

    def test_grid_validation(self):
        with pytest.raises(ValueError):
            sweep(self.cavity_builder, "J", [], 3)
        with pytest.raises(ValueError):
            sweep(self.cavity_builder, "J", [0.1, 0.0], 3)
        with pytest.raises(ValueError):
            sweep(self.cavity_builder, "volume", [0.0, 0.1], 3)

    def test_csv_schema(self, tmp_path):
        table = sweep(self.cavity_builder, "J", [0.0, 0.05], 3, cutoff=20)
        path = tmp_path / "table.csv"
        write_sweep_csv(table, path)
        lines = path.read_text().splitlines()
        assert lines[0] == "J,level_0,level_1,level_2,converged"
        first = lines[1].split(",")
        assert first[0] == "0" and first[-1] == "true"
        # 17 significant digits survive a float round trip
        parsed = [float(tok) for tok in lines[2].split(",")[:-1]]
        assert parsed[0] == 0.05
        assert parsed[1:] == pytest.approx(list(table.levels[1]), abs=0.0)

    def test_unconverged_rows_flagged_not_dropped(self):
        quartic = lambda eta, J, n: nonlinear_cavity(
            ResonatorParams(1.0, J, "minus"), Space(photon=n)
        )
        table = sweep(quartic, "J", [0.05, 0.1], 3, cutoff=8, tolerance=1e-30)
        assert list(table.converged) == [False, False]
        assert table.levels.shape == (2, 3)


class TestFormatting:
    def test_fmt_float_round_trips(self):
        for v in (0.1, 1 / 3, 2.2, 1e-17, 123456.789):
            assert float(fmt_float(v)) == v


class TestGaugeInvarianceCheck:
    def test_corrected_model_passes(self):
        report = gauge_invariance_check((0.0, 1.0), (0.1,), k=4, variant="minus")
        assert report.passed
        assert report.max_discrepancy < 1e-6
        assert report.max_exact_identity < 1e-10

    def test_naive_model_fails_physically_not_spectrally(self):
        report = gauge_invariance_check(
            (2.0,), (0.1,), k=4, variant="kerr", model="naive-dipole"
        )
        assert not report.passed
        assert report.max_discrepancy > 1e-2
        # conjugation by any unitary still preserves the spectrum exactly
        assert report.max_exact_identity < 1e-10

    def test_model_names_validated(self):
        with pytest.raises(ValueError):
            gauge_invariance_check((0.0,), (0.1,), model="rabi-dipole")


class TestDecouplingCheck:
    def test_report_shape_and_monotonicity(self):
        report = decoupling_check(0.05, eta_large=6.0, k=4)
        assert list(report.etas) == [4.0, 6.0]
        assert report.deviation_monotone and report.gaps_monotone
        assert report.deviations[-1] < report.deviations[0]
        assert np.all(np.asarray(report.pair_gaps) >= 0.0)
        assert report.deviations[-1] < 1e-3

    def test_naive_model_does_not_decouple(self):
        report = decoupling_check(0.05, eta_large=4.0, k=4, model="naive-dipole")
        assert report.deviations[-1] > 1e-3
        assert not report.passed
