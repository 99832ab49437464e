import math

import numpy as np
import pytest

from twomode.errors import PreconditionError, UnsupportedCase
from twomode.experiments import (
    EXACT_C4,
    FIG4_HEADER,
    TABLE1_N,
    conjecture_rows,
    fig2_exact_row,
    fig2_row,
    fig3_row,
    fig4_result,
    fig4_row,
    headline_scalars,
    pair_spectrum,
    sweep,
    table1_row,
)
from twomode.variational import OptimizerConfig
from .utils import load_reference, relative


def fig2_infidelity(row: tuple) -> float:
    return 1 - max(row[2], row[4])


class TestSweep:
    def test_values(self):
        assert sweep(8, 20, 4) == [8, 12, 16, 20]
        assert sweep(8, 8, 4) == [8]

    def test_step(self):
        with pytest.raises(PreconditionError):
            sweep(8, 20, 0)

    def test_empty(self):
        with pytest.raises(PreconditionError):
            sweep(20, 8, 4)

    def test_odd_values(self):
        with pytest.raises(UnsupportedCase):
            sweep(8, 20, 3)


class TestPairSpectrum:
    def test_limits(self):
        with pytest.raises(UnsupportedCase):
            pair_spectrum(514)
        with pytest.raises(UnsupportedCase):
            pair_spectrum(9)

    def test_dimension(self):
        assert pair_spectrum(40).dim == 41


class TestFig2:
    def test_exact_row(self):
        row = fig2_exact_row()
        assert row[:2] == (4, EXACT_C4)
        assert row[2] == pytest.approx(1, abs=1e-12)
        assert row[3] == pytest.approx(0, abs=1e-12)

    def test_closed_form_is_exact_at_four(self):
        assert fig2_row(4) == pytest.approx(fig2_exact_row())

    def test_large_n(self):
        row = fig2_row(160)
        assert fig2_infidelity(row) < 1e-3
        assert all(0 <= value <= 1 for value in row[2:])

    @pytest.mark.parametrize("N", [8, 20, 40, 80, 160])
    def test_branches_split_the_two_levels(self, N):
        _, _, plus_e1, plus_e2, minus_e1, minus_e2 = fig2_row(N)
        assert (plus_e1 > minus_e1) != (plus_e2 > minus_e2)

    def test_odd_n(self):
        with pytest.raises(UnsupportedCase):
            fig2_row(11)


class TestFig3:
    @pytest.mark.parametrize("N", [8, 20, 40])
    def test_cats_are_worse_than_omega(self, N):
        row = fig3_row(N)
        assert row[3] in ("+", "-")
        assert row[4] == min(row[1], row[2])
        assert row[4] > fig2_infidelity(fig2_row(N))


class TestFig4:
    def test_without_optimizer(self):
        row = fig4_row(12, optimize=False)
        assert len(row) == len(FIG4_HEADER)
        assert row[0] == 12
        assert row[1] < 0
        assert 0 <= row[2] <= 1
        assert 0 <= row[5] <= 1
        assert all(math.isnan(value) for value in row[6:9])
        assert row[9] is True

    @pytest.fixture(scope="class")
    def rows(self):
        return [fig4_row(N) for N in (8, 16, 24, 32, 40)]

    def test_optimizer_converges(self, rows):
        assert all(row[9] for row in rows)

    def test_orderings(self, rows):
        for row in rows:
            coherent, two_equation, optimized = row[2], row[5], row[8]
            assert coherent >= two_equation
            assert optimized <= two_equation + 1e-12
            assert optimized <= coherent + 1e-12

    def test_optimized_infidelity_does_not_grow(self, rows):
        optimized = [row[8] for row in rows]
        for smaller, larger in zip(optimized, optimized[1:]):
            assert larger <= smaller + 1e-12

    def test_optimizer_improves_on_its_starts(self):
        cfg = OptimizerConfig(init=(0.0, 0.0), max_iter=1000, restarts=1)
        row, result = fig4_result(8, cfg=cfg)
        assert row[8] <= row[2] + 1e-12
        if row[4] >= 0:
            assert row[8] <= row[5] + 1e-12
        assert result.evaluations == len(result.trace_rows())


class TestTable1:
    def test_reference_rows(self):
        reference = load_reference("table1")
        assert [row["N"] for row in reference["row"]] == list(TABLE1_N)
        for row in reference["row"]:
            N, normalized, qfi = table1_row(row["N"])
            assert normalized == pytest.approx(row["value"], abs=reference["tolerance"])
            assert qfi == pytest.approx(normalized * 4 * N**2)

    def test_four_by_hand(self):
        assert table1_row(4)[1] == pytest.approx((8 + 4 * math.sqrt(3)) / 16)


class TestScalars:
    @pytest.fixture(scope="class")
    def scalars(self):
        return headline_scalars(load_reference("scalars")["N"])

    def test_reference_values(self, scalars):
        reference = load_reference("scalars")
        assert scalars["family_qfi_gap"] == pytest.approx(
            reference["family_qfi_gap"]["value"],
            abs=reference["family_qfi_gap"]["absolute"],
        )
        assert scalars["psi4_qfi_gap"] == pytest.approx(
            reference["psi4_qfi_gap"]["value"],
            rel=reference["psi4_qfi_gap"]["relative"],
        )
        assert scalars["run_ratio"] == pytest.approx(
            reference["run_ratio"]["value"], abs=reference["run_ratio"]["absolute"]
        )

    def test_consistency(self, scalars):
        assert scalars["family_bound_holds"]
        assert scalars["max_qfi"] == pytest.approx(4 * scalars["lambda_max"] ** 2)
        assert relative(
            scalars["psi4_variance_closed_form"], scalars["psi4_variance"]
        ) <= 1e-9
        assert scalars["run_ratio_qfi_scale"] < scalars["run_ratio"]
        assert scalars["omega_sign"] in ("+", "-")
        assert scalars["c_tilde"] == pytest.approx(1 / math.sqrt(2), abs=0.05)

    def test_eta_points(self):
        with pytest.raises(PreconditionError):
            headline_scalars(8, eta_points=0)


class TestConjecture:
    def test_rows(self):
        grid = np.linspace(0.05, 1.5, 100)
        rows, minima = conjecture_rows(4, "+", grid)
        assert len(rows) == 100
        assert rows[0][:2] == (4, "+")
        assert any(abs(c - EXACT_C4) < 1e-6 for _, _, c, _ in minima)
