import math

import numpy as np
import pytest
from scipy.linalg import expm

from twomode.errors import PreconditionError, UnsupportedCase
from twomode.fock_dicke import (
    DickeVector,
    build_su2,
    build_term,
    direction_operator,
    expectation,
    variance,
)
from twomode.metrology import fragmentation, qfi_pure
from twomode.states import (
    SpherePoint,
    SuperpositionSpec,
    antipodal_superposition,
    coherent,
    coherent_matrix_element,
    fidelity,
    noon,
    omega,
    psi4,
    psi_theta_phi,
    psi_v01,
    psi_v01_odd,
    rotate_z,
    variational_superposition,
    xi_pair,
)
from twomode.spectral import eigh
from .utils import random_direction, random_state

EXACT_C4 = math.sqrt((math.sqrt(3) - 1) / 2)


def point_along(n: np.ndarray) -> SpherePoint:
    return SpherePoint.from_angles(math.acos(n[2]), math.atan2(n[1], n[0]))


class TestSpherePoint:
    def test_angles(self):
        p = SpherePoint.from_angles(1.2, 0.3)
        assert p.angles == pytest.approx((1.2, 0.3))
        assert abs(p.zeta) == pytest.approx(math.tan(0.6))

    def test_infinity(self):
        p = SpherePoint.from_angles(math.pi, 1.0)
        assert p.is_infinite
        assert np.allclose(p.unit_vector(), [0, 0, -1])
        assert p.inverse().zeta == 0

    def test_antipode(self):
        p = SpherePoint(0.4 - 0.7j)
        assert np.allclose(p.antipode().unit_vector(), -p.unit_vector())

    def test_polar_angle_range(self):
        with pytest.raises(PreconditionError):
            SpherePoint.from_angles(4.0, 0.0)

    def test_not_finite(self):
        with pytest.raises(PreconditionError):
            SpherePoint(complex(math.inf, 0))


class TestCoherent:
    def test_poles(self):
        assert coherent(5, 0).amplitudes[0] == 1
        assert coherent(5, None).amplitudes[5] == 1

    def test_amplitudes(self):
        N, zeta = 6, 0.3 + 0.5j
        k = np.arange(N + 1)
        binomial = np.array([math.comb(N, int(j)) for j in k])
        expected = np.sqrt(binomial) * zeta**k
        expected /= np.linalg.norm(expected)
        assert np.allclose(coherent(N, zeta).amplitudes, expected)

    def test_large_n_stays_finite(self):
        v = coherent(4000, 3.0)
        assert np.all(np.isfinite(v.amplitudes))

    def test_extremal_states(self):
        N = 7
        rng = np.random.default_rng(5)
        for _ in range(100):
            n = random_direction(rng)
            p = point_along(n)
            op = direction_operator(N, n)
            lowest = coherent(N, p.reflected())
            highest = coherent(N, p.inverse())
            assert expectation(op, lowest) == pytest.approx(-N / 2, abs=1e-9)
            assert expectation(op, highest) == pytest.approx(N / 2, abs=1e-9)
            assert variance(op, lowest) == pytest.approx(0, abs=1e-9)
            assert variance(op, highest) == pytest.approx(0, abs=1e-9)

    def test_extremal_eigenvectors(self):
        N = 7
        rng = np.random.default_rng(11)
        for _ in range(100):
            n = random_direction(rng)
            p = point_along(n)
            dec = eigh(direction_operator(N, n))
            assert fidelity(dec.ground, coherent(N, p.reflected())) >= 1 - 1e-10
            assert fidelity(dec.highest, coherent(N, p.inverse())) >= 1 - 1e-10

    def test_raising_the_lowest_state(self):
        N = 7
        rng = np.random.default_rng(12)
        lowering = build_su2(N, "x").dense() - 1j * build_su2(N, "y").dense()
        top = np.zeros(N + 1)
        top[N] = 1
        for _ in range(10):
            zeta = complex(*rng.normal(size=2))
            raw = (1 + abs(zeta) ** 2) ** (-N / 2) * expm(zeta * lowering) @ top
            assert np.linalg.norm(raw) == pytest.approx(1, abs=1e-10)
            expected = coherent(N, 1 / zeta).amplitudes
            assert abs(np.vdot(expected, raw)) ** 2 >= 1 - 1e-10

    def test_pair_condensate_of_equal_parameters(self):
        zeta = 0.3 + 0.4j
        assert fidelity(xi_pair(10, zeta, zeta), coherent(10, zeta)) == pytest.approx(1)

    def test_rotation(self):
        zeta, alpha = 0.8 - 0.1j, 0.9
        rotated = rotate_z(coherent(9, zeta), alpha)
        expected = coherent(9, zeta * np.exp(-1j * alpha))
        assert fidelity(rotated, expected) == pytest.approx(1)


class TestCatStates:
    def test_noon(self):
        v = noon(3, 0.5)
        assert np.allclose(
            v.amplitudes, np.array([np.exp(0.5j), 0, 0, 1]) / math.sqrt(2)
        )

    def test_psi_theta_phi_poles(self):
        north = psi_theta_phi(4, 0, 0)
        south = psi_theta_phi(4, math.pi, 0)
        assert fidelity(north, DickeVector.basis(4, 4)) == pytest.approx(1)
        assert fidelity(south, DickeVector.basis(4, 0)) == pytest.approx(1)

    @pytest.mark.parametrize("N", [2, 8, 13])
    def test_antipodal_superposition_is_optimal(self, N):
        rng = np.random.default_rng(N)
        n = random_direction(rng)
        p = point_along(n)
        v = antipodal_superposition(N, p, eta=0.4)
        op = direction_operator(N, p.unit_vector())
        assert qfi_pure(v, op).qfi == pytest.approx(N**2)
        assert fragmentation(v).fd == pytest.approx(1)

    def test_psi4_of_four_is_noon(self):
        assert fidelity(psi4(4), noon(4, 0)) == pytest.approx(1)

    def test_psi4_support(self):
        v = psi4(12)
        k = np.arange(13)
        assert not np.any(v.amplitudes[k % 4 != 0])


class TestContactFamilies:
    def test_even(self):
        N = 6
        v = psi_v01(N, 0.7, 1.9, -0.4)
        assert variance(build_term(N, "contact"), v) == pytest.approx(N**4 / 64)

    def test_even_needs_even_n(self):
        with pytest.raises(UnsupportedCase):
            psi_v01(5, 0, 0, 0)

    def test_odd(self):
        v = psi_v01_odd(5, 0.3, 1.0, 2.0, -1.0, 0.2)
        assert variance(build_term(5, "contact"), v) == pytest.approx(9)

    def test_odd_needs_odd_n(self):
        with pytest.raises(UnsupportedCase):
            psi_v01_odd(4, 0, 0, 0, 0, 0)


class TestOmega:
    def test_exact_eigenvector_at_four(self):
        pair = build_term(4, "pair")
        v = omega(4, EXACT_C4, "+")
        residual = pair.matvec(v.amplitudes) + math.sqrt(48) * v.amplitudes
        assert np.linalg.norm(residual) <= 1e-12

    def test_parity(self):
        k = np.arange(9)
        plus = omega(8, 0.6, "+")
        minus = omega(8, 0.6, "-")
        assert not np.any(plus.amplitudes[k % 2 == 1])
        assert not np.any(minus.amplitudes[k % 2 == 0])
        assert abs(plus.inner(minus)) == pytest.approx(0, abs=1e-12)

    @pytest.mark.parametrize("N", [8, 12, 40])
    @pytest.mark.parametrize("c", [0.3, 0.7, 1.2])
    def test_minus_branch_is_orthogonal_to_its_rotation(self, N, c):
        v = omega(N, c, "-")
        assert abs(v.inner(rotate_z(v, math.pi / 2))) <= 1e-12

    def test_needs_even_n(self):
        with pytest.raises(UnsupportedCase):
            omega(5, 0.5, "+")

    def test_sign(self):
        with pytest.raises(PreconditionError):
            omega(4, 0.5, "x")


class TestSuperposition:
    def test_orthogonal_extremes(self):
        a, b = DickeVector.basis(3, 0), DickeVector.basis(3, 3)
        v = variational_superposition(SuperpositionSpec.new(a, b, 0.5))
        expected = np.array([1, 0, 0, np.exp(0.5j)]) / math.sqrt(2)
        assert np.allclose(v.amplitudes, expected)

    def test_equal_weights(self):
        rng = np.random.default_rng(9)
        a, b = random_state(rng, 6), random_state(rng, 6)
        eta = 1.1
        spec = SuperpositionSpec.new(a, b, eta)
        v = variational_superposition(spec)
        gauged = b.amplitudes * abs(spec.w) / spec.w
        on_min = a.inner(v)
        on_max = complex(np.vdot(gauged, v.amplitudes))
        assert on_max / on_min == pytest.approx(np.exp(1j * eta))

    def test_parallel(self):
        a = coherent(4, 0.5)
        with pytest.raises(PreconditionError):
            variational_superposition(SuperpositionSpec.new(a, a, 0.3))


class TestMatrixElements:
    @pytest.mark.parametrize("ordering", ["minus_plus", "plus_minus"])
    @pytest.mark.parametrize(
        "zeta_prime, zeta", [(0.3 + 0.2j, -0.5 + 0.1j), (0, 0.7j), (1.3, 0)]
    )
    def test_against_dicke_basis(self, ordering, zeta_prime, zeta):
        N = 6
        jx = build_su2(N, "x").dense()
        jy = build_su2(N, "y").dense()
        raising, lowering = jx + 1j * jy, jx - 1j * jy
        power = np.linalg.matrix_power
        bra = coherent(N, zeta_prime).amplitudes
        ket = coherent(N, zeta).amplitudes
        for m, n in [(0, 0), (1, 0), (0, 2), (2, 1), (3, 3)]:
            if ordering == "minus_plus":
                matrix = power(lowering, m) @ power(raising, n)
            else:
                matrix = power(raising, m) @ power(lowering, n)
            expected = np.vdot(bra, matrix @ ket)
            value = coherent_matrix_element(N, zeta_prime, zeta, m, n, ordering)
            assert value == pytest.approx(expected, abs=1e-10)

    def test_overlap(self):
        assert coherent_matrix_element(5, 0.2, 0.2, 0, 0) == pytest.approx(1)

    def test_negative_power(self):
        with pytest.raises(PreconditionError):
            coherent_matrix_element(4, 0.1, 0.1, -1, 0)

    def test_unknown_ordering(self):
        with pytest.raises(PreconditionError):
            coherent_matrix_element(4, 0.1, 0.1, 1, 0, "normal")
