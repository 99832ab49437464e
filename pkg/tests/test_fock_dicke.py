import math

import numpy as np
import pytest

from twomode.errors import DimensionMismatch, PreconditionError, ZeroNorm
from twomode.fock_dicke import (
    BandedHermitian,
    CouplingSet,
    DickeVector,
    ModeOverlaps,
    apply,
    assemble_hamiltonian,
    build_term,
    check_particle_number,
    couplings_from_overlaps,
    direction_operator,
    expectation,
    variance,
)
from twomode.spectral import eigh
from twomode.states import coherent
from .utils import random_state


class TestDickeVector:
    def test_normalizes(self):
        v = DickeVector([3, 4j])
        assert np.allclose(v.amplitudes, [0.6, 0.8j])
        assert v.N == 1
        assert len(v) == 2

    def test_zero_norm(self):
        with pytest.raises(ZeroNorm):
            DickeVector([0, 0, 0])

    def test_non_finite(self):
        with pytest.raises(ZeroNorm):
            DickeVector([1, math.nan])

    def test_read_only(self):
        v = DickeVector.basis(3, 1)
        with pytest.raises(ValueError):
            v.amplitudes[0] = 1

    def test_basis(self):
        v = DickeVector.basis(4, 2)
        assert v.to_rows()[2] == (2, 1.0, 0.0)
        with pytest.raises(ValueError):
            DickeVector.basis(4, 5)

    def test_inner_checks_dimension(self):
        with pytest.raises(DimensionMismatch) as error:
            DickeVector.basis(3, 0).inner(DickeVector.basis(4, 0))
        assert error.value.expected == 3
        assert error.value.got == 4

    def test_swap_modes(self):
        v = DickeVector([1, 2j, 0, 0])
        assert np.allclose(v.swap_modes().amplitudes, v.amplitudes[::-1])

    def test_asdict(self):
        data = DickeVector([1j, 0]).asdict()
        assert data == {"N": 1, "amplitudes": [[0.0, 1.0], [0.0, 0.0]]}


class TestParticleNumber:
    @pytest.mark.parametrize("N", [0, -2, 2.0, True, "4"])
    def test_invalid(self, N):
        with pytest.raises(PreconditionError):
            check_particle_number(N)

    def test_numpy_integer(self):
        assert check_particle_number(np.int64(5)) == 5


class TestBandedHermitian:
    def test_matvec_matches_dense(self):
        rng = np.random.default_rng(7)
        for name in ("pair", "weighted1", "jy", "contact"):
            op = build_term(11, name)
            v = rng.normal(size=12) + 1j * rng.normal(size=12)
            assert np.allclose(op.matvec(v), op.dense() @ v)

    def test_matvec_columns(self):
        rng = np.random.default_rng(8)
        op = build_term(6, "pair") + build_term(6, "jx")
        block = rng.normal(size=(7, 3))
        assert np.allclose(op.matvec(block), op.dense() @ block)

    def test_wrong_band_lengths(self):
        with pytest.raises(ValueError):
            BandedHermitian(np.zeros(4), np.zeros(2), np.zeros(2))

    def test_complex_diagonal(self):
        with pytest.raises(ValueError):
            BandedHermitian(np.array([1j, 0]), np.zeros(1), np.zeros(0))

    def test_bands_beyond_bandwidth(self):
        with pytest.raises(ValueError):
            BandedHermitian(np.zeros(3), np.ones(2), np.zeros(1), bandwidth=0)

    def test_single_state_space(self):
        op = BandedHermitian(np.array([2.0]), np.zeros(0), np.zeros(0))
        assert op.dim == 1
        assert np.allclose(op.dense(), [[2.0]])

    def test_arithmetic(self):
        a = build_term(5, "pair")
        b = build_term(5, "tunnel1")
        assert np.allclose((a - 0.5 * b).dense(), a.dense() - 0.5 * b.dense())
        assert np.allclose((-a).dense(), -a.dense())
        assert (a + b).bandwidth == 2

    def test_complex_scaling_is_rejected(self):
        with pytest.raises(TypeError):
            build_term(3, "jx") * 1j

    def test_adding_mismatched_dimensions(self):
        with pytest.raises(ValueError):
            build_term(3, "jx") + build_term(4, "jx")

    def test_str(self):
        assert str(build_term(8, "pair")) == "pair N=8 bandwidth=2"


class TestExpectations:
    def test_dicke_states_are_jz_eigenvectors(self):
        jz = build_term(6, "jz")
        for k in range(7):
            v = DickeVector.basis(6, k)
            assert expectation(jz, v) == pytest.approx(k - 3)
            assert variance(jz, v) == pytest.approx(0, abs=1e-12)

    def test_coherent_variance(self):
        N, theta = 12, 1.1
        zeta = math.tan(theta / 2)
        jz = build_term(N, "jz")
        v = coherent(N, zeta)
        assert expectation(jz, v) == pytest.approx(-N / 2 * math.cos(theta))
        assert variance(jz, v) == pytest.approx(N / 4 * math.sin(theta) ** 2)

    def test_variance_is_non_negative(self):
        rng = np.random.default_rng(1)
        op = build_term(9, "pair")
        for _ in range(10):
            assert variance(op, random_state(rng, 9)) >= 0

    def test_apply_checks_dimension(self):
        with pytest.raises(DimensionMismatch):
            apply(build_term(4, "jx"), DickeVector.basis(5, 0))

    def test_direction_operator(self):
        N = 5
        n = np.array([1.0, 2.0, 2.0]) / 3
        op = direction_operator(N, n)
        expected = sum(
            c * build_term(N, f"j{axis}").dense() for c, axis in zip(n, "xyz")
        )
        assert np.allclose(op.dense(), expected)
        assert np.allclose(eigh(op).eigenvalues, np.arange(N + 1) - N / 2)


class TestCouplingSet:
    def test_new(self):
        couplings, errors = CouplingSet.new(
            {"vartheta": 0.5, "V": [[1, 2], [2, 3]], "A2": [0, 1], "T0": -1}
        )
        assert errors == []
        assert couplings.V01 == 2
        assert couplings.A2 == 1j
        assert couplings.T0 == -1
        assert couplings.T1 == 0

    def test_new_errors(self):
        couplings, errors = CouplingSet.new(
            {"A1": [1, 2, 3], "V": [[1, 0], [1, 1]], "mass": 1}
        )
        assert couplings is None
        assert errors == [
            {
                "field": "couplings.V",
                "text": 'Value "[[1, 0], [1, 1]]" is not a symmetric '
                "2x2 real matrix.",
            },
            {
                "field": "couplings.A1",
                "text": 'Value "[1, 2, 3]" is not a complex number.',
            },
            {"field": "couplings.mass", "text": "Unknown field."},
        ]

    def test_not_an_object(self):
        assert CouplingSet.new([1, 2]) == (
            None,
            [{"field": "couplings", "text": "Expected an object."}],
        )

    def test_asdict(self):
        couplings = CouplingSet(V00=1, V01=0.5, A1=-1, A2=0.5j)
        assert couplings.asdict() == {
            "vartheta": 0,
            "V": [[1, 0.5], [0.5, 0]],
            "A1": -1.0,
            "A2": [0.0, 0.5],
            "T0": 0.0,
            "T1": 0.0,
        }

    def test_add(self):
        total = CouplingSet(A1=1, V00=2) + CouplingSet(A1=0.5, T0=1j)
        assert total == CouplingSet(A1=1.5, V00=2, T0=1j)


class TestModeOverlaps:
    def test_required(self):
        overlaps, errors = ModeOverlaps.new({"o_0000": 1})
        assert overlaps is None
        assert errors == [
            {"field": "overlaps.V0", "text": 'Required "V0" argument is missing.'},
            {"field": "overlaps.z", "text": 'Required "z" argument is missing.'},
        ]

    def test_negative_density(self):
        _, errors = ModeOverlaps.new({"z": 1, "V0": 1, "o_1111": -0.5})
        assert errors == [
            {
                "field": "overlaps.o_1111",
                "text": 'Value "-0.5" is not a non-negative real number.',
            }
        ]

    def test_couplings_from_overlaps(self):
        overlaps, errors = ModeOverlaps.new(
            {
                "z": 1,
                "V0": 2,
                "o_0000": 1,
                "o_1111": 2,
                "o_0011": 3,
                "o_pair": 4,
                "o_t0": 5,
                "o_t1": 6,
                "A1_in": -1,
            }
        )
        assert errors == []
        couplings = couplings_from_overlaps(overlaps)
        # |z| = 1 gives the common factor V0 / 8
        assert couplings.V00 == pytest.approx(0.25)
        assert couplings.V11 == pytest.approx(0.5)
        assert couplings.V01 == pytest.approx(3.0)
        assert couplings.A2 == pytest.approx(1.0)
        assert couplings.T0 == pytest.approx(1.25)
        assert couplings.T1 == pytest.approx(1.5)
        assert couplings.A1 == -1

    def test_mixing_phase(self):
        overlaps = ModeOverlaps(z=1j, V0=2, o_pair=1, o_t0=1)
        couplings = couplings_from_overlaps(overlaps)
        assert couplings.A2 == pytest.approx(-0.25)
        assert couplings.T0 == pytest.approx(0.25j)


class TestAssembleHamiltonian:
    def test_zero_couplings(self):
        H = assemble_hamiltonian(6, CouplingSet())
        assert H.name == "hamiltonian"
        assert not np.any(H.dense())

    def test_single_terms(self):
        N = 7
        cases = [
            ("vartheta", "dephasing"),
            ("V00", "self0"),
            ("V11", "self1"),
            ("A2", "pair"),
            ("T0", "weighted0"),
        ]
        for field, term in cases:
            H = assemble_hamiltonian(N, CouplingSet(**{field: 0.7}))
            assert H.bands_equal(0.7 * build_term(N, term), atol=1e-12)

    def test_linear_in_couplings(self):
        N = 6
        first = CouplingSet(
            vartheta=0.3, V00=1.1, V01=-0.4, A1=0.2 + 0.5j, A2=-1j, T1=0.7
        )
        second = CouplingSet(V11=0.6, V01=0.9, A1=-1, T0=0.3 - 0.2j, T1=-0.1j)
        total = assemble_hamiltonian(N, first) + assemble_hamiltonian(N, second)
        combined = assemble_hamiltonian(N, first + second)
        assert combined.bands_equal(total, atol=1e-14 * N**2)

    def test_contact_counts_twice(self):
        H = assemble_hamiltonian(5, CouplingSet(V01=1.5))
        assert H.bands_equal(3 * build_term(5, "contact"), atol=1e-12)

    def test_complex_tunnelling_is_hermitian(self):
        H = assemble_hamiltonian(8, CouplingSet(A1=0.3 + 0.4j, A2=-1j, T1=0.2j))
        dense = H.dense()
        assert np.allclose(dense, dense.conj().T)

    def test_t1_ordering(self):
        N = 6
        H = assemble_hamiltonian(N, CouplingSet(T1=1))
        expected = build_term(N, "weighted1") - build_term(N, "tunnel1")
        assert H.bands_equal(expected, atol=1e-12)
        k = np.arange(N)
        assert np.allclose(H.d1, k * np.sqrt((N - k) * (k + 1)))

    @pytest.mark.parametrize("N", [3, 10, 25])
    def test_equal_weighted_couplings_renormalize_tunnelling(self, N):
        t, a = 0.37, -1.2
        weighted = assemble_hamiltonian(N, CouplingSet(A1=a, T0=t, T1=t))
        plain = assemble_hamiltonian(N, CouplingSet(A1=a + t * N))
        assert weighted.bands_equal(plain, atol=1e-12 * N**2)
        assert np.allclose(
            eigh(weighted).eigenvalues,
            eigh(plain).eigenvalues,
            rtol=0,
            atol=1e-12 * N**2,
        )
