"""Quantum Fisher information, Cramer-Rao bounds and optimal measurements.

Units follow hbar = T = 1: the QFI of a pure probe on the path
exp(-i theta A) is four times the variance of A, and the Cramer-Rao bound
for nu repetitions is 1 / (nu QFI).
"""

import math
import warnings
from dataclasses import dataclass
from typing import Optional

import numpy as np
from numpy.polynomial import polynomial
from scipy.special import stirling2

from .errors import DegenerateProbe, MetrologyWarning, PreconditionError
from .fock_dicke import (
    BandedHermitian,
    DickeVector,
    apply,
    build_su2,
    check_particle_number,
    expectation,
    variance,
)
from .spectral import SpectralDecomposition, eigh
from .states import fidelity


@dataclass(frozen=True)
class QFIReport:
    N: int
    generator: str
    mean: float
    variance: float
    qfi: float
    generator_norm: float
    spectral_width: Optional[float] = None

    def qcr_bound(self, nu: float = 1.0) -> float:
        if nu <= 0:
            raise PreconditionError(f"Repetition count must be positive, got {nu}.")
        if self.qfi == 0:
            return math.inf
        return 1 / (nu * self.qfi)

    @property
    def efficiency(self) -> Optional[float]:
        """QFI relative to its maximum over all probes."""
        if not self.spectral_width:
            return None
        return self.qfi / self.spectral_width**2

    def asdict(self, nu: float = 1.0) -> dict:
        return {
            "N": self.N,
            "generator": self.generator,
            "mean": self.mean,
            "variance": self.variance,
            "qfi": self.qfi,
            "qcr": self.qcr_bound(nu),
            "nu": nu,
            "generator_norm": self.generator_norm,
            "max_qfi": None if self.spectral_width is None else self.spectral_width**2,
        }


@dataclass(frozen=True, eq=False)
class SLDMeasurement:
    sld: np.ndarray
    projectors: tuple[DickeVector, DickeVector]
    eigenvalues: tuple[float, float]


@dataclass(frozen=True, eq=False)
class FragmentationReport:
    N: int
    opdm: np.ndarray
    jvec: np.ndarray
    fd: float

    @property
    def occupations(self) -> np.ndarray:
        """Eigenvalues of the one-particle density matrix, descending."""
        return np.linalg.eigvalsh(self.opdm)[::-1]

    def asdict(self) -> dict:
        return {
            "N": self.N,
            "jvec": self.jvec.tolist(),
            "occupations": self.occupations.tolist(),
            "fd": self.fd,
        }


@dataclass(frozen=True)
class GapBound:
    lhs: float
    rhs: float

    @property
    def qfi_gap(self) -> float:
        return 4 * self.lhs

    def holds(self, slack: float = 1e-9) -> bool:
        return self.lhs <= self.rhs + slack


def _spectrum(A: BandedHermitian, spectrum: Optional[SpectralDecomposition]):
    if spectrum is None:
        spectrum = eigh(A)
    elif spectrum.dim != A.dim:
        raise PreconditionError("Spectrum does not belong to this generator.")
    return spectrum


def qfi_pure(
    v: DickeVector,
    A: BandedHermitian,
    spectrum: Optional[SpectralDecomposition] = None,
) -> QFIReport:
    v.check_dimension(A.N)
    spectrum = _spectrum(A, spectrum)
    var = variance(A, v)
    return QFIReport(
        N=v.N,
        generator=A.name or "operator",
        mean=expectation(A, v),
        variance=var,
        qfi=4 * var,
        generator_norm=spectrum.norm,
        spectral_width=float(spectrum.eigenvalues[-1] - spectrum.eigenvalues[0]),
    )


def max_qfi(A: BandedHermitian, spectrum=None) -> float:
    spectrum = _spectrum(A, spectrum)
    return float(spectrum.eigenvalues[-1] - spectrum.eigenvalues[0]) ** 2


def optimal_superposition(
    A: BandedHermitian, eta: float = 0.0, spectrum=None
) -> DickeVector:
    """(|lambda_min> + e^{i eta} |lambda_max>) / sqrt(2)"""
    spectrum = _spectrum(A, spectrum)
    return DickeVector(
        spectrum.vectors[:, 0] + np.exp(1j * eta) * spectrum.vectors[:, -1]
    )


def evolve(
    A: BandedHermitian, v: DickeVector, theta: float, spectrum=None
) -> DickeVector:
    """exp(-i theta A) v"""
    v.check_dimension(A.N)
    spectrum = _spectrum(A, spectrum)
    vectors = spectrum.vectors
    coefficients = vectors.conj().T @ v.amplitudes
    phases = np.exp(-1j * theta * spectrum.eigenvalues)
    return DickeVector(vectors @ (phases * coefficients))


def sld(v: DickeVector, A: BandedHermitian) -> SLDMeasurement:
    image = apply(A, v)
    psi = v.amplitudes
    mean = np.vdot(psi, image).real
    var = variance(A, v)
    if var < 1e-12:
        raise DegenerateProbe(
            f"Probe is an eigenvector of {A.name or 'the generator'} "
            f"(variance {var:.3e})."
        )

    spread = math.sqrt(var)
    # unit vector orthogonal to v; L acts as 2 spread [[0, i], [-i, 0]] on (v, u)
    u = (image - mean * psi) / spread
    plus = DickeVector((psi - 1j * u) / math.sqrt(2))
    minus = DickeVector((psi + 1j * u) / math.sqrt(2))
    operator = 2j * (np.outer(psi, image.conj()) - np.outer(image, psi.conj()))
    operator.setflags(write=False)
    return SLDMeasurement(
        sld=operator,
        projectors=(plus, minus),
        eigenvalues=(2 * spread, -2 * spread),
    )


def measurement_probabilities(
    v: DickeVector, measurement: SLDMeasurement
) -> np.ndarray:
    """Born probabilities of the two SLD projectors and their complement."""
    plus, minus = measurement.projectors
    p_plus = abs(plus.inner(v)) ** 2
    p_minus = abs(minus.inner(v)) ** 2
    return np.array([p_plus, p_minus, 1 - p_plus - p_minus])


def classical_fisher(
    v: DickeVector,
    A: BandedHermitian,
    measurement: Optional[SLDMeasurement] = None,
    step: float = 1e-5,
    spectrum=None,
) -> float:
    """Fisher information of the SLD measurement at theta = 0.

    Derivatives of the Born probabilities are central differences.
    """
    spectrum = _spectrum(A, spectrum)
    if measurement is None:
        measurement = sld(v, A)

    at = measurement_probabilities(v, measurement)
    forward = measurement_probabilities(evolve(A, v, step, spectrum), measurement)
    backward = measurement_probabilities(evolve(A, v, -step, spectrum), measurement)
    derivative = (forward - backward) / (2 * step)

    significant = at > 1e-12
    return float(np.sum(derivative[significant] ** 2 / at[significant]))


def multiparam_compatible(v: DickeVector, ops: list[BandedHermitian]) -> np.ndarray:
    """Matrix of Im <v|A_i A_j|v> = <[A_i, A_j]> / 2i."""
    images = np.array([apply(op, v) for op in ops])
    return np.imag(images.conj() @ images.T)


def fragmentation(v: DickeVector) -> FragmentationReport:
    N = v.N
    jvec = np.array([expectation(build_su2(N, axis), v) for axis in "xyz"])
    jx, jy, jz = jvec
    coherence = complex(jx, -jy)
    opdm = np.array(
        [[N / 2 - jz, coherence], [coherence.conjugate(), N / 2 + jz]],
        dtype=complex,
    )
    fd = 1 - 2 * float(np.linalg.norm(jvec)) / N
    return FragmentationReport(N=N, opdm=opdm, jvec=jvec, fd=min(max(fd, 0.0), 1.0))


def qfi_gap_bound(
    psi_true: DickeVector,
    psi_var: DickeVector,
    A: BandedHermitian,
    spectrum=None,
) -> GapBound:
    """Variance lost by a zero-energy variational probe, and its bound.

    lhs = Var_true - Var_var, rhs = ||A||^2 (1 - |<true|var>|^2).
    """
    psi_true.check_dimension(A.N)
    psi_var.check_dimension(A.N)
    spectrum = _spectrum(A, spectrum)
    norm = spectrum.norm

    energy = expectation(A, psi_var)
    if abs(energy) > 1e-8 * max(norm, 1.0):
        warnings.warn(
            f"Variational probe has energy {energy:.3e}; the gap bound assumes 0.",
            MetrologyWarning,
            stacklevel=2,
        )

    lhs = variance(A, psi_true) - variance(A, psi_var)
    rhs = norm**2 * (1 - fidelity(psi_true, psi_var))
    return GapBound(lhs=lhs, rhs=rhs)


def run_ratio(x_A: float, x_B: float, f_max: float) -> float:
    """Ratio of repetitions nu_B / nu_A needed for equal precision."""
    if not (x_A < f_max and x_B < f_max):
        raise PreconditionError(
            f"QFI gaps {x_A}, {x_B} must be below the maximum {f_max}."
        )
    return (1 - x_A / f_max) / (1 - x_B / f_max)


_HALF_ROOT = math.sqrt(0.5)
_COS_QUARTER_TURNS = (1, _HALF_ROOT, 0, -_HALF_ROOT, -1, -_HALF_ROOT, 0, _HALF_ROOT)


def _cos_quarter(n: int) -> float:
    """cos(n pi / 4), exact at the zeros."""
    return _COS_QUARTER_TURNS[n % 8]


def printed_psi4_variance(N: int) -> float:
    """The published closed-form expression for Var(J+^2 + J-^2) in psi4."""
    N = check_particle_number(N)
    if N % 2:
        raise PreconditionError(f"Expression is stated for even N, got N={N}.")

    weight = 2.0 ** (1 - N / 2)
    denominator = 1 + weight * _cos_quarter(N)
    if abs(denominator) < 1e-14:
        raise PreconditionError(f"Denominator vanishes at N={N}.")
    leading = N * (N - 1) * (N - 2) * (N - 3) / 4
    correction = weight * (N - 1) * (N - 2) * (N - 3) * _cos_quarter(N - 4)
    return (leading - correction) / denominator


def _filtered_moment(N: int, coefficients: np.ndarray, residue: int) -> float:
    """2^-N sum over m = residue (mod 4) of binom(N, m) poly(m).

    Uses sum_m binom(N, m) m^(r) w^m = N^(r) w^r (1 + w)^(N - r) for the
    falling factorials m^(r) and the fourth roots of unity w.
    """
    falling = np.zeros(coefficients.size)
    for j, coefficient in enumerate(coefficients):
        for r in range(j + 1):
            falling[r] += coefficient * stirling2(j, r, exact=True)

    total = 0j
    for t in range(4):
        w = 1j**t
        filtered = 0j
        for r, coefficient in enumerate(falling):
            if coefficient == 0 or r > N:
                continue
            filtered += (
                coefficient
                * math.perm(N, r)
                * w**r
                * ((1 + w) / 2) ** (N - r)
                / 2**r
            )
        total += (1j ** (-residue * t)) * filtered
    return total.real / 4


def closed_form_psi4_variance(N: int) -> float:
    """Var(J+^2 + J-^2) in psi4 without building the state.

    psi4 lives on k = 0 (mod 4) with amplitudes sqrt(binom(N, k)); the pair
    operator maps it onto k = 2 (mod 4) with amplitudes
    sqrt(binom(N, m)) (m^2 + (N - m)^2 - N), and its mean vanishes.
    """
    N = check_particle_number(N)
    g = np.array([N * N - N, -2.0 * N, 2.0])
    numerator = _filtered_moment(N, polynomial.polymul(g, g), residue=2)
    denominator = _filtered_moment(N, np.array([1.0]), residue=0)
    if denominator <= 0:
        raise PreconditionError(f"psi4 vanishes at N={N}.")
    return numerator / denominator
