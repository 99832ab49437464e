"""Probe-state families on the Dicke space."""

import math
from dataclasses import dataclass
from typing import Optional, Union

import numpy as np
from scipy.special import gammaln

from .errors import PreconditionError, UnsupportedCase, ZeroNorm
from .fock_dicke import DickeVector, build_su2, check_particle_number


@dataclass(frozen=True)
class SpherePoint:
    """A point on the Bloch sphere by its stereographic coordinate.

    ``zeta`` is ``None`` for the point at infinity (theta = pi).
    """

    zeta: Optional[complex] = 0j

    def __post_init__(self):
        if self.zeta is not None:
            zeta = complex(self.zeta)
            if not (math.isfinite(zeta.real) and math.isfinite(zeta.imag)):
                raise PreconditionError(f"Coordinate {zeta} is not finite.")
            object.__setattr__(self, "zeta", zeta)

    @classmethod
    def infinity(cls) -> "SpherePoint":
        return cls(None)

    @classmethod
    def from_angles(cls, theta: float, phi: float) -> "SpherePoint":
        if not 0 <= theta <= math.pi:
            raise PreconditionError(f"Polar angle {theta} is outside [0, pi].")
        if theta == math.pi:
            return cls.infinity()
        return cls(math.tan(theta / 2) * complex(math.cos(phi), math.sin(phi)))

    @property
    def is_infinite(self) -> bool:
        return self.zeta is None

    @property
    def angles(self) -> tuple[float, float]:
        if self.is_infinite:
            return math.pi, 0.0
        theta = 2 * math.atan(abs(self.zeta))
        phi = math.atan2(self.zeta.imag, self.zeta.real) % (2 * math.pi)
        return theta, phi

    def unit_vector(self) -> np.ndarray:
        theta, phi = self.angles
        return np.array(
            [
                math.sin(theta) * math.cos(phi),
                math.sin(theta) * math.sin(phi),
                math.cos(theta),
            ]
        )

    def reflected(self) -> "SpherePoint":
        """-conj(zeta)"""
        if self.is_infinite:
            return self
        return SpherePoint(-self.zeta.conjugate())

    def inverse(self) -> "SpherePoint":
        """1/zeta"""
        if self.is_infinite:
            return SpherePoint(0j)
        if self.zeta == 0:
            return SpherePoint.infinity()
        return SpherePoint(1 / self.zeta)

    def antipode(self) -> "SpherePoint":
        """-1/conj(zeta)"""
        return self.reflected().inverse()


PointLike = Union[SpherePoint, complex, float, None]


def sphere_point(p: PointLike) -> SpherePoint:
    if isinstance(p, SpherePoint):
        return p
    if p is None:
        return SpherePoint.infinity()
    return SpherePoint(complex(p))


def _log_binomial(N: int, k: np.ndarray) -> np.ndarray:
    return gammaln(N + 1) - gammaln(k + 1) - gammaln(N - k + 1)


def coherent(N: int, p: PointLike) -> DickeVector:
    N = check_particle_number(N)
    p = sphere_point(p)
    if p.is_infinite:
        return DickeVector.basis(N, N)
    if p.zeta == 0:
        return DickeVector.basis(N, 0)

    k = np.arange(N + 1)
    zeta = p.zeta
    log_magnitude = (
        0.5 * _log_binomial(N, k)
        + k * math.log(abs(zeta))
        - 0.5 * N * math.log1p(abs(zeta) ** 2)
    )
    phase = np.exp(1j * k * math.atan2(zeta.imag, zeta.real))
    return DickeVector(np.exp(log_magnitude) * phase)


def noon(N: int, phi: float) -> DickeVector:
    N = check_particle_number(N)
    amplitudes = np.zeros(N + 1, dtype=complex)
    amplitudes[N] = 1
    amplitudes[0] += np.exp(1j * phi)
    return DickeVector(amplitudes)


def psi_theta_phi(N: int, theta: float, phi: float) -> DickeVector:
    N = check_particle_number(N)
    amplitudes = np.zeros(N + 1, dtype=complex)
    amplitudes[N] = math.cos(theta / 2)
    amplitudes[0] += math.sin(theta / 2) * np.exp(1j * phi)
    return DickeVector(amplitudes)


def psi_v01(N: int, theta: float, phi: float, eta: float) -> DickeVector:
    N = check_particle_number(N)
    if N % 2:
        raise UnsupportedCase(
            f"Maximal contact-variance family needs even N, got N={N}; "
            "use psi_v01_odd."
        )
    if N < 2:
        raise UnsupportedCase("Maximal contact-variance family needs N >= 2.")

    amplitudes = np.exp(1j * eta) * psi_theta_phi(N, theta, phi).amplitudes
    amplitudes[N // 2] += 1
    return DickeVector(amplitudes)


def psi_v01_odd(
    N: int, theta: float, phi: float, theta2: float, phi2: float, eta: float
) -> DickeVector:
    """Odd-N maximal contact-variance family.

    The maximal contact eigenspace is spanned by the two central Dicke states,
    the minimal one by |N,0> and |0,N>.
    """
    N = check_particle_number(N)
    if N % 2 == 0 or N < 3:
        raise UnsupportedCase(f"Odd-N contact family needs odd N >= 3, got N={N}.")

    amplitudes = np.exp(1j * eta) * psi_theta_phi(N, theta2, phi2).amplitudes
    amplitudes[(N + 1) // 2] += math.cos(theta / 2)
    amplitudes[(N - 1) // 2] += math.sin(theta / 2) * np.exp(1j * phi)
    return DickeVector(amplitudes)


def antipodal_superposition(N: int, p: PointLike, eta: float) -> DickeVector:
    p = sphere_point(p)
    lowest = coherent(N, p.reflected())
    highest = coherent(N, p.inverse())
    return DickeVector(lowest.amplitudes + np.exp(1j * eta) * highest.amplitudes)


def pair_condensate(
    N: int,
    alpha: complex,
    beta: complex,
    gamma: complex,
    q_parity: Optional[int] = None,
) -> DickeVector:
    """(alpha a0+^2 + beta a0+ a1+ + gamma a1+^2)^(N/2) |0,0>, normalized.

    Expanded as a trinomial: the monomial a0+^p (a0+ a1+)^q a1+^2r lands on
    k = q + 2r with amplitude multinomial * alpha^p beta^q gamma^r *
    sqrt((N-k)! k!). ``q_parity`` keeps only even (0) or odd (1) q.
    """
    N = check_particle_number(N)
    if N % 2:
        raise UnsupportedCase(f"Pair condensates need even N, got N={N}.")
    M = N // 2

    q, r = np.meshgrid(np.arange(M + 1), np.arange(M + 1), indexing="ij")
    keep = q + r <= M
    if q_parity is not None:
        keep &= q % 2 == q_parity
    q, r = q[keep], r[keep]
    p = M - q - r
    k = q + 2 * r

    log_magnitude = (
        gammaln(M + 1)
        - gammaln(p + 1)
        - gammaln(q + 1)
        - gammaln(r + 1)
        + 0.5 * (gammaln(N - k + 1) + gammaln(k + 1))
    )
    phase = np.zeros(k.size)
    for coefficient, power in ((alpha, p), (beta, q), (gamma, r)):
        coefficient = complex(coefficient)
        if coefficient == 0:
            keep = power == 0
            q, r, p, k = q[keep], r[keep], p[keep], k[keep]
            log_magnitude, phase = log_magnitude[keep], phase[keep]
            continue
        log_magnitude = log_magnitude + power * math.log(abs(coefficient))
        phase = phase + power * math.atan2(coefficient.imag, coefficient.real)

    if k.size == 0:
        raise ZeroNorm(f"Pair condensate for N={N} has no surviving terms.")

    values = np.exp(log_magnitude - log_magnitude.max() + 1j * phase)
    amplitudes = np.zeros(N + 1, dtype=complex)
    np.add.at(amplitudes, k, values)
    return DickeVector(amplitudes)


def _sign_parity(sign) -> int:
    if sign in ("+", 1):
        return 0
    if sign in ("-", -1):
        return 1
    raise PreconditionError(f'Sign must be "+" or "-", got {sign!r}.')


def omega(N: int, c: float, sign) -> DickeVector:
    N = check_particle_number(N)
    if N % 2:
        raise UnsupportedCase(f"Omega states need even N, got N={N}.")
    return pair_condensate(N, 1, 2j * c, -1, q_parity=_sign_parity(sign))


def xi_pair(N: int, w: complex, z: complex) -> DickeVector:
    return pair_condensate(N, 1, 2 * complex(w), complex(z) ** 2)


def psi4(N: int) -> DickeVector:
    N = check_particle_number(N)
    total = sum(coherent(N, zeta).amplitudes for zeta in (1j, -1j, 1, -1))
    try:
        return DickeVector(total)
    except ZeroNorm:
        raise ZeroNorm(f"Four-coherent superposition vanishes for N={N}.") from None


@dataclass(frozen=True, eq=False)
class SuperpositionSpec:
    psi_min: DickeVector
    psi_max: DickeVector
    eta: float
    w: complex = 0j

    @classmethod
    def new(
        cls, psi_min: DickeVector, psi_max: DickeVector, eta: float
    ) -> "SuperpositionSpec":
        return cls(psi_min, psi_max, eta, psi_min.inner(psi_max))


def variational_superposition(s: SuperpositionSpec) -> DickeVector:
    psi_min = s.psi_min.amplitudes
    psi_max = s.psi_max.amplitudes
    w = s.psi_min.inner(s.psi_max)
    # gauge psi_max so that <psi_min|psi_max> is real non-negative
    if abs(w) > 0:
        psi_max = psi_max * (abs(w) / w)
    w = abs(w)
    if 1 - w < 1e-14:
        raise PreconditionError("Extremal states are parallel (|w| = 1).")

    denominator = 2 * (1 - w**2) * (1 - w * math.cos(s.eta))
    if denominator < 1e-14:
        raise PreconditionError(
            f"Superposition denominator {denominator:.3e} vanishes."
        )

    phase = np.exp(1j * s.eta)
    amplitudes = (1 - w * phase) * psi_min + (phase - w) * psi_max
    return DickeVector(amplitudes / math.sqrt(denominator))


def rotate_z(v: DickeVector, alpha: float) -> DickeVector:
    """exp(-i alpha J_z) v"""
    m = np.arange(v.N + 1) - v.N / 2
    return DickeVector(v.amplitudes * np.exp(-1j * alpha * m))


def fidelity(a: DickeVector, b: DickeVector) -> float:
    return float(min(abs(a.inner(b)) ** 2, 1.0))


def _derivative_sum(N: int, u: complex, x: complex, m: int, n: int) -> complex:
    """d^m/du^m d^n/dx^n (1 + u x)^N, expanded term by term."""
    total = 0j
    for j in range(max(m, n), N + 1):
        weight = math.comb(N, j) * math.perm(j, m) * math.perm(j, n)
        total += weight * u ** (j - m) * x ** (j - n)
    return total


def _direct_matrix_element(N, zeta_prime, zeta, m, n, ordering) -> complex:
    jx = build_su2(N, "x").dense()
    jy = build_su2(N, "y").dense()
    raising = jx + 1j * jy
    lowering = jx - 1j * jy
    power = np.linalg.matrix_power
    if ordering == "minus_plus":
        matrix = power(lowering, m) @ power(raising, n)
    else:
        matrix = power(raising, m) @ power(lowering, n)
    bra = coherent(N, zeta_prime).amplitudes
    ket = coherent(N, zeta).amplitudes
    return complex(np.vdot(bra, matrix @ ket))


def coherent_matrix_element(
    N: int,
    zeta_prime: complex,
    zeta: complex,
    m: int,
    n: int,
    ordering: str = "minus_plus",
) -> complex:
    """<zeta'| J-^m J+^n |zeta> ("minus_plus") or <zeta'| J+^m J-^n |zeta>.

    The second ordering expands around the lowest state |0,N>, so it picks
    up the phase (conj(zeta') zeta)^N and falls back to direct Dicke-basis
    evaluation when either coordinate is 0.
    """
    N = check_particle_number(N)
    if m < 0 or n < 0:
        raise PreconditionError(f"Powers must be non-negative, got m={m}, n={n}.")
    if ordering not in ("minus_plus", "plus_minus"):
        raise PreconditionError(f'Unknown operator ordering "{ordering}".')

    zeta_prime = complex(zeta_prime)
    zeta = complex(zeta)
    norm = ((1 + abs(zeta_prime) ** 2) * (1 + abs(zeta) ** 2)) ** (N / 2)

    try:
        if ordering == "minus_plus":
            return _derivative_sum(N, zeta_prime.conjugate(), zeta, m, n) / norm
        if zeta == 0 or zeta_prime == 0:
            return _direct_matrix_element(N, zeta_prime, zeta, m, n, ordering)
        u = 1 / zeta_prime.conjugate()
        x = 1 / zeta
        prefactor = (zeta_prime.conjugate() * zeta) ** N
        return prefactor * _derivative_sum(N, u, x, m, n) / norm
    except OverflowError:
        return _direct_matrix_element(N, zeta_prime, zeta, m, n, ordering)
