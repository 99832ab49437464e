from dataclasses import dataclass
from numbers import Real

import numpy as np

from ..errors import PreconditionError, UnknownTerm
from .terms import TERMS
from .vector import DickeVector


def check_particle_number(N) -> int:
    if isinstance(N, bool) or not isinstance(N, (int, np.integer)) or N < 1:
        raise PreconditionError(f"Particle number must be an integer >= 1, got {N!r}.")
    return int(N)


def _along_rows(band: np.ndarray, ndim: int) -> np.ndarray:
    return band.reshape((-1,) + (1,) * (ndim - 1))


@dataclass(frozen=True, eq=False)
class BandedHermitian:
    """Hermitian operator on the Dicke space stored by diagonals.

    ``d0`` is the real diagonal, ``d1`` and ``d2`` the first and second
    superdiagonals; the subdiagonals are their conjugates.
    """

    d0: np.ndarray
    d1: np.ndarray
    d2: np.ndarray
    bandwidth: int = 2
    name: str = ""

    def __post_init__(self):
        d0 = np.asarray(self.d0)
        if np.iscomplexobj(d0):
            if np.any(np.abs(d0.imag) > 0):
                raise ValueError("Diagonal of a Hermitian operator must be real.")
            d0 = d0.real
        d0 = np.array(d0, dtype=float)
        dim = d0.size
        d1 = np.array(self.d1, dtype=complex).reshape(-1)
        d2 = np.array(self.d2, dtype=complex).reshape(-1)

        if dim < 1 or d1.size != max(dim - 1, 0) or d2.size != max(dim - 2, 0):
            raise ValueError(
                f"Band lengths {dim}, {d1.size}, {d2.size} do not describe an "
                "operator on a Dicke space."
            )
        if self.bandwidth not in (0, 1, 2):
            raise ValueError(f"Bandwidth must be 0, 1 or 2, got {self.bandwidth}.")
        if (self.bandwidth < 1 and np.any(d1 != 0)) or (
            self.bandwidth < 2 and np.any(d2 != 0)
        ):
            raise ValueError(f"Nonzero bands beyond bandwidth {self.bandwidth}.")

        for field, band in (("d0", d0), ("d1", d1), ("d2", d2)):
            band.setflags(write=False)
            object.__setattr__(self, field, band)

    @property
    def dim(self) -> int:
        return self.d0.size

    @property
    def N(self) -> int:
        return self.dim - 1

    def dense(self) -> np.ndarray:
        matrix = np.diag(self.d0.astype(complex))
        matrix += np.diag(self.d1, 1) + np.diag(self.d1.conj(), -1)
        if self.dim > 2:
            matrix += np.diag(self.d2, 2) + np.diag(self.d2.conj(), -2)
        return matrix

    def matvec(self, v: np.ndarray) -> np.ndarray:
        """Multiply a vector, or the columns of a matrix, by the operator."""
        v = np.asarray(v, dtype=complex)
        if v.shape[0] != self.dim:
            raise ValueError(f"Expected {self.dim} rows, got {v.shape[0]}.")

        result = _along_rows(self.d0, v.ndim) * v
        d1 = _along_rows(self.d1, v.ndim)
        result[:-1] += d1 * v[1:]
        result[1:] += d1.conj() * v[:-1]
        if self.dim > 2:
            d2 = _along_rows(self.d2, v.ndim)
            result[:-2] += d2 * v[2:]
            result[2:] += d2.conj() * v[:-2]
        return result

    def bands_equal(self, other: "BandedHermitian", atol: float = 0.0) -> bool:
        return self.dim == other.dim and all(
            np.allclose(a, b, rtol=0, atol=atol)
            for a, b in zip(
                (self.d0, self.d1, self.d2), (other.d0, other.d1, other.d2)
            )
        )

    def __add__(self, other: "BandedHermitian") -> "BandedHermitian":
        if not isinstance(other, BandedHermitian):
            return NotImplemented
        if other.dim != self.dim:
            raise ValueError(
                f"Cannot add operators of dimension {self.dim} and {other.dim}."
            )
        return BandedHermitian(
            self.d0 + other.d0,
            self.d1 + other.d1,
            self.d2 + other.d2,
            bandwidth=max(self.bandwidth, other.bandwidth),
        )

    def __mul__(self, scalar) -> "BandedHermitian":
        # only real scalars keep the operator Hermitian
        if not isinstance(scalar, Real):
            return NotImplemented
        return BandedHermitian(
            scalar * self.d0,
            scalar * self.d1,
            scalar * self.d2,
            bandwidth=self.bandwidth,
            name=self.name,
        )

    __rmul__ = __mul__

    def __neg__(self) -> "BandedHermitian":
        return -1.0 * self

    def __sub__(self, other: "BandedHermitian") -> "BandedHermitian":
        return self + (-other)

    def __str__(self) -> str:
        label = self.name or "operator"
        return f"{label} N={self.N} bandwidth={self.bandwidth}"


def build_term(N: int, term: str) -> BandedHermitian:
    N = check_particle_number(N)
    try:
        term_class = TERMS[term.lower()]
    except KeyError:
        raise UnknownTerm(term) from None

    d0, d1, d2 = term_class.bands(N)
    return BandedHermitian(
        d0, d1, d2, bandwidth=term_class.BANDWIDTH, name=term_class.TERM_NAME
    )


def build_su2(N: int, axis: str) -> BandedHermitian:
    if axis not in ("x", "y", "z"):
        raise PreconditionError(f'Axis must be one of x, y, z, got "{axis}".')
    return build_term(N, f"j{axis}")


def direction_operator(N: int, direction) -> BandedHermitian:
    """n.J for a real unit vector n."""
    nx, ny, nz = (float(x) for x in direction)
    return (
        nx * build_su2(N, "x") + ny * build_su2(N, "y") + nz * build_su2(N, "z")
    )


def apply(op: BandedHermitian, v: DickeVector) -> np.ndarray:
    v.check_dimension(op.N)
    return op.matvec(v.amplitudes)


def expectation(op: BandedHermitian, v: DickeVector) -> float:
    return float(np.vdot(v.amplitudes, apply(op, v)).real)


def variance(op: BandedHermitian, v: DickeVector) -> float:
    image = apply(op, v)
    mean = np.vdot(v.amplitudes, image).real
    second = np.vdot(image, image).real
    return float(max(second - mean**2, 0.0))
