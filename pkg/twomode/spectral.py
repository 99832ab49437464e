"""Hermitian eigensolver for Dicke-space operators.

Operators are reduced to a real symmetric tridiagonal matrix and then
diagonalized by implicit-shift QL iteration. Tridiagonal operators only need
a diagonal phase gauge; operators with a second band go through a dense
Householder reduction first. Operators that only couple k to k +- 2 can be
split by parity and solved block by block.
"""

import math
from dataclasses import dataclass

import numpy as np

from .errors import ConvergenceError, PreconditionError, UnsupportedCase
from .fock_dicke import BandedHermitian, DickeVector, build_term

EPS = np.finfo(float).eps
MAX_SWEEPS = 64
PHASE_THRESHOLD = 1e-8


@dataclass(frozen=True, eq=False)
class SpectralDecomposition:
    eigenvalues: np.ndarray
    vectors: np.ndarray
    residual_tol: float
    cluster_tol: float
    degeneracy_clusters: tuple[range, ...]

    @property
    def dim(self) -> int:
        return self.eigenvalues.size

    @property
    def N(self) -> int:
        return self.dim - 1

    @property
    def norm(self) -> float:
        return float(np.max(np.abs(self.eigenvalues)))

    def vector(self, index: int) -> DickeVector:
        return DickeVector(self.vectors[:, index])

    @property
    def eigenvectors(self) -> list[DickeVector]:
        return [self.vector(i) for i in range(self.dim)]

    @property
    def ground(self) -> DickeVector:
        return self.vector(0)

    @property
    def highest(self) -> DickeVector:
        return self.vector(self.dim - 1)

    def cluster_sizes(self) -> list[int]:
        return [len(cluster) for cluster in self.degeneracy_clusters]


@dataclass(frozen=True, eq=False)
class ParityBlocks:
    even: BandedHermitian
    odd: BandedHermitian
    index_maps: tuple[np.ndarray, np.ndarray]
    N: int


def householder_tridiagonal(matrix: np.ndarray):
    """Reduce a Hermitian matrix to tridiagonal form, A = Q T Q^H.

    Returns the real diagonal of T, its complex subdiagonal and Q.
    """
    a = np.array(matrix, dtype=complex)
    n = a.shape[0]
    q = np.eye(n, dtype=complex)

    for k in range(n - 2):
        x = a[k + 1 :, k]
        if np.linalg.norm(x[1:]) == 0:
            continue

        alpha = np.linalg.norm(x)
        phase = x[0] / abs(x[0]) if x[0] != 0 else 1.0
        v = x.copy()
        v[0] += phase * alpha
        v /= np.linalg.norm(v)

        a[k + 1 :, :] -= 2 * np.outer(v, v.conj() @ a[k + 1 :, :])
        a[:, k + 1 :] -= 2 * np.outer(a[:, k + 1 :] @ v, v.conj())
        q[:, k + 1 :] -= 2 * np.outer(q[:, k + 1 :] @ v, v.conj())

    return a.diagonal().real.copy(), a.diagonal(-1).copy(), q


def real_gauge(subdiagonal: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Diagonal unitary making a Hermitian tridiagonal matrix real.

    Returns the real subdiagonal |e_k| and the phases phi with
    phi_{k+1} = phi_k e_k / |e_k|.
    """
    magnitudes = np.abs(subdiagonal)
    phases = np.ones(subdiagonal.size + 1, dtype=complex)
    for k, (element, magnitude) in enumerate(zip(subdiagonal, magnitudes)):
        step = element / magnitude if magnitude > 0 else 1.0
        phases[k + 1] = phases[k] * step
    return magnitudes, phases


def tql_implicit(diagonal, offdiagonal, max_sweeps: int = MAX_SWEEPS):
    """Eigen-decompose a real symmetric tridiagonal matrix.

    Returns unsorted eigenvalues and a matrix whose columns are the
    corresponding orthonormal eigenvectors.
    """
    n = len(diagonal)
    d = [float(x) for x in diagonal]
    e = [float(x) for x in offdiagonal] + [0.0]
    # rows of zt are eigenvectors
    zt = np.eye(n)

    for l in range(n):
        sweeps = 0
        while True:
            m = l
            while m < n - 1:
                dd = abs(d[m]) + abs(d[m + 1])
                if abs(e[m]) <= EPS * dd:
                    break
                m += 1
            if m == l:
                break

            if sweeps == max_sweeps:
                raise ConvergenceError(l, sweeps)
            sweeps += 1

            g = (d[l + 1] - d[l]) / (2.0 * e[l])
            r = math.hypot(g, 1.0)
            g = d[m] - d[l] + e[l] / (g + math.copysign(r, g))
            s = c = 1.0
            p = 0.0
            underflow = False
            for i in range(m - 1, l - 1, -1):
                f = s * e[i]
                b = c * e[i]
                r = math.hypot(f, g)
                e[i + 1] = r
                if r == 0.0:
                    d[i + 1] -= p
                    e[m] = 0.0
                    underflow = True
                    break
                s = f / r
                c = g / r
                g = d[i + 1] - p
                r = (d[i] - g) * s + 2.0 * c * b
                p = s * r
                d[i + 1] = g + p
                g = c * r - b

                upper = zt[i + 1].copy()
                zt[i + 1] = s * zt[i] + c * upper
                zt[i] = c * zt[i] - s * upper

            if underflow:
                continue
            d[l] -= p
            e[l] = g
            e[m] = 0.0

    return np.array(d), zt.T


def fix_phases(vectors: np.ndarray) -> np.ndarray:
    """Make the first component above 1e-8 of every column real positive."""
    vectors = vectors.copy()
    for i in range(vectors.shape[1]):
        column = vectors[:, i]
        significant = np.flatnonzero(np.abs(column) > PHASE_THRESHOLD)
        if significant.size:
            pivot = column[significant[0]]
            vectors[:, i] = column * (abs(pivot) / pivot)
    return vectors


def cluster(eigenvalues: np.ndarray, tolerance: float) -> tuple[range, ...]:
    clusters = []
    start = 0
    for i in range(1, eigenvalues.size + 1):
        if i == eigenvalues.size or eigenvalues[i] - eigenvalues[i - 1] > tolerance:
            clusters.append(range(start, i))
            start = i
    return tuple(clusters)


def _check_finite(op: BandedHermitian) -> None:
    if not all(np.all(np.isfinite(band)) for band in (op.d0, op.d1, op.d2)):
        raise PreconditionError(f"{op} has non-finite entries.")


def _decomposition(
    op: BandedHermitian,
    eigenvalues: np.ndarray,
    vectors: np.ndarray,
    tol: float,
    cluster_tol: float,
) -> SpectralDecomposition:
    order = np.argsort(eigenvalues, kind="stable")
    eigenvalues = eigenvalues[order]
    vectors = fix_phases(vectors[:, order])

    norm = float(np.max(np.abs(eigenvalues))) if eigenvalues.size else 0.0
    scale = norm if norm > 0 else 1.0
    residuals = np.linalg.norm(op.matvec(vectors) - vectors * eigenvalues, axis=0)
    worst = int(np.argmax(residuals))
    if residuals[worst] > tol * scale:
        raise ConvergenceError(worst, MAX_SWEEPS)

    eigenvalues.setflags(write=False)
    vectors.setflags(write=False)
    return SpectralDecomposition(
        eigenvalues=eigenvalues,
        vectors=vectors,
        residual_tol=tol,
        cluster_tol=cluster_tol,
        degeneracy_clusters=cluster(eigenvalues, cluster_tol * scale),
    )


def eigh(
    op: BandedHermitian, tol: float = 1e-10, cluster_tol: float = 1e-10
) -> SpectralDecomposition:
    if not tol > 0:
        raise PreconditionError(f"Residual tolerance must be positive, got {tol}.")
    _check_finite(op)

    if op.bandwidth < 2 or not np.any(op.d2):
        magnitudes, phases = real_gauge(op.d1.conj())
        eigenvalues, y = tql_implicit(op.d0, magnitudes)
        vectors = phases[:, None] * y
    else:
        diagonal, subdiagonal, q = householder_tridiagonal(op.dense())
        magnitudes, phases = real_gauge(subdiagonal)
        eigenvalues, y = tql_implicit(diagonal, magnitudes)
        vectors = (q * phases) @ y

    return _decomposition(op, eigenvalues, vectors, tol, cluster_tol)


def parity_split(op: BandedHermitian) -> ParityBlocks:
    if np.any(op.d1):
        raise PreconditionError(f"{op} couples neighbouring Dicke states.")

    even = np.arange(0, op.dim, 2)
    odd = np.arange(1, op.dim, 2)
    blocks = []
    for parity in (0, 1):
        d0 = op.d0[parity::2]
        d1 = op.d2[parity::2]
        blocks.append(
            BandedHermitian(
                d0,
                d1,
                np.zeros(max(d0.size - 2, 0)),
                bandwidth=1,
                name=f"{op.name or 'operator'}[{'odd' if parity else 'even'}]",
            )
        )
    return ParityBlocks(even=blocks[0], odd=blocks[1], index_maps=(even, odd), N=op.N)


def eigh_blocked(
    op: BandedHermitian, tol: float = 1e-10, cluster_tol: float = 1e-10
) -> SpectralDecomposition:
    """Diagonalize a parity-conserving operator block by block.

    Every eigenvector is supported on a single parity, even when the two
    parities have nearly equal eigenvalues.
    """
    blocks = parity_split(op)
    eigenvalues = []
    vectors = np.zeros((op.dim, op.dim), dtype=complex)
    column = 0
    for block, index_map in zip((blocks.even, blocks.odd), blocks.index_maps):
        if block.dim == 0:
            continue
        decomposition = eigh(block, tol=tol, cluster_tol=cluster_tol)
        eigenvalues.extend(decomposition.eigenvalues)
        width = block.dim
        vectors[index_map, column : column + width] = decomposition.vectors
        column += width

    return _decomposition(op, np.array(eigenvalues), vectors, tol, cluster_tol)


def gap_pairs(dec: SpectralDecomposition) -> np.ndarray:
    """Rows (n, E_2n - E_2n-1), counting eigenvalues from 1."""
    levels = dec.eigenvalues
    count = dec.dim // 2
    n = np.arange(1, count + 1)
    return np.column_stack((n, levels[1 : 2 * count : 2] - levels[0 : 2 * count : 2]))


def interpair_gaps(dec: SpectralDecomposition) -> np.ndarray:
    """Rows (n, E_2n+1 - E_2n), counting eigenvalues from 1."""
    levels = dec.eigenvalues
    count = (dec.dim - 1) // 2
    n = np.arange(1, count + 1)
    gaps = levels[2 : 2 * count + 1 : 2] - levels[1 : 2 * count : 2]
    return np.column_stack((n, gaps))


def appendix_partner(v: DickeVector, eigenvalue: float) -> DickeVector:
    """Second eigenvector of the odd-N pair operator with the same eigenvalue.

    C'_k = conj(C_{N-k}) for odd k and -conj(C_{N-k}) for even k; it is
    orthogonal to v because k and N - k have opposite parity.
    """
    if v.N % 2 == 0:
        raise UnsupportedCase(f"Partner construction needs odd N, got N={v.N}.")

    pair = build_term(v.N, "pair")
    residual = np.linalg.norm(pair.matvec(v.amplitudes) - eigenvalue * v.amplitudes)
    if residual > 1e-8 * max(1.0, float(v.N) ** 2):
        raise PreconditionError(
            f"Vector is not a pair eigenvector for {eigenvalue} "
            f"(residual {residual:.3e})."
        )

    k = np.arange(v.N + 1)
    sign = np.where(k % 2 == 1, 1.0, -1.0)
    return DickeVector(sign * v.amplitudes[::-1].conj())


def spectrum_rows(dec: SpectralDecomposition) -> list[tuple[int, float]]:
    """Rows (n, E_n), counting eigenvalues from 1."""
    return [(n, float(value)) for n, value in enumerate(dec.eigenvalues, start=1)]


def gap_rows(dec: SpectralDecomposition) -> list[tuple[int, float, float]]:
    """Rows (n, intrapair gap, following interpair gap or nan)."""
    intra = gap_pairs(dec)
    inter = dict((int(n), gap) for n, gap in interpair_gaps(dec))
    return [(int(n), float(gap), inter.get(int(n), math.nan)) for n, gap in intra]
