from dataclasses import dataclass

import numpy as np

from ..errors import DimensionMismatch, ZeroNorm


@dataclass(frozen=True, eq=False)
class DickeVector:
    """Normalized amplitudes C_k on the Dicke states |N-k, k>, k = 0..N.

    Any amplitude array given to the constructor is normalized; the stored
    array is read-only.
    """

    amplitudes: np.ndarray

    def __post_init__(self):
        amplitudes = np.array(self.amplitudes, dtype=complex)
        if amplitudes.ndim != 1 or amplitudes.size < 2:
            raise ValueError("Dicke amplitudes must be a 1-D array of length N+1 >= 2.")

        norm = np.linalg.norm(amplitudes)
        if not np.isfinite(norm) or norm < 1e-300:
            raise ZeroNorm(f"Amplitudes for N={amplitudes.size - 1} have zero norm.")

        amplitudes /= norm
        amplitudes.setflags(write=False)
        object.__setattr__(self, "amplitudes", amplitudes)

    @classmethod
    def basis(cls, N: int, k: int) -> "DickeVector":
        if not 0 <= k <= N:
            raise ValueError(f"Dicke index k={k} is outside 0..{N}.")
        amplitudes = np.zeros(N + 1, dtype=complex)
        amplitudes[k] = 1
        return cls(amplitudes)

    @property
    def N(self) -> int:
        return self.amplitudes.size - 1

    @property
    def dim(self) -> int:
        return self.amplitudes.size

    def check_dimension(self, N: int) -> None:
        if self.N != N:
            raise DimensionMismatch(N, self.N)

    def inner(self, other: "DickeVector") -> complex:
        """<self|other>"""
        other.check_dimension(self.N)
        return complex(np.vdot(self.amplitudes, other.amplitudes))

    def swap_modes(self) -> "DickeVector":
        return DickeVector(self.amplitudes[::-1])

    def to_rows(self) -> list[tuple[int, float, float]]:
        return [
            (k, float(c.real), float(c.imag)) for k, c in enumerate(self.amplitudes)
        ]

    def asdict(self) -> dict:
        return {
            "N": self.N,
            "amplitudes": [[float(c.real), float(c.imag)] for c in self.amplitudes],
        }

    def __len__(self) -> int:
        return self.dim

    def __str__(self) -> str:
        return f"DickeVector N={self.N}"
