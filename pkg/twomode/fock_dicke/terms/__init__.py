import importlib
import inspect
import pkgutil

import numpy as np


class Term:
    """A unit-coefficient operator term on the N-particle Dicke space.

    Bands are returned as ``(d0, d1, d2)``: the real diagonal and the first
    and second superdiagonals, where ``d1[k]`` is the element on row ``k``,
    column ``k + 1`` (the coefficient of the part that moves one boson from
    mode 1 to mode 0).
    """

    TERM_NAME = ""
    TERM_KEY = ""
    BANDWIDTH = 0
    DESCRIPTION = ""

    @classmethod
    def bands(cls, N: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        raise NotImplementedError

    @classmethod
    def empty_bands(cls, N: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        return (
            np.zeros(N + 1, dtype=float),
            np.zeros(N, dtype=complex),
            np.zeros(max(N - 1, 0), dtype=complex),
        )

    def __str__(self) -> str:
        return f"{self.TERM_NAME}: {self.DESCRIPTION}"


def occupations(N: int) -> tuple[np.ndarray, np.ndarray]:
    k = np.arange(N + 1, dtype=float)
    return N - k, k


def hop_elements(N: int) -> np.ndarray:
    """<N-k,k| a0+ a1 |N-k-1,k+1> for k = 0..N-1."""
    k = np.arange(N, dtype=float)
    return np.sqrt((N - k) * (k + 1))


def pair_elements(N: int) -> np.ndarray:
    """f_k, the k <-> k+2 element of the pair operator, for k = 0..N-2."""
    k = np.arange(max(N - 1, 0), dtype=float)
    return np.sqrt((N - k - 1) * (N - k) * (k + 1) * (k + 2))


# discover term modules dynamically
_available_classes = []
TERMS = {}
for importer, modname, ispkg in pkgutil.iter_modules(__path__, __name__ + "."):
    if not ispkg:
        module = importlib.import_module(modname)
        for name, obj in inspect.getmembers(module):
            if (
                inspect.isclass(obj)
                and issubclass(obj, Term)
                and obj.TERM_NAME
                and obj.TERM_KEY
            ):
                globals()[name] = obj
                _available_classes.append(name)
                TERMS[obj.TERM_NAME.lower()] = obj


__all__ = [
    "Term",
    "TERMS",
    "hop_elements",
    "occupations",
    "pair_elements",
] + _available_classes
