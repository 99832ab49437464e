import numpy as np
import toml

from twomode.fock_dicke import DickeVector


# reference values live next to the tests, paths are from the repo root
def load_reference(name: str) -> dict:
    with open(f"tests/reference/{name}.toml", "r") as f:
        return toml.load(f)


def random_state(rng: np.random.Generator, N: int) -> DickeVector:
    return DickeVector(rng.normal(size=N + 1) + 1j * rng.normal(size=N + 1))


def random_direction(rng: np.random.Generator) -> np.ndarray:
    n = rng.normal(size=3)
    return n / np.linalg.norm(n)


def relative(a: float, b: float) -> float:
    return abs(a - b) / max(abs(b), 1e-300)
