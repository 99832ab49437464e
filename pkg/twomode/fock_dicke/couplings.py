import math
from dataclasses import dataclass, fields
from typing import Optional

import numpy as np

from .operators import BandedHermitian, check_particle_number
from .terms import TERMS


def parse_complex(value) -> complex:
    """Read a JSON complex value: a number or a ``[re, im]`` pair."""
    if isinstance(value, bool):
        raise ValueError
    if isinstance(value, (int, float)):
        number = complex(value)
    elif isinstance(value, (list, tuple)) and len(value) == 2:
        re, im = value
        if any(isinstance(x, bool) or not isinstance(x, (int, float)) for x in value):
            raise ValueError
        number = complex(re, im)
    else:
        raise ValueError
    if not (math.isfinite(number.real) and math.isfinite(number.imag)):
        raise ValueError
    return number


def parse_real(value) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ValueError
    if not math.isfinite(value):
        raise ValueError
    return float(value)


def complex_as_json(value: complex):
    value = complex(value)
    if value.imag == 0:
        return value.real
    return [value.real, value.imag]


def read_fields(data: dict, spec: dict, prefix: str) -> tuple[dict, list]:
    values = {}
    errors = []
    for key, (parser, kind) in spec.items():
        if key not in data:
            continue
        try:
            values[key] = parser(data[key])
        except ValueError:
            errors.append(
                {
                    "field": f"{prefix}{key}",
                    "text": f'Value "{data[key]}" is not a {kind}.',
                }
            )
    for key in sorted(set(data) - set(spec)):
        errors.append({"field": f"{prefix}{key}", "text": "Unknown field."})
    return values, errors


@dataclass(frozen=True)
class CouplingSet:
    """The coupling constants of the generic number-conserving Hamiltonian."""

    vartheta: float = 0.0
    V00: float = 0.0
    V01: float = 0.0
    V11: float = 0.0
    A1: complex = 0j
    A2: complex = 0j
    T0: complex = 0j
    T1: complex = 0j

    @property
    def V(self) -> np.ndarray:
        return np.array([[self.V00, self.V01], [self.V01, self.V11]])

    @classmethod
    def new(
        cls, data: dict, prefix: str = "couplings."
    ) -> tuple[Optional["CouplingSet"], list]:
        if not isinstance(data, dict):
            return None, [{"field": prefix.rstrip("."), "text": "Expected an object."}]

        spec = {
            "vartheta": (parse_real, "real number"),
            "V": (_parse_symmetric, "symmetric 2x2 real matrix"),
            "A1": (parse_complex, "complex number"),
            "A2": (parse_complex, "complex number"),
            "T0": (parse_complex, "complex number"),
            "T1": (parse_complex, "complex number"),
        }
        values, errors = read_fields(data, spec, prefix)
        if errors:
            return None, errors

        V = values.pop("V", np.zeros((2, 2)))
        return cls(V00=V[0][0], V01=V[0][1], V11=V[1][1], **values), []

    def asdict(self) -> dict:
        return {
            "vartheta": self.vartheta,
            "V": self.V.tolist(),
            "A1": complex_as_json(self.A1),
            "A2": complex_as_json(self.A2),
            "T0": complex_as_json(self.T0),
            "T1": complex_as_json(self.T1),
        }

    def __add__(self, other: "CouplingSet") -> "CouplingSet":
        return CouplingSet(
            **{
                field.name: getattr(self, field.name) + getattr(other, field.name)
                for field in fields(self)
            }
        )


def _parse_symmetric(value) -> list:
    matrix = np.asarray(value, dtype=object)
    if matrix.shape != (2, 2):
        raise ValueError
    V = [[parse_real(x) for x in row] for row in value]
    if V[0][1] != V[1][0]:
        raise ValueError
    return V


@dataclass(frozen=True)
class ModeOverlaps:
    """Mode-function overlap integrals and the direct kinetic inputs."""

    z: complex
    V0: float
    o_0000: float = 0.0
    o_1111: float = 0.0
    o_0011: float = 0.0
    o_pair: complex = 0j
    o_t0: complex = 0j
    o_t1: complex = 0j
    vartheta_in: float = 0.0
    A1_in: complex = 0j

    @classmethod
    def new(
        cls, data: dict, prefix: str = "overlaps."
    ) -> tuple[Optional["ModeOverlaps"], list]:
        if not isinstance(data, dict):
            return None, [{"field": prefix.rstrip("."), "text": "Expected an object."}]

        spec = {
            "z": (parse_complex, "complex number"),
            "V0": (parse_real, "real number"),
            "o_0000": (_parse_density, "non-negative real number"),
            "o_1111": (_parse_density, "non-negative real number"),
            "o_0011": (_parse_density, "non-negative real number"),
            "o_pair": (parse_complex, "complex number"),
            "o_t0": (parse_complex, "complex number"),
            "o_t1": (parse_complex, "complex number"),
            "vartheta_in": (parse_real, "real number"),
            "A1_in": (parse_complex, "complex number"),
        }
        values, errors = read_fields(data, spec, prefix)
        for required in ("z", "V0"):
            if required not in data:
                errors.append(
                    {
                        "field": f"{prefix}{required}",
                        "text": f'Required "{required}" argument is missing.',
                    }
                )
        if errors:
            return None, sorted(errors, key=lambda e: e["field"])
        return cls(**values), []


def _parse_density(value) -> float:
    number = parse_real(value)
    if number < 0:
        raise ValueError
    return number


def couplings_from_overlaps(m: ModeOverlaps) -> CouplingSet:
    z = complex(m.z)
    z2 = abs(z) ** 2
    g = (m.V0 / 2) / (1 + z2) ** 2
    return CouplingSet(
        vartheta=m.vartheta_in,
        V00=g * m.o_0000,
        V01=4 * z2 * g * m.o_0011,
        V11=z2**2 * g * m.o_1111,
        A1=complex(m.A1_in),
        A2=z**2 * g * m.o_pair,
        T0=z * g * m.o_t0,
        T1=z * z2 * g * m.o_t1,
    )


def assemble_hamiltonian(N: int, c: CouplingSet) -> BandedHermitian:
    N = check_particle_number(N)
    # T1 multiplies a1+ a1 a0+ a1 + h.c., which is weighted1 - tunnel1
    contributions = (
        (c.vartheta, "dephasing"),
        (c.V00, "self0"),
        (c.V11, "self1"),
        (2 * c.V01, "contact"),
        (c.A1 - c.T1, "tunnel1"),
        (c.A2, "pair"),
        (c.T0, "weighted0"),
        (c.T1, "weighted1"),
    )

    d0 = np.zeros(N + 1)
    d1 = np.zeros(N, dtype=complex)
    d2 = np.zeros(max(N - 1, 0), dtype=complex)
    for coefficient, name in contributions:
        if coefficient == 0:
            continue
        b0, b1, b2 = TERMS[name].bands(N)
        d0 += np.real(coefficient) * b0
        d1 += coefficient * b1
        d2 += coefficient * b2

    return BandedHermitian(d0, d1, d2, bandwidth=2, name="hamiltonian")
