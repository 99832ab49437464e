"""Probe configuration files.

A probe configuration names a particle number, the Hamiltonian couplings
(directly or through mode overlaps), a probe state and a generator::

    {
      "N": 40,
      "overlaps": {"z": 0.5, "V0": 1.0, "o_0000": 1.0},
      "state": {"family": "coherent", "theta": 1.2, "phi": 0.3},
      "generator": "tunnel1",
      "nu": 100,
      "sld": true
    }

Validation never raises: ``ProbeConfig.new`` and ``load_probe_config``
return the configuration or ``None`` together with a list of
``{"field", "text"}`` errors.
"""

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Optional

from .fock_dicke import (
    TERMS,
    BandedHermitian,
    CouplingSet,
    DickeVector,
    ModeOverlaps,
    assemble_hamiltonian,
    build_term,
    complex_as_json,
    couplings_from_overlaps,
    parse_complex,
    parse_real,
)
from .fock_dicke.couplings import read_fields
from .metrology import optimal_superposition
from .spectral import eigh
from .states import (
    SpherePoint,
    antipodal_superposition,
    coherent,
    noon,
    omega,
    psi4,
    psi_theta_phi,
    psi_v01,
    psi_v01_odd,
    xi_pair,
)
from .variational import near_optimal_family, tilde_c

MAX_N = 4096
HAMILTONIAN = "hamiltonian"


def parse_count(value) -> int:
    if isinstance(value, bool) or not isinstance(value, int) or value < 0:
        raise ValueError
    return value


def parse_flag(value) -> bool:
    if not isinstance(value, bool):
        raise ValueError
    return value


def parse_sign(value) -> str:
    if value not in ("+", "-"):
        raise ValueError
    return value


def parse_family_kind(value) -> str:
    if value not in ("A2_even", "A2_odd", "T0"):
        raise ValueError
    return value


def parse_operator_name(value) -> str:
    if not isinstance(value, str) or (value != HAMILTONIAN and value not in TERMS):
        raise ValueError
    return value


def parse_real_list(value) -> tuple[float, ...]:
    if not isinstance(value, (list, tuple)):
        raise ValueError
    return tuple(parse_real(x) for x in value)


REAL = (parse_real, "real number")
COMPLEX = (parse_complex, "complex number")


@dataclass(frozen=True)
class StateFamily:
    """A named probe-state constructor and the parameters it accepts.

    Builders receive (N, params, hamiltonian, generator).
    """

    name: str
    parameters: dict
    builder: Callable[..., DickeVector]
    required: tuple[str, ...] = ()
    description: str = ""


def _coherent(N, p, hamiltonian, generator):
    if p.get("infinity"):
        point = SpherePoint.infinity()
    elif "theta" in p or "phi" in p:
        point = SpherePoint.from_angles(p.get("theta", 0.0), p.get("phi", 0.0))
    else:
        point = SpherePoint(p.get("zeta", 0j))
    return coherent(N, point)


def _omega(N, p, hamiltonian, generator):
    c = p["c"] if "c" in p else tilde_c(N).c_tilde
    return omega(N, c, p.get("sign", "+"))


def _ground(N, p, hamiltonian, generator):
    name = p.get("term", HAMILTONIAN)
    op = hamiltonian if name == HAMILTONIAN else build_term(N, name)
    return eigh(op).ground


STATE_FAMILIES = {
    family.name: family
    for family in (
        StateFamily(
            "dicke",
            {"k": (parse_count, "non-negative integer")},
            lambda N, p, h, g: DickeVector.basis(N, p["k"]),
            required=("k",),
            description="Dicke state |N-k, k>",
        ),
        StateFamily(
            "coherent",
            {
                "zeta": COMPLEX,
                "theta": REAL,
                "phi": REAL,
                "infinity": (parse_flag, "boolean"),
            },
            _coherent,
            description="spin coherent state, by zeta or by (theta, phi)",
        ),
        StateFamily(
            "noon",
            {"phi": REAL},
            lambda N, p, h, g: noon(N, p.get("phi", 0.0)),
        ),
        StateFamily(
            "psi_theta_phi",
            {"theta": REAL, "phi": REAL},
            lambda N, p, h, g: psi_theta_phi(
                N, p.get("theta", 0.0), p.get("phi", 0.0)
            ),
        ),
        StateFamily(
            "psi_v01",
            {"theta": REAL, "phi": REAL, "eta": REAL},
            lambda N, p, h, g: psi_v01(
                N, p.get("theta", 0.0), p.get("phi", 0.0), p.get("eta", 0.0)
            ),
        ),
        StateFamily(
            "psi_v01_odd",
            {"theta": REAL, "phi": REAL, "theta2": REAL, "phi2": REAL, "eta": REAL},
            lambda N, p, h, g: psi_v01_odd(
                N,
                p.get("theta", 0.0),
                p.get("phi", 0.0),
                p.get("theta2", 0.0),
                p.get("phi2", 0.0),
                p.get("eta", 0.0),
            ),
        ),
        StateFamily(
            "antipodal",
            {"zeta": COMPLEX, "eta": REAL},
            lambda N, p, h, g: antipodal_superposition(
                N, p.get("zeta", 0j), p.get("eta", 0.0)
            ),
            description="superposition of the extremal states of n.J",
        ),
        StateFamily(
            "omega",
            {"c": REAL, "sign": (parse_sign, '"+" or "-"')},
            _omega,
            description="pair condensate omega_+-(c), c defaults to c~",
        ),
        StateFamily(
            "xi_pair",
            {"w": COMPLEX, "z": COMPLEX},
            lambda N, p, h, g: xi_pair(N, p.get("w", 0j), p.get("z", 0j)),
        ),
        StateFamily("psi4", {}, lambda N, p, h, g: psi4(N)),
        StateFamily(
            "near_optimal",
            {
                "kind": (parse_family_kind, '"A2_even", "A2_odd" or "T0"'),
                "eta": REAL,
                "extra": (parse_real_list, "list of real numbers"),
            },
            lambda N, p, h, g: near_optimal_family(
                p["kind"], N, p.get("eta", 0.0), p.get("extra")
            ),
            required=("kind",),
        ),
        StateFamily(
            "ground",
            {"term": (parse_operator_name, "term name")},
            _ground,
            description="lowest eigenvector of a term or of the Hamiltonian",
        ),
        StateFamily(
            "optimal",
            {"eta": REAL},
            lambda N, p, h, g: optimal_superposition(g, p.get("eta", 0.0)),
            description="maximal-QFI superposition for the generator",
        ),
    )
}


@dataclass(frozen=True)
class StateSpec:
    family: str
    params: dict = field(default_factory=dict)

    @classmethod
    def new(
        cls, data, prefix: str = "state."
    ) -> tuple[Optional["StateSpec"], list]:
        if not isinstance(data, dict):
            return None, [{"field": prefix.rstrip("."), "text": "Expected an object."}]
        if "family" not in data:
            return None, [
                {
                    "field": f"{prefix}family",
                    "text": 'Required "family" argument is missing.',
                }
            ]

        name = data["family"]
        if not isinstance(name, str) or name not in STATE_FAMILIES:
            return None, [
                {
                    "field": f"{prefix}family",
                    "text": f'Family "{name}" should be one of '
                    f'{", ".join(sorted(STATE_FAMILIES))}.',
                }
            ]

        family = STATE_FAMILIES[name]
        params = {key: value for key, value in data.items() if key != "family"}
        values, errors = read_fields(params, family.parameters, prefix)
        for required in family.required:
            if required not in params:
                errors.append(
                    {
                        "field": f"{prefix}{required}",
                        "text": f'Required "{required}" argument is missing.',
                    }
                )
        if errors:
            return None, sorted(errors, key=lambda e: e["field"])
        return cls(family=name, params=values), []

    def build(
        self, N: int, hamiltonian: BandedHermitian, generator: BandedHermitian
    ) -> DickeVector:
        return STATE_FAMILIES[self.family].builder(
            N, self.params, hamiltonian, generator
        )

    def asdict(self) -> dict:
        params = {
            key: complex_as_json(value) if isinstance(value, complex) else value
            for key, value in self.params.items()
        }
        return {"family": self.family, **params}


@dataclass(frozen=True)
class ProbeConfig:
    N: int
    state: StateSpec
    generator: str = HAMILTONIAN
    couplings: Optional[CouplingSet] = None
    overlaps: Optional[ModeOverlaps] = None
    nu: float = 1.0
    sld: bool = False
    fragmentation: bool = False

    @classmethod
    def new(cls, data) -> tuple[Optional["ProbeConfig"], list]:
        if not isinstance(data, dict):
            return None, [{"field": "config", "text": "Expected an object."}]

        spec = {
            "N": (parse_count, "non-negative integer"),
            "generator": (parse_operator_name, "term name or \"hamiltonian\""),
            "nu": (parse_real, "real number"),
            "sld": (parse_flag, "boolean"),
            "fragmentation": (parse_flag, "boolean"),
        }
        nested = ("state", "couplings", "overlaps")
        flat = {key: value for key, value in data.items() if key not in nested}
        values, errors = read_fields(flat, spec, "")

        if "N" not in data:
            errors.append({"field": "N", "text": 'Required "N" argument is missing.'})
        elif "N" in values and not 1 <= values["N"] <= MAX_N:
            errors.append(
                {"field": "N", "text": f"N should be between 1 and {MAX_N}."}
            )
        if "nu" in values and values["nu"] <= 0:
            errors.append({"field": "nu", "text": "Repetitions should be positive."})

        if "state" not in data:
            errors.append(
                {"field": "state", "text": 'Required "state" argument is missing.'}
            )
        else:
            values["state"], state_errors = StateSpec.new(data["state"])
            errors.extend(state_errors)

        if "couplings" in data and "overlaps" in data:
            errors.append(
                {
                    "field": "overlaps",
                    "text": 'Give either "couplings" or "overlaps", not both.',
                }
            )
        elif "couplings" in data:
            values["couplings"], coupling_errors = CouplingSet.new(data["couplings"])
            errors.extend(coupling_errors)
        elif "overlaps" in data:
            values["overlaps"], overlap_errors = ModeOverlaps.new(data["overlaps"])
            errors.extend(overlap_errors)

        if errors:
            return None, sorted(errors, key=lambda e: e["field"])
        return cls(**values), []

    def resolved_couplings(self) -> CouplingSet:
        if self.overlaps is not None:
            return couplings_from_overlaps(self.overlaps)
        return self.couplings or CouplingSet()

    def hamiltonian(self) -> BandedHermitian:
        return assemble_hamiltonian(self.N, self.resolved_couplings())

    def generator_operator(self, hamiltonian: BandedHermitian) -> BandedHermitian:
        if self.generator == HAMILTONIAN:
            return hamiltonian
        return build_term(self.N, self.generator)

    def asdict(self) -> dict:
        return {
            "N": self.N,
            "state": self.state.asdict(),
            "generator": self.generator,
            "couplings": self.resolved_couplings().asdict(),
            "nu": self.nu,
            "sld": self.sld,
            "fragmentation": self.fragmentation,
        }


def load_probe_config(path: Path) -> tuple[Optional[ProbeConfig], list]:
    try:
        with open(path) as f:
            data = json.load(f)
    except OSError as e:
        return None, [{"field": str(path), "text": f"Cannot read file: {e.strerror}."}]
    except json.JSONDecodeError as e:
        return None, [
            {"field": str(path), "text": f"Invalid JSON at line {e.lineno}: {e.msg}."}
        ]
    return ProbeConfig.new(data)
