"""Dicke-basis states, operator terms and the generic two-mode Hamiltonian."""

from .couplings import (
    CouplingSet,
    ModeOverlaps,
    assemble_hamiltonian,
    complex_as_json,
    couplings_from_overlaps,
    parse_complex,
    parse_real,
)
from .operators import (
    BandedHermitian,
    apply,
    build_su2,
    build_term,
    check_particle_number,
    direction_operator,
    expectation,
    variance,
)
from .terms import TERMS, hop_elements, pair_elements
from .vector import DickeVector

__all__ = [
    "BandedHermitian",
    "CouplingSet",
    "DickeVector",
    "ModeOverlaps",
    "TERMS",
    "apply",
    "assemble_hamiltonian",
    "build_su2",
    "build_term",
    "check_particle_number",
    "complex_as_json",
    "couplings_from_overlaps",
    "direction_operator",
    "expectation",
    "hop_elements",
    "pair_elements",
    "parse_complex",
    "parse_real",
    "variance",
]
