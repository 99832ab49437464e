"""Row computations behind the figure, table and scalar commands.

Each function depends only on its arguments, so sweeps can be evaluated
in any order and on any number of workers.
"""

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import PreconditionError, UnsupportedCase
from .fock_dicke import DickeVector, build_term, check_particle_number, variance
from .metrology import (
    closed_form_psi4_variance,
    printed_psi4_variance,
    qfi_gap_bound,
    qfi_pure,
    run_ratio,
)
from .spectral import SpectralDecomposition, eigh, eigh_blocked
from .states import (
    SuperpositionSpec,
    coherent,
    fidelity,
    omega,
    psi4,
    rotate_z,
    variational_superposition,
    xi_pair,
)
from .variational import (
    OptimizerConfig,
    OptimizerResult,
    ground_candidate,
    minimize_coherent,
    optimize_xi,
    scan_exact_c,
    tilde_c,
    xi_two_equation_solve,
)

DEFAULT_TOL = 1e-10
MAX_FIG1_N = 512
TABLE1_N = (4, 36, 68, 100, 132, 160)
EXACT_C4 = math.sqrt((math.sqrt(3) - 1) / 2)

FIG2_HEADER = ["N", "c", "fid_plus_E1", "fid_plus_E2", "fid_minus_E1", "fid_minus_E2"]
FIG3_HEADER = ["N", "infidelity_plus", "infidelity_minus", "best_sign", "best"]
FIG4_HEADER = [
    "N",
    "zeta0",
    "coherent",
    "w_tilde",
    "z_tilde_squared",
    "two_equation",
    "w0",
    "z0",
    "optimized",
    "converged",
]
TABLE1_HEADER = ["N", "normalized_qfi", "qfi"]
CONJECTURE_HEADER = ["N", "sign", "c", "residual"]


def sweep(nmin: int, nmax: int, step: int) -> list[int]:
    """Even particle numbers nmin, nmin + step, ..., up to nmax."""
    if step <= 0:
        raise PreconditionError(f"Step must be positive, got {step}.")
    if nmin > nmax:
        raise PreconditionError(f"Empty sweep: nmin {nmin} > nmax {nmax}.")
    values = list(range(nmin, nmax + 1, step))
    odd = [N for N in values if N % 2]
    if odd:
        raise UnsupportedCase(f"Sweep must contain even N only, got {odd[0]}.")
    return values


def _even(N: int, minimum: int = 2) -> int:
    N = check_particle_number(N)
    if N % 2 or N < minimum:
        raise UnsupportedCase(f"Needs even N >= {minimum}, got N={N}.")
    return N


def pair_spectrum(N: int, tol: float = DEFAULT_TOL) -> SpectralDecomposition:
    N = _even(N)
    if N > MAX_FIG1_N:
        raise UnsupportedCase(f"Spectrum sweeps stop at N={MAX_FIG1_N}, got N={N}.")
    return eigh_blocked(build_term(N, "pair"), tol=tol)


def _omega_fidelities(N: int, c: float, spectrum: SpectralDecomposition) -> tuple:
    E1, E2 = spectrum.vector(0), spectrum.vector(1)
    plus, minus = omega(N, c, "+"), omega(N, c, "-")
    return (
        fidelity(plus, E1),
        fidelity(plus, E2),
        fidelity(minus, E1),
        fidelity(minus, E2),
    )


def fig2_row(N: int, tol: float = DEFAULT_TOL) -> tuple:
    """Overlaps of omega_+-(c~) with the two lowest pair eigenvectors."""
    N = _even(N, 4)
    c = tilde_c(N).c_tilde
    return (N, c, *_omega_fidelities(N, c, pair_spectrum(N, tol)))


def fig2_exact_row(tol: float = DEFAULT_TOL) -> tuple:
    """The N = 4 row at the c that makes omega_+ an exact eigenvector."""
    return (4, EXACT_C4, *_omega_fidelities(4, EXACT_C4, pair_spectrum(4, tol)))


def fig3_row(N: int, tol: float = DEFAULT_TOL) -> tuple:
    """Infidelity of (|i> +- |-i>) / sqrt(2) against the pair ground state."""
    N = _even(N)
    ground = pair_spectrum(N, tol).ground
    up, down = coherent(N, 1j).amplitudes, coherent(N, -1j).amplitudes
    infidelities = {
        sign: 1 - fidelity(DickeVector(up + factor * down), ground)
        for sign, factor in (("+", 1), ("-", -1))
    }
    best = min(infidelities, key=infidelities.get)
    return (N, infidelities["+"], infidelities["-"], best, infidelities[best])


def fig4_result(
    N: int,
    optimize: bool = True,
    cfg: Optional[OptimizerConfig] = None,
    tol: float = DEFAULT_TOL,
) -> tuple[tuple, Optional[OptimizerResult]]:
    """Infidelities of three ansatz states against the weighted0 ground state.

    The optimized column starts from the two-equation solution and from the
    best coherent state, written as xi_pair(zeta0, zeta0).
    """
    N = _even(N)
    spectrum = eigh(build_term(N, "weighted0"), tol=tol)
    ground = spectrum.ground

    zeta0 = minimize_coherent(N)
    coherent_infidelity = 1 - fidelity(coherent(N, zeta0), ground)

    xi = xi_two_equation_solve(N, float(spectrum.eigenvalues[0]))
    two_equation_infidelity = 1 - fidelity(xi_pair(N, xi.w, xi.z), ground)

    leading = (
        N,
        zeta0,
        coherent_infidelity,
        xi.w,
        xi.z_squared,
        two_equation_infidelity,
    )
    if not optimize:
        return (*leading, math.nan, math.nan, math.nan, True), None

    z_start = xi.z.real if xi.real_branch else 0.0
    result = optimize_xi(N, ground, [(xi.w, z_start), (zeta0, zeta0)], cfg)
    w0, z0 = (float(x) for x in result.params)
    optimized_infidelity = 1 - fidelity(xi_pair(N, w0, z0), ground)
    return (*leading, w0, z0, optimized_infidelity, result.converged), result


def fig4_row(N: int, optimize: bool = True, tol: float = DEFAULT_TOL) -> tuple:
    return fig4_result(N, optimize, tol=tol)[0]


def table1_row(N: int, tol: float = DEFAULT_TOL) -> tuple:
    """QFI of the -pair ground state for the generator 2 J_x, over (2N)^2."""
    N = _even(N)
    ground = eigh_blocked(-build_term(N, "pair"), tol=tol).ground
    report = qfi_pure(ground, build_term(N, "tunnel1"))
    return (N, report.qfi / (2 * N) ** 2, report.qfi)


@dataclass(frozen=True)
class FamilyGap:
    c: float
    sign: str
    qfi_gap: float
    bound_holds: bool


def _family_gap(
    N: int, spectrum: SpectralDecomposition, c: float, etas: np.ndarray
) -> FamilyGap:
    """Largest QFI gap of the omega superposition family over the eta grid.

    The exact counterpart of each family member uses the pair eigenvector of
    the same parity as the chosen omega branch and its pi/2 rotation.
    """
    pair = build_term(N, "pair")
    sign, psi_min = ground_candidate(N, c)
    psi_max = rotate_z(psi_min, math.pi / 2)

    lowest = max(
        (spectrum.vector(0), spectrum.vector(1)),
        key=lambda v: fidelity(v, psi_min),
    )
    overlap = lowest.inner(psi_min)
    lowest_amplitudes = lowest.amplitudes * (overlap / abs(overlap) if overlap else 1)
    rotated = rotate_z(DickeVector(lowest_amplitudes), math.pi / 2).amplitudes

    w = psi_min.inner(psi_max)
    gauge = abs(w) / w if abs(w) > 0 else 1.0

    gaps = []
    holds = True
    for eta in etas:
        psi_var = variational_superposition(
            SuperpositionSpec.new(psi_min, psi_max, eta)
        )
        psi_true = DickeVector(
            lowest_amplitudes + np.exp(1j * eta) * gauge * rotated
        )
        bound = qfi_gap_bound(psi_true, psi_var, pair, spectrum)
        gaps.append(bound.qfi_gap)
        holds = holds and bound.holds()
    return FamilyGap(c=c, sign=sign, qfi_gap=max(gaps), bound_holds=holds)


def headline_scalars(
    N: int = 160, eta_points: int = 73, tol: float = DEFAULT_TOL
) -> dict:
    """QFI gaps of the omega family and of psi4, and the repetition ratio."""
    N = _even(N, 4)
    if eta_points < 1:
        raise PreconditionError(f"Need at least one eta point, got {eta_points}.")

    spectrum = pair_spectrum(N, tol)
    lambda_max = float(spectrum.eigenvalues[-1])
    max_variance = lambda_max**2
    solution = tilde_c(N)
    etas = np.linspace(0, 2 * math.pi, eta_points)

    family = _family_gap(N, spectrum, solution.c_tilde, etas)
    family_printed = _family_gap(N, spectrum, solution.c_printed, etas)

    psi4_variance = variance(build_term(N, "pair"), psi4(N))
    psi4_gap = 4 * (max_variance - psi4_variance)

    return {
        "N": N,
        "lambda_max": lambda_max,
        "max_qfi": 4 * max_variance,
        "c_tilde": solution.c_tilde,
        "c_printed": solution.c_printed,
        "lambda_tilde": solution.lambda_tilde,
        "lambda_printed": solution.lambda_printed,
        "omega_sign": family.sign,
        "family_qfi_gap": family.qfi_gap,
        "family_qfi_gap_printed_c": family_printed.qfi_gap,
        "family_bound_holds": family.bound_holds,
        "psi4_variance": psi4_variance,
        "psi4_variance_closed_form": closed_form_psi4_variance(N),
        "psi4_variance_printed": printed_psi4_variance(N),
        "psi4_qfi_gap": psi4_gap,
        "run_ratio": run_ratio(family.qfi_gap, psi4_gap, max_variance),
        "run_ratio_qfi_scale": run_ratio(family.qfi_gap, psi4_gap, 4 * max_variance),
    }


def conjecture_rows(N: int, sign: str, grid) -> tuple[list[tuple], list[tuple]]:
    """Consistency residual of omega(c) along ``grid``, and its local minima."""
    scan = scan_exact_c(N, sign, grid)
    rows = [(N, sign, float(c), float(r)) for c, r in zip(scan.grid, scan.residuals)]
    minima = [(N, sign, c, r) for c, r in scan.minima]
    return rows, minima
