"""Variational probe states for the pair and number-weighted tunnelling terms."""

import math
from dataclasses import dataclass, field, replace
from functools import lru_cache
from typing import Callable, Optional

import numpy as np
from scipy.optimize import brentq, minimize, minimize_scalar
from scipy.special import gammaln

from .errors import PreconditionError, UnsupportedCase
from .fock_dicke import (
    DickeVector,
    build_term,
    check_particle_number,
    expectation,
    pair_elements,
)
from .spectral import eigh, eigh_blocked
from .states import (
    SuperpositionSpec,
    omega,
    rotate_z,
    variational_superposition,
    xi_pair,
)

TERM_KINDS = ("pair", "weighted0")


@dataclass(frozen=True)
class ConsistencySolution:
    N: int
    c_tilde: float
    lambda_tilde: float
    source: str
    sign: str = "+"
    c_printed: Optional[float] = None
    lambda_printed: Optional[float] = None


@dataclass(frozen=True)
class XiParameters:
    w: float
    z: complex
    z_squared: float

    @property
    def real_branch(self) -> bool:
        return self.z_squared >= 0


@dataclass(frozen=True)
class OptimizerConfig:
    init: tuple[float, ...]
    simplex_scale: float = 0.1
    tol_f: float = 1e-10
    tol_x: float = 1e-8
    max_iter: int = 4000
    restarts: int = 3
    perturbation: float = 0.05

    def __post_init__(self):
        if not (self.tol_f > 0 and self.tol_x > 0 and self.simplex_scale > 0):
            raise PreconditionError("Optimizer tolerances and scale must be positive.")
        if self.max_iter < 1 or self.restarts < 0:
            raise PreconditionError("Optimizer needs max_iter >= 1 and restarts >= 0.")
        object.__setattr__(self, "init", tuple(float(x) for x in self.init))


@dataclass(frozen=True, eq=False)
class OptimizerResult:
    params: np.ndarray
    value: float
    converged: bool
    evaluations: int
    trace: list = field(default_factory=list)

    def trace_rows(self) -> list[tuple]:
        return [(i, *params, value) for i, params, value in self.trace]


def leading_amplitudes(
    N: int,
    alpha: complex,
    beta: complex,
    gamma: complex,
    kmax: int,
    q_parity: Optional[int] = None,
) -> np.ndarray:
    """Unnormalized pair-condensate amplitudes C_0..C_kmax, scaled by 1/sqrt(N!).

    Only the lowest Dicke states are expanded, so this stays cheap for any N.
    """
    M = N // 2
    amplitudes = np.zeros(kmax + 1, dtype=complex)
    for k in range(min(kmax, N) + 1):
        for r in range(k // 2 + 1):
            q = k - 2 * r
            p = M - q - r
            if p < 0 or (q_parity is not None and q % 2 != q_parity):
                continue
            log_weight = (
                gammaln(M + 1)
                - gammaln(p + 1)
                - gammaln(q + 1)
                - gammaln(r + 1)
                + 0.5 * (gammaln(N - k + 1) + gammaln(k + 1) - gammaln(N + 1))
            )
            amplitudes[k] += (
                math.exp(log_weight)
                * complex(alpha) ** p
                * complex(beta) ** q
                * complex(gamma) ** r
            )
    return amplitudes


def _check_even(N: int, minimum: int) -> int:
    N = check_particle_number(N)
    if N % 2 or N < minimum:
        raise UnsupportedCase(f"Needs even N >= {minimum}, got N={N}.")
    return N


def tilde_c(N: int, alternative: bool = False) -> ConsistencySolution:
    """Variational parameter solving the two lowest consistency rows.

    The default solves f0 C2 = lambda C0 and f0 C0 + f2 C4 = lambda C2 on
    omega_+; with M = N/2 the solution is
    c^2 = (M - 3 + sqrt(M^2 - 2M + 3)) / (4M - 6). The published expression,
    with N in place of M, is kept as ``c_printed``.

    ``alternative`` solves the k = 1, 3 rows on omega_- numerically.
    """
    N = _check_even(N, 6 if alternative else 4)
    f = pair_elements(N)

    if alternative:
        return _alternative_tilde_c(N, f)

    M = N // 2
    c = math.sqrt((M - 3 + math.sqrt(M * M - 2 * M + 3)) / (4 * M - 6))
    amplitudes = leading_amplitudes(N, 1, 2j * c, -1, 2, q_parity=0)
    lam = f[0] * (amplitudes[2] / amplitudes[0]).real

    c_printed = math.sqrt((N - 3 + math.sqrt(N * N - 2 * N + 3)) / (4 * N - 6))
    lambda_printed = -2 * N * (1 + 2 * c_printed**2) - 4 * N**2 * c_printed**2
    return ConsistencySolution(
        N=N,
        c_tilde=c,
        lambda_tilde=lam,
        source="closed_form",
        sign="+",
        c_printed=c_printed,
        lambda_printed=lambda_printed,
    )


def _alternative_tilde_c(N: int, f: np.ndarray) -> ConsistencySolution:
    def rows(c):
        C = leading_amplitudes(N, 1, 2j * c, -1, 5, q_parity=1)
        lam = (f[1] * C[3] / C[1]).real
        mismatch = ((f[1] * C[1] + f[3] * C[5] - lam * C[3]) / C[3]).real
        return lam, mismatch

    grid = np.linspace(0.05, 3.0, 296)
    values = [rows(c)[1] for c in grid]
    for low, high, v_low, v_high in zip(grid, grid[1:], values, values[1:]):
        if v_low == 0 or v_low * v_high < 0:
            c = brentq(lambda x: rows(x)[1], low, high, xtol=1e-15)
            return ConsistencySolution(
                N=N,
                c_tilde=c,
                lambda_tilde=rows(c)[0],
                source="two_equation_solve",
                sign="-",
            )
    raise UnsupportedCase(f"No real root of the k = 1, 3 rows for N={N}.")


@lru_cache(maxsize=64)
def term_norm(N: int, kind: str) -> float:
    return eigh(build_term(N, kind)).norm


def consistency_rows(v: DickeVector, kind: str, eigenvalue: float) -> np.ndarray:
    """|(A C)_k - lambda C_k| / (||A|| max|C|) for every row k."""
    if kind not in TERM_KINDS:
        raise PreconditionError(
            f'Consistency rows exist for {TERM_KINDS}, not "{kind}".'
        )
    op = build_term(v.N, kind)
    C = v.amplitudes
    scale = term_norm(v.N, kind) * np.max(np.abs(C))
    return np.abs(op.matvec(C) - eigenvalue * C) / scale


def consistency_residual(v: DickeVector, kind: str, eigenvalue: float) -> float:
    return float(np.max(consistency_rows(v, kind, eigenvalue)))


def xi_two_equation_solve(N: int, lambda0: float) -> XiParameters:
    """(w, z) making xi_pair satisfy the k = 0, 1 rows of weighted0.

    Row 0 fixes C1/C0 = sqrt(N) w, row 1 then fixes C2/C0, which is
    (2M(M-1) w^2 + M z^2) sqrt(2 / (N (N-1))).
    """
    N = _check_even(N, 2)
    M = N // 2
    root_N = math.sqrt(N)

    w = lambda0 / N**2
    c1 = root_N * w
    c2 = (lambda0 * c1 - N * root_N) / ((N - 1) * math.sqrt(2 * (N - 1)))
    z_squared = (c2 * math.sqrt(N * (N - 1) / 2) - 2 * M * (M - 1) * w**2) / M

    if z_squared >= 0:
        z = complex(math.copysign(math.sqrt(z_squared), w if w else 1.0))
    else:
        z = 1j * math.sqrt(-z_squared)
    return XiParameters(w=w, z=z, z_squared=z_squared)


def coherent_energy(N: int, zeta: float) -> float:
    """<zeta| weighted0 |zeta> for real zeta."""
    s = 1 + zeta * zeta
    return 2 * N * (N - 1) * zeta / s**2 + 2 * N * zeta / s


def minimize_coherent(N: int) -> float:
    N = check_particle_number(N)
    result = minimize_scalar(
        lambda zeta: coherent_energy(N, zeta),
        bounds=(-10.0, 0.0),
        method="bounded",
        options={"xatol": 1e-12},
    )
    return float(result.x)


def nelder_mead(
    objective: Callable[[np.ndarray], float], cfg: OptimizerConfig
) -> OptimizerResult:
    """Downhill simplex, best of the initial run and ``cfg.restarts`` restarts.

    Each restart rebuilds the simplex around the best point so far, shifted
    by ``cfg.perturbation`` times the restart number in every coordinate.
    The result is converged when the run that found the best point either
    met both tolerances or ended on a simplex flat to within ``cfg.tol_f``.
    """
    trace = []

    def tracked(x):
        value = float(objective(np.asarray(x)))
        trace.append((len(trace) + 1, tuple(float(v) for v in x), value))
        return value

    init = np.array(cfg.init, dtype=float)
    if not math.isfinite(tracked(init)):
        raise PreconditionError(f"Objective is not finite at {cfg.init}.")

    best_x, best_value = init, trace[0][2]
    converged = False
    for attempt in range(cfg.restarts + 1):
        start = best_x + cfg.perturbation * attempt
        simplex = np.vstack([start, start + cfg.simplex_scale * np.eye(start.size)])
        result = minimize(
            tracked,
            start,
            method="Nelder-Mead",
            options={
                "initial_simplex": simplex,
                "xatol": cfg.tol_x,
                "fatol": cfg.tol_f,
                "maxiter": cfg.max_iter,
                "maxfev": 4 * cfg.max_iter,
                "adaptive": False,
            },
        )
        if result.fun <= best_value:
            best_x, best_value = np.array(result.x), float(result.fun)
            spread = np.ptp(result.final_simplex[1])
            converged = bool(result.success) or bool(spread <= cfg.tol_f)

    return OptimizerResult(
        params=best_x,
        value=best_value,
        converged=converged,
        evaluations=len(trace),
        trace=trace,
    )


def log_infidelity(v: DickeVector, target: DickeVector) -> float:
    return math.log(max(1 - abs(v.inner(target)) ** 2, 1e-300))


def optimize_xi(
    N: int,
    target: DickeVector,
    starts: list[tuple[float, float]],
    cfg: Optional[OptimizerConfig] = None,
) -> OptimizerResult:
    """Minimize log(1 - fidelity(xi_pair(w, z), target)) over real (w, z)."""

    def objective(x):
        return log_infidelity(xi_pair(N, x[0], x[1]), target)

    best = None
    for start in starts:
        config = replace(cfg, init=start) if cfg else OptimizerConfig(init=start)
        result = nelder_mead(objective, config)
        if best is None or result.value < best.value:
            best = result
    return best


def ground_candidate(N: int, c: float) -> tuple[str, DickeVector]:
    """The omega branch with the lower pair energy."""
    pair = build_term(N, "pair")
    candidates = [(sign, omega(N, c, sign)) for sign in "+-"]
    return min(candidates, key=lambda item: expectation(pair, item[1]))


def _pure_parity_grounds(N: int) -> tuple[DickeVector, DickeVector]:
    spectrum = eigh_blocked(build_term(N, "pair"))
    grounds = {}
    for i in range(spectrum.dim):
        vector = spectrum.vectors[:, i]
        parity = int(np.argmax(np.abs(vector)) % 2)
        grounds.setdefault(parity, DickeVector(vector))
        if len(grounds) == 2:
            break
    return grounds[0], grounds[1]


def near_optimal_family(
    kind: str, N: int, eta: float, extra: Optional[tuple] = None
) -> DickeVector:
    """Near-optimal probes for the pair (A2) and weighted (T0) terms.

    A2_even: omega(c~) and its pi/2 chiral partner; extra = (c,) overrides c~.
    A2_odd: the even and odd pair ground states and their partners;
    extra = (theta, phi, theta', phi').
    T0: xi_pair(w0, z0) and its pi chiral partner; extra = (w0, z0).
    """
    N = check_particle_number(N)
    if kind == "A2_even":
        N = _check_even(N, 4)
        c = extra[0] if extra else tilde_c(N).c_tilde
        _, psi_min = ground_candidate(N, c)
        psi_max = rotate_z(psi_min, math.pi / 2)
    elif kind == "A2_odd":
        if N % 2 == 0 or N < 3:
            raise UnsupportedCase(f"A2_odd family needs odd N >= 3, got N={N}.")
        if not extra or len(extra) != 4:
            raise PreconditionError("A2_odd family needs (theta, phi, theta', phi').")
        theta, phi, theta2, phi2 = extra
        even, odd = _pure_parity_grounds(N)
        rotated = [rotate_z(v, math.pi / 2) for v in (even, odd)]
        psi_min = DickeVector(
            math.cos(theta / 2) * even.amplitudes
            + math.sin(theta / 2) * np.exp(1j * phi) * odd.amplitudes
        )
        psi_max = DickeVector(
            math.cos(theta2 / 2) * rotated[0].amplitudes
            + math.sin(theta2 / 2) * np.exp(1j * phi2) * rotated[1].amplitudes
        )
    elif kind == "T0":
        N = _check_even(N, 2)
        if not extra or len(extra) != 2:
            raise PreconditionError("T0 family needs (w0, z0).")
        psi_min = xi_pair(N, extra[0], extra[1])
        psi_max = rotate_z(psi_min, math.pi)
    else:
        raise UnsupportedCase(f'Unknown near-optimal family "{kind}".')

    return variational_superposition(SuperpositionSpec.new(psi_min, psi_max, eta))


@dataclass(frozen=True, eq=False)
class ResidualScan:
    N: int
    sign: str
    grid: np.ndarray
    residuals: np.ndarray
    minima: list[tuple[float, float]]


def scan_exact_c(N: int, sign: str, grid) -> ResidualScan:
    """Full consistency residual of omega(c) along a grid of c.

    Each trial state is scored at its own Rayleigh quotient; local minima of
    the scan are refined by bounded 1-D search.
    """
    N = _check_even(N, 4)
    pair = build_term(N, "pair")
    grid = np.asarray(grid, dtype=float)

    def residual(c):
        state = omega(N, c, sign)
        return consistency_residual(state, "pair", expectation(pair, state))

    residuals = np.array([residual(c) for c in grid])
    minima = []
    for i in range(1, grid.size - 1):
        if residuals[i] <= residuals[i - 1] and residuals[i] <= residuals[i + 1]:
            refined = minimize_scalar(
                residual,
                bounds=(grid[i - 1], grid[i + 1]),
                method="bounded",
                options={"xatol": 1e-12},
            )
            minima.append((float(refined.x), float(refined.fun)))
    return ResidualScan(N=N, sign=sign, grid=grid, residuals=residuals, minima=minima)
