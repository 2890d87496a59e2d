"""Superradiant mean-field solutions on the plaquette.

Above a branch critical coupling the photons condense with one of three
real displacement patterns:

* uniform      (A, A, A, A)        at q = 0,
* staggered    (A, -A, A, -A)      at q = pi,
* paired       (A, -A, -A, A)      at q = pi/2 (fourfold degenerate).

Condensation renormalizes the qubit gap and the effective coupling; the
excitations on top of the condensate are the normal-phase closed forms
evaluated at the renormalized coupling g' = g_c^3(q0) / g^2.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np
from scipy import optimize

from .core import (
    ModelParams,
    MomentumBranch,
    PATTERN_BRANCHES,
    TIE_RTOL,
    critical_coupling,
    mode_frequency,
    np_excitation_energy,
    np_ground_energy,
)
from .errors import (
    BelowCritical,
    ComplexEnergy,
    InsufficientWindow,
    NoCriticalPoint,
)

__all__ = [
    "PhaseLabel",
    "Displacements",
    "SrpSolution",
    "PhasePoint",
    "base_pattern",
    "srp_amplitude",
    "srp_displacements",
    "renormalized_params",
    "srp_excitation_energy",
    "srp_ground_energy",
    "classify_phase",
    "order_parameter",
    "branch_energies",
    "stationarity_residual",
    "mean_field_energy",
    "minimize_mean_field_energy",
    "scaling_exponent",
]


class PhaseLabel(str, Enum):
    NP = "NP"
    AFRP = "AFRP"
    FRP = "FRP"
    FRUSTRATED = "Frustrated"
    BOUNDARY = "Boundary"


_BRANCH_LABEL = {
    MomentumBranch.Q_PI: PhaseLabel.AFRP,
    MomentumBranch.Q0: PhaseLabel.FRP,
    MomentumBranch.Q_PI_2: PhaseLabel.FRUSTRATED,
}

# Base sign patterns, site order 1..4 around the square.
_PATTERNS = {
    MomentumBranch.Q0: (1.0, 1.0, 1.0, 1.0),
    MomentumBranch.Q_PI: (1.0, -1.0, 1.0, -1.0),
    MomentumBranch.Q_PI_2: (1.0, -1.0, -1.0, 1.0),
}


@dataclass(frozen=True)
class Displacements:
    """One member of the degenerate family of condensate configurations.

    ``amplitudes`` are the real parts A_n of the site displacements;
    ``imag_parts`` holds the B_n, which vanish for every ground-state
    solution and are carried only so arbitrary configurations can be
    passed through the same record.
    """

    branch: MomentumBranch
    amplitudes: tuple[float, float, float, float]
    degeneracy: int
    below_critical: bool = False
    imag_parts: tuple[float, float, float, float] = (0.0, 0.0, 0.0, 0.0)


@dataclass(frozen=True)
class SrpSolution:
    """Condensed-branch summary: amplitude, renormalized couplings, energy."""

    branch: MomentumBranch
    amplitude: float
    g_prime: float
    Omega_prime: float
    lambda_prime: float
    energy: float
    degeneracy: int


@dataclass(frozen=True)
class PhasePoint:
    label: PhaseLabel
    branch: MomentumBranch | None
    abs_alpha: float
    corr: float
    tie: bool = False


def base_pattern(branch: MomentumBranch) -> tuple[float, float, float, float]:
    """Unit-amplitude sign pattern of a condensation branch."""
    return _PATTERNS[branch]


def _lam(p: ModelParams, g: float) -> float:
    return g * math.sqrt(p.Omega * p.omega)


def srp_amplitude(p: ModelParams, g: float, branch: MomentumBranch) -> float:
    """Positive condensate amplitude A of one branch; 0 below its onset.

    A^2 = [16 lam^4 / (4 omega g_c^2(q))^2 - Omega^2] / (16 lam^2).
    """
    gc = critical_coupling(p, branch)
    lam = _lam(p, g)
    if lam == 0.0:
        return 0.0
    d = 4.0 * p.omega * gc * gc
    rad = 16.0 * lam ** 4 / (d * d) - p.Omega * p.Omega
    if rad <= 0.0:
        return 0.0
    return math.sqrt(rad) / (4.0 * lam)


def srp_displacements(p: ModelParams, g: float,
                      branch: MomentumBranch) -> list[Displacements]:
    """All degenerate condensate configurations of one branch.

    Uniform and staggered patterns come in +/- pairs; the paired pattern
    has four members (cyclic shifts, which already include the global sign
    flip).  Below the branch onset a single all-zero configuration is
    returned, tagged ``below_critical``.
    """
    a = srp_amplitude(p, g, branch)
    if a == 0.0:
        return [Displacements(branch, (0.0, 0.0, 0.0, 0.0), 1, True)]
    base = np.array(_PATTERNS[branch])
    if branch is MomentumBranch.Q_PI_2:
        configs = [tuple(np.roll(base, k) * a) for k in range(4)]
    else:
        configs = [tuple(base * a), tuple(-base * a)]
    return [Displacements(branch, c, len(configs)) for c in configs]


def renormalized_params(p: ModelParams, g: float,
                        branch: MomentumBranch) -> tuple[float, float, float, float]:
    """Renormalized (g', Omega', lambda', A^2) of the condensed branch.

    Omega' = sqrt(Omega^2 + 16 lam^2 A^2), lambda' = lam Omega / Omega',
    g' = lambda' / sqrt(omega Omega'); algebraically g' = g_c^3 / g^2.
    """
    gc = critical_coupling(p, branch)
    if g < gc:
        raise BelowCritical(
            f"g = {g:.6g} is below the q={branch.label} onset g_c = {gc:.6g}")
    lam = _lam(p, g)
    a = srp_amplitude(p, g, branch)
    Omega_p = math.sqrt(p.Omega ** 2 + 16.0 * lam * lam * a * a)
    lam_p = lam * p.Omega / Omega_p
    g_p = lam_p / math.sqrt(p.omega * Omega_p)
    return g_p, Omega_p, lam_p, a * a

def srp_excitation_energy(p: ModelParams, g: float, q0: MomentumBranch,
                          q: MomentumBranch | None = None) -> float:
    """Excitation energy above the q0 condensate, measured at momentum q.

    This is the normal-phase closed form evaluated at the renormalized
    coupling g' fixed by the condensed branch q0; q defaults to q0.
    """
    g_p, _, _, _ = renormalized_params(p, g, q0)
    return np_excitation_energy(p, g_p, q if q is not None else q0)


def srp_ground_energy(p: ModelParams, g: float, branch: MomentumBranch,
                      include_fluctuation: bool = True) -> float:
    """Ground energy of the branch condensate.

    E = -[lam^2/(g_c^2 omega) + Omega^2 g_c^2 omega / lam^2]
        + 4(-omega g'^2 + omega^2 g'^2 / Omega')
        + (1/2) sum_q (epsilon'_q - omega'_q).

    The first bracket is the minimized condensate energy, the second the
    dispersive correction of the rotated qubits, the sum the zero-point
    shift of the quadratic fluctuations (primes denote evaluation at g').
    ``include_fluctuation=False`` drops the last sum.
    """
    gc = critical_coupling(p, branch)
    if g < gc:
        raise BelowCritical(
            f"g = {g:.6g} is below the q={branch.label} onset g_c = {gc:.6g}")
    lam2 = _lam(p, g) ** 2
    gc2w = gc * gc * p.omega
    e = -(lam2 / gc2w + p.Omega * p.Omega * gc2w / lam2)
    g_p, Omega_p, _, _ = renormalized_params(p, g, branch)
    e += 4.0 * (-p.omega * g_p * g_p + p.omega ** 2 * g_p * g_p / Omega_p)
    if include_fluctuation:
        fluct = 0.0
        for b in MomentumBranch:
            fluct += (np_excitation_energy(p, g_p, b)
                      - mode_frequency(p, g_p, b))
        e += 0.5 * fluct
    return e


def branch_energies(p: ModelParams, g: float,
                    include_fluctuation: bool = True) -> dict[MomentumBranch, float]:
    """Condensate energies of every branch whose onset lies below g.

    A subdominant branch barely past its own onset can have imaginary
    fluctuation energies at its g' (soft mode of a lower-g_c branch);
    such a configuration is unstable and is dropped from the dict rather
    than raising.  The dominant branch is always evaluable.
    """
    out: dict[MomentumBranch, float] = {}
    for b in PATTERN_BRANCHES:
        try:
            gc = critical_coupling(p, b)
        except NoCriticalPoint:
            continue
        if g > gc:
            try:
                out[b] = srp_ground_energy(p, g, b, include_fluctuation)
            except ComplexEnergy:
                continue
    return out


def classify_phase(p: ModelParams, g: float) -> PhasePoint:
    """Phase label at coupling g: NP below every onset, otherwise the
    condensed branch of least energy.  Energy ties within TIE_RTOL are
    reported as Boundary instead of picking a winner.
    """
    cands = branch_energies(p, g)
    if not cands:
        return PhasePoint(PhaseLabel.NP, None, 0.0, 0.0)
    ranked = sorted(cands.items(), key=lambda t: (t[1], t[0].value))
    best_b, best_e = ranked[0]
    tie = False
    if len(ranked) > 1:
        scale = max(abs(best_e), abs(ranked[1][1]))
        tie = (ranked[1][1] - best_e) <= TIE_RTOL * scale
    a = srp_amplitude(p, g, best_b)
    if tie:
        return PhasePoint(PhaseLabel.BOUNDARY, None, a, 0.0, True)
    sign = -1.0 if best_b is MomentumBranch.Q_PI_2 else 1.0
    return PhasePoint(_BRANCH_LABEL[best_b], best_b, a, sign * a)


def order_parameter(p: ModelParams, g: float) -> tuple[float, float]:
    """(|alpha|, corr) of the phase at coupling g.

    corr = alpha_n alpha_{n+2} / |alpha|: positive for the uniform and
    staggered patterns, negative for the paired one, zero in NP.
    """
    pt = classify_phase(p, g)
    return pt.abs_alpha, pt.corr


def solution(p: ModelParams, g: float, branch: MomentumBranch) -> SrpSolution:
    """Assembled SrpSolution record for one condensed branch."""
    g_p, Omega_p, lam_p, a2 = renormalized_params(p, g, branch)
    return SrpSolution(
        branch=branch, amplitude=math.sqrt(a2), g_prime=g_p,
        Omega_prime=Omega_p, lambda_prime=lam_p,
        energy=srp_ground_energy(p, g, branch),
        degeneracy=4 if branch is MomentumBranch.Q_PI_2 else 2)


# ---------------------------------------------------------------------------
# Variational energy over arbitrary complex site displacements
# ---------------------------------------------------------------------------

def mean_field_energy(p: ModelParams, g: float,
                      a_re: np.ndarray, a_im: np.ndarray) -> float:
    """Condensate energy of arbitrary site displacements alpha_n = A_n + i B_n.

    E = sum_n [omega(A_n^2 + B_n^2) - Omega_n/2]
        + 2 j1 sum_n (A_n A_{n+1} + B_n B_{n+1})
        + j2 sum_n (A_n A_{n+2} + B_n B_{n+2})
    with Omega_n = sqrt(Omega^2 + 16 lam^2 A_n^2); each qubit sits in the
    ground state of its local mean field.
    """
    A = np.asarray(a_re, dtype=float)
    B = np.asarray(a_im, dtype=float)
    lam = _lam(p, g)
    Omega_n = np.sqrt(p.Omega ** 2 + 16.0 * lam * lam * A * A)
    e = float(np.sum(p.omega * (A * A + B * B) - 0.5 * Omega_n))
    e += 2.0 * p.j1 * float(np.sum(A * np.roll(A, -1) + B * np.roll(B, -1)))
    e += p.j2 * float(np.sum(A * np.roll(A, -2) + B * np.roll(B, -2)))
    return e


def stationarity_residual(p: ModelParams, g: float, amplitudes) -> float:
    """Max residual of the real stationarity conditions at a configuration.

    omega A_n - 4 lam^2 A_n / Omega_n + j1 (A_{n+1} + A_{n-1}) + j2 A_{n+2} = 0.
    """
    A = np.asarray(amplitudes, dtype=float)
    lam = _lam(p, g)
    Omega_n = np.sqrt(p.Omega ** 2 + 16.0 * lam * lam * A * A)
    r = (p.omega * A - 4.0 * lam * lam * A / Omega_n
         + p.j1 * (np.roll(A, -1) + np.roll(A, 1)) + p.j2 * np.roll(A, -2))
    return float(np.max(np.abs(r)))


def minimize_mean_field_energy(p: ModelParams, g: float, n_starts: int = 32,
                               seed: int = 0) -> tuple[float, np.ndarray, np.ndarray]:
    """Gradient-free multi-start minimization of ``mean_field_energy``.

    Deterministic: ``n_starts`` Powell runs from seeded uniform draws over a
    box scaled to the largest admissible amplitude, then one polish run from
    the best point.  Returns (energy, A, B).
    """
    lam = _lam(p, g)
    gcs = []
    for b in PATTERN_BRANCHES:
        try:
            gcs.append(critical_coupling(p, b))
        except NoCriticalPoint:
            pass
    gc_min = min(gcs) if gcs else 0.5
    box = 1.0 + (lam / (4.0 * p.omega * gc_min * gc_min) if lam > 0 else 0.0)

    def objective(x):
        return mean_field_energy(p, g, x[:4], x[4:])

    rng = np.random.default_rng(seed)
    best = None
    starts = rng.uniform(-box, box, size=(n_starts, 8))
    starts[0] = 0.0  # always probe the normal-phase stationary point
    for x0 in starts:
        res = optimize.minimize(objective, x0, method="Powell",
                                options={"xtol": 1e-12, "ftol": 1e-14,
                                         "maxiter": 20000})
        if best is None or res.fun < best.fun:
            best = res
    best = optimize.minimize(objective, best.x, method="Powell",
                             options={"xtol": 1e-13, "ftol": 1e-15,
                                      "maxiter": 20000})
    return float(best.fun), best.x[:4].copy(), best.x[4:].copy()


# ---------------------------------------------------------------------------
# Critical scaling
# ---------------------------------------------------------------------------

def scaling_exponent(p: ModelParams, branch: MomentumBranch, side: str,
                     window: tuple[float, float] = (1e-6, 1e-3),
                     num: int = 24) -> float:
    """Least-squares slope of ln(epsilon) against ln|g - g_c|.

    ``side`` is "np" (approach from below) or "srp" (from above, using the
    renormalized excitation energy of the same branch).  The exact exponent
    of the gap closing is 1/2.
    """
    lo, hi = window
    if not (0.0 < lo < hi):
        raise InsufficientWindow(f"bad window {window}")
    if num < 20:
        raise InsufficientWindow(f"need at least 20 points, got {num}")
    gc = critical_coupling(p, branch)
    deltas = np.logspace(math.log10(lo), math.log10(hi), num)
    if side == "np":
        eps = [np_excitation_energy(p, gc - d, branch) for d in deltas]
    elif side == "srp":
        eps = [srp_excitation_energy(p, gc + d, branch) for d in deltas]
    else:
        raise ValueError(f"side must be 'np' or 'srp', got {side!r}")
    slope = np.polyfit(np.log(deltas), np.log(eps), 1)[0]
    return float(slope)


def np_srp_energy_agree_at_onset(p: ModelParams, branch: MomentumBranch) -> float:
    """|E_np(g_c) - E_srp(g_c)|; the two expressions coincide at the onset."""
    gc = critical_coupling(p, branch)
    return abs(np_ground_energy(p, gc) - srp_ground_energy(p, gc, branch))
