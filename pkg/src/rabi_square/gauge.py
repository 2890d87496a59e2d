"""Equivalence maps between the plaquette and a four-site Rabi ring whose
hopping carries a complex phase.

A ring with hopping j10 * exp(i theta) and no diagonal bond has mode
frequencies omega(1 - 2g^2) + 2 j10 cos(q - theta); the phase shifts the
dispersion and splits the +-q excitation branches.  Matching one excitation
branch of the ring against the same branch of the plaquette fixes the
diagonal bond j2 as a function of (j10, theta), separately for the
staggered branch (g-independent) and for the paired branch (g-dependent,
joining continuously at the shared onset).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from enum import Enum

from .core import (
    ModelParams,
    MomentumBranch,
    critical_coupling,
    np_excitation_energy,
    pair_excitation_energy,
)
from .errors import BelowCritical, DomainError, NoCriticalPoint, NoRoot

__all__ = [
    "GaugeParams",
    "Regime",
    "TriplePoint",
    "CorrespondenceResult",
    "qrr_mode_frequency",
    "qrr_excitation",
    "qrr_critical_coupling",
    "qrr_gap_closes_at_critical",
    "map_afrp",
    "map_frustrated",
    "map_frustrated_critical",
    "map_order_parameter",
    "negative_j1_map",
    "triple_point",
    "equivalence_residual",
]

# exact lattice trig, as in core: q = pi*l/2
_COS_Q = (1.0, 0.0, -1.0, 0.0)
_SIN_Q = (0.0, 1.0, 0.0, -1.0)
_COS2_Q = (1.0, 0.0, 1.0, 0.0)   # cos^2 q
_SIN2_Q = (0.0, 1.0, 0.0, 1.0)   # sin^2 q


class Regime(str, Enum):
    NP = "np"
    SRP = "srp"


@dataclass(frozen=True)
class GaugeParams:
    """Ring hopping amplitude j10 and its gauge phase theta."""

    j10: float
    theta: float

    def __post_init__(self):
        for name in ("j10", "theta"):
            v = getattr(self, name)
            if not (isinstance(v, (int, float)) and math.isfinite(v)):
                raise ValueError(f"{name} must be a finite real number, got {v!r}")


@dataclass(frozen=True)
class TriplePoint:
    """Meeting point of the two second-order maps with the first-order line."""

    theta_c: float
    j1: float
    j2: float
    spread: float  # |j1 - j2|, zero up to rounding by construction


@dataclass(frozen=True)
class CorrespondenceResult:
    """One excitation branch evaluated on both sides of a j2(theta) map."""

    kind: str
    regime: Regime
    branch: MomentumBranch
    g: float
    j2: float
    eps_plaquette: float
    eps_ring: float
    residual: float
    gc_consistency: float


def _cos_qmt(branch: MomentumBranch, theta: float) -> float:
    # cos(q - theta) with the lattice part exact
    l = branch.value
    return _COS_Q[l] * math.cos(theta) + _SIN_Q[l] * math.sin(theta)


def qrr_mode_frequency(gp: GaugeParams, p: ModelParams, g: float,
                       branch: MomentumBranch) -> float:
    """Ring mode frequency omega(1 - 2 g^2) + 2 j10 cos(q - theta)."""
    return p.omega * (1.0 - 2.0 * g * g) + 2.0 * gp.j10 * _cos_qmt(branch, gp.theta)


def qrr_critical_coupling(gp: GaugeParams, p: ModelParams,
                          branch: MomentumBranch) -> float:
    """Coupling where the ring's (q, -q) excitation pair touches zero.

    4 g_c^2 = [1 + 4a cosq cos(theta) + 4a^2 cos(q-theta)cos(q+theta)]
              / [1 + 2a cosq cos(theta)],  a = j10/omega.

    The value is shared by q and -q; which of the two branches actually
    closes its gap there is reported by ``qrr_gap_closes_at_critical``.
    """
    a = gp.j10 / p.omega
    l = branch.value
    cqct = _COS_Q[l] * math.cos(gp.theta)
    # cos(q-theta) cos(q+theta) = cos^2 q cos^2 theta - sin^2 q sin^2 theta
    cross = _COS2_Q[l] * math.cos(gp.theta) ** 2 - _SIN2_Q[l] * math.sin(gp.theta) ** 2
    den = 1.0 + 2.0 * a * cqct
    if den <= 0.0:
        raise NoCriticalPoint(
            f"ring branch q={branch.label}: denominator {den:.6g} <= 0")
    val = (1.0 + 4.0 * a * cqct + 4.0 * a * a * cross) / den
    if val <= 0.0:
        raise NoCriticalPoint(
            f"ring branch q={branch.label}: 4 g_c^2 = {val:.6g} <= 0")
    return 0.5 * math.sqrt(val)


def qrr_gap_closes_at_critical(gp: GaugeParams, p: ModelParams,
                               branch: MomentumBranch) -> bool:
    """True when this branch (not its conjugate) is the one whose
    excitation energy vanishes at the shared critical coupling.

    omega_q - omega_-q = 4 j10 sin(q) sin(theta); the softer branch is the
    one with the lower frequency.
    """
    split = gp.j10 * _SIN_Q[branch.value] * math.sin(gp.theta)
    return split <= 0.0


def qrr_excitation(gp: GaugeParams, p: ModelParams, g: float,
                   branch: MomentumBranch, regime: Regime = Regime.NP,
                   condensed: MomentumBranch | None = None,
                   g_prime: float | None = None) -> float:
    """Ring excitation energy; the +-q asymmetry survives in the general
    pair formula.  In the SRP regime the frequencies and the pairing term
    are evaluated at g' = g_c^3(condensed)/g^2 (or an explicit ``g_prime``).
    """
    if regime is Regime.SRP:
        if g_prime is None:
            gc = qrr_critical_coupling(gp, p, condensed or branch)
            if g < gc:
                raise BelowCritical(
                    f"g = {g:.6g} below ring onset g_c = {gc:.6g}")
            g_eff = gc ** 3 / (g * g)
        else:
            g_eff = g_prime
    else:
        g_eff = g
    wq = qrr_mode_frequency(gp, p, g_eff, branch)
    wmq = qrr_mode_frequency(gp, p, g_eff, branch.conjugate)
    return pair_excitation_energy(wq, wmq, p.omega, g_eff, branch.label)


# ---------------------------------------------------------------------------
# j2(theta) equivalence maps
# ---------------------------------------------------------------------------

def map_afrp(gp: GaugeParams, p: ModelParams, j1: float) -> float:
    """Diagonal bond matching the staggered branch: j2 = 2(j1 - j10 cos theta).

    Exact for every g on both sides of the onset, because the map equates
    the staggered mode frequencies identically.
    """
    return 2.0 * (j1 - gp.j10 * math.cos(gp.theta))


def map_frustrated(gp: GaugeParams, p: ModelParams, g: float,
                   regime: Regime = Regime.NP) -> float:
    """Diagonal bond matching the paired branch at coupling g.

    j2/omega = 1 - 2x^2 - sqrt[(sqrt(1 - 4x^2) - 2 (j10/omega) sin theta)^2
                               + 4x^4]
    with x = g in the normal regime and x = g' = g_c^3(3pi/2)/g^2 in the
    superradiant one.  Independent of the plaquette's j1 (the edge hopping
    drops out of the paired-branch frequency).
    """
    if regime is Regime.SRP:
        gc = qrr_critical_coupling(gp, p, MomentumBranch.Q_3PI_2)
        if g < gc:
            raise DomainError(
                f"superradiant map requested below the onset: g = {g:.6g} "
                f"< g_c = {gc:.6g}")
        x = gc ** 3 / (g * g)
    else:
        x = g
    t = 1.0 - 4.0 * x * x
    if t < 0.0:
        raise DomainError(
            f"map undefined for x = {x:.6g} > 1/2 (normal branch gapped out)")
    inner = math.sqrt(t) - 2.0 * (gp.j10 / p.omega) * math.sin(gp.theta)
    return p.omega * (1.0 - 2.0 * x * x - math.sqrt(inner * inner + 4.0 * x ** 4))


def map_frustrated_critical(gp: GaugeParams, p: ModelParams) -> float:
    """g-independent value the paired-branch map takes at the shared onset,
    which is also the order-parameter matching value:
    j2 = 4 j10^2 sin^2(theta) / omega.
    """
    return 4.0 * gp.j10 * gp.j10 * math.sin(gp.theta) ** 2 / p.omega


def map_order_parameter(gp: GaugeParams, p: ModelParams, j1: float,
                        branch: MomentumBranch) -> float:
    """j2 giving identical condensate amplitude A^2 on both sides.

    For the staggered branch this coincides with ``map_afrp`` (same g_c in
    the amplitude formula); for the paired branch the amplitude match is
    g-independent and equals the excitation map only at the onset.
    """
    if branch is MomentumBranch.Q_PI:
        return map_afrp(gp, p, j1)
    if branch in (MomentumBranch.Q_PI_2, MomentumBranch.Q_3PI_2):
        return map_frustrated_critical(gp, p)
    raise DomainError(
        f"no order-parameter map for branch q={branch.label}")


def negative_j1_map(gp: GaugeParams, p: ModelParams, j1: float,
                    kind: str = "afrp", g: float | None = None,
                    regime: Regime = Regime.NP) -> float:
    """Mirror of the maps for edge hopping j1 <= 0.

    The substitution (j1, theta) -> (-j1, pi - theta) maps the negative-j1
    problem onto the positive one: call this with the already substituted
    theta.  For the staggered map the result is the negative of the
    positive-j1 value (f(-j1, pi - theta) = -f(j1, theta)); the paired map
    only sees sin(theta) and is unchanged.
    """
    if j1 > 0.0:
        raise DomainError(f"negative_j1_map expects j1 <= 0, got {j1}")
    if kind == "afrp":
        return map_afrp(gp, p, j1)
    if kind == "frustrated":
        if g is None:
            raise DomainError("frustrated map needs a coupling g")
        return map_frustrated(gp, p, g, regime)
    raise ValueError(f"unknown map kind {kind!r}")


def triple_point(gp: GaugeParams, p: ModelParams, tol: float = 1e-12) -> TriplePoint:
    """Angle where the staggered and paired maps meet the first-order line.

    Solves h(theta) = 2 j10 cos(theta) - 4 j10^2 sin^2(theta)/omega = 0
    on (0, pi/2) by bisection to ``tol``, then one Newton polish step.
    h(0) > 0 > h(pi/2) for any j10 > 0, so the bracket always holds.
    """
    if gp.j10 <= 0.0:
        raise NoRoot(f"triple point needs j10 > 0, got j10 = {gp.j10}")
    b = 4.0 * gp.j10 * gp.j10 / p.omega

    def h(t: float) -> float:
        return 2.0 * gp.j10 * math.cos(t) - b * math.sin(t) ** 2

    lo, hi = 0.0, 0.5 * math.pi
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if h(mid) > 0.0:
            lo = mid
        else:
            hi = mid
    theta_c = 0.5 * (lo + hi)
    dh = -2.0 * gp.j10 * math.sin(theta_c) - 2.0 * b * math.sin(theta_c) * math.cos(theta_c)
    theta_c -= h(theta_c) / dh
    j1 = 2.0 * gp.j10 * math.cos(theta_c)
    j2 = b * math.sin(theta_c) ** 2
    return TriplePoint(theta_c=theta_c, j1=j1, j2=j2, spread=abs(j1 - j2))


# ---------------------------------------------------------------------------
# Dual-route verification
# ---------------------------------------------------------------------------

def equivalence_residual(gp: GaugeParams, p: ModelParams, g: float,
                         kind: str, regime: Regime = Regime.NP) -> CorrespondenceResult:
    """Evaluate one excitation branch on both sides of a map.

    For the superradiant regime the renormalized coupling is shared between
    the two sides; ``gc_consistency`` reports how far apart the two onsets
    are (they coincide once the map holds, which the test suite asserts).
    """
    if kind == "afrp":
        branch = MomentumBranch.Q_PI
        j2 = map_afrp(gp, p, p.j1)
        p_sq = replace(p, j2=j2)
        gc_ring = qrr_critical_coupling(gp, p, branch)
        gc_sq = critical_coupling(p_sq, branch)
    elif kind == "frustrated":
        branch = MomentumBranch.Q_3PI_2
        j2 = map_frustrated(gp, p, g, regime)
        p_sq = replace(p, j2=j2)
        gc_ring = qrr_critical_coupling(gp, p, branch)
        # the onset of the swept plaquette sits where the map takes its
        # critical value, not at the instantaneous j2(g)
        p_crit = replace(p, j2=map_frustrated_critical(gp, p))
        gc_sq = critical_coupling(p_crit, branch)
    else:
        raise ValueError(f"unknown map kind {kind!r}")

    if regime is Regime.NP:
        eps_sq = np_excitation_energy(p_sq, g, branch)
        eps_ring = qrr_excitation(gp, p, g, branch, Regime.NP)
    else:
        if g < gc_ring:
            raise BelowCritical(
                f"g = {g:.6g} below the shared onset {gc_ring:.6g}")
        g_shared = gc_ring ** 3 / (g * g)
        eps_sq = np_excitation_energy(p_sq, g_shared, branch)
        eps_ring = qrr_excitation(gp, p, g, branch, Regime.SRP,
                                  condensed=branch)
    return CorrespondenceResult(
        kind=kind, regime=regime, branch=branch, g=g, j2=j2,
        eps_plaquette=eps_sq, eps_ring=eps_ring,
        residual=abs(eps_sq - eps_ring),
        gc_consistency=abs(gc_sq - gc_ring))
