"""Closed-form normal-phase theory of a square plaquette of Rabi cavities.

Four identical cavity-qubit units sit on the corners of a square.  Photons
hop along the edges with amplitude j1 and across the two diagonals with
amplitude j2.  Deep in the dispersive regime (qubit gap Omega much larger
than the photon frequency omega) the low-energy photon sector is quadratic
and separates into four momentum branches q in {0, pi/2, pi, 3pi/2}.  This
module holds the resulting closed forms: mode frequencies, squeeze
parameters, excitation energies, per-branch critical couplings and the
normal-phase ground energy.

Conventions used throughout:

* the dimensionless coupling is g = lambda / sqrt(Omega * omega);
* operations take g explicitly so parameter sweeps never mutate a
  ``ModelParams``; where a bare lambda is needed it is recomputed from the
  g that was passed in.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from enum import Enum

from .errors import (
    ComplexEnergy,
    DivergentSqueeze,
    NoCriticalPoint,
)

__all__ = [
    "ModelParams",
    "MomentumBranch",
    "BranchSpectrum",
    "mode_frequency",
    "squeeze_parameter",
    "np_excitation_energy",
    "critical_coupling",
    "np_ground_energy",
    "dominant_branch",
    "branch_spectrum",
    "regime_diagnostics",
]

# Relative tolerance below which two branch critical couplings (or two branch
# energies) are reported as tied instead of picking a winner arbitrarily.
TIE_RTOL = 1e-9


@dataclass(frozen=True)
class ModelParams:
    """Static parameters of the plaquette.

    ``lam`` is the qubit-photon coupling; ``g`` and ``eta`` are derived,
    never stored.  ``omega`` defaults to 1 and sets the energy unit.
    """

    Omega: float
    lam: float
    j1: float
    j2: float
    omega: float = 1.0

    def __post_init__(self):
        for name in ("Omega", "lam", "j1", "j2", "omega"):
            v = getattr(self, name)
            if not (isinstance(v, (int, float)) and math.isfinite(v)):
                raise ValueError(f"{name} must be a finite real number, got {v!r}")
        if self.omega <= 0:
            raise ValueError(f"omega must be positive, got {self.omega}")
        if self.Omega <= 0:
            raise ValueError(f"Omega must be positive, got {self.Omega}")
        if self.lam < 0:
            raise ValueError(f"lam must be nonnegative, got {self.lam}")

    @classmethod
    def from_g(cls, g: float, Omega: float, j1: float, j2: float,
               omega: float = 1.0) -> "ModelParams":
        """Build parameters from the dimensionless coupling g."""
        if g < 0:
            raise ValueError(f"g must be nonnegative, got {g}")
        return cls(Omega=Omega, lam=g * math.sqrt(Omega * omega),
                   j1=j1, j2=j2, omega=omega)

    @property
    def g(self) -> float:
        return self.lam / math.sqrt(self.Omega * self.omega)

    @property
    def eta(self) -> float:
        return self.Omega / self.omega

    def with_coupling(self, g: float) -> "ModelParams":
        """Copy with lam back-solved from a new dimensionless coupling."""
        return replace(self, lam=g * math.sqrt(self.Omega * self.omega))


class MomentumBranch(Enum):
    """The four plaquette momenta q = pi*l/2, l = 0..3."""

    Q0 = 0
    Q_PI_2 = 1
    Q_PI = 2
    Q_3PI_2 = 3

    @property
    def l(self) -> int:
        return self.value

    @property
    def q(self) -> float:
        return 0.5 * math.pi * self.value

    @property
    def conjugate(self) -> "MomentumBranch":
        return MomentumBranch((4 - self.value) % 4)

    @property
    def label(self) -> str:
        return ("0", "pi/2", "pi", "3pi/2")[self.value]


# cos(q) and cos(2q) on the four-point lattice, tabulated exactly: libm
# cos(3*pi/2) leaks ~1e-16 and would split the pi/2 / 3pi/2 degeneracy.
_COS_Q = (1.0, 0.0, -1.0, 0.0)
_COS_2Q = (1.0, -1.0, 1.0, -1.0)


@dataclass(frozen=True)
class BranchSpectrum:
    """Snapshot of one momentum branch at a given coupling.

    ``lambda_q`` and ``epsilon_q`` are None where the corresponding closed
    form stops being real (at or beyond the branch critical coupling).
    """

    branch: MomentumBranch
    omega_q: float
    epsilon_q: float | None
    lambda_q: float | None
    g_c: float | None


def mode_frequency(p: ModelParams, g: float, branch: MomentumBranch) -> float:
    """Hopping-dressed mode frequency of one momentum branch.

    omega_q = omega(1 - 2 g^2) + j2 cos(2q) + 2 j1 cos(q).
    """
    return (p.omega * (1.0 - 2.0 * g * g)
            + p.j2 * _COS_2Q[branch.value]
            + 2.0 * p.j1 * _COS_Q[branch.value])


def squeeze_parameter(p: ModelParams, g: float, branch: MomentumBranch) -> float:
    """Two-mode squeeze parameter that diagonalizes the (q, -q) pair.

    lambda_q = (1/8) ln[(omega_q + omega_-q + 4 omega g^2)
                        / (omega_q + omega_-q - 4 omega g^2)].
    Diverges logarithmically as g approaches the branch critical coupling.
    """
    s = mode_frequency(p, g, branch) + mode_frequency(p, g, branch.conjugate)
    x = 4.0 * p.omega * g * g
    if s - x <= 0.0:
        raise DivergentSqueeze(
            f"squeeze parameter diverges at q={branch.label}: "
            f"omega_q + omega_-q = {s:.6g} <= 4 omega g^2 = {x:.6g}")
    return 0.125 * math.log((s + x) / (s - x))


def np_excitation_energy(p: ModelParams, g: float, branch: MomentumBranch) -> float:
    """Normal-phase excitation energy of one momentum branch.

    epsilon_q = [sqrt((omega_q + omega_-q)^2 - 16 omega^2 g^4)
                 + omega_q - omega_-q] / 2.
    On the plaquette omega_q = omega_-q, so this reduces to
    sqrt(omega_q^2 - 4 omega^2 g^4); the full form is kept because the
    gauge-equivalence checks reuse it with asymmetric frequencies.
    """
    wq = mode_frequency(p, g, branch)
    wmq = mode_frequency(p, g, branch.conjugate)
    return pair_excitation_energy(wq, wmq, p.omega, g, branch.label)


def pair_excitation_energy(wq: float, wmq: float, omega: float, g: float,
                           label: str = "?") -> float:
    """Excitation energy of a (q, -q) pair with given mode frequencies."""
    x = 4.0 * omega * g * g
    rad = (wq + wmq) ** 2 - x * x
    if rad < 0.0:
        raise ComplexEnergy(
            f"excitation energy at q={label} is imaginary "
            f"(radicand {rad:.6g}); the assumed phase is unstable here")
    return 0.5 * (math.sqrt(rad) + wq - wmq)


def critical_coupling(p: ModelParams, branch: MomentumBranch) -> float:
    """Coupling g_c(q) where the branch excitation gap closes.

    4 g_c^2(q) = 1 + (j2/omega) cos(2q) + (2 j1/omega) cos(q).
    """
    val = (1.0
           + (p.j2 / p.omega) * _COS_2Q[branch.value]
           + (2.0 * p.j1 / p.omega) * _COS_Q[branch.value])
    if val <= 0.0:
        raise NoCriticalPoint(
            f"branch q={branch.label} has no gap closing: "
            f"1 + j2 cos2q/omega + 2 j1 cosq/omega = {val:.6g} <= 0")
    return 0.5 * math.sqrt(val)


def np_ground_energy(p: ModelParams, g: float,
                     include_fluctuation: bool = True) -> float:
    """Normal-phase ground energy including the quadratic fluctuation sum.

    E = 4(-Omega/2 - omega g^2 + omega^2 g^2/Omega)
        + (1/2) sum_q (epsilon_q - omega_q).
    """
    e0 = 4.0 * (-0.5 * p.Omega - p.omega * g * g
                + p.omega * p.omega * g * g / p.Omega)
    if not include_fluctuation:
        return e0
    fluct = 0.0
    for b in MomentumBranch:
        fluct += np_excitation_energy(p, g, b) - mode_frequency(p, g, b)
    return e0 + 0.5 * fluct


# The three distinct condensation patterns; Q_3PI_2 shares everything with
# Q_PI_2 and is represented by it.
PATTERN_BRANCHES = (MomentumBranch.Q0, MomentumBranch.Q_PI_2, MomentumBranch.Q_PI)


def dominant_branch(p: ModelParams) -> tuple[MomentumBranch, bool]:
    """Branch with the smallest critical coupling, plus a tie flag.

    Only the three distinct patterns compete (pi/2 stands for the always
    degenerate pi/2, 3pi/2 pair).  Branches without a critical point are
    skipped; NoCriticalPoint is raised only if none remains.
    """
    found: list[tuple[float, MomentumBranch]] = []
    for b in PATTERN_BRANCHES:
        try:
            found.append((critical_coupling(p, b), b))
        except NoCriticalPoint:
            continue
    if not found:
        raise NoCriticalPoint("no momentum branch has a gap closing")
    found.sort(key=lambda t: (t[0], t[1].value))
    best = found[0]
    tie = len(found) > 1 and (found[1][0] - best[0]) <= TIE_RTOL * max(
        abs(best[0]), abs(found[1][0]))
    return best[1], tie


def branch_spectrum(p: ModelParams, g: float, branch: MomentumBranch) -> BranchSpectrum:
    """Bundle omega_q, epsilon_q, lambda_q and g_c for one branch."""
    try:
        gc = critical_coupling(p, branch)
    except NoCriticalPoint:
        gc = None
    try:
        eps = np_excitation_energy(p, g, branch)
    except ComplexEnergy:
        eps = None
    try:
        lam_q = squeeze_parameter(p, g, branch)
    except DivergentSqueeze:
        lam_q = None
    return BranchSpectrum(branch=branch,
                          omega_q=mode_frequency(p, g, branch),
                          epsilon_q=eps, lambda_q=lam_q, g_c=gc)


def regime_diagnostics(p: ModelParams) -> list[str]:
    """Advisory messages where the closed forms are used outside the
    hierarchy Omega >> omega >~ |j1|, |j2| they were derived in.

    Returns human-readable warnings; never raises.
    """
    msgs = []
    if p.eta < 10.0:
        msgs.append(
            f"Omega/omega = {p.eta:.3g} < 10: dispersive-limit expressions "
            "carry O(omega/Omega) errors that are no longer small")
    jmax = max(abs(p.j1), abs(p.j2))
    if jmax > 0.25 * p.omega:
        msgs.append(
            f"max|j| = {jmax:.3g} exceeds omega/4 = {0.25 * p.omega:.3g}: "
            "hopping treated perturbatively is not weak here")
    return msgs
