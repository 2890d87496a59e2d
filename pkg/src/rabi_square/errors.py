"""Exception types shared across the package, plus the truncation warning."""

from __future__ import annotations


class RabiSquareError(Exception):
    """Base class for every domain failure raised by this package."""


class NoCriticalPoint(RabiSquareError):
    """The requested momentum branch has no normal-phase instability."""


class DivergentSqueeze(RabiSquareError):
    """Squeeze parameter requested at or beyond the branch critical coupling."""


class ComplexEnergy(RabiSquareError):
    """An excitation energy came out imaginary; the chosen phase is unstable."""


class BelowCritical(RabiSquareError):
    """A superradiant quantity was requested below the branch onset."""


class InsufficientWindow(RabiSquareError):
    """Scaling fit window is degenerate or holds too few points."""


class DomainError(RabiSquareError):
    """Input lies outside the validity domain of a closed-form expression."""


class NoRoot(RabiSquareError):
    """A root-finding problem has no solution in the searched bracket."""


class DimensionOverflow(RabiSquareError):
    """Requested Fock space exceeds the configured matrix-size cap."""


class NoConvergence(RabiSquareError):
    """Iterative eigensolver failed; diagnostics carry the partial state."""

    def __init__(self, message: str, diagnostics: dict | None = None):
        super().__init__(message)
        self.diagnostics = diagnostics or {}


class EmptySubspace(RabiSquareError):
    """Fidelity against an empty or numerically rank-deficient subspace."""


class UnitarityLossWarning(UserWarning):
    """Truncated operator exponential deviates measurably from unitarity."""
