"""Exact diagonalization of the plaquette on a truncated Fock space.

Four cavities with ``n_c`` photon levels each and four qubits give a
dim = 16 n_c^4 Hilbert space.  Basis ordering is cavity-major, spin-minor:

    index = boson_index * 16 + spin_index,
    boson_index = n1 n_c^3 + n2 n_c^2 + n3 n_c + n4,
    spin_index  = s1 * 8 + s2 * 4 + s3 * 2 + s4,   s = 1 meaning qubit up,

so the global vacuum (all cavities empty, all qubits down) is index 0.
Everything is real: the Hamiltonian, the symmetry operators, and the
displacement / squeeze exponentials (their truncated generators are real
antisymmetric, so the exponentials are orthogonal matrices).

The superradiant condensate pushes per-site photon numbers far beyond any
workable cutoff, so condensed-phase runs use the displaced Hamiltonian:
``build_hamiltonian`` with ``displacements`` performs the substitution
a_n -> a_n + A_n exactly (linear terms plus a scalar shift), rather than
conjugating by the truncated displacement operator, which would not be a
similarity transform of the truncated matrix.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from functools import cached_property

import numpy as np
from scipy import sparse
from scipy.linalg import eigh, expm
from scipy.sparse.linalg import ArpackNoConvergence, eigsh

from .core import (
    ModelParams,
    MomentumBranch,
    dominant_branch,
    np_ground_energy,
    squeeze_parameter,
)
from .errors import (
    DimensionOverflow,
    EmptySubspace,
    NoConvergence,
    NoCriticalPoint,
    UnitarityLossWarning,
)
from .meanfield import (
    Displacements,
    renormalized_params,
    srp_amplitude,
    srp_displacements,
    srp_ground_energy,
)

__all__ = [
    "FockSpace",
    "OperatorMatrix",
    "SpectralResult",
    "EdPoint",
    "build_hamiltonian",
    "parity_operator",
    "cyclic_shift_operator",
    "displacement_operator",
    "momentum_squeeze_operator",
    "ground_state",
    "meanfield_state",
    "fidelity",
    "variational_energy",
    "observables",
    "ed_ground_point",
    "ed_compare_point",
    "meanfield_infidelity",
]

_SITES = 4


@dataclass(frozen=True)
class FockSpace:
    """Truncated Hilbert space with per-site operator factories.

    ``max_dim`` caps the matrix size the operator builders will agree to
    produce; the cap is checked at build time, not here, so a FockSpace is
    always constructible for indexing arithmetic.
    """

    n_c: int
    max_dim: int = 250_000

    def __post_init__(self):
        if not (isinstance(self.n_c, int) and self.n_c >= 2):
            raise ValueError(f"n_c must be an integer >= 2, got {self.n_c!r}")

    @property
    def boson_dim(self) -> int:
        return self.n_c ** 4

    @property
    def dim(self) -> int:
        return 16 * self.n_c ** 4

    def check_cap(self) -> None:
        if self.dim > self.max_dim:
            raise DimensionOverflow(
                f"dim = {self.dim} exceeds the configured cap {self.max_dim}")

    # -- indexing -----------------------------------------------------------

    def index_of(self, ns, ss) -> int:
        """Composite index of the basis state |n1..n4; s1..s4>."""
        if len(ns) != _SITES or len(ss) != _SITES:
            raise ValueError("need four occupations and four spin bits")
        b = 0
        s = 0
        for k in range(_SITES):
            n = int(ns[k])
            if not 0 <= n < self.n_c:
                raise ValueError(f"occupation {n} outside [0, {self.n_c})")
            if int(ss[k]) not in (0, 1):
                raise ValueError(f"spin bit must be 0 or 1, got {ss[k]!r}")
            b = b * self.n_c + n
            s = s * 2 + int(ss[k])
        return b * 16 + s

    def occupations(self, index: int) -> tuple[tuple[int, ...], tuple[int, ...]]:
        """Inverse of index_of."""
        if not 0 <= index < self.dim:
            raise ValueError(f"index {index} outside [0, {self.dim})")
        b, s = divmod(index, 16)
        ns = []
        for k in range(_SITES):
            ns.append(b // self.n_c ** (3 - k) % self.n_c)
        ss = [(s >> (3 - k)) & 1 for k in range(_SITES)]
        return tuple(ns), tuple(ss)

    # -- cached structure arrays -------------------------------------------

    @cached_property
    def _boson_digits(self) -> np.ndarray:
        # (boson_dim, 4) per-site occupation of each boson index
        b = np.arange(self.boson_dim)
        return np.stack(
            [b // self.n_c ** (3 - k) % self.n_c for k in range(_SITES)], axis=1)

    @cached_property
    def _spin_bits(self) -> np.ndarray:
        s = np.arange(16)
        return np.stack([(s >> (3 - k)) & 1 for k in range(_SITES)], axis=1)

    # -- per-site operators -------------------------------------------------

    @cached_property
    def boson_lower(self) -> tuple[sparse.csr_matrix, ...]:
        """Site lowering operators on the boson block (no spin factor)."""
        a = sparse.diags(np.sqrt(np.arange(1.0, self.n_c)), 1, format="csr")
        ops = []
        for k in range(_SITES):
            left = sparse.identity(self.n_c ** k, format="csr")
            right = sparse.identity(self.n_c ** (3 - k), format="csr")
            ops.append(sparse.kron(sparse.kron(left, a), right, format="csr"))
        return tuple(ops)

    @cached_property
    def boson_x(self) -> tuple[sparse.csr_matrix, ...]:
        """a_n + a_n^dag on the boson block."""
        return tuple((op + op.T).tocsr() for op in self.boson_lower)

    @cached_property
    def spin_x(self) -> tuple[sparse.csr_matrix, ...]:
        sx = sparse.csr_matrix(np.array([[0.0, 1.0], [1.0, 0.0]]))
        return self._spin_chain(sx)

    @cached_property
    def spin_z(self) -> tuple[sparse.csr_matrix, ...]:
        # basis order (down, up): sigma_z |down> = -|down>
        sz = sparse.csr_matrix(np.array([[-1.0, 0.0], [0.0, 1.0]]))
        return self._spin_chain(sz)

    def _spin_chain(self, op2) -> tuple[sparse.csr_matrix, ...]:
        ops = []
        for k in range(_SITES):
            left = sparse.identity(2 ** k, format="csr")
            right = sparse.identity(2 ** (3 - k), format="csr")
            ops.append(sparse.kron(sparse.kron(left, op2), right, format="csr"))
        return tuple(ops)

    def lower(self, n: int) -> sparse.csr_matrix:
        """Full-space lowering operator of site n (0-based)."""
        return sparse.kron(self.boson_lower[n], sparse.identity(16),
                           format="csr")

    def sigma_x(self, n: int) -> sparse.csr_matrix:
        return sparse.kron(sparse.identity(self.boson_dim), self.spin_x[n],
                           format="csr")

    def sigma_z(self, n: int) -> sparse.csr_matrix:
        return sparse.kron(sparse.identity(self.boson_dim), self.spin_z[n],
                           format="csr")


@dataclass(frozen=True)
class OperatorMatrix:
    """A dim x dim operator plus the bookkeeping the builders attach.

    ``unitarity_defect`` is max|M^dag M - 1| where meaningful;
    ``truncation_loss`` estimates the state-norm weight the untruncated
    operator would place beyond the cutoff (the truncated exponentials
    themselves are exactly orthogonal, so the defect alone understates
    how faithful they are).
    """

    matrix: sparse.spmatrix
    hermitian: bool
    unitary: bool = False
    unitarity_defect: float | None = None
    truncation_loss: float | None = None

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    def hermiticity_defect(self) -> float:
        d = self.matrix - self.matrix.conj().T
        return float(np.abs(d).max()) if d.nnz else 0.0


@dataclass(frozen=True)
class SpectralResult:
    """Lowest eigenpairs: energies ascending, vectors as columns."""

    energies: np.ndarray
    vectors: np.ndarray
    residuals: np.ndarray
    method: str


def _as_matrix(m) -> sparse.spmatrix:
    return m.matrix if isinstance(m, OperatorMatrix) else m


def _displacement_array(displacements) -> np.ndarray:
    if isinstance(displacements, Displacements):
        return np.asarray(displacements.amplitudes, dtype=float)
    a = np.asarray(displacements, dtype=float)
    if a.shape != (_SITES,):
        raise ValueError(f"need four real displacements, got shape {a.shape}")
    return a


def build_hamiltonian(p: ModelParams, f: FockSpace,
                      displacements=None) -> OperatorMatrix:
    """Sparse real Hamiltonian; coupling taken from p.lam.

    With ``displacements`` the operator is the exact a_n -> a_n + A_n
    substitution: extra linear photon terms c_n (a_n + a_n^dag), extra
    qubit drives 2 lam A_n sigma_n^x, and a scalar shift.  All hopping is
    periodic around the square; j2 connects the two diagonals.
    """
    f.check_cap()
    nb = f.boson_dim
    i16 = sparse.identity(16, format="csr")

    occ_total = f._boson_digits.sum(axis=1).astype(float)
    sz_total = (2.0 * f._spin_bits.sum(axis=1) - 4.0)
    diag = (p.omega * np.repeat(occ_total, 16)
            + 0.5 * p.Omega * np.tile(sz_total, nb))
    h = sparse.diags(diag, format="csr")

    for n in range(_SITES):
        h = h + p.lam * sparse.kron(f.boson_x[n], f.spin_x[n], format="csr")

    hop = None
    for n in range(_SITES):
        t = f.boson_lower[n].T @ f.boson_lower[(n + 1) % 4]
        hop = t if hop is None else hop + t
    bond = p.j1 * (hop + hop.T)
    diagbond = (f.boson_lower[0].T @ f.boson_lower[2]
                + f.boson_lower[1].T @ f.boson_lower[3])
    bond = bond + p.j2 * (diagbond + diagbond.T)
    h = h + sparse.kron(bond, i16, format="csr")

    if displacements is not None:
        a = _displacement_array(displacements)
        if np.any(a):
            c = (p.omega * a + p.j1 * (np.roll(a, -1) + np.roll(a, 1))
                 + p.j2 * np.roll(a, -2))
            for n in range(_SITES):
                h = h + c[n] * sparse.kron(f.boson_x[n], i16, format="csr")
                h = h + (2.0 * p.lam * a[n]) * sparse.kron(
                    sparse.identity(nb), f.spin_x[n], format="csr")
            shift = (p.omega * np.sum(a * a)
                     + 2.0 * p.j1 * np.sum(a * np.roll(a, -1))
                     + p.j2 * np.sum(a * np.roll(a, -2)))
            h = h + shift * sparse.identity(f.dim, format="csr")

    return OperatorMatrix(h.tocsr(), hermitian=True)


def parity_operator(f: FockSpace) -> OperatorMatrix:
    """Diagonal +-1 operator counting total excitations mod 2."""
    occ = f._boson_digits.sum(axis=1)
    pop = f._spin_bits.sum(axis=1)
    diag = np.repeat((-1.0) ** occ, 16) * np.tile((-1.0) ** pop, f.boson_dim)
    return OperatorMatrix(sparse.diags(diag, format="csr"),
                          hermitian=True, unitary=True, unitarity_defect=0.0)


def cyclic_shift_operator(f: FockSpace) -> OperatorMatrix:
    """Permutation rotating site content one step: C a_n^dag C^dag = a_{n+1}^dag."""
    nc = f.n_c
    b = np.arange(f.boson_dim)
    digits = [b // nc ** (3 - k) % nc for k in range(_SITES)]
    b_new = np.zeros_like(b)
    for k in range(_SITES):
        b_new += digits[(k - 1) % 4] * nc ** (3 - k)
    s = np.arange(16)
    bits = [(s >> (3 - k)) & 1 for k in range(_SITES)]
    s_new = np.zeros_like(s)
    for k in range(_SITES):
        s_new += bits[(k - 1) % 4] << (3 - k)
    perm = (b_new[:, None] * 16 + s_new[None, :]).ravel()
    c = sparse.csr_matrix(
        (np.ones(f.dim), (perm, np.arange(f.dim))), shape=(f.dim, f.dim))
    return OperatorMatrix(c, hermitian=False, unitary=True,
                          unitarity_defect=0.0)


def _coherent_tail(alpha: float, n_c: int) -> float:
    # weight of the coherent state |alpha| beyond the per-site cutoff
    x = alpha * alpha
    term = math.exp(-x)
    acc = term
    for k in range(1, n_c):
        term *= x / k
        acc += term
    return max(0.0, 1.0 - acc)


def displacement_operator(f: FockSpace, alpha) -> OperatorMatrix:
    """Product of per-mode exponentials exp(alpha_n (a_n - a_n^dag)).

    Real displacements only (ground solutions have B_n = 0).  The truncated
    generator is antisymmetric, so the matrix is orthogonal to machine
    precision regardless of alpha; faithfulness to the untruncated operator
    is what degrades, reported as ``truncation_loss`` (exact per-site
    coherent weight beyond the cutoff) with a warning above 1e-6.
    """
    a_vals = _displacement_array(alpha)
    aa = np.diag(np.sqrt(np.arange(1.0, f.n_c)), 1)
    gen0 = aa - aa.T
    block = None
    for n in range(_SITES):
        d = expm(a_vals[n] * gen0)
        block = d if block is None else np.kron(block, d)
    defect = float(np.abs(block.T @ block - np.eye(f.boson_dim)).max())
    keep = 1.0
    for v in a_vals:
        keep *= 1.0 - _coherent_tail(abs(v), f.n_c)
    loss = 1.0 - keep
    if loss > 1e-6:
        warnings.warn(
            f"displacement loses {loss:.3g} of the state weight to the "
            f"n_c={f.n_c} cutoff", UnitarityLossWarning, stacklevel=2)
    full = sparse.kron(sparse.csr_matrix(block), sparse.identity(16),
                       format="csr")
    return OperatorMatrix(full, hermitian=False, unitary=True,
                          unitarity_defect=defect, truncation_loss=loss)


def _bloch_mode(f: FockSpace, branch: MomentumBranch):
    # a_q = (1/2) sum_n e^{iqn} a_n on the boson block
    phase = np.exp(1j * branch.q * np.arange(_SITES))
    out = sum(0.5 * phase[n] * f.boson_lower[n] for n in range(_SITES))
    return out.tocsr()


def _squeeze_block(f: FockSpace, branch: MomentumBranch,
                   lam_q: float) -> np.ndarray:
    """exp[lam_q (a_q^dag a_-q^dag - a_q a_-q)] on the boson block.

    For q in {0, pi} the conjugate mode is the mode itself and this is the
    one-mode squeeze.  The generator is real despite the complex Bloch
    coefficients (the imaginary parts cancel under n <-> m symmetry).
    """
    aq = _bloch_mode(f, branch)
    amq = _bloch_mode(f, branch.conjugate)
    pair = (aq.conj().T @ amq.conj().T).toarray()
    gen = lam_q * (pair - pair.conj().T)
    imag_leak = float(np.abs(gen.imag).max()) if np.iscomplexobj(gen) else 0.0
    if imag_leak > 1e-12:
        raise AssertionError(
            f"squeeze generator unexpectedly complex (leak {imag_leak:.3g})")
    return expm(np.real(gen))


def momentum_squeeze_operator(f: FockSpace, branch: MomentumBranch,
                              lam_q: float) -> OperatorMatrix:
    """Squeeze of the (q, -q) Bloch pair as a full-space operator.

    The pi/2 and 3pi/2 branches share one generator, so the product over
    all four momenta squeezes that pair with 2 lam_q, as it should.
    """
    if not math.isfinite(lam_q):
        raise ValueError(f"lam_q must be finite, got {lam_q}")
    block = _squeeze_block(f, branch, lam_q)
    defect = float(np.abs(block.T @ block - np.eye(f.boson_dim)).max())
    if defect > 1e-6:
        warnings.warn(
            f"squeeze at q={branch.label} deviates from orthogonality by "
            f"{defect:.3g}", UnitarityLossWarning, stacklevel=2)
    full = sparse.kron(sparse.csr_matrix(block), sparse.identity(16),
                       format="csr")
    return OperatorMatrix(full, hermitian=False, unitary=True,
                          unitarity_defect=defect)


# ---------------------------------------------------------------------------
# Eigensolvers
# ---------------------------------------------------------------------------

_DENSE_CUTOFF = 5000


def ground_state(m, k: int = 1, dense_cutoff: int = _DENSE_CUTOFF) -> SpectralResult:
    """k lowest eigenpairs: dense solver up to ``dense_cutoff``, Lanczos above.

    Residuals are ||M v - E v|| / ||M||_inf per pair.
    """
    mat = _as_matrix(m)
    if not sparse.issparse(mat):
        mat = sparse.csr_matrix(np.asarray(mat))
    dim = mat.shape[0]
    if k < 1 or k >= dim:
        raise ValueError(f"k = {k} outside [1, dim)")
    if dim <= dense_cutoff:
        vals, vecs = eigh(mat.toarray(), subset_by_index=(0, k - 1))
        method = "dense"
    else:
        # clustered low end (near-degenerate doublets): give Lanczos room
        ncv = min(dim, max(4 * k + 1, 40))
        try:
            vals, vecs = eigsh(mat.tocsc(), k=k, which="SA", ncv=ncv,
                               maxiter=100 * dim)
        except ArpackNoConvergence as exc:
            raise NoConvergence(
                "Lanczos did not converge",
                diagnostics={"converged": len(exc.eigenvalues),
                             "requested": k, "dim": dim}) from exc
        order = np.argsort(vals)
        vals, vecs = vals[order], vecs[:, order]
        method = "lanczos"
    scale = float(np.abs(mat).sum(axis=1).max())
    res = np.array([
        float(np.linalg.norm(mat @ vecs[:, j] - vals[j] * vecs[:, j])) / scale
        for j in range(k)])
    return SpectralResult(energies=np.asarray(vals, dtype=float),
                          vectors=vecs, residuals=res, method=method)


# ---------------------------------------------------------------------------
# Mean-field states and fidelity
# ---------------------------------------------------------------------------

def _spin_product(f: FockSpace, gammas: np.ndarray) -> np.ndarray:
    # per-site qubit ground vectors (cos g, -sin g) in (down, up) order
    out = np.array([1.0])
    for gm in gammas:
        out = np.kron(out, np.array([math.cos(gm), -math.sin(gm)]))
    return out


def meanfield_state(p: ModelParams, g: float, branch: MomentumBranch | None,
                    f: FockSpace, frame: str = "displaced",
                    config: Displacements | None = None) -> np.ndarray:
    """Variational ground state: squeezed vacuum, tilted qubits, and (in
    the lab frame) the displacement.

    ``branch=None`` or a coupling below the onset gives the normal-phase
    state with squeeze parameters at g; a condensed branch uses the
    renormalized g' and the tilt angles gamma_n of its first displacement
    configuration (pass ``config`` to pick another member of the family).
    In the displaced frame the displacement is left off, which is the frame
    of ``build_hamiltonian(..., displacements=A)``.  Exactly at the onset
    the squeeze parameter of the soft branch diverges and this raises.
    """
    if frame not in ("displaced", "lab"):
        raise ValueError(f"frame must be 'displaced' or 'lab', got {frame!r}")
    a_vec = np.zeros(_SITES)
    g_eff = g
    if branch is not None and srp_amplitude(p, g, branch) > 0.0:
        if config is None:
            config = srp_displacements(p, g, branch)[0]
        a_vec = np.asarray(config.amplitudes, dtype=float)
        g_eff = renormalized_params(p, g, branch)[0]

    block = None
    for b in MomentumBranch:
        s = _squeeze_block(f, b, squeeze_parameter(p, g_eff, b))
        block = s if block is None else block @ s
    vac = np.zeros(f.boson_dim)
    vac[0] = 1.0
    v_b = block @ vac

    lam = g * math.sqrt(p.Omega * p.omega)
    omega_n = np.sqrt(p.Omega ** 2 + 16.0 * lam * lam * a_vec * a_vec)
    gammas = np.arctan(4.0 * lam * a_vec / (p.Omega + omega_n))
    state = np.kron(v_b, _spin_product(f, gammas))

    if frame == "lab" and np.any(a_vec):
        d = displacement_operator(f, a_vec)
        state = d.matrix.T @ state

    nrm = float(np.linalg.norm(state))
    if abs(nrm - 1.0) > 1e-12:
        warnings.warn(
            f"mean-field state norm off by {abs(nrm - 1.0):.3g} "
            "(truncation)", UnitarityLossWarning, stacklevel=2)
    return state / nrm


def fidelity(psi: np.ndarray, subspace) -> float:
    """Squared projection of psi onto the span of the given vectors."""
    vecs = [np.asarray(v) for v in subspace]
    if not vecs:
        raise EmptySubspace("fidelity needs at least one reference vector")
    basis = np.linalg.qr(np.column_stack(vecs))[0]
    v = np.asarray(psi)
    v = v / np.linalg.norm(v)
    c = basis.conj().T @ v
    return float(np.real(np.vdot(c, c)))


def variational_energy(state: np.ndarray, m) -> float:
    """Rayleigh quotient of a state; upper bound on the ground energy."""
    mat = _as_matrix(m)
    v = np.asarray(state)
    return float(np.real(np.vdot(v, mat @ v)) / np.real(np.vdot(v, v)))


def observables(state: np.ndarray, f: FockSpace) -> dict:
    """Per-site <a_n>, <a_n^dag a_n>, <sigma_n^z>, and the pattern
    diagnostics (mean |<a_n>| and the normalized n, n+2 correlation)."""
    v = np.asarray(state)
    v = v / np.linalg.norm(v)
    alphas = np.empty(_SITES, dtype=complex)
    numbers = np.empty(_SITES)
    sz = np.empty(_SITES)
    num_diag = f._boson_digits
    sz_diag = 2.0 * f._spin_bits - 1.0
    prob = np.abs(v) ** 2
    prob_bs = prob.reshape(f.boson_dim, 16)
    pb = prob_bs.sum(axis=1)
    ps = prob_bs.sum(axis=0)
    for n in range(_SITES):
        alphas[n] = np.vdot(v, f.lower(n) @ v)
        numbers[n] = float(num_diag[:, n] @ pb)
        sz[n] = float(sz_diag[:, n] @ ps)
    re = alphas.real
    abs_alpha = float(np.mean(np.abs(alphas)))
    corr = float(np.mean(re * np.roll(re, -2)) / abs_alpha) \
        if abs_alpha > 1e-12 else 0.0
    return {
        "alpha": alphas,
        "number": numbers,
        "sigma_z": sz,
        "abs_alpha": abs_alpha,
        "corr": corr,
    }


# ---------------------------------------------------------------------------
# High-level cross-checks (CLI backends)
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class EdPoint:
    """Displaced-frame ED result at one coupling."""

    g: float
    branch: MomentumBranch | None
    energy: float
    abs_alpha: float
    corr: float
    site_alphas: tuple[float, float, float, float]


def _analytic_displacements(p: ModelParams, g: float) -> tuple[
        MomentumBranch | None, np.ndarray]:
    try:
        b, _ = dominant_branch(p)
    except NoCriticalPoint:
        return None, np.zeros(_SITES)
    if srp_amplitude(p, g, b) == 0.0:
        return None, np.zeros(_SITES)
    return b, np.asarray(srp_displacements(p, g, b)[0].amplitudes)


def ed_ground_point(p: ModelParams, g: float, f: FockSpace,
                    k: int = 1) -> EdPoint:
    """Ground state of the displaced Hamiltonian at the dominant branch's
    analytic shift; physical <a_n> is the shift plus the residual.

    Below every onset the shift is zero and this is plain lab-frame ED.
    """
    branch, a_vec = _analytic_displacements(p, g)
    h = build_hamiltonian(p.with_coupling(g), f, displacements=a_vec)
    r = ground_state(h, k=k)
    obs = observables(r.vectors[:, 0], f)
    site = a_vec + obs["alpha"].real
    abs_alpha = float(np.mean(np.abs(site)))
    corr = float(np.mean(site * np.roll(site, -2)) / abs_alpha) \
        if abs_alpha > 1e-12 else 0.0
    return EdPoint(g=g, branch=branch, energy=float(r.energies[0]),
                   abs_alpha=abs_alpha, corr=corr,
                   site_alphas=tuple(site))


def ed_compare_point(p: ModelParams, g: float, f: FockSpace) -> dict:
    """Displaced-frame ED against the analytic solution at one coupling,
    from a single diagonalization: energies, order parameters, infidelity.
    """
    branch, a_vec = _analytic_displacements(p, g)
    h = build_hamiltonian(p.with_coupling(g), f, displacements=a_vec)
    r = ground_state(h, k=1)
    v = r.vectors[:, 0]
    obs = observables(v, f)
    site = a_vec + obs["alpha"].real
    psi = meanfield_state(p, g, branch, f)
    if branch is None:
        e_an = np_ground_energy(p, g)
        a_an = 0.0
    else:
        e_an = srp_ground_energy(p, g, branch)
        a_an = srp_amplitude(p, g, branch)
    return {
        "g": g,
        "branch": branch,
        "energy_ed": float(r.energies[0]),
        "energy_analytic": float(e_an),
        "abs_alpha_ed": float(np.mean(np.abs(site))),
        "abs_alpha_analytic": float(a_an),
        "infidelity": 1.0 - fidelity(psi, [v]),
    }


def meanfield_infidelity(p: ModelParams, g: float, f: FockSpace,
                         frame: str = "displaced",
                         k: int | None = None) -> float:
    """1 - fidelity of the variational state against the span of the k
    lowest ED states.

    Default k: the analytic ground degeneracy in the lab frame (finite
    systems form symmetric cat combinations), 1 in the displaced frame
    (the displaced Hamiltonian breaks the symmetry explicitly).
    """
    branch, a_vec = _analytic_displacements(p, g)
    if k is None:
        if frame == "lab":
            k = 1 if branch is None else \
                (4 if branch is MomentumBranch.Q_PI_2 else 2)
        else:
            k = 1
    disp = a_vec if frame == "displaced" else None
    h = build_hamiltonian(p.with_coupling(g), f, displacements=disp)
    r = ground_state(h, k=k)
    psi = meanfield_state(p, g, branch, f, frame=frame)
    return 1.0 - fidelity(psi, [r.vectors[:, j] for j in range(k)])
