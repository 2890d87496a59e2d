"""Exact diagonalization layer: basis, operators, symmetries, states."""

from __future__ import annotations

import math
import warnings

import numpy as np
import pytest
from scipy import sparse

from rabi_square.core import (
    ModelParams,
    MomentumBranch,
    np_excitation_energy,
    squeeze_parameter,
)
from rabi_square.errors import (
    DimensionOverflow,
    EmptySubspace,
    UnitarityLossWarning,
)
from rabi_square.fock import (
    FockSpace,
    build_hamiltonian,
    cyclic_shift_operator,
    displacement_operator,
    ed_compare_point,
    ed_ground_point,
    fidelity,
    ground_state,
    meanfield_infidelity,
    meanfield_state,
    momentum_squeeze_operator,
    observables,
    parity_operator,
    variational_energy,
)
from rabi_square.meanfield import srp_amplitude, srp_displacements

B0, B1, B2, B3 = (MomentumBranch.Q0, MomentumBranch.Q_PI_2,
                  MomentumBranch.Q_PI, MomentumBranch.Q_3PI_2)


def single_site_rabi_energy(omega, Omega, lam, n_c):
    # independent oracle: one cavity + one qubit, dense 2 n_c problem
    a = np.diag(np.sqrt(np.arange(1, n_c)), k=1)
    n = np.diag(np.arange(n_c, dtype=float))
    sx = np.array([[0.0, 1.0], [1.0, 0.0]])
    sz = np.diag([-1.0, 1.0])
    h = (omega * np.kron(n, np.eye(2)) + 0.5 * Omega * np.kron(np.eye(n_c), sz)
         + lam * np.kron(a + a.T, sx))
    return np.linalg.eigvalsh(h)[0]


class TestFockSpace:
    def test_dimensions(self, fock3, fock5):
        assert fock3.boson_dim == 81 and fock3.dim == 1296
        assert fock5.boson_dim == 625 and fock5.dim == 10000

    def test_vacuum_is_index_zero(self, fock3):
        assert fock3.index_of((0, 0, 0, 0), (0, 0, 0, 0)) == 0

    def test_index_roundtrip(self, fock3):
        for idx in (0, 1, 17, 555, 1295):
            ns, ss = fock3.occupations(idx)
            assert fock3.index_of(ns, ss) == idx

    def test_ordering_cavity_major(self, fock3):
        # one photon on site 3 sits 16 basis states after the vacuum
        assert fock3.index_of((0, 0, 0, 1), (0, 0, 0, 0)) == 16
        # spin bits are the fast axis, site 3 fastest
        assert fock3.index_of((0, 0, 0, 0), (0, 0, 0, 1)) == 1

    def test_rejects_tiny_cutoff(self):
        with pytest.raises(ValueError):
            FockSpace(1)

    def test_memory_cap(self):
        f = FockSpace(12)   # 331776 states, over the default cap
        p = ModelParams.from_g(0.3, 50.0, 0.05, 0.02)
        with pytest.raises(DimensionOverflow):
            build_hamiltonian(p, f)

    def test_lowering_matrix_elements(self, fock3):
        a0 = fock3.lower(0)
        ket = fock3.index_of((2, 0, 0, 0), (0, 0, 0, 0))
        bra = fock3.index_of((1, 0, 0, 0), (0, 0, 0, 0))
        assert a0[bra, ket] == pytest.approx(math.sqrt(2.0))
        assert a0[:, 0].nnz == 0


class TestHamiltonian:
    def test_hermitian(self, params_a, fock3):
        h = build_hamiltonian(params_a.with_coupling(0.5), fock3)
        assert h.hermitian and h.hermiticity_defect() == 0.0
        assert h.dim == 1296

    def test_decoupled_ground_energy(self, fock3):
        # lambda = j1 = j2 = 0: four bare qubits
        p = ModelParams(Omega=50.0, lam=0.0, j1=0.0, j2=0.0)
        r = ground_state(build_hamiltonian(p, fock3))
        assert r.energies[0] == pytest.approx(-100.0, abs=1e-12)

    def test_four_independent_rabi_sites(self, fock3):
        # no hopping: energy is four copies of the single-site problem,
        # which a dense two-level-plus-cavity build gives independently
        p = ModelParams(Omega=50.0, lam=2.0, j1=0.0, j2=0.0)
        r = ground_state(build_hamiltonian(p, fock3))
        want = 4.0 * single_site_rabi_energy(1.0, 50.0, 2.0, 3)
        assert r.energies[0] == pytest.approx(want, rel=1e-12)

    def test_displaced_at_zero_shift_is_identity(self, params_a, fock3):
        p = params_a.with_coupling(0.5)
        h0 = build_hamiltonian(p, fock3)
        h1 = build_hamiltonian(p, fock3, displacements=np.zeros(4))
        assert (h0.matrix != h1.matrix).nnz == 0

    def test_displaced_terms_by_hand(self, params_a):
        # exact substitution a_n -> a_n + A_n adds c_n (a + a^dag),
        # 2 lam A_n sigma^x and a scalar; rebuild those pieces from the
        # operator primitives and compare matrices
        f = FockSpace(2)
        p = params_a.with_coupling(0.5)
        a_vec = np.array([0.3, -0.2, 0.1, 0.4])
        lam = p.lam
        h0 = build_hamiltonian(p, f).matrix
        extra = sparse.csr_matrix((f.dim, f.dim))
        nb = np.roll(a_vec, -1) + np.roll(a_vec, 1)
        diag = np.roll(a_vec, -2)
        shift = (np.sum(a_vec ** 2) + 2 * 0.05 * np.sum(a_vec * np.roll(a_vec, -1))
                 + 0.02 * np.sum(a_vec * diag))
        for n in range(4):
            c_n = a_vec[n] + 0.05 * nb[n] + 0.02 * diag[n]
            an = f.lower(n)
            extra = extra + c_n * (an + an.T) + 2 * lam * a_vec[n] * f.sigma_x(n)
        extra = extra + shift * sparse.identity(f.dim)
        h1 = build_hamiltonian(p, f, displacements=a_vec).matrix
        assert abs(h1 - (h0 + extra)).max() < 1e-12


class TestSymmetries:
    def test_parity_commutes(self, params_a, fock3):
        h = build_hamiltonian(params_a.with_coupling(0.5), fock3).matrix
        pop = parity_operator(fock3).matrix
        assert abs(h @ pop - pop @ h).max() < 1e-13
        assert set(np.unique(pop.diagonal())) == {-1.0, 1.0}
        assert (pop @ pop != sparse.identity(fock3.dim, format="csr")).nnz == 0

    def test_shift_commutes(self, params_a, fock3):
        h = build_hamiltonian(params_a.with_coupling(0.5), fock3).matrix
        c = cyclic_shift_operator(fock3).matrix
        assert abs(h @ c - c @ h).max() < 1e-13

    def test_shift_fourth_power_is_identity(self, fock3):
        c = cyclic_shift_operator(fock3).matrix
        c4 = c @ c @ c @ c
        assert (c4 != sparse.identity(fock3.dim, format="csr")).nnz == 0

    def test_shift_moves_modes(self, fock3):
        # C a_0 C^T = a_1 as matrices
        c = cyclic_shift_operator(fock3).matrix
        moved = c @ fock3.lower(0) @ c.T
        assert abs(moved - fock3.lower(1)).max() == 0.0

    def test_ground_state_parity_even(self, params_a, fock3):
        h = build_hamiltonian(params_a.with_coupling(0.3), fock3)
        r = ground_state(h, k=2)
        pop = parity_operator(fock3).matrix
        v0, v1 = r.vectors[:, 0], r.vectors[:, 1]
        assert v0 @ (pop @ v0) == pytest.approx(1.0, abs=1e-10)
        assert v1 @ (pop @ v1) == pytest.approx(-1.0, abs=1e-10)


class TestGroundStateSolver:
    def test_dense_matches_lanczos(self, params_a, fock3):
        h = build_hamiltonian(params_a.with_coupling(0.5), fock3)
        dense = ground_state(h, k=3)                      # 1296 <= cutoff
        kry = ground_state(h, k=3, dense_cutoff=100)
        assert dense.method == "dense" and kry.method == "lanczos"
        assert dense.energies == pytest.approx(kry.energies, abs=1e-9)

    def test_residuals_small(self, params_a, fock5):
        h = build_hamiltonian(params_a.with_coupling(0.5), fock5)
        r = ground_state(h, k=1)
        assert r.residuals[0] < 1e-9

    def test_energies_sorted(self, params_a, fock3):
        h = build_hamiltonian(params_a.with_coupling(0.4), fock3)
        r = ground_state(h, k=4)
        assert np.all(np.diff(r.energies) >= 0)


class TestDisplacementOperator:
    def test_coherent_expectation_sign(self, params_a):
        # D^dag |0> is the +alpha coherent state in this convention
        f = FockSpace(6)
        alpha = np.array([0.2, -0.15, 0.1, 0.0])
        d = displacement_operator(f, alpha)
        vac = np.zeros(f.dim)
        vac[0] = 1.0
        psi = d.matrix.T @ vac
        for n in range(4):
            got = psi @ (f.lower(n) @ psi)
            assert got == pytest.approx(alpha[n], abs=1e-7)

    def test_truncated_matrix_still_orthogonal(self):
        f = FockSpace(4)
        d = displacement_operator(f, np.array([0.2, 0.0, 0.1, -0.15]))
        assert d.unitary and d.unitarity_defect < 1e-12

    def test_truncation_loss_matches_tail_formula(self):
        f = FockSpace(4)
        alpha = np.array([0.2, 0.0, 0.1, -0.15])
        d = displacement_operator(f, alpha)
        keep = 1.0
        for a in alpha:
            a2 = a * a
            keep *= math.exp(-a2) * sum(a2 ** k / math.factorial(k)
                                        for k in range(4))
        assert d.truncation_loss == pytest.approx(1.0 - keep, rel=1e-10)

    def test_warns_when_tail_is_heavy(self):
        f = FockSpace(3)
        with pytest.warns(UnitarityLossWarning):
            displacement_operator(f, np.array([1.5, 0.0, 0.0, 0.0]))


class TestSqueezeOperator:
    def test_uniform_mode_photon_number(self, params_a):
        # single self-conjugate mode: <N> = sinh^2(2 z)
        f = FockSpace(5)
        z = squeeze_parameter(params_a, 0.3, B0)
        s = momentum_squeeze_operator(f, B0, z)
        vac = np.zeros(f.dim)
        vac[0] = 1.0
        psi = s.matrix @ vac
        n_tot = sum(psi @ (f.lower(n).T @ (f.lower(n) @ psi))
                    for n in range(4))
        assert n_tot == pytest.approx(math.sinh(2 * z) ** 2, abs=1e-7)

    def test_paired_mode_photon_number(self, params_a):
        # q = pi/2 squeezes the (pi/2, 3pi/2) pair: <N> = 2 sinh^2 z
        f = FockSpace(5)
        z = squeeze_parameter(params_a, 0.3, B1)
        s = momentum_squeeze_operator(f, B1, z)
        vac = np.zeros(f.dim)
        vac[0] = 1.0
        psi = s.matrix @ vac
        n_tot = sum(psi @ (f.lower(n).T @ (f.lower(n) @ psi))
                    for n in range(4))
        assert n_tot == pytest.approx(2 * math.sinh(z) ** 2, abs=1e-7)

    def test_orthogonal(self, params_a):
        f = FockSpace(4)
        s = momentum_squeeze_operator(f, B2, 0.2)
        assert s.unitarity_defect < 1e-12


class TestMeanFieldState:
    def test_normalized(self, params_a, fock5):
        psi = meanfield_state(params_a, 0.3, None, fock5)
        assert np.linalg.norm(psi) == pytest.approx(1.0, abs=1e-12)

    def test_variational_bound(self, params_a, fock5):
        h = build_hamiltonian(params_a.with_coupling(0.3), fock5)
        r = ground_state(h)
        ev = variational_energy(meanfield_state(params_a, 0.3, None, fock5), h)
        assert ev >= r.energies[0] - 1e-10

    def test_np_infidelity_small(self, params_a, fock5):
        assert meanfield_infidelity(params_a, 0.35, fock5) < 0.05

    def test_frames_equal_in_normal_phase(self, params_a, fock5):
        i_d = meanfield_infidelity(params_a, 0.45, fock5, frame="displaced")
        i_l = meanfield_infidelity(params_a, 0.45, fock5, frame="lab")
        assert i_d == pytest.approx(i_l, abs=1e-12)

    def test_frames_agree_above_onset(self, params_a, fock5):
        # small condensate: lab projection on the finite-size doublet and
        # the displaced-frame overlap must tell the same story
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", UnitarityLossWarning)
            i_d = meanfield_infidelity(params_a, 0.481, fock5,
                                       frame="displaced")
            i_l = meanfield_infidelity(params_a, 0.481, fock5, frame="lab")
        assert abs(i_d - i_l) < 0.05

    def test_rejects_unknown_frame(self, params_a, fock5):
        with pytest.raises(ValueError):
            meanfield_state(params_a, 0.3, None, fock5, frame="rotating")

    def test_fidelity_empty_subspace(self, fock3):
        with pytest.raises(EmptySubspace):
            fidelity(np.ones(fock3.dim), [])


class TestEdPoints:
    def test_normal_phase_point(self, params_a, fock5):
        pt = ed_ground_point(params_a, 0.35, fock5)
        assert pt.branch is None
        assert pt.abs_alpha < 1e-8
        assert pt.energy == pytest.approx(-100.5558, abs=2e-3)

    def test_condensed_point_matches_analytic(self, params_a, fock5):
        pt = ed_ground_point(params_a, 0.6, fock5)
        assert pt.branch is B2
        a = srp_amplitude(params_a, 0.6, B2)
        assert pt.abs_alpha == pytest.approx(a, rel=0.05)
        assert tuple(np.sign(pt.site_alphas)) == (1, -1, 1, -1)

    def test_paired_point_corr_negative(self, params_b, fock5):
        pt = ed_ground_point(params_b, 0.6, fock5)
        assert pt.branch is B1
        assert pt.corr < 0

    def test_gap_matches_analytic(self, params_a, fock5):
        h = build_hamiltonian(params_a.with_coupling(0.3), fock5)
        r = ground_state(h, k=2)
        eps = min(np_excitation_energy(params_a, 0.3, b)
                  for b in MomentumBranch)
        assert r.energies[1] - r.energies[0] == pytest.approx(eps, rel=0.02)

    def test_compare_record(self, params_a, fock3):
        rec = ed_compare_point(params_a, 0.6, fock3)
        assert rec["branch"] is B2
        assert rec["energy_ed"] < rec["energy_analytic"] + 1.0
        assert 0.0 <= rec["infidelity"] <= 1.0

    def test_truncation_converges(self, params_a):
        es = [ed_ground_point(params_a, 0.5, FockSpace(nc)).energy
              for nc in (3, 4, 5)]
        assert es[0] > es[1] > es[2]
        assert es[0] - es[1] > es[1] - es[2]
