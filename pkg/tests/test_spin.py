"""Large-spin surface and its agreement with the condensate branches."""

from __future__ import annotations

import math

import numpy as np
import pytest

from rabi_square.core import ModelParams, MomentumBranch
from rabi_square.errors import DomainError
from rabi_square.spinmap import (
    compare_to_displacements,
    minimize_spin_energy,
    spin_branch_solution,
    spin_energy,
)

B0, B1, B2 = MomentumBranch.Q0, MomentumBranch.Q_PI_2, MomentumBranch.Q_PI


class TestSpinEnergy:
    def test_flat_configuration(self, params_a):
        # X = Y = 0 on every site leaves -sqrt(1) per site
        assert spin_energy(params_a, 0.6, [0.0] * 4, [0.0] * 4) == -4.0

    def test_off_sphere_rejected(self, params_a):
        with pytest.raises(DomainError):
            spin_energy(params_a, 0.6, [0.9] * 4, [0.9] * 4)

    def test_hopping_term_signs(self, params_a):
        # staggered X lowers the j1 term, uniform X raises it
        x = 0.5
        e_stag = spin_energy(params_a, 0.0, [x, -x, x, -x], [0.0] * 4)
        e_unif = spin_energy(params_a, 0.0, [x, x, x, x], [0.0] * 4)
        assert e_stag < e_unif
        # difference is (j1/omega) (4 - (-4)) x^2 = 0.1 at j1 = 0.05
        assert e_unif - e_stag == pytest.approx(8 * 0.05 * x * x, rel=1e-12)


class TestBranchSolution:
    def test_frozen_point(self, params_a):
        # K = 4 g^2 - 4 gc^2 + 1 = 1.44 - 0.92 + 1 = 1.52 at q = pi,
        # X = sqrt(1 - 1/K^2)
        sb = spin_branch_solution(params_a, 0.6, B2)
        assert sb.x == pytest.approx(math.sqrt(1 - 1 / 1.52 ** 2), rel=1e-13)
        assert sb.x == pytest.approx(0.7531098959, abs=1e-9)
        assert tuple(np.sign(sb.tilts)) == (1, -1, 1, -1)

    def test_paired_tilt_pattern(self, params_a):
        sb = spin_branch_solution(params_a, 0.6, B1)
        assert sb.x == pytest.approx(math.sqrt(1 - 1 / 1.46 ** 2), rel=1e-13)
        assert tuple(np.sign(sb.tilts)) == (1, 1, -1, -1)

    def test_onset_matches_boson_onset(self):
        # j1 = j2 = 0: every branch turns on at g = 1/2
        p = ModelParams.from_g(0.0, 50.0, 0.0, 0.0)
        for b in (B0, B1, B2):
            below = spin_branch_solution(p, 0.499, b)
            above = spin_branch_solution(p, 0.501, b)
            assert below.below_critical and below.x == 0.0
            assert not above.below_critical and above.x > 0.0


class TestMinimizer:
    def test_reproducible(self, params_a):
        r1 = minimize_spin_energy(params_a, 0.6, n_starts=8, seed=3)
        r2 = minimize_spin_energy(params_a, 0.6, n_starts=8, seed=3)
        assert r1[0] == r2[0]
        assert np.array_equal(r1[1], r2[1])

    def test_transverse_component_vanishes(self, params_a):
        _, _, y = minimize_spin_energy(params_a, 0.6, n_starts=16, seed=0)
        assert np.abs(y).max() < 1e-5


class TestComparison:
    def test_reference_points(self, params_a, params_b):
        for p, want in ((params_a, B2), (params_b, B1)):
            rep = compare_to_displacements(p, 0.6, seed=0)
            assert rep.spin_branch is want
            assert rep.boson_branch is want
            assert rep.delta <= 1e-8
            assert rep.pattern_match
            assert rep.amplitude_ratio is not None

    def test_flat_below_onset(self, params_a):
        rep = compare_to_displacements(params_a, 0.40, seed=0)
        assert rep.delta <= 1e-8
        assert rep.pattern_match
        assert rep.amplitude_ratio is None

    def test_decoupled_degenerate_corner(self):
        # no hopping: any sign assignment is a ground state, only the
        # magnitude is meaningful
        p = ModelParams.from_g(0.0, 50.0, 0.0, 0.0)
        rep = compare_to_displacements(p, 0.6, seed=0)
        assert rep.delta <= 1e-8
        assert rep.pattern_match

    def test_tie_diagonal(self):
        p = ModelParams.from_g(0.0, 50.0, 0.05, 0.05)
        rep = compare_to_displacements(p, 0.6, seed=0)
        assert rep.delta <= 1e-8
        assert rep.pattern_match

    def test_amplitude_ratio_consistent(self, params_a):
        # diagnostic field must reproduce the two closed forms it divides
        from rabi_square.meanfield import srp_amplitude
        rep = compare_to_displacements(params_a, 0.7, seed=0)
        a = srp_amplitude(params_a, 0.7, B2)
        x = spin_branch_solution(params_a, 0.7, B2).x
        assert rep.amplitude_ratio == pytest.approx(a * a / (x * x), rel=1e-12)
        # boson displacement is the spin tilt amplified by the condensate
        assert rep.amplitude_ratio > 1.0
