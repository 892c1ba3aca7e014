import math

import numpy as np
import pytest

from qespoly.oracle import (
    OracleConfig,
    OracleError,
    analytic_qes_levels,
    discretize,
    lowest_eigenvalues,
    match_levels,
    verify_duality_pair,
    verify_qes,
)
from qespoly.potentials import (
    dsg,
    dshg,
    free,
    harmonic,
    phi6_kink,
    phi6_kink_dual,
    sextic_minus,
    sextic_plus,
)
from qespoly.spectrum import qes_energies


class TestDiscretize:
    def test_free_laplacian_stencil(self):
        # 3 interior points, h = 1 (l = 2), V = 0
        disc = discretize(OracleConfig(free(), l=2.0, n=3))
        assert disc.h == pytest.approx(1.0)
        assert disc.diag == pytest.approx([2.0, 2.0, 2.0])
        assert disc.offdiag == pytest.approx([-1.0, -1.0])
        assert disc.corner is None

    def test_potential_enters_diagonal(self):
        disc = discretize(OracleConfig(harmonic(), l=2.0, n=3))
        assert disc.diag == pytest.approx(2.0 + disc.grid**2)

    def test_dshg_diagonal_at_origin(self):
        cfg = OracleConfig(dshg(3, 1.0), l=5.0, n=7999)
        disc = discretize(cfg)
        mid = 3999
        assert disc.grid[mid] == pytest.approx(0.0, abs=1e-12)
        assert disc.diag[mid] == pytest.approx(2.0 / disc.h**2 + 4.0)

    def test_circle_has_corner(self):
        disc = discretize(OracleConfig(dsg(3, 1.0), n=256))
        assert disc.corner == pytest.approx(-1.0 / disc.h**2)
        assert disc.h == pytest.approx(math.pi / 256)

    def test_domain_too_small_with_hint(self):
        cfg = OracleConfig(harmonic(), l=1.0, n=128, e_max_hint=100.0)
        with pytest.raises(OracleError, match="domain too small"):
            discretize(cfg)


class TestHarmonicSanity:
    def test_spectrum_and_richardson(self):
        res = lowest_eigenvalues(OracleConfig(harmonic(), l=10.0, n=4000, count=3))
        exact = [1.0, 3.0, 5.0]
        for k in range(3):
            assert res.eigenvalues[k] == pytest.approx(exact[k], abs=1e-4)
            ratio = (res.richardson[k] - exact[k]) / (res.eigenvalues[k] - exact[k])
            assert 3.6 <= ratio <= 4.4

    def test_extrapolation_improves(self):
        res = lowest_eigenvalues(OracleConfig(harmonic(), l=10.0, n=2000, count=1))
        assert abs(res.extrapolated[0] - 1.0) < abs(res.eigenvalues[0] - 1.0)

    def test_line_spectrum_simple_and_increasing(self):
        res = lowest_eigenvalues(OracleConfig(harmonic(), l=10.0, n=2000, count=6))
        diffs = np.diff(res.eigenvalues)
        assert np.all(diffs > 1e-6)


class TestVerifyQes:
    @pytest.mark.parametrize("m", [1, 3, 4])
    def test_line_match(self, m):
        res = verify_qes(m, 1.0, 1e-4, l=5.0, n=8000)
        assert len(res.matches) == m
        assert max(mt.deviation for mt in res.matches) < 1e-4

    def test_matched_levels_are_prefix_of_spectrum(self):
        # the M algebraic levels are the lowest M levels of the well
        res = verify_qes(3, 1.0, 1e-4)
        assert sorted(mt.oracle_index for mt in res.matches) == [0, 1, 2]

    def test_match_injectivity_guard(self):
        with pytest.raises(OracleError, match="ambiguous"):
            match_levels([1.0, 1.001], [1.0005, 25.0])


class TestCircleOracle:
    def test_dsg_m3_contains_dual_levels(self):
        res = lowest_eigenvalues(OracleConfig(dsg(3, 1.0), n=1024, count=6))
        root = math.sqrt(5.0)
        for want in (-8 - 2 * root, -6.0, -8 + 2 * root):
            assert min(abs(e - want) for e in res.eigenvalues) < 1e-4

    def test_dsg_m2_rejection(self):
        # no pi-periodic eigenvalue near the negated line levels
        res = lowest_eigenvalues(OracleConfig(dsg(2, 1.0), n=1024, count=8))
        for e_line in qes_energies(2, 1.0).energies():
            assert min(abs(e + e_line) for e in res.eigenvalues) > 1e-3

    def test_dsg_m2_doubled_circle_recovers_candidates(self):
        # the rejected candidates are antiperiodic: they live on the 2 pi cover
        res = lowest_eigenvalues(
            OracleConfig(dsg(2, 1.0), n=2048, count=10, period_multiplier=2))
        for e_line in qes_energies(2, 1.0).energies():
            assert min(abs(e + e_line) for e in res.eigenvalues) < 1e-4

    def test_lower_bound(self):
        m, zeta = 3, 1.0
        res = lowest_eigenvalues(OracleConfig(dsg(m, zeta), n=512, count=10))
        assert all(e >= -((m + zeta) ** 2) - 1e-6 for e in res.eigenvalues)


class TestKinkWells:
    def test_line_levels(self):
        spec = phi6_kink(0.5, 1.0)
        res = lowest_eigenvalues(OracleConfig(spec, l=12.0, n=6000, count=4))
        assert min(abs(e - 0.0) for e in res.eigenvalues) < 1e-4
        assert min(abs(e - 0.75) for e in res.eigenvalues) < 1e-4

    def test_dual_single_period_has_only_ground(self):
        spec = phi6_kink_dual(0.5, 1.0)
        res = lowest_eigenvalues(OracleConfig(spec, n=1024, count=6))
        assert min(abs(e + 0.75) for e in res.eigenvalues) < 1e-4
        assert min(abs(e) for e in res.eigenvalues) > 1e-3

    def test_dual_double_cover_has_both(self):
        spec = phi6_kink_dual(0.5, 1.0)
        res = lowest_eigenvalues(
            OracleConfig(spec, n=2048, count=6, period_multiplier=2))
        assert min(abs(e + 0.75) for e in res.eigenvalues) < 1e-4
        assert min(abs(e) for e in res.eigenvalues) < 1e-4

    def test_zero_mode_survives_generic_coupling(self):
        spec = phi6_kink_dual(0.3, 1.0)
        res = lowest_eigenvalues(
            OracleConfig(spec, n=2048, count=6, period_multiplier=2))
        assert min(abs(e) for e in res.eigenvalues) < 1e-4

    def test_bounded_well_domain_rule(self):
        # the 10x dominance rule can never hold for sup V = mu^2; the tail
        # criterion accepts a wide enough box instead
        spec = phi6_kink(0.5, 1.0)
        res = lowest_eigenvalues(OracleConfig(spec, l=12.0, n=4000, count=3))
        assert len(res.eigenvalues) == 3


class TestDualityPairs:
    def test_dshg_dsg_m3(self):
        rep = verify_duality_pair(dshg(3, 1.0), dsg(3, 1.0), 1e-4)
        assert not rep.rejected
        assert rep.pairs == ((0, 2), (1, 1), (2, 0))

    def test_sextic_m1(self):
        rep = verify_duality_pair(sextic_plus(1), sextic_minus(1), 1e-3)
        assert not rep.rejected
        assert rep.source == pytest.approx([3.0])
        assert rep.dual == pytest.approx([-3.0])

    def test_sextic_m2_reversal(self):
        rep = verify_duality_pair(sextic_plus(2), sextic_minus(2), 1e-3)
        assert not rep.rejected
        root = 2 * math.sqrt(3.0)
        assert rep.source == pytest.approx([3 - root, 3 + root], rel=1e-9)
        assert rep.dual == pytest.approx([-3 - root, -3 + root], rel=1e-9)

    def test_kink_pair(self):
        rep = verify_duality_pair(phi6_kink(0.5, 1.0), phi6_kink_dual(0.5, 1.0), 1e-3)
        assert not rep.rejected
        assert rep.source == pytest.approx([0.0, 0.75])
        assert rep.dual == pytest.approx([-0.75, 0.0])


class TestAnalyticLevels:
    def test_dispatch(self):
        assert analytic_qes_levels(dshg(3, 1.0)) == pytest.approx(
            qes_energies(3, 1.0).energies())
        assert analytic_qes_levels(sextic_minus(1)) == pytest.approx([-3.0])
        assert analytic_qes_levels(phi6_kink(0.3, 1.0)) == pytest.approx([0.0])
        assert analytic_qes_levels(phi6_kink(0.5, 2.0)) == pytest.approx([0.0, 3.0])
