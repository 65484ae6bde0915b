"""Tests for the necessary-condition membership batteries."""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.integrate import quad

from tailcorr.errors import DomainError
from tailcorr.membership import (
    DEFAULT_GRID,
    LatticeProbeWitness,
    MembershipReport,
    MomentMatrixWitness,
    Verdict,
    classify,
    spectral_density,
    test_completely_monotone,
    test_H2_condition,
    test_H3_condition,
    test_positive_definite,
    test_T1_MMMr,
    test_Tinfty_MMMr,
    test_triangle,
)
from tailcorr.models import h_d
from tailcorr.operators import chi_d_radial, phi_d_radial
from tailcorr.radial import (
    erfc_sqrt,
    exponential_decay,
    generalized_cauchy,
    powered_erfc,
    powered_exponential,
    radial_from_callable,
    tent,
    truncated_power,
    whittle_matern,
)


def cubic_cutoff():
    """max(0, 1 - r^3): decays too slowly near 0 to satisfy the triangle
    inequality, hence not a TCF despite being continuous and decreasing."""
    return radial_from_callable(
        "cubic_cutoff", lambda r: max(0.0, 1.0 - r**3),
        kinks=(1.0,), support_bound=1.0)


def h3_radial():
    """The unit-ball overlap TCF h_3 wrapped for the batteries."""
    return radial_from_callable(
        "h_3", lambda t: h_d(t, 3), kinks=(1.0,), support_bound=1.0)


class TestVerdict:
    def test_status_values(self):
        assert Verdict("pass").passed
        assert Verdict("fail", witness=1.0).failed
        assert Verdict("inconclusive", reason="x").status == "inconclusive"

    def test_unknown_status_rejected(self):
        with pytest.raises(DomainError):
            Verdict("maybe")

    def test_fail_requires_witness(self):
        with pytest.raises(DomainError):
            Verdict("fail")

    def test_pass_is_not_fail(self):
        v = Verdict("pass")
        assert not v.failed


class TestT1:
    @pytest.mark.parametrize("chi", [erfc_sqrt(), tent(), exponential_decay()])
    def test_known_members_pass(self, chi):
        assert test_T1_MMMr(chi).passed

    def test_gaussian_fails_convexity(self):
        # e^{-t^2} is concave on [0, 1/sqrt(2)); the witness triple must
        # land inside that region.
        verdict = test_T1_MMMr(powered_exponential(2.0))
        assert verdict.failed
        a, mid, b, gap = verdict.witness
        assert 0 < a < mid < b < 1.0 / math.sqrt(2.0)
        assert gap > 1e-9

    def test_wrong_value_at_zero_fails(self):
        half = radial_from_callable("half_tent",
                                    lambda r: 0.5 * max(0.0, 1.0 - r))
        verdict = test_T1_MMMr(half)
        assert verdict.failed
        assert verdict.witness[0] == 0.0

    def test_value_above_one_fails(self):
        bumped = radial_from_callable(
            "bumped", lambda r: 1.0 / (1.0 + r) + 2.0 * r * math.exp(-r))
        verdict = test_T1_MMMr(bumped)
        assert verdict.failed
        assert verdict.witness[1] > 1.0

    def test_slow_decay_is_inconclusive(self):
        verdict = test_T1_MMMr(exponential_decay(30.0))
        assert verdict.status == "inconclusive"
        assert "decay" in verdict.reason

    def test_no_decay_fails(self):
        verdict = test_T1_MMMr(exponential_decay(200.0))
        assert verdict.failed

    def test_grid_must_be_increasing(self):
        with pytest.raises(DomainError):
            test_T1_MMMr(tent(), grid=[2.0, 1.0, 3.0])

    def test_grid_needs_three_points(self):
        with pytest.raises(DomainError):
            test_T1_MMMr(tent(), grid=[1.0, 2.0])


class TestCompletelyMonotone:
    @pytest.mark.parametrize("f,order", [
        (exponential_decay(), 8),
        (erfc_sqrt(), 6),
        (generalized_cauchy(1.0), 6),
        (whittle_matern(0.4), 4),
        (powered_exponential(0.7), 6),
    ])
    def test_known_members_pass(self, f, order):
        assert test_completely_monotone(f, order).passed

    def test_erfc_fails_at_order_three(self):
        # d^3/dr^3 erfc(r) = -(2/sqrt(pi)) (4r^2 - 2) e^{-r^2} tends to
        # +4/sqrt(pi) at 0, so the signed value (-1)^3 f''' is negative.
        verdict = test_completely_monotone(powered_erfc(1.0), 6)
        assert verdict.failed
        x, order, value = verdict.witness
        assert order == 3
        assert x < 0.7
        assert value == pytest.approx(4.0 / math.sqrt(math.pi), abs=1e-4)

    @pytest.mark.parametrize("alpha", [0.1, 0.2, 0.3, 0.4, 0.5,
                                       0.6, 0.7, 0.8, 0.9, 1.0])
    def test_powered_erfc_iff_alpha_below_half(self, alpha):
        verdict = test_completely_monotone(powered_erfc(alpha), 6)
        if alpha <= 0.5:
            assert verdict.passed
        else:
            assert verdict.failed

    def test_shallow_violation_caught_by_moment_matrices(self):
        # The first wrong-signed derivative of erfc(t^0.6) lies beyond
        # order 12, far out of reach of the derivative stage; the Hankel
        # stage refutes it through the moment-sequence criterion.
        verdict = test_completely_monotone(powered_erfc(0.6), 6)
        assert verdict.failed
        witness = verdict.witness
        assert isinstance(witness, MomentMatrixWitness)
        assert witness.eigmin < -1e-9
        assert witness.size == 15

    def test_compact_support_refuted_outright(self):
        verdict = test_completely_monotone(tent(), 4)
        assert verdict.failed
        assert verdict.witness == 1.0
        assert "compact support" in verdict.reason

    @pytest.mark.parametrize("order", [-1, 9])
    def test_order_out_of_range(self, order):
        with pytest.raises(DomainError):
            test_completely_monotone(exponential_decay(), order)

    @settings(max_examples=10, deadline=None)
    @given(alpha=st.floats(min_value=0.05, max_value=0.5))
    def test_never_refutes_true_members(self, alpha):
        assert test_completely_monotone(powered_erfc(alpha), 6).passed

    @settings(max_examples=10, deadline=None)
    @given(alpha=st.floats(min_value=0.6, max_value=1.0))
    def test_always_refutes_clear_nonmembers(self, alpha):
        # Resolution limit sits near alpha = 0.52; above 0.6 the batteries
        # must refute every time.
        assert test_completely_monotone(powered_erfc(alpha), 6).failed


class TestTinfty:
    @pytest.mark.parametrize("phi", [erfc_sqrt(), exponential_decay(),
                                     powered_erfc(1.0)])
    def test_known_members_pass(self, phi):
        assert test_Tinfty_MMMr(phi, 6).passed

    def test_tent_fails_by_compact_support(self):
        verdict = test_Tinfty_MMMr(tent(), 6)
        assert verdict.failed
        assert verdict.witness == 1.0

    def test_chi_3_fails_by_compact_support(self):
        assert test_Tinfty_MMMr(chi_d_radial(3), 6).failed

    def test_gaussian_fails_at_order_one(self):
        # -d/dr[e^{-r^2}](sqrt t) = 2 sqrt(t) e^{-t} increases near 0.
        verdict = test_Tinfty_MMMr(powered_exponential(2.0), 4)
        assert verdict.failed
        assert verdict.witness[1] == 1


class TestTriangle:
    def test_erfc_sqrt_passes(self):
        assert test_triangle(erfc_sqrt()).passed

    def test_closed_form_instance(self):
        # The s = t = 1 case of the inequality for erfc(sqrt(t)):
        # erf(sqrt(2)) <= 2 erf(1), i.e. 0.9545 <= 1.6854.
        assert math.erf(math.sqrt(2.0)) <= 2.0 * math.erf(1.0)

    def test_constant_one_passes(self):
        ones = radial_from_callable("one", lambda r: 1.0)
        assert test_triangle(ones).passed

    def test_cubic_cutoff_fails(self):
        verdict = test_triangle(cubic_cutoff())
        assert verdict.failed
        s, t, lag, value, bound = verdict.witness
        assert value > bound

    def test_explicit_pair(self):
        # eta(1) = 1 against eta(1/2) + eta(1/2) = 1/4.
        verdict = test_triangle(cubic_cutoff(), pairs=[(0.5, 0.5)])
        assert verdict.failed
        assert verdict.witness[2] == 1.0
        assert verdict.witness[3] == pytest.approx(1.0)
        assert verdict.witness[4] == pytest.approx(0.25)


class TestPositiveDefinite:
    def test_erfc_sqrt_passes(self):
        assert test_positive_definite(erfc_sqrt(), 3).passed

    def test_truncated_power_two_passes(self):
        assert test_positive_definite(truncated_power(2.0), 3).passed

    def test_truncated_power_three_halves_fails_with_certificate(self):
        verdict = test_positive_definite(truncated_power(1.5), 3)
        assert verdict.failed
        witness = verdict.witness
        assert isinstance(witness, LatticeProbeWitness)
        # The spectral density of (1-r)_+^{1.5} in d=3 dips negative on
        # roughly [7.7, 9.1]; the certified Rayleigh quotient is far below
        # any roundoff scale.
        assert 7.5 < witness.omega < 9.2
        assert witness.spectral_value < -1e-3
        assert witness.rayleigh < -1.0

    def test_truncated_power_below_fails_harder(self):
        verdict = test_positive_definite(truncated_power(1.2), 3)
        assert verdict.failed
        assert verdict.witness.rayleigh < -1.0

    def test_cubic_cutoff_fails_on_random_stage(self):
        verdict = test_positive_definite(cubic_cutoff(), 3)
        assert verdict.failed
        index, sites, eigmin = verdict.witness
        assert eigmin < -0.01
        assert sites.shape[1] == 3

    def test_collinear_gram_oracle(self):
        # Three collinear points 0, 1/2, 1 under the cubic cutoff give the
        # Gram matrix [[1, 7/8, 0], [7/8, 1, 7/8], [0, 7/8, 1]] whose
        # minimum eigenvalue is 1 - (7/8) sqrt(2): ladder configurations
        # expose triangle-type violations that cubes may miss.
        gram = np.array([[1.0, 0.875, 0.0],
                         [0.875, 1.0, 0.875],
                         [0.0, 0.875, 1.0]])
        eigmin = np.linalg.eigvalsh(gram)[0]
        assert eigmin == pytest.approx(1.0 - 0.875 * math.sqrt(2.0), abs=1e-12)
        assert eigmin < -0.23

    @pytest.mark.parametrize("chi,d", [
        (tent(), 1),
        (chi_d_radial(3), 3),
        (h3_radial(), 3),
    ])
    def test_compact_members_pass_both_stages(self, chi, d):
        assert test_positive_definite(chi, d).passed

    def test_seed_determinism(self):
        first = test_positive_definite(truncated_power(1.5), 3, seed=7)
        second = test_positive_definite(truncated_power(1.5), 3, seed=7)
        assert first.witness == second.witness

    def test_dimension_guard(self):
        with pytest.raises(DomainError):
            test_positive_definite(tent(), 0)

    def test_config_count_guard(self):
        with pytest.raises(DomainError):
            test_positive_definite(tent(), 1, n_configs=0)


class TestSpectralDensity:
    @pytest.mark.parametrize("omega", [0.5, 2.0, 2.0 * math.pi, 10.0])
    def test_tent_closed_form(self, omega):
        # int_0^1 (1-r) cos(w r) dr = (1 - cos w) / w^2.
        expected = 2.0 * (1.0 - math.cos(omega)) / omega**2
        assert spectral_density(tent(), 1, omega) == pytest.approx(
            expected, abs=1e-10)

    @pytest.mark.parametrize("omega", [5.0, 8.3, 12.0])
    def test_truncated_power_against_quad(self, omega):
        value = spectral_density(truncated_power(1.5), 3, omega)
        oracle, _ = quad(lambda r: r * (1.0 - r)**1.5 * math.sin(omega * r),
                         0.0, 1.0)
        assert value == pytest.approx(4.0 * math.pi / omega * oracle,
                                      rel=1e-8, abs=1e-12)

    def test_negative_dip_location(self):
        assert spectral_density(truncated_power(1.5), 3, 8.3) < -2e-3
        assert spectral_density(truncated_power(1.5), 3, 5.0) > 0.0

    def test_requires_compact_support(self):
        with pytest.raises(DomainError):
            spectral_density(erfc_sqrt(), 3, 1.0)

    def test_dimension_guard(self):
        with pytest.raises(DomainError):
            spectral_density(tent(), 4, 1.0)

    def test_omega_guard(self):
        with pytest.raises(DomainError):
            spectral_density(tent(), 1, 0.0)


class TestConvexityConditions:
    def test_chi_3_fails_h3_at_the_kink(self):
        # -chi_3'(sqrt t) drops from slope -3 to -17/4 at t = 1/4: a
        # concave kink the midpoint test must catch right there.
        verdict = test_H3_condition(chi_d_radial(3))
        assert verdict.failed
        assert 0.24 < verdict.witness[1] < 0.26

    @pytest.mark.parametrize("d", [2, 3, 4])
    def test_phi_d_fails_h3_at_one(self, d):
        verdict = test_H3_condition(phi_d_radial(d))
        assert verdict.failed
        assert 0.9 < verdict.witness[1] < 1.1

    @pytest.mark.parametrize("phi", [exponential_decay(), erfc_sqrt()])
    def test_smooth_members_pass_h3(self, phi):
        assert test_H3_condition(phi).passed

    def test_phi_2_fails_h2(self):
        verdict = test_H2_condition(phi_d_radial(2))
        assert verdict.failed
        assert 1.0 <= verdict.witness[1] < 1.15

    @pytest.mark.parametrize("phi", [exponential_decay(), erfc_sqrt()])
    def test_smooth_members_pass_h2(self, phi):
        assert test_H2_condition(phi).passed


class TestClassify:
    def test_erfc_sqrt_not_refuted_anywhere(self):
        report = classify(erfc_sqrt(), 3)
        assert set(report.verdicts) == {
            "T1_MMMr", "completely_monotone", "triangle",
            "positive_definite", "Tinfty_MMMr", "H3_condition",
            "br_family_rule", "mps_family_rule", "vbr_support_rule",
        }
        assert all(v.passed for v in report.verdicts.values())

    def test_h3_radial_class_pattern(self):
        report = classify(h3_radial(), 3)
        assert report.verdicts["completely_monotone"].failed
        assert report.verdicts["Tinfty_MMMr"].failed
        assert report.verdicts["vbr_support_rule"].failed
        for name in ("T1_MMMr", "triangle", "positive_definite",
                     "H3_condition"):
            assert report.verdicts[name].passed

    def test_powered_erfc_three_quarters(self):
        report = classify(powered_erfc(0.75), 1)
        assert report.verdicts["br_family_rule"].passed
        assert report.verdicts["mps_family_rule"].failed
        assert report.verdicts["completely_monotone"].failed

    def test_dimension_two_adds_h2(self):
        report = classify(exponential_decay(), 2)
        assert "H2_condition" in report.verdicts
        assert "H3_condition" not in report.verdicts
        assert all(v.passed for v in report.verdicts.values())

    def test_wrong_normalization_rejected(self):
        half = radial_from_callable("half", lambda r: 0.5 * math.exp(-r))
        with pytest.raises(DomainError):
            classify(half, 1)

    def test_summary_lists_witnesses(self):
        report = classify(h3_radial(), 3)
        text = report.summary()
        assert "pass = not refuted" in text
        assert "witness=" in text
        assert "completely_monotone" in text

    def test_report_is_reproducible(self):
        first = classify(powered_erfc(0.3), 1, seed=11)
        second = classify(powered_erfc(0.3), 1, seed=11)
        statuses = lambda rep: {k: v.status for k, v in rep.verdicts.items()}
        assert statuses(first) == statuses(second)
        assert first.grid == DEFAULT_GRID


class TestReportStructure:
    def test_report_carries_tolerances(self):
        report = classify(exponential_decay(), 1)
        assert report.tolerances["triangle"] == 1e-12
        assert report.tolerances["positive_definite"] == 1e-9

    def test_report_type(self):
        report = classify(exponential_decay(), 1)
        assert isinstance(report, MembershipReport)
