import json
import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from sspade import (
    AsymptoticForm,
    NestedRootApproximant,
    RootLevel,
    RootMixture,
    canonical_powers,
    make_series,
    match_parameters,
)
from sspade.errors import (
    EvaluationDomainError,
    MatchingFailureError,
    SeriesConstructionError,
    UnmatchableAsymptoteError,
)
from sspade.problems import ruina_dieterich as rd
from sspade.problems import thomas_fermi as tf
from sspade.problems import nls_vortex as nls
from conftest import assert_sigfigs


class TestCanonicalPowers:
    def test_two_levels_one_term(self):
        assert canonical_powers(2, 1, 0.0, [-3.0]) == pytest.approx([2.0, -1.5])

    def test_three_levels_one_term(self):
        assert canonical_powers(3, 1, 0.0, [-3.0]) == pytest.approx(
            [2.0, 1.5, -1.0])

    def test_three_levels_two_terms(self):
        assert canonical_powers(3, 2, 1.0, [2.0, 1.0]) == pytest.approx(
            [2.0, 1.0, 1.0 / 3.0])

    def test_term_surplus_rejected(self):
        with pytest.raises(UnmatchableAsymptoteError):
            canonical_powers(3, 3, 0.0, [-1.0, -2.0, -3.0])

    @settings(max_examples=100, deadline=None)
    @given(st.integers(min_value=2, max_value=8), st.data())
    def test_defining_identities_hold(self, k, data):
        p = data.draw(st.integers(min_value=1, max_value=k - 1))
        alpha = data.draw(st.floats(min_value=-3, max_value=3))
        gaps = data.draw(st.lists(
            st.floats(min_value=0.1, max_value=2.0), min_size=p - 1,
            max_size=p - 1))
        b1 = data.draw(st.floats(min_value=-4, max_value=4))
        betas = [b1]
        for g in gaps:
            betas.append(betas[-1] - g)
        n = canonical_powers(k, p, alpha, betas)
        for j in range(1, k - p + 1):
            assert n[j - 1] == pytest.approx((j + 1) / j, rel=1e-15)
        for j in range(k - p + 1, k):
            lhs = j * n[j - 1]
            rhs = j + 1 + betas[k - j] - betas[k - j - 1]
            assert lhs == pytest.approx(rhs, rel=1e-12, abs=1e-12)
        assert k * n[k - 1] == pytest.approx(betas[0] - alpha, rel=1e-12,
                                             abs=1e-12)


class TestMatchParameters:
    def test_two_level_screened_potential(self):
        root = tf.root_two_level()
        a1, a2 = root.levels
        assert_sigfigs(a1.amplitude, 0.443153, 5, "A1")
        assert_sigfigs(a2.amplitude, 0.0833333, 5, "A2")
        assert_sigfigs(a1.power, 0.727998, 5, "n1")
        assert a2.power == -2.0

    def test_three_level_screened_potential(self):
        root = tf.root_three_level()
        b1, b2, b3 = root.levels
        assert_sigfigs(b1.amplitude, 1.7764, 5, "B1")
        assert_sigfigs(b2.amplitude, 0.250555, 5, "B2")
        assert_sigfigs(b3.amplitude, 0.0363992, 5, "B3")
        assert_sigfigs(b1.power, 0.727998, 5, "n1")
        assert_sigfigs(b2.power, 0.818665, 5, "n2")
        assert b3.power == -1.5

    def test_single_level_closed_form(self):
        small = make_series(1, 0, 1, [1, 0.5])
        large = AsymptoticForm(((2.0, 0.5),))
        root = match_parameters([(1.0, None)], small, large)
        lv = root.levels[0]
        assert lv.power == pytest.approx(0.5, rel=1e-12)
        assert lv.amplitude == pytest.approx(4.0, rel=1e-10)

    def test_wrong_fixed_outer_power_rejected(self):
        small = make_series(1, 0, 1, [1, 0.5])
        large = AsymptoticForm(((2.0, 0.5),))
        with pytest.raises(UnmatchableAsymptoteError):
            match_parameters([(1.0, 2.0)], small, large)

    def test_more_terms_than_levels_rejected(self):
        small = make_series(1, 0, 1, [1, 0.5])
        large = AsymptoticForm(((2.0, 0.5), (1.0, 0.2)))
        with pytest.raises(UnmatchableAsymptoteError):
            match_parameters([(1.0, None)], small, large)

    def test_negative_leading_amplitude_rejected(self):
        small = make_series(1, 0, 1, [1, 0.5])
        large = AsymptoticForm(((-2.0, 0.5),))
        with pytest.raises(MatchingFailureError):
            match_parameters([(1.0, None)], small, large)


class TestEvaluate:
    def test_mixture_boundary_value(self):
        assert tf.irr_mixture().evaluate(0.0) == pytest.approx(1.0)

    def test_vortex_factor_direct_arithmetic(self):
        got = nls.irr_root().evaluate(1.0)
        want = 0.58319 / math.sqrt(1.0163972)   # independent arithmetic
        assert got == pytest.approx(want, rel=1e-12)
        assert want == pytest.approx(0.578467, abs=5e-7)

    def test_contact_point_vanishes(self):
        root = rd.irr_root()
        t_c = rd.critical_time()
        assert root.evaluate(t_c * (1 - 1e-15)) == pytest.approx(0.0, abs=1e-9)

    def test_beyond_contact_point_rejected(self):
        root = rd.irr_root()
        with pytest.raises(EvaluationDomainError) as err:
            root.evaluate(rd.critical_time() + 0.01)
        assert err.value.level == 1


class TestExpandSmall:
    def test_single_level_binomial(self):
        root = NestedRootApproximant(1.0, 0.0, (RootLevel(0.5, 1.0, 3.0),))
        got = root.expand_small(3, 1.0)
        assert got.raw_coeffs() == pytest.approx(
            [1, 1.5, 0.75, 0.125])   # (1 + x/2)^3

    def test_vortex_factor_binomial(self):
        a = nls.A_ROOT_REF
        got = nls.irr_root().expand_small(2, 2.0)
        assert got.alpha == 1.0
        want = [0.58319, 0.58319 * (-a / 2), 0.58319 * (3 * a * a / 8)]
        assert got.raw_coeffs() == pytest.approx(want, rel=1e-12)

    def test_half_grid_expansion_against_closed_form(self):
        root = tf.root_two_level()
        ser = root.expand_small(4, 0.5)
        for x in (1e-3, 1e-4):
            err = abs(ser.evaluate(x) - root.evaluate(x))
            # truncation after x^2 on the half grid: error scales ~ x^(5/2)
            assert err <= 5.0 * x ** 2.5

    def test_off_grid_exponent_rejected(self):
        root = tf.root_two_level()   # exponents 1 and 3/2
        from sspade.errors import GridMismatchError
        with pytest.raises(GridMismatchError):
            root.expand_small(3, 1.0)


class TestAsymptoticLarge:
    def test_two_level_screened_potential(self):
        form = tf.root_two_level().asymptotic_large(2)
        (b1, e1), (b2, e2) = form.terms
        assert b1 == pytest.approx(144.0, rel=1e-9)
        assert e1 == pytest.approx(-3.0, abs=1e-12)
        assert e2 == pytest.approx(-3.772, abs=1e-12)
        # the magnitude matches the calibration input; the approach side is
        # from below, hence the sign
        assert b2 == pytest.approx(-1911.02, rel=1e-9)

    def test_single_level(self):
        root = NestedRootApproximant(1.0, 0.0, (RootLevel(0.7, 1.0, 2.5),))
        form = root.asymptotic_large(1)
        assert form.terms[0][0] == pytest.approx(0.7 ** 2.5, rel=1e-12)
        assert form.terms[0][1] == pytest.approx(2.5)

    def test_three_terms_single_level(self):
        a, p = 0.7, 2.5
        root = NestedRootApproximant(1.0, 0.0, (RootLevel(a, 1.0, p),))
        form = root.asymptotic_large(3)
        want = [(a**p, p), (p * a**p / a, p - 1),
                (0.5 * p * (p - 1) * a**p / a**2, p - 2)]
        for (gb, ge), (wb, we) in zip(form.terms, want):
            assert gb == pytest.approx(wb, rel=1e-12)
            assert ge == pytest.approx(we, abs=1e-12)

    def test_values_follow_the_form(self):
        root = tf.root_three_level()
        form = root.asymptotic_large(2)
        for x in (1e5, 1e6):
            assert root.evaluate(x) == pytest.approx(form.evaluate(x),
                                                     rel=1e-3)


class TestMixture:
    def test_weights_must_sum_to_one(self):
        with pytest.raises(SeriesConstructionError):
            RootMixture(((0.7, tf.root_two_level()),))

    def test_eval012_matches_finite_differences(self):
        mix = tf.irr_mixture()
        x, h = 3.0, 1e-5
        f, f1, f2 = mix.eval012(x)
        assert f == pytest.approx(mix.evaluate(x), rel=1e-14)
        fd1 = (mix.evaluate(x + h) - mix.evaluate(x - h)) / (2 * h)
        fd2 = (mix.evaluate(x + h) - 2 * f + mix.evaluate(x - h)) / h**2
        assert f1 == pytest.approx(fd1, rel=1e-9)
        assert f2 == pytest.approx(fd2, rel=1e-5)

    def test_json_round_trip(self):
        mix = tf.irr_mixture()
        back = RootMixture.from_json(json.loads(mix.dumps()))
        for (w1, r1), (w2, r2) in zip(mix.components, back.components):
            assert w1 == w2
            assert r1.levels == pytest.approx(r2.levels) or r1.levels == r2.levels


def test_monotone_profiles_have_no_spurious_oscillation():
    """Finite-difference slopes of the case-study factors never change sign."""
    cases = [
        (tf.irr_mixture(), np.geomspace(1e-3, 1e3, 400)),
        (nls.irr_root(), np.geomspace(1e-3, 40, 400)),
        (rd.irr_root(), np.linspace(0.0, rd.critical_time() * 0.999, 400)),
    ]
    for approx, xs in cases:
        vals = np.array([approx.evaluate(float(x)) for x in xs])
        slopes = np.diff(vals)
        signs = np.sign(slopes[np.abs(slopes) > 1e-14])
        assert (signs == signs[0]).all()


# ----------------------------------------------------------------------------
# randomized calibration round trip
# ----------------------------------------------------------------------------
@settings(max_examples=100, deadline=None)
@given(st.floats(min_value=0.2, max_value=3.0),
       st.floats(min_value=0.2, max_value=3.0),
       st.floats(min_value=-3.0, max_value=-0.5),
       st.floats(min_value=0.3, max_value=0.9))
def test_two_level_round_trip(a1, a2, n2, gap_frac):
    e1, e2 = 1.0, 2.0
    n1 = gap_frac * e2 / e1          # keeps the level hierarchy dominant
    root = NestedRootApproximant(1.0, 0.0, (RootLevel(a1, e1, n1),
                                            RootLevel(a2, e2, n2)))
    form = root.asymptotic_large(2)
    small = make_series(1, 0, 1, [1, 0, 0])
    back = match_parameters([(e1, None), (e2, n2)], small, form)
    g1, g2 = back.levels
    assert g1.power == pytest.approx(n1, rel=1e-9)
    assert g1.amplitude == pytest.approx(a1, rel=1e-6)
    assert g2.amplitude == pytest.approx(a2, rel=1e-9)
    expanded = back.expand_small(2, 1.0)
    direct = root.expand_small(2, 1.0)
    assert expanded.raw_coeffs() == pytest.approx(direct.raw_coeffs(),
                                                  rel=1e-6, abs=1e-9)
