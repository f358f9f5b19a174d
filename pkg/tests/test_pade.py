import json
import math

import numpy as np
import pytest
from hypothesis import assume, given, settings, strategies as st

from sspade import PadeApproximant, from_series, make_series
from sspade.errors import DegenerateTableError, InsufficientCoefficientsError
from sspade.problems import baseline_formulas
from sspade.problems import thomas_fermi as tf
from conftest import assert_sigfigs


def test_identity_function_fit():
    c = make_series(1, 0, 1, [1, 0, 0])
    p = from_series(c, 1, 1, infinity_limit=1.0)
    # gauge freedom resolves to num = den, so the fit is identically one
    for x in (0.0, 0.5, 7.0, 1e6):
        assert p.evaluate(x) == pytest.approx(1.0, abs=1e-14)


def test_published_correction_coefficients_reproduced():
    c8 = tf.reference_correction_series()
    p = from_series(c8, 4, 4, infinity_limit=1.0)
    for got, want in zip(p.num[1:], tf.PADE44_REF["num"]):
        assert_sigfigs(got, want, 5, "numerator")
    for got, want in zip(p.den[1:], tf.PADE44_REF["den"]):
        assert_sigfigs(got, want, 5, "denominator")


def test_relaxation_correction_leading_pair():
    from sspade.problems import ruina_dieterich as rd
    from sspade.corrected import correcting_series
    c10 = correcting_series(rd.small_series(10), rd.irr_root(), 10)
    p = from_series(c10, 5, 5)
    assert p.num[1] == pytest.approx(rd.PADE55_REF["num"][1], rel=2e-4)
    assert p.den[1] == pytest.approx(rd.PADE55_REF["den"][1], rel=2e-4)


def test_degenerate_but_inconsistent_table_is_an_error():
    # series of 1/(1-x^2) has a zero odd part: the (1,1) table is singular
    # and genuinely inconsistent
    c = make_series(1, 0, 1, [1, 0, 1])
    with pytest.raises(DegenerateTableError):
        from_series(c, 1, 1)


def test_order_deficit_rejected():
    c = make_series(1, 0, 1, [1, 1, 1])
    with pytest.raises(InsufficientCoefficientsError):
        from_series(c, 2, 2)
    # the limit constraint frees exactly one condition
    from_series(make_series(1, 0, 1, [1, 1, 1, 1]), 2, 2, infinity_limit=1.0)


def test_nonzero_prefactor_exponent_rejected():
    c = make_series(1, 1, 1, [1, 1, 1])
    with pytest.raises(InsufficientCoefficientsError):
        from_series(c, 1, 1)


def test_limit_constraint_needs_diagonal():
    c = make_series(1, 0, 1, [1, 1, 1, 1])
    with pytest.raises(ValueError):
        from_series(c, 1, 2, infinity_limit=1.0)


class TestEvaluate:
    def test_screened_potential_baselines(self):
        p17 = baseline_formulas("tf_p17")
        assert p17.evaluate(100.0) == pytest.approx(0.0000942, rel=5e-3)
        p03 = baseline_formulas("tf_p03")
        assert p03.evaluate(1.0) == pytest.approx(0.178, rel=5e-3)

    def test_pole_returns_signed_infinity(self):
        p = PadeApproximant(1.0, (1.0, 1.0), (1.0, -1.0))
        assert p.evaluate(1.0) == math.inf
        assert PadeApproximant(1.0, (-2.0,), (1.0, -1.0)).evaluate(1.0) == -math.inf


class TestFindPoles:
    def test_constant_has_none(self):
        p = PadeApproximant(1.0, (1.0,), (1.0,))
        assert p.find_poles((0.0, 100.0), 50) == []

    def test_simple_root_located(self):
        p = PadeApproximant(1.0, (1.0,), (1.0, -1.0))
        poles = p.find_poles((0.0, 2.0), 100)
        assert len(poles) == 1
        assert poles[0] == pytest.approx(1.0, abs=1e-10)

    def test_fit_denominator_clean_on_working_interval(self):
        c8 = tf.reference_correction_series()
        p = from_series(c8, 4, 4, infinity_limit=1.0)
        assert p.find_poles((0.0, 1000.0), 4000) == []
        # dense-sampling oracle: one million sign checks of the denominator
        z = np.linspace(0.0, 1000.0 ** p.gamma, 1_000_000)
        den = sum(c * z**i for i, c in enumerate(p.den))
        assert (den > 0).all()


class TestLimitAtInfinity:
    def test_diagonal_fixture_limit_is_one(self):
        c8 = tf.reference_correction_series()
        p = from_series(c8, 4, 4, infinity_limit=1.0)
        assert p.limit_at_infinity() == pytest.approx(1.0, abs=1e-12)
        assert abs(p.evaluate(1e8) - 1.0) <= 1e-4

    def test_numerator_deficit_gives_zero(self):
        assert PadeApproximant(1.0, (1.0,), (1.0, 2.0)).limit_at_infinity() == 0.0

    def test_vortex_correction_ratio(self):
        from sspade.problems import nls_vortex as nls
        p = PadeApproximant(2.0, nls.PADE22_REF["num"], nls.PADE22_REF["den"])
        ratio = p.limit_at_infinity()
        assert ratio == pytest.approx(0.000899209 / 0.00409531, rel=1e-12)
        # the product form restores the unit boundary value at infinity
        full = nls.C_SLOPE / math.sqrt(nls.A_ROOT_REF) * ratio
        assert full == pytest.approx(1.0, abs=2e-4)


def test_scale_covariance_of_coefficients():
    coeffs = [1, 0.4, -0.3, 0.2, 0.05, -0.01]
    pa = from_series(make_series(1, 0, 0.5, coeffs), 2, 3)
    pb = from_series(make_series(1, 0, 1.0, coeffs), 2, 3)
    assert pa.num == pytest.approx(pb.num, rel=1e-12)
    assert pa.den == pytest.approx(pb.den, rel=1e-12)
    assert pa.gamma == 0.5 and pb.gamma == 1.0


def test_json_round_trip():
    p = baseline_formulas("rd_p45")
    q = PadeApproximant.from_json(json.loads(p.dumps()))
    assert q == p


def test_eval012_matches_finite_differences():
    p = baseline_formulas("tf_p14")
    x, h = 2.0, 1e-5
    f, f1, f2 = p.eval012(x)
    assert f == pytest.approx(p.evaluate(x), rel=1e-14)
    fd1 = (p.evaluate(x + h) - p.evaluate(x - h)) / (2 * h)
    fd2 = (p.evaluate(x + h) - 2 * f + p.evaluate(x - h)) / h**2
    assert f1 == pytest.approx(fd1, rel=1e-9)
    assert f2 == pytest.approx(fd2, rel=1e-5)


# ----------------------------------------------------------------------------
# randomized round-trip property
# ----------------------------------------------------------------------------
@settings(max_examples=100, deadline=None)
@given(st.lists(st.floats(min_value=-2, max_value=2, allow_subnormal=False),
                min_size=6, max_size=10),
       st.integers(min_value=0, max_value=3),
       st.integers(min_value=1, max_value=3))
def test_reexpansion_round_trip(tail, m, n):
    c = make_series(1, 0, 1, [1.0] + tail)
    assume(c.order >= m + n)
    try:
        p = from_series(c, m, n)
    except DegenerateTableError:
        assume(False)
    back = p.expand(m + n)
    want = c.raw_coeffs()[: m + n + 1]
    got = np.zeros(m + n + 1)
    lead = round(back.alpha / back.step)
    for i, v in enumerate(back.raw_coeffs()[: m + n + 1 - lead]):
        got[lead + i] = v
    scale = max(1.0, np.max(np.abs(want)),
                np.max(np.abs(p.num)), np.max(np.abs(p.den)))
    assert np.max(np.abs(got - want)) <= 1e-9 * scale


def test_round_trip_on_fixture_series():
    c8 = tf.reference_correction_series()
    p = from_series(c8, 4, 4)
    back = p.expand(8).raw_coeffs()
    assert back == pytest.approx(c8.raw_coeffs(), rel=1e-9, abs=1e-9)
