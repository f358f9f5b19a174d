import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from sspade import (
    AsymptoticForm,
    GeneralizedSeries,
    add,
    divide,
    log_derivative,
    make_series,
    monomial,
    multiply,
    power,
    taylor_from_ode,
)
from sspade.errors import (
    DivisionSingularityError,
    GridMismatchError,
    SeriesConstructionError,
    SingularInitialConditionError,
)
from conftest import assert_sigfigs

TF_COEFFS = [1, 0, -1.588071, 4 / 3, 0, -0.635228, 1 / 3, 0.108084,
             -0.211743, 0.0899672]


class TestMakeSeries:
    def test_constant_one(self):
        s = make_series(1, 0, 1, [1])
        assert s.amplitude == 1 and s.alpha == 0 and s.coeffs == (1.0,)
        assert s.evaluate(3.7) == 1.0

    def test_half_grid_expansion(self):
        s = make_series(1, 0, 0.5, TF_COEFFS)
        assert s.order == 9
        assert s.coefficient(2) == -1.588071
        assert s.coefficient(6) == pytest.approx(1 / 3, rel=1e-15)

    def test_normalization_folds_leading_coefficient(self):
        s = make_series(2, 1, 1, [3, 1])
        assert s.amplitude == 6
        assert s.coeffs == (1.0, pytest.approx(1 / 3))

    @pytest.mark.parametrize("args", [
        (1, 0, 0, [1]),          # zero step
        (1, 0, -1, [1]),         # negative step
        (1, 0, 1, []),           # empty coefficients
        (1, 0, 1, [0, 1]),       # zero leading coefficient
        (0, 0, 1, [1]),          # zero amplitude
    ])
    def test_invalid_construction(self, args):
        with pytest.raises(SeriesConstructionError):
            make_series(*args)

    def test_json_round_trip(self):
        s = make_series(2.5, 0.5, 0.5, [1, -0.25, 0.125])
        back = GeneralizedSeries.from_json(s.to_json())
        assert back == s


class TestMultiply:
    def test_difference_of_squares(self):
        a = make_series(1, 0, 1, [1, 1])
        b = make_series(1, 0, 1, [1, -1])
        assert multiply(a, b).raw_coeffs() == pytest.approx([1, 0, -1])

    def test_truncation_keeps_low_orders(self):
        a = make_series(1, 0, 1, [1, 1, 1])
        b = make_series(1, 0, 1, [1, -1])
        prod = multiply(a, b).truncated(2)
        assert prod.raw_coeffs() == pytest.approx([1, 0, 0])

    def test_mixed_grid_hand_product(self):
        # (1 + 2 sqrt(x)) (1 + 3x) = 1 + 2 sqrt(x) + 3x + 6 x^(3/2)
        a = make_series(1, 0, 0.5, [1, 2])
        b = make_series(1, 0, 1, [1, 3])
        prod = multiply(a, b)
        assert prod.step == 0.5
        assert prod.raw_coeffs() == pytest.approx([1, 2, 3, 6])

    def test_incommensurate_grids_rejected(self):
        a = make_series(1, 0, 1.0, [1, 1])
        b = make_series(1, 0, math.pi / 3, [1, 1])
        with pytest.raises(GridMismatchError):
            multiply(a, b)


class TestDivide:
    def test_self_division(self):
        s = make_series(1, 0, 1, [1, 1])
        q = divide(s, s)
        assert q.raw_coeffs() == pytest.approx([1, 0])

    def test_geometric_series(self):
        one = make_series(1, 0, 1, [1, 0, 0, 0, 0])
        den = make_series(1, 0, 1, [1, 1, 0, 0, 0])
        q = divide(one, den)
        assert q.raw_coeffs() == pytest.approx([1, -1, 1, -1, 1])

    def test_zero_denominator_rejected(self):
        s = make_series(1, 0, 1, [1, 1])
        from sspade.series import ZERO
        with pytest.raises(DivisionSingularityError):
            divide(s, ZERO)


class TestPower:
    def test_integer_square(self):
        s = make_series(1, 0, 1, [1, 1, 0])
        assert power(s, 2).raw_coeffs() == pytest.approx([1, 2, 1])

    def test_binomial_half(self):
        s = make_series(1, 0, 1, [1, 1, 0, 0])
        assert power(s, 0.5).raw_coeffs() == pytest.approx(
            [1, 0.5, -0.125, 0.0625])

    def test_fractional_power_against_derivative_oracle(self):
        # coefficients of (1 + A x)^p are p(p-1)...(p-n+1) A^n / n!; cross-check
        # with numerical differentiation of the closed form near zero
        a_amp, p = 0.443153, 0.727998
        s = power(make_series(1, 0, 1, [1, a_amp, 0, 0]), p)
        closed = lambda x: (1 + a_amp * x) ** p
        h = 1e-4
        d1 = (closed(h) - closed(-h)) / (2 * h)
        d2 = (closed(h) - 2 * closed(0) + closed(-h)) / h**2
        h = 2e-3   # third derivative needs a coarser stencil against roundoff
        d3 = (closed(2 * h) - 2 * closed(h) + 2 * closed(-h)
              - closed(-2 * h)) / (2 * h**3)
        raw = s.raw_coeffs()
        assert raw[1] == pytest.approx(d1, rel=1e-7)
        assert raw[2] == pytest.approx(d2 / 2, rel=1e-5)
        assert raw[3] == pytest.approx(d3 / 6, rel=1e-4)

    def test_negative_amplitude_non_integer_rejected(self):
        s = make_series(-1, 0, 1, [1, 1])
        with pytest.raises(SeriesConstructionError):
            power(s, 0.5)


class TestLogDerivative:
    def test_square_of_binomial(self):
        # d log (1+x)^2 / d log x = 2x/(1+x) = 2x - 2x^2 + ...
        s = make_series(1, 0, 1, [1, 2, 1])
        b = log_derivative(s)
        assert b.alpha == 1.0
        assert b.raw_coeffs() == pytest.approx([2, -2])

    def test_constant_gives_zero(self):
        s = make_series(5, 0, 1, [1, 0, 0])
        assert log_derivative(s).is_zero()

    def test_against_symbolic_quotient_oracle(self):
        # x f'/f computed with the series ops themselves
        s = make_series(1, 0, 1, [1, 1, 0.5, 1 / 6])
        xfp = make_series(1, 1, 1, [1, 1, 0.5])  # x f' = x + x^2 + x^3/2
        oracle = divide(xfp, s)
        got = log_derivative(s)
        assert got.alpha == oracle.alpha
        assert got.raw_coeffs()[:3] == pytest.approx(oracle.raw_coeffs()[:3])
        # exp-like input: beta = x through the certified order
        assert got.alpha == 1.0
        assert got.raw_coeffs()[:3] == pytest.approx([1, 0, 0], abs=1e-14)


class TestTaylorFromOde:
    def test_exponential(self):
        e = taylor_from_ode(lambda f: f, 1.0, 8)
        want = [1 / math.factorial(n) for n in range(9)]
        assert e.raw_coeffs() == pytest.approx(want, rel=1e-13)

    def test_relaxation_coefficients(self):
        f = taylor_from_ode(lambda s: 0.526 - s ** -0.5, 0.5, 10)
        assert_sigfigs(f.coefficient(1), -0.888214, 6, "a1")
        assert_sigfigs(f.coefficient(10), -231.875, 6, "a10")

    def test_singular_start_rejected(self):
        with pytest.raises(SingularInitialConditionError):
            taylor_from_ode(lambda s: 0.526 - s ** -0.5, 0.0, 3)

    def test_matches_rk4_where_series_converges(self):
        order = 10
        f = taylor_from_ode(lambda s: 0.526 - s ** -0.5, 0.5, order)
        t_eval = 0.05
        # independent fixed-step RK4 integration of the same equation
        rhs = lambda y: 0.526 - y ** -0.5
        y, h = 0.5, 1e-5
        for _ in range(int(t_eval / h)):
            k1 = rhs(y)
            k2 = rhs(y + 0.5 * h * k1)
            k3 = rhs(y + 0.5 * h * k2)
            k4 = rhs(y + h * k3)
            y += h / 6 * (k1 + 2 * k2 + 2 * k3 + k4)
        assert f.evaluate(t_eval) == pytest.approx(y, abs=1e-9)


class TestAdd:
    def test_monomial_does_not_truncate(self):
        s = make_series(1, 0, 0.5, [1, 0, 0.25, 0, 0.5])
        out = add(s, monomial(2.0, 1.5, 0.5))
        assert out.order == 4
        assert out.raw_coeffs() == pytest.approx([1, 0, 0.25, 2, 0.5])

    def test_offgrid_monomial_rejected(self):
        s = make_series(1, 0, 1, [1, 1])
        with pytest.raises(GridMismatchError):
            add(s, monomial(1.0, 0.3, 1.0))

    def test_leading_cancellation_shifts_alpha(self):
        a = make_series(1, 0, 1, [1, 2, 3])
        b = make_series(-1, 0, 1, [1, 1, 1])
        out = add(a, b)
        assert out.alpha == 1.0
        assert out.raw_coeffs() == pytest.approx([1, 2])


class TestAsymptoticForm:
    def test_descending_enforced(self):
        with pytest.raises(SeriesConstructionError):
            AsymptoticForm(((1.0, -3.0), (2.0, -2.0)))

    def test_evaluate(self):
        form = AsymptoticForm(((144.0, -3.0), (-1911.02, -3.772)))
        x = 50.0
        assert form.evaluate(x) == pytest.approx(
            144 * x**-3 - 1911.02 * x**-3.772)


# ----------------------------------------------------------------------------
# randomized algebraic properties
# ----------------------------------------------------------------------------
coeff_lists = st.lists(
    st.floats(min_value=-2, max_value=2, allow_subnormal=False),
    min_size=2, max_size=13).filter(lambda cs: abs(cs[0]) > 1e-2)

# unit leading coefficient and moderate entries keep the quotient/power
# recursions well conditioned, so the strict tolerances are meaningful
tame_tails = st.lists(
    st.floats(min_value=-0.7, max_value=0.7, allow_subnormal=False),
    min_size=1, max_size=12)


def _rel_close(a, b, tol):
    scale = max(np.max(np.abs(a)), np.max(np.abs(b)), 1e-30)
    return np.max(np.abs(np.asarray(a) - np.asarray(b))) <= tol * scale


@settings(max_examples=100, deadline=None)
@given(coeff_lists, coeff_lists)
def test_multiply_commutes(ca, cb):
    a = make_series(1, 0, 1, ca)
    b = make_series(1, 0, 1, cb)
    ab, ba = multiply(a, b), multiply(b, a)
    assert _rel_close(ab.raw_coeffs(), ba.raw_coeffs(), 1e-12)


@settings(max_examples=100, deadline=None)
@given(coeff_lists, coeff_lists, coeff_lists)
def test_multiply_associates(ca, cb, cc):
    a, b, c = (make_series(1, 0, 1, cs) for cs in (ca, cb, cc))
    left = multiply(multiply(a, b), c)
    right = multiply(a, multiply(b, c))
    assert _rel_close(left.raw_coeffs(), right.raw_coeffs(), 1e-12)


@settings(max_examples=100, deadline=None)
@given(tame_tails, tame_tails)
def test_divide_multiply_round_trip(tn, td):
    num = make_series(1, 0, 1, [1.0] + tn)
    den = make_series(1, 0, 1, [1.0] + td)
    q = divide(num, den)
    back = multiply(q, den)
    k = q.order
    assert _rel_close(back.raw_coeffs()[: k + 1], num.raw_coeffs()[: k + 1],
                      1e-12)


@settings(max_examples=100, deadline=None)
@given(tame_tails,
       st.floats(min_value=0.1, max_value=5.0),
       st.booleans())
def test_power_round_trip(tail, p, negate):
    if negate:
        p = -p
    s = make_series(1, 0, 1, [1.0] + tail)
    back = power(power(s, p), 1.0 / p)
    assert _rel_close(back.raw_coeffs(), s.raw_coeffs(), 1e-10)


@settings(max_examples=100, deadline=None)
@given(tame_tails, tame_tails)
def test_log_derivative_of_product_is_sum(ta, tb):
    a = make_series(1, 0, 1, [1.0] + ta)
    b = make_series(1, 0, 1, [1.0] + tb)
    lhs = log_derivative(multiply(a, b).truncated(min(a.order, b.order)))
    rhs = add(log_derivative(a), log_derivative(b))
    k = min(a.order, b.order)

    def raw_on_unit_grid(s):
        out = np.zeros(k + 1)
        if s.is_zero():
            return out
        lead = round(s.alpha)
        for i, c in enumerate(s.raw_coeffs()):
            if lead + i <= k:
                out[lead + i] = c
        return out

    assert _rel_close(raw_on_unit_grid(lhs), raw_on_unit_grid(rhs), 1e-11)
