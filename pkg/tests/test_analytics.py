import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from weakinterference import analytics as A
from weakinterference.errors import DarkPort, OrthogonalPostSelection, UnsupportedPreSelection, ZeroPower
from weakinterference.model import (
    CouplingParams,
    GaussianPointer,
    MeasurementSetup,
    PolarizationState,
    PostSelectionAngles,
    make_balanced_pre,
    make_post,
)

from conftest import DELTA, THETA_FIG1, WAIST

# Frozen from mpmath at 40 digits, waist 10 um, delta1 = -delta2 = 10 nm.
GAMMA_FIG = 0.9999990000004999998333333749999916666681
A_MAX_FIG = 701.7829536706480295805591698430187053967
ALPHA0_FIG_DEG = -44.95917840508744311919709844844026164402
POWER_M45_FIG = 5.076151778599877614383554681858701854185e-7
LOSS_DB_M45_FIG = -62.94465400836016059656158810751295145439
FRACTIONAL_LOSS_FIG4 = -4.999997500000833333125000041666659702243e-7
INTENSITY_X0_FIG4 = 112837.80387169096677790696157494605931
COT_0P1_DEG = 572.9572133542795889081680349550620637125

angles = st.floats(-math.pi, math.pi, allow_nan=False)


def random_setups(n, seed):
    rng = np.random.default_rng(seed)
    for _ in range(n):
        w0 = 10 ** rng.uniform(-6, -3)
        d1, d2 = rng.uniform(-w0 / 10, w0 / 10, 2)
        a, xi, phi = rng.uniform(-math.pi, math.pi, 3)
        yield MeasurementSetup(PostSelectionAngles(a, xi), CouplingParams(d1, d2, phi), GaussianPointer(w0))


class TestWeakValue:
    def test_examples(self):
        pre = make_balanced_pre()
        assert A.weak_value(pre, make_post(0.0)) == pytest.approx(1.0, abs=1e-15)
        assert A.weak_value(pre, make_post(math.radians(45))) == pytest.approx(0.0, abs=1e-15)
        wv = A.weak_value(pre, make_post(math.radians(-44.9)))
        assert wv.real == pytest.approx(COT_0P1_DEG, rel=1e-9)
        assert abs(wv.imag) < 1e-12

    def test_against_vector_arithmetic(self):
        pre = make_balanced_pre()
        obs = A.WeakObservable(0.3, -2.0)
        post = make_post(0.7, 1.1)
        mat = np.diag([obs.eigen_H, obs.eigen_V])
        expected = np.vdot(post.vector, mat @ pre.vector) / np.vdot(post.vector, pre.vector)
        assert A.weak_value(pre, post, obs) == pytest.approx(expected, rel=1e-14)

    def test_orthogonal_raises(self):
        with pytest.raises(OrthogonalPostSelection):
            A.weak_value(PolarizationState(1, 0), PolarizationState(0, 1))


class TestIntensity:
    def test_single_gaussian(self):
        s = MeasurementSetup.from_angles(0.0, 0.7, 0.0, 0.0, WAIST)
        x = np.linspace(-3 * WAIST, 3 * WAIST, 11)
        np.testing.assert_allclose(A.intensity_at(s, x), s.pointer.amplitude(x) ** 2, rtol=1e-15)

    def test_destructive(self):
        s = MeasurementSetup.from_angles(-math.pi / 4, 0.0, 0.0, 0.0, WAIST)
        x = np.linspace(-3 * WAIST, 3 * WAIST, 11)
        assert np.max(A.intensity_at(s, x)) < 1e-20 * s.pointer.peak**2

    def test_fig4_point(self, fig4_setup):
        assert A.intensity_at(fig4_setup(), 0.0) == pytest.approx(INTENSITY_X0_FIG4, rel=1e-13)

    def test_requires_balanced(self):
        s = MeasurementSetup(PostSelectionAngles(0.1), CouplingParams(0, 0), GaussianPointer(1e-5), pre=PolarizationState(1, 0))
        with pytest.raises(UnsupportedPreSelection):
            A.intensity_at(s, 0.0)
        with pytest.raises(UnsupportedPreSelection):
            A.power_ratio(s)


class TestGamma:
    def test_examples(self):
        p = GaussianPointer(WAIST)
        assert A.gamma(CouplingParams(3e-9, 3e-9), p) == 1.0
        assert A.gamma(CouplingParams(DELTA, -DELTA), p) == pytest.approx(GAMMA_FIG, rel=1e-15)
        assert A.gamma(CouplingParams(WAIST, -WAIST), p) == pytest.approx(math.exp(-1), rel=1e-15)

    @given(st.floats(-10, 10), st.floats(-10, 10), st.floats(1e-6, 1e-3))
    def test_range(self, d1, d2, w):
        g = A.gamma(CouplingParams(d1 * w, d2 * w), GaussianPointer(w))
        assert 0 < g <= 1
        if d1 == d2:
            assert g == 1.0


class TestMeanAndAmplification:
    def test_post_select_h(self):
        s = MeasurementSetup.from_angles(0.0, 0.4, 7e-9, -2e-9, WAIST)
        assert A.mean_position(s) == pytest.approx(7e-9, rel=1e-15)
        assert A.amplification(s) == 1.0

    # theta near +-pi turns alpha = 45 deg into a dark port
    @given(st.floats(-3.0, 3.0), st.floats(-1e-6, 1e-6), st.floats(-1e-6, 1e-6))
    def test_alpha_45(self, theta, d1, d2):
        s = MeasurementSetup.from_angles(math.pi / 4, theta, d1, d2, WAIST)
        assert A.mean_position(s) == pytest.approx((d1 + d2) / 2, abs=1e-15 * WAIST)

    def test_fig1_at_alpha0(self, fig1_setup):
        s = fig1_setup(ALPHA0_FIG_DEG)
        assert A.amplification(s) == pytest.approx(A_MAX_FIG, rel=1e-9)
        assert A.mean_position(s) == pytest.approx(DELTA * A_MAX_FIG, rel=1e-9)

    def test_dark_port(self):
        s = MeasurementSetup.from_angles(-math.pi / 4, 0.0, 0.0, 0.0, WAIST)
        with pytest.raises(DarkPort):
            A.mean_position(s)
        with pytest.raises(DarkPort):
            A.amplification(s)
        with pytest.raises(DarkPort):
            A.evaluate(s)

    def test_amplification_alpha45(self, fig4_setup):
        assert A.amplification(fig4_setup()) == pytest.approx(0.0, abs=1e-15)


class TestOptimalAngle:
    def test_orthogonal_phase(self):
        res = A.optimal_angle(1.0, math.pi / 2)
        assert res.alpha0 == pytest.approx(0.0, abs=1e-16)
        assert res.a_max == pytest.approx(1.0, abs=1e-15)
        assert not res.ideal_limit

    def test_ideal_limit(self):
        res = A.optimal_angle(1.0, 0.0)
        assert res.ideal_limit and math.isinf(res.a_max)
        assert res.alpha0 == pytest.approx(-math.pi / 4)

    @pytest.mark.parametrize(
        "gamma, theta, alpha0_deg, a_max",
        [
            (0.8, 0.0, -26.56505117707799147, 1.666666666666666667),
            (GAMMA_FIG, THETA_FIG1, ALPHA0_FIG_DEG, A_MAX_FIG),
        ],
    )
    def test_values(self, gamma, theta, alpha0_deg, a_max):
        res = A.optimal_angle(gamma, theta)
        assert math.degrees(res.alpha0) == pytest.approx(alpha0_deg, abs=1e-9)
        assert res.a_max == pytest.approx(a_max, rel=1e-9)

    @pytest.mark.parametrize("gamma, theta", [(0.8, 0.0), (0.95, 0.3), (GAMMA_FIG, THETA_FIG1)])
    def test_dense_scan_oracle(self, gamma, theta):
        res = A.optimal_angle(gamma, theta)
        exponent = -math.log(gamma)
        # coarse scan then a refined one around the coarse optimum
        alpha = np.linspace(-math.pi / 2, math.pi / 2, 200001)
        amp = np.abs(A.curve_amplification(alpha, theta, exponent))
        i = int(np.argmax(amp))
        fine = np.linspace(alpha[i - 1], alpha[i + 1], 200001)
        famp = np.abs(A.curve_amplification(fine, theta, exponent))
        j = int(np.argmax(famp))
        assert famp[j] == pytest.approx(res.a_max, rel=1e-9)
        # |A| peaks twice, at alpha0 and at its mirror -pi/2 - alpha0; the signed maximum is alpha0
        signed = A.curve_amplification(alpha, theta, exponent)
        k = int(np.argmax(signed))
        fine = np.linspace(alpha[k - 1], alpha[k + 1], 200001)
        j = int(np.argmax(A.curve_amplification(fine, theta, exponent)))
        # the peak is flat to second order, so its location resolves only to ~sqrt(eps)
        assert fine[j] == pytest.approx(res.alpha0, abs=1e-6)
        assert min(abs(fine[j] - res.alpha0), abs(alpha[i] + math.pi / 2 + res.alpha0), abs(alpha[i] - res.alpha0)) < 1e-4

    @given(st.floats(0.05, 0.999), angles)
    def test_bound(self, gamma, theta):
        res = A.optimal_angle(gamma, theta)
        alpha = np.linspace(-math.pi / 2, math.pi / 2, 4001)
        amp = np.abs(A.curve_amplification(alpha, theta, -math.log(gamma)))
        assert np.max(amp) <= res.a_max * (1 + 1e-12)


class TestPower:
    @pytest.mark.parametrize("alpha_deg", [-80, -45, -10, 0, 30, 45, 90])
    def test_orthogonal_phase(self, alpha_deg, fig1_setup):
        s = fig1_setup(alpha_deg, theta=math.pi / 2)
        assert A.power_ratio(s) == pytest.approx(0.5, abs=1e-15)
        assert A.loss_db(A.power_ratio(s)) == pytest.approx(-3.0103, abs=1e-4)

    def test_lossless(self):
        s = MeasurementSetup.from_angles(math.pi / 4, 0.0, 5e-9, 5e-9, WAIST)
        assert A.power_ratio(s) == 1.0
        assert A.fractional_loss(s) == pytest.approx(0.0, abs=1e-30)

    def test_fig2_dark_side(self, fig1_setup):
        pr = A.power_ratio(fig1_setup(-45))
        assert pr == pytest.approx(POWER_M45_FIG, rel=1e-9)
        assert A.loss_db(pr) == pytest.approx(LOSS_DB_M45_FIG, rel=1e-9)

    def test_fig4_anchor(self, fig4_setup):
        assert A.fractional_loss(fig4_setup()) == pytest.approx(FRACTIONAL_LOSS_FIG4, rel=1e-13)
        assert A.fractional_loss(fig4_setup()) == pytest.approx(math.expm1(-1e-6) / 2, rel=1e-15)

    def test_fractional_loss_orthogonal(self, fig4_setup):
        for d in (0.0, 1e-9, 1e-6):
            assert A.fractional_loss(fig4_setup(delta=d, theta_deg=90)) == pytest.approx(-0.5, abs=1e-15)

    def test_loss_db(self):
        assert A.loss_db(1.0) == 0.0
        assert A.loss_db(0.5) == pytest.approx(-3.0103, abs=1e-4)
        assert A.loss_db(5.076e-7) == pytest.approx(-62.94, abs=0.01)
        with pytest.raises(ZeroPower):
            A.loss_db(0.0)

    @given(angles, st.floats(0, 30))
    def test_endpoints_flat(self, theta, exponent):
        assert A.curve_power_ratio(0.0, theta, exponent) == 0.5
        # sin(pi) is 1.2e-16 in floating point, hence a few ulps of slack at 90 deg
        assert A.curve_power_ratio(math.pi / 2, theta, exponent) == pytest.approx(0.5, abs=4.5e-16)

    def test_one_minus_interference_against_naive(self):
        rng = np.random.default_rng(3)
        a, t = rng.uniform(-math.pi, math.pi, (2, 1000))
        e = rng.uniform(0, 3, 1000)
        naive = 1 - np.exp(-e) * np.abs(np.cos(t)) * np.abs(np.sin(2 * a))
        np.testing.assert_allclose(A.one_minus_interference(a, t, e), naive, atol=1e-15)


class TestEnsemble:
    def test_consistency(self):
        for s in random_setups(10**4, seed=11):
            pr, fl = A.power_ratio(s), A.fractional_loss(s)
            # one ulp of 1.0 or of the result
            assert abs(fl - (pr - 1.0)) <= 2.3e-16
            try:
                amp = A.amplification(s)
            except DarkPort:
                continue
            c = s.coupling
            expected = c.delta_plus / 2 + c.delta_minus / 2 * amp
            assert A.mean_position(s) == pytest.approx(expected, rel=1e-12, abs=1e-12 * abs(c.delta_minus))

    @given(angles, angles, st.floats(0, 5))
    def test_theta_symmetry(self, alpha, theta, exponent):
        for f in (A.curve_power_ratio, A.curve_fractional_loss):
            assert f(alpha, theta, exponent) == f(alpha, -theta, exponent)
        a1, a2 = A.curve_amplification(alpha, theta, exponent), A.curve_amplification(alpha, -theta, exponent)
        assert a1 == a2 or (math.isnan(a1) and math.isnan(a2))

    def test_weak_value_link(self):
        rng = np.random.default_rng(5)
        checked = 0
        for _ in range(1000):
            alpha, theta = rng.uniform(-math.pi, math.pi, 2)
            s = MeasurementSetup.from_angles(alpha, theta, 1e-6 * WAIST, -1e-6 * WAIST, WAIST)
            if A.power_ratio(s) <= 1e-10:
                continue
            # phi = theta, xi = 0 is equivalent to phi = 0, xi = -theta for the weak value
            wv = A.weak_value(make_balanced_pre(), make_post(alpha, -theta))
            assert A.mean_position(s) / (1e-6 * WAIST) == pytest.approx(wv.real, rel=1e-6)
            checked += 1
        assert checked > 990


def test_evaluate(fig4_setup):
    r = A.evaluate(fig4_setup())
    assert r.fractional_loss == pytest.approx(FRACTIONAL_LOSS_FIG4, rel=1e-13)
    assert r.gamma == pytest.approx(GAMMA_FIG, rel=1e-15)
    assert r.overlap == pytest.approx(1.0, abs=1e-15)
    assert r.mean_position == pytest.approx(0.0, abs=1e-22)
