import numpy as np
import pytest
from hypothesis import given, strategies as st

from bell_eraser.interference import (
    ScreenGrid,
    SlitGeometry,
    conditional_pattern,
    conditional_probability,
    conditional_probability_from_states,
    estimate_visibility,
    measure_fringe_period,
    screen_measurement_state,
    single_slit_envelope,
    sinc,
    slit_amplitude,
    total_pattern,
    total_probability,
)
from bell_eraser.tensor import partial_trace

GEOM = SlitGeometry()
GRID = ScreenGrid()
X = GRID.x
SCALE = GEOM.peak_intensity
THETAS = [0.0, np.pi / 16, np.pi / 8, 3 * np.pi / 16, np.pi / 4]
angles = st.floats(0.0, np.pi / 4)


class TestGeometry:
    def test_defaults(self):
        assert (GEOM.a, GEOM.d, GEOM.L, GEOM.wavelength) == (10e-6, 20e-6, 1.0, 702e-9)
        assert GEOM.slit_centers == (-10e-6, 10e-6)
        assert GEOM.fringe_period == pytest.approx(0.0351)

    @pytest.mark.parametrize("field", ["a", "d", "L", "wavelength"])
    def test_positive(self, field):
        with pytest.raises(ValueError, match=field):
            SlitGeometry(**{field: 0.0})

    def test_far_field_ratio(self):
        with pytest.raises(ValueError, match="far-field"):
            SlitGeometry(L=0.01)
        SlitGeometry(L=0.01, far_field=False)

    def test_grid(self):
        with pytest.raises(ValueError):
            ScreenGrid(n=1)
        with pytest.raises(ValueError):
            ScreenGrid(0.1, -0.1)
        assert GRID.spacing == pytest.approx(0.3 / 2000)


class TestAmplitude:
    def test_center_limit(self):
        for j in (1, 2):
            assert slit_amplitude(0.0, GEOM, j) == pytest.approx(np.sqrt(GEOM.a / (2 * np.pi)), rel=1e-15)

    def test_sinc_series_branch(self):
        a = np.array([0.0, 1e-7, -5e-7, 1e-3])
        np.testing.assert_allclose(sinc(a), [1, 1, 1, np.sin(1e-3) / 1e-3], rtol=1e-13)

    def test_single_slit_intensity(self):
        alpha = np.pi * GEOM.a * np.sin(np.arctan(X / GEOM.L)) / GEOM.wavelength
        with np.errstate(invalid="ignore", divide="ignore"):
            expected = np.where(alpha == 0, 1.0, (np.sin(alpha) / alpha) ** 2) * GEOM.a / (2 * np.pi)
        for j in (1, 2):
            np.testing.assert_allclose(np.abs(slit_amplitude(X, GEOM, j)) ** 2, expected, rtol=1e-12, atol=1e-30)

    def test_relative_phase(self):
        alpha = np.pi * GEOM.a * np.sin(np.arctan(X / GEOM.L)) / GEOM.wavelength
        x1, x2 = GEOM.slit_centers
        ratio = slit_amplitude(X, GEOM, 1) / slit_amplitude(X, GEOM, 2)
        finite = np.abs(single_slit_envelope(X, GEOM)) > 1e-6 * SCALE
        np.testing.assert_allclose(ratio[finite], np.exp(-2j * alpha * (x1 - x2) / GEOM.a)[finite], atol=1e-9)

    def test_bad_slit(self):
        with pytest.raises(ValueError):
            slit_amplitude(0.0, GEOM, 3)


class TestConditional:
    def test_theta_zero_incoherent(self):
        for k in (0, 1):
            diff = conditional_probability(0.0, k, GEOM, X) - total_probability(GEOM, X)
            assert np.max(np.abs(diff)) / SCALE < 1e-12

    def test_quarter_pi_coherent(self):
        p1, p2 = slit_amplitude(X, GEOM, 1), slit_amplitude(X, GEOM, 2)
        for k in (0, 1):
            expected = 0.5 * np.abs(p1 - 1j * (-1) ** k * p2) ** 2
            np.testing.assert_allclose(conditional_probability(np.pi / 4, k, GEOM, X) / SCALE,
                                       expected / SCALE, atol=1e-12)

    def test_fringe_antifringe(self):
        p0 = conditional_pattern(np.pi / 4, 0, GEOM, GRID).values
        p1 = conditional_pattern(np.pi / 4, 1, GEOM, GRID).values
        p = total_pattern(np.pi / 4, GEOM, GRID).values
        central = np.flatnonzero(np.abs(X) < 0.9 * GEOM.envelope_zero)
        # fringe crests of p0 (relative to the envelope) are dark fringes of p1
        for bright, dark in ((p0, p1), (p1, p0)):
            crests = central[np.argsort(bright[central] / p[central])[-3:]]
            assert np.all(dark[crests] / bright[crests] < 1e-3)

    @given(angles, st.sampled_from([0, 1]), st.booleans())
    def test_two_routes_agree(self, theta, k, far):
        geom = SlitGeometry(far_field=far)
        a = conditional_probability(theta, k, geom, X)
        b = conditional_probability_from_states(theta, k, geom, X)
        assert np.max(np.abs(a - b)) / SCALE < 1e-10

    @given(angles)
    def test_sum_rule_and_envelope(self, theta):
        p0 = conditional_probability(theta, 0, GEOM, X)
        p1 = conditional_probability(theta, 1, GEOM, X)
        p = total_probability(GEOM, X)
        assert np.max(np.abs(p0 + p1 - 2 * p)) / SCALE < 1e-12
        env = single_slit_envelope(X, GEOM)
        assert np.all(p0 <= 2 * env + 1e-15 * SCALE)
        assert np.all(p1 <= 2 * env + 1e-15 * SCALE)
        assert np.all(p0 >= -1e-15 * SCALE)

    def test_normalized(self):
        for theta in THETAS:
            assert conditional_pattern(theta, 1, GEOM, GRID).riemann_sum() == pytest.approx(1.0, abs=1e-6)

    def test_bad_inputs(self):
        with pytest.raises(ValueError):
            conditional_pattern(1.0, 0, GEOM, GRID)
        with pytest.raises(ValueError):
            conditional_pattern(0.1, 2, GEOM, GRID)


class TestTotal:
    def test_theta_invariant(self):
        ref = total_probability(GEOM, X)
        for theta in np.linspace(0, np.pi / 4, 17):
            avg = 0.5 * (conditional_probability(theta, 0, GEOM, X) + conditional_probability(theta, 1, GEOM, X))
            assert np.max(np.abs(avg - ref)) / SCALE < 1e-12

    def test_same_as_theta_zero_conditional(self):
        np.testing.assert_allclose(total_pattern(0.6, GEOM, GRID).values,
                                   conditional_pattern(0.0, 0, GEOM, GRID).values, rtol=1e-12, atol=1e-12)

    def test_symmetric(self):
        v = total_pattern(0.3, GEOM, GRID).values
        np.testing.assert_allclose(v, v[::-1], atol=1e-9)

    def test_single_slit_shape(self):
        # total curve is the single-slit envelope: zeros at +-lambda L / a
        v = total_pattern(0.3, GEOM, GRID).values
        x0 = GEOM.L * np.tan(np.arcsin(GEOM.wavelength / GEOM.a))
        i = np.argmin(np.abs(X - x0))
        assert v[i] / v.max() < 1e-4
        assert v[i] < v[i - 1] and v[i] < v[i + 1]
        assert np.argmax(v) == GRID.n // 2


class TestVisibility:
    @pytest.mark.parametrize("theta", THETAS)
    def test_tracks_sin_two_theta(self, theta):
        for k in (0, 1):
            v = estimate_visibility(conditional_pattern(theta, k, GEOM, GRID))
            assert v == pytest.approx(np.sin(2 * theta), abs=0.02)

    def test_zero_without_fringes(self):
        assert estimate_visibility(conditional_pattern(0.0, 0, GEOM, GRID)) == 0.0

    def test_quarter_pi_is_one(self):
        assert estimate_visibility(conditional_pattern(np.pi / 4, 0, GEOM, GRID)) == pytest.approx(1.0, abs=0.02)


class TestFringePeriod:
    @pytest.mark.parametrize("theta", THETAS[1:])
    def test_period(self, theta):
        assert measure_fringe_period(theta, GEOM, GRID) == pytest.approx(GEOM.fringe_period, rel=0.01)

    def test_no_fringes(self):
        assert np.isnan(measure_fringe_period(0.0, GEOM, GRID))


class TestScreenState:
    grid = ScreenGrid(n=201)

    def test_structure(self):
        theta = np.pi / 16
        rho = screen_measurement_state(theta, GEOM, self.grid)
        assert rho.space.labels == ("D_X", "D_B")
        assert rho.space.dim == 402
        assert np.trace(rho.matrix).real == pytest.approx(1.0, abs=1e-12)
        diag = np.diag(rho.matrix).real.reshape(self.grid.n, 2)
        x = self.grid.x
        for k in (0, 1):
            pk = conditional_probability(theta, k, GEOM, x)
            np.testing.assert_allclose(diag[:, k] / diag[:, k].sum(), pk / pk.sum(), rtol=1e-12, atol=1e-15)

    def test_screen_marginal_is_total(self):
        rho = screen_measurement_state(0.5, GEOM, self.grid)
        marg = np.diag(partial_trace(rho, "D_X").matrix).real
        p = total_probability(GEOM, self.grid.x)
        np.testing.assert_allclose(marg, p / p.sum(), rtol=1e-12, atol=1e-15)
