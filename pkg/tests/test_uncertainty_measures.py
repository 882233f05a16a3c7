import json
import math

import numpy as np
import pytest

from circle_uncertainty import state_families, uncertainty_measures
from circle_uncertainty.circle_state import fourier_state, normalize
from circle_uncertainty.exceptions import ConsistencyError, DomainError
from circle_uncertainty.models import TWO_PI, FourierState
from circle_uncertainty.schemas import CoherentParams
from circle_uncertainty.uncertainty_measures import (
    angular_momentum_variance,
    batch_uncertainty_sums,
    build_report,
    char_packet_difference_closed_form,
    circular_variance,
    circular_variance_difference,
    kr_angle_uncertainty,
    kr_from_magnitude,
    line_heisenberg_sum,
    line_position_variance,
    uncertainty_sum,
)
from circle_uncertainty.utils import to_json

from .oracles import cat_sum_oracle, coherent_j_variance_oracle

LAMBDA_GRID = [TWO_PI * j / 16 for j in range(16)]
EPSILON_GRID = [TWO_PI * k / 17 for k in range(1, 17)]


class TestLine:
    @pytest.mark.parametrize("length", [0.5, 1.0, 2.0])
    def test_box_and_split_box(self, length):
        box = line_position_variance(state_families.box_packet(length))
        split = line_position_variance(state_families.split_box_packet(length))
        assert box == pytest.approx(length ** 2 / 12, rel=1e-12)
        assert split == pytest.approx(7 * length ** 2 / 48, rel=1e-12)
        assert split / box == pytest.approx(1.75, abs=1e-12)

    def test_variance_is_shift_invariant(self):
        from circle_uncertainty.models import LineBoxPacket

        shifted = LineBoxPacket([(10.0, 11.0, 1.0)])
        assert line_position_variance(shifted) == pytest.approx(1 / 12, rel=1e-9)

    def test_heisenberg_sum(self):
        assert line_heisenberg_sum(0.5) == pytest.approx(1.0)
        assert line_heisenberg_sum(2.0) == pytest.approx(2.125)
        assert line_heisenberg_sum(0.125) == pytest.approx(2.125)

    @pytest.mark.parametrize("sigma2", [0.0, -1.0])
    def test_heisenberg_domain(self, sigma2):
        with pytest.raises(DomainError):
            line_heisenberg_sum(sigma2)


class TestWindowedVariance:
    @pytest.mark.parametrize("epsilon", [0.3, 1.0, math.pi, 5.0])
    def test_char_packet_at_origin(self, epsilon):
        assert circular_variance(state_families.char_packet(epsilon), 0.0) == pytest.approx(epsilon ** 2 / 12, rel=1e-12)

    @pytest.mark.parametrize("lam", [0.0, 1.0, 3.0, 6.0])
    def test_uniform_packet(self, lam):
        assert circular_variance(state_families.uniform_packet(), lam) == pytest.approx(math.pi ** 2 / 3, rel=1e-12)

    def test_number_state_is_uniform(self):
        assert circular_variance(state_families.number_state(4), 0.0) == pytest.approx(math.pi ** 2 / 3, rel=1e-12)

    def test_origin_shift_increases_variance(self):
        packet = state_families.char_packet(math.pi)
        assert circular_variance(packet, math.pi / 2) == pytest.approx(math.pi ** 2 / 12 + math.pi ** 2 / 2, rel=1e-12)

    def test_window_seam_through_the_peak(self):
        state = state_families.coherent_state(CoherentParams(alpha=math.pi))
        assert circular_variance(state, 0.0) < circular_variance(state, math.pi)


class TestVarianceDifference:
    def test_zero_at_origin(self):
        assert circular_variance_difference(state_families.char_packet(1.0), 0.0) == pytest.approx(0.0, abs=1e-15)

    def test_zero_past_the_packet(self):
        assert circular_variance_difference(state_families.char_packet(math.pi / 2), math.pi) == pytest.approx(0.0, abs=1e-12)

    def test_half_circle_peak(self):
        difference = circular_variance_difference(state_families.char_packet(math.pi), math.pi / 2)
        assert difference == pytest.approx(math.pi ** 2 / 2, abs=1e-9)

    def test_reduced_modulo_two_pi(self):
        packet = state_families.char_packet(2.0)
        assert circular_variance_difference(packet, 1.0 + TWO_PI) == pytest.approx(
            circular_variance_difference(packet, 1.0), abs=1e-12
        )

    @pytest.mark.parametrize("epsilon", EPSILON_GRID)
    def test_grid_matches_closed_form(self, epsilon):
        packet = state_families.char_packet(epsilon)
        for lam in LAMBDA_GRID:
            difference = circular_variance_difference(packet, lam)
            assert difference == pytest.approx(char_packet_difference_closed_form(epsilon, lam), abs=1e-9)

    def test_two_arc_packet_passes_identity(self):
        packet = state_families.two_arc_packet(0.8, 2.0)
        for lam in LAMBDA_GRID:
            circular_variance_difference(packet, lam)

    def test_identity_failure_is_reported(self, monkeypatch):
        monkeypatch.setattr(uncertainty_measures, "_window_identity_rhs", lambda packet, lam: 1.0)
        with pytest.raises(ConsistencyError) as err:
            circular_variance_difference(state_families.char_packet(1.0), 0.5)
        assert err.value.identity == "window-shift identity"
        assert err.value.exit_code == 3


class TestClosedForm:
    def test_values(self):
        assert char_packet_difference_closed_form(math.pi, math.pi / 2) == pytest.approx(math.pi ** 2 / 2)
        assert char_packet_difference_closed_form(1.0, 0.0) == 0.0
        assert char_packet_difference_closed_form(1.0, 2.0) == 0.0

    def test_vanishes_as_lambda_goes_to_zero(self):
        assert char_packet_difference_closed_form(2.0, 1e-9) < 1e-7

    @pytest.mark.parametrize("epsilon, lam", [(0.0, 1.0), (TWO_PI, 1.0), (1.0, -0.1), (1.0, TWO_PI)])
    def test_domain(self, epsilon, lam):
        with pytest.raises(DomainError):
            char_packet_difference_closed_form(epsilon, lam)


class TestLogarithmicMeasure:
    def test_from_magnitude(self):
        assert kr_from_magnitude(1.0) == 0.0
        assert kr_from_magnitude(0.0) == math.inf
        assert kr_from_magnitude(1e-15) == math.inf
        assert kr_from_magnitude(math.exp(-2)) == pytest.approx(1.0)

    def test_number_state(self):
        assert kr_angle_uncertainty(state_families.number_state(0)) == math.inf

    @pytest.mark.parametrize("l", [0.0, 0.3, 0.7])
    @pytest.mark.parametrize("alpha", [0.0, 1.0, 4.0])
    def test_coherent_is_one_half(self, l, alpha):
        state = state_families.coherent_state(CoherentParams(l=l, alpha=alpha))
        assert kr_angle_uncertainty(state) == pytest.approx(0.5, abs=1e-10)

    @pytest.mark.parametrize("epsilon", [0.3, 1.0, 2.0, 4.0, 5.5])
    def test_char_packet(self, epsilon):
        expected = -0.5 * math.log(abs(math.sin(epsilon)) / epsilon)
        assert kr_angle_uncertainty(state_families.char_packet(epsilon)) == pytest.approx(expected, abs=1e-10)

    def test_half_circle_packet_is_undefined(self):
        assert kr_angle_uncertainty(state_families.char_packet(math.pi)) == math.inf

    def test_grows_as_packet_widens(self):
        values = [kr_angle_uncertainty(state_families.char_packet(eps)) for eps in np.linspace(0.05, 3.1, 50)]
        assert all(b > a for a, b in zip(values, values[1:]))

    def test_origin_invariance(self, state_corpus):
        lams = [TWO_PI * j / 64 for j in range(64)]
        for state in state_corpus:
            values = [kr_angle_uncertainty(state, lam) for lam in lams]
            if math.isinf(values[0]):
                assert all(math.isinf(v) for v in values)
            else:
                assert max(values) - min(values) < 1e-12
            assert min(values) >= 0.0


class TestAngularMomentum:
    def test_eigenstate(self):
        assert angular_momentum_variance(state_families.number_state(3)) == 0.0

    def test_equal_superposition(self):
        assert angular_momentum_variance(normalize(fourier_state([1.0, 1.0], 0))) == pytest.approx(0.25)

    def test_coherent(self, coherent_j_variance):
        state = state_families.coherent_state(CoherentParams())
        assert angular_momentum_variance(state) == pytest.approx(coherent_j_variance, abs=1e-9)
        assert coherent_j_variance == pytest.approx(0.498979, abs=1e-6)

    @pytest.mark.parametrize("l", [0.3, 0.7])
    def test_coherent_off_lattice_centre(self, l):
        state = state_families.coherent_state(CoherentParams(l=l))
        assert angular_momentum_variance(state) == pytest.approx(coherent_j_variance_oracle(l), abs=1e-9)

    def test_packets(self):
        assert angular_momentum_variance(state_families.char_packet(1.0)) == math.inf
        assert angular_momentum_variance(state_families.uniform_packet()) == 0.0


class TestUncertaintySum:
    def test_eigenstate_is_infinite(self):
        assert uncertainty_sum(state_families.number_state(0)) == math.inf

    def test_coherent(self, coherent_j_variance):
        state = state_families.coherent_state(CoherentParams())
        assert uncertainty_sum(state) == pytest.approx(0.5 + coherent_j_variance, abs=1e-6)

    def test_cat_beats_coherent(self):
        cat = uncertainty_sum(state_families.cat_state(CoherentParams()))
        coherent = uncertainty_sum(state_families.coherent_state(CoherentParams()))
        assert cat == pytest.approx(cat_sum_oracle(), abs=1e-10)
        assert cat == pytest.approx(0.8126, abs=1e-3)
        assert cat < coherent

    def test_batch_matches_scalar(self, rng):
        coeffs = rng.standard_normal((50, 17)) + 1j * rng.standard_normal((50, 17))
        coeffs /= np.linalg.norm(coeffs, axis=1, keepdims=True)
        batch = batch_uncertainty_sums(coeffs, -8)
        for row, value in zip(coeffs, batch):
            assert value == pytest.approx(uncertainty_sum(FourierState(-8, 8, row)), abs=1e-12)

    def test_batch_marks_vanishing_u2(self):
        coeffs = np.zeros((1, 5), dtype=complex)
        coeffs[0, 2] = 1.0
        assert batch_uncertainty_sums(coeffs, -2)[0] == math.inf

    def test_random_states_stay_finite(self, rng):
        coeffs = rng.standard_normal((2000, 17)) + 1j * rng.standard_normal((2000, 17))
        coeffs /= np.linalg.norm(coeffs, axis=1, keepdims=True)
        sums = batch_uncertainty_sums(coeffs, -8)
        assert np.all(sums > 0)
        assert np.isfinite(sums.min())


class TestReport:
    def test_coherent_report(self, coherent_j_variance):
        report = build_report(state_families.coherent_state(CoherentParams()), 0.0)
        assert report.kr_angle == pytest.approx(0.5, abs=1e-10)
        assert report.j_variance == pytest.approx(coherent_j_variance, abs=1e-9)
        assert report.u2_magnitude == pytest.approx(math.exp(-1), abs=1e-12)

    def test_packet_report(self):
        report = build_report(state_families.char_packet(1.0), 0.5)
        assert report.j_variance == math.inf
        assert report.circ_variance == pytest.approx(circular_variance(state_families.char_packet(1.0), 0.5))

    def test_infinite_values_serialize_as_text(self):
        payload = json.loads(to_json(build_report(state_families.number_state(0), 1.0)))
        assert payload["kr_angle"] == "inf"
        assert payload["sum_kr"] == "inf"
        assert payload["lambda"] == 1.0
        assert payload["schema_version"] == "1.0"
