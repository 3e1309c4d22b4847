import numpy as np
import pytest

from funcal import (
    AggregatedSamples,
    CalibrationResult,
    ComponentCurves,
    SampleGrid,
    WeightMatrix,
    aggregate_curve,
    alpha1,
    alpha2,
    validate_problem,
)
from funcal.errors import ValidationError


def _problem(m=4, n=3, l=2):
    rng = np.random.default_rng(1)
    data = AggregatedSamples(rng.standard_normal((m, n)))
    weights = WeightMatrix(rng.uniform(0.1, 1.0, (l, n)))
    grid = SampleGrid(np.linspace(0.0, 1.0, m))
    return data, weights, grid


class TestSampleGrid:
    def test_accepts_equally_spaced(self):
        grid = SampleGrid(np.linspace(-1, 2, 1024))
        assert len(grid) == 1024
        assert grid.span == (-1.0, 2.0)

    def test_tolerates_tiny_spacing_jitter(self):
        pts = np.linspace(0, 1, 11)
        pts[5] += 1e-11  # well under the 1e-9 relative tolerance
        SampleGrid(pts)

    def test_rejects_unequal_spacing(self):
        with pytest.raises(ValidationError, match="equally spaced"):
            SampleGrid([0.0, 1.0, 3.0])

    def test_rejects_decreasing(self):
        with pytest.raises(ValidationError, match="increasing"):
            SampleGrid([0.0, 2.0, 1.0])

    def test_rejects_single_point(self):
        with pytest.raises(ValidationError, match="at least 2"):
            SampleGrid([1.0])

    def test_points_are_readonly(self):
        grid = SampleGrid([0.0, 1.0, 2.0])
        with pytest.raises(ValueError):
            grid.points[0] = 5.0


class TestValidateProblem:
    def test_consistent_shapes_accepted(self):
        data, weights, grid = _problem()
        out = validate_problem(data, weights, grid)
        assert out == (data, weights, grid)

    def test_idempotent(self):
        triple = _problem()
        once = validate_problem(*triple)
        twice = validate_problem(*once)
        assert once == twice

    def test_column_count_mismatch(self):
        data, _, grid = _problem(n=3)
        weights = WeightMatrix(np.ones((2, 2)))
        with pytest.raises(ValidationError, match="3 sample columns.*2 columns"):
            validate_problem(data, weights, grid)

    def test_row_count_mismatch(self):
        data, weights, _ = _problem(m=4)
        grid = SampleGrid(np.linspace(0, 1, 5))
        with pytest.raises(ValidationError, match="4 rows.*5 points"):
            validate_problem(data, weights, grid)

    def test_nonfinite_entry_reports_coordinates(self):
        values = np.zeros((4, 3))
        values[2, 1] = np.nan
        with pytest.raises(ValidationError, match=r"\(2, 1\)"):
            AggregatedSamples(values)


class TestWeightMatrix:
    def test_warns_on_nonpositive_entries(self):
        with pytest.warns(UserWarning, match="non-positive"):
            WeightMatrix([[1.0, -0.5], [0.2, 0.3]])

    def test_rejects_nonfinite(self):
        with pytest.raises(ValidationError, match="non-finite"):
            WeightMatrix([[1.0, np.inf]])


class TestAggregateCurve:
    def setup_method(self):
        rng = np.random.default_rng(2)
        self.curves = ComponentCurves(rng.standard_normal((16, 2)))

    def test_unit_weight_selects_column(self):
        out = aggregate_curve(self.curves, [1.0, 0.0])
        np.testing.assert_array_equal(out, self.curves.values[:, 0])

    def test_null_combination(self):
        out = aggregate_curve(self.curves, [0.0, 0.0])
        np.testing.assert_array_equal(out, np.zeros(16))

    def test_simulated_point_combination(self):
        # at x = -pi/5 the first component vanishes and the second is -2
        x = -np.pi / 5.0
        curves = ComponentCurves([[alpha1(x), alpha2(x)]])
        out = aggregate_curve(curves, [0.7, 0.3])
        assert out[0] == pytest.approx(-0.6, abs=1e-12)

    def test_length_mismatch(self):
        with pytest.raises(ValidationError, match="weights"):
            aggregate_curve(self.curves, [1.0, 2.0, 3.0])

    def test_linear_in_weights(self):
        rng = np.random.default_rng(3)
        for _ in range(25):
            w1 = rng.standard_normal(2)
            w2 = rng.standard_normal(2)
            a, b = rng.standard_normal(2)
            lhs = aggregate_curve(self.curves, a * w1 + b * w2)
            rhs = a * aggregate_curve(self.curves, w1) + b * aggregate_curve(self.curves, w2)
            np.testing.assert_allclose(lhs, rhs, rtol=1e-12, atol=1e-12)


class TestCalibrationResult:
    def test_requires_diagnostics(self):
        curves = ComponentCurves(np.ones((4, 1)))
        with pytest.raises(ValidationError, match="diagnostics"):
            CalibrationResult(curves=curves, diagnostics={})
