"""Benchmark objective values against independent hand computations."""

import math

import numpy as np
import pytest

from swarmtopo.objectives import (
    OBJECTIVE_NAMES,
    ObjectiveSpec,
    default_spec,
    shekel_params,
)

# brute-force sum over the shipped parameter table, pure Python floats
SHEKEL_AT_4444 = 10.531929251218955


def _shekel_reference(x) -> float:
    params = shekel_params()
    total = 0.0
    for center, height in zip(params.centers, params.heights):
        square = 0.0
        for xj, aj in zip(x, center):
            square += (float(xj) - float(aj)) ** 2
        total += 1.0 / (float(height) + square)
    return total


class TestShekel:
    def test_params_table(self):
        params = shekel_params()
        assert params.centers.shape == (10, 4)
        assert params.heights.shape == (10,)
        assert (params.heights > 0).all()
        assert params.centers.flags.writeable is False
        assert shekel_params() is params  # cached

    def test_value_at_first_center(self):
        spec = default_spec("shekel")
        value = spec.evaluate([4.0, 4.0, 4.0, 4.0])
        reference = _shekel_reference([4.0, 4.0, 4.0, 4.0])
        assert abs(value - reference) <= 1e-12 * abs(reference)
        assert abs(value - SHEKEL_AT_4444) < 1e-11

    def test_matches_reference_at_random_points(self):
        spec = default_spec("shekel")
        rng = np.random.default_rng(0)
        for point in rng.uniform(0.0, 10.0, size=(50, 4)):
            ref = _shekel_reference(point)
            assert abs(spec.evaluate(point) - ref) <= 1e-12 * abs(ref)

    def test_first_center_beats_million_random_samples(self):
        spec = default_spec("shekel")
        best = spec.optimum_value
        rng = np.random.default_rng(2024)
        remaining = 1_000_000
        while remaining:
            chunk = min(remaining, 100_000)
            values = spec.evaluate_many(rng.uniform(0.0, 10.0, size=(chunk, 4)))
            assert values.max() < best
            remaining -= chunk

    def test_first_center_is_axis_local_max(self):
        spec = default_spec("shekel")
        center = spec.optimum_location
        base = spec.evaluate(center)
        for axis in range(4):
            for sign in (-1.0, 1.0):
                probe = center.copy()
                probe[axis] += sign * 0.1
                assert spec.evaluate(probe) < base

    def test_locked_to_four_dimensions(self):
        with pytest.raises(ValueError):
            default_spec("shekel", dimension=2)


class TestSeparableObjectives:
    def test_zero_at_origin(self):
        # ackley carries ~2 ulp of libm noise at the origin
        for name in ("rastrigin", "ackley", "griewank"):
            spec = default_spec(name)
            assert abs(spec.evaluate(np.zeros(spec.dimension))) <= 1e-12

    def test_schwefel_optimum(self):
        spec = default_spec("schwefel")
        assert abs(spec.evaluate([420.9687, 420.9687])) <= 1e-3
        assert abs(spec.optimum_value) <= 1e-3

    def test_hand_computed_values(self):
        # rastrigin([1,1]) = 2 + 2*10*(1 - cos(2*pi)) = 2
        assert abs(default_spec("rastrigin").evaluate([1.0, 1.0]) - 2.0) < 1e-9
        # griewank at (pi, pi): sum term + product term by hand
        x = np.array([np.pi, np.pi])
        expected = float(
            (x**2).sum() / 4000.0
            - math.cos(np.pi / math.sqrt(1)) * math.cos(np.pi / math.sqrt(2))
            + 1.0
        )
        assert abs(default_spec("griewank").evaluate(x) - expected) < 1e-12
        # schwefel([0,0]) = 418.9829*2 exactly (sin(0)=0)
        assert abs(default_spec("schwefel").evaluate([0.0, 0.0]) - 2 * 418.9829) < 1e-9
        # ackley([1,1]): direct transcription
        a, b, c = 20.0, 0.2, 2 * np.pi
        expected = float(
            -a * math.exp(-b * 1.0) - math.exp(math.cos(c)) + a + math.e
        )
        assert abs(default_spec("ackley").evaluate([1.0, 1.0]) - expected) < 1e-12

    def test_nonnegative_on_box(self):
        rng = np.random.default_rng(5)
        for name in ("rastrigin", "ackley", "griewank"):
            spec = default_spec(name)
            pts = rng.uniform(spec.lower, spec.upper, size=(2000, spec.dimension))
            assert (spec.evaluate_many(pts) >= -1e-12).all()

    def test_dimension_override(self):
        spec = default_spec("rastrigin", dimension=5)
        assert spec.dimension == 5
        assert spec.evaluate(np.zeros(5)) == 0.0


class TestSpecContainer:
    def test_table_defaults(self):
        expectations = {
            "shekel": (4, 0.0, 10.0, "max"),
            "ackley": (2, -15.0, 30.0, "min"),
            "griewank": (2, -600.0, 600.0, "min"),
            "schwefel": (2, -500.0, 500.0, "min"),
            "rastrigin": (2, -5.12, 5.12, "min"),
        }
        assert set(OBJECTIVE_NAMES) == set(expectations)
        for name, (dim, lower, upper, direction) in expectations.items():
            spec = default_spec(name)
            assert (spec.dimension, spec.lower, spec.upper, spec.direction) == (
                dim,
                lower,
                upper,
                direction,
            )
            assert spec.optimum_value == spec.evaluate(spec.optimum_location)

    def test_range_diagonal(self):
        assert default_spec("shekel").range_diagonal() == 20.0
        assert abs(
            default_spec("ackley").range_diagonal() - math.sqrt(2) * 45.0
        ) < 1e-12

    def test_score_many_direction(self):
        pts = np.array([[1.0, 2.0], [0.5, -0.5]])
        mini = default_spec("rastrigin")
        assert np.array_equal(mini.score_many(pts), -mini.evaluate_many(pts))
        shek = default_spec("shekel")
        pts4 = np.array([[4.0, 4.0, 4.0, 4.0]])
        assert np.array_equal(shek.score_many(pts4), shek.evaluate_many(pts4))

    def test_shape_and_finite_checks(self):
        spec = default_spec("ackley")
        with pytest.raises(ValueError):
            spec.evaluate([1.0, 2.0, 3.0])
        with pytest.raises(ValueError):
            spec.evaluate([np.nan, 0.0])
        with pytest.raises(ValueError):
            spec.evaluate_many(np.zeros((3, 5)))

    def test_rejects_unknown_name(self):
        with pytest.raises(ValueError):
            default_spec("banana")
        with pytest.raises(ValueError):
            ObjectiveSpec(
                name="banana",
                dimension=2,
                lower=0.0,
                upper=1.0,
                direction="min",
                optimum_location=np.zeros(2),
                optimum_value=0.0,
            )
