"""
Tests for the classical single-urn baseline.
"""

import numpy as np
import pytest
from scipy import stats

from ...exceptions import InitialConditionError, InvalidInputError
from ..classical import classical_draw, classical_proportion, simulate_classical_urns
from ..models import ClassicalUrn


class OneVariate:
    def __init__(self, value):
        self.value = value

    def random(self, size):
        return np.full(size, self.value)


class TestClassicalUrn:
    """Test the closed-form urn proportion."""

    def test_from_counts(self):
        urn = ClassicalUrn.from_counts(2, 2, 2)
        assert urn.rho == 0.5
        assert urn.delta == 0.5

    def test_black_first_draw(self):
        """Two red, two black, two added: a black draw leaves 2 of 6 red."""
        urn = ClassicalUrn.from_counts(2, 2, 2)
        assert classical_draw(urn, OneVariate(0.9)) == 0
        assert classical_proportion(urn) == pytest.approx(2 / 6)

    def test_red_first_draw(self):
        urn = ClassicalUrn.from_counts(2, 2, 2)
        assert classical_draw(urn, OneVariate(0.1)) == 1
        assert classical_proportion(urn) == pytest.approx(4 / 6)

    def test_sequence_probability_depends_only_on_counts(self):
        """P(red, black) equals P(black, red)."""

        def probability(colours):
            urn = ClassicalUrn.from_counts(3, 5, 2)
            p = 1.0
            for red in colours:
                u = classical_proportion(urn)
                p *= u if red else 1 - u
                urn.draws += 1
                urn.reds += red
            return p

        assert probability([1, 0, 0]) == pytest.approx(probability([0, 0, 1]))
        assert probability([1, 1, 0]) == pytest.approx(probability([0, 1, 1]))

    @pytest.mark.parametrize("red,black,added", [(0, 1, 1), (1, 0, 1), (1, 1, -1)])
    def test_invalid_counts(self, red, black, added):
        with pytest.raises(InitialConditionError):
            ClassicalUrn.from_counts(red, black, added)


class TestSimulateClassicalUrns:
    """Test the vectorised baseline simulation."""

    def test_shape_and_range(self):
        values = simulate_classical_urns(50, 20, 2, 3, 1, np.random.default_rng(0))
        assert values.shape == (50,)
        assert np.all((values > 0) & (values < 1))

    def test_no_draws_returns_initial_proportion(self):
        values = simulate_classical_urns(5, 0, 2, 3, 1, np.random.default_rng(0))
        np.testing.assert_allclose(values, 0.4)

    def test_invalid_arguments(self):
        with pytest.raises(InvalidInputError):
            simulate_classical_urns(0, 10, 1, 1, 1, np.random.default_rng(0))

    @pytest.mark.slow
    def test_limit_is_beta(self):
        """With rho = delta = 1/2 the limiting proportion is Beta(1, 1)."""
        values = simulate_classical_urns(
            5000, 2000, 2, 2, 2, np.random.default_rng(2024)
        )
        result = stats.kstest(values, stats.beta(1, 1).cdf)
        assert result.pvalue > 0.01

    def test_mean_proportion_stays_at_rho(self):
        """The urn proportion is a martingale, so its ensemble mean stays at rho."""
        values = simulate_classical_urns(
            20000, 50, 3, 5, 2, np.random.default_rng(11)
        )
        stderr = values.std(ddof=1) / np.sqrt(values.size)
        assert abs(values.mean() - 3 / 8) <= 4 * stderr
