"""Tests for the derived random streams."""

import numpy as np
import pytest

from app.services.streams import COORDINATOR_STREAM, coordinator_stream, derive_stream

# chi-square critical value, 9 degrees of freedom, p = 0.001
CHI2_CRITICAL_9DF = 27.877


class TestDeriveStream:

    def test_pure_function_of_inputs(self) -> None:
        a = derive_stream(42, 3, 7).random(64)
        b = derive_stream(42, 3, 7).random(64)
        np.testing.assert_array_equal(a, b)

    def test_neighbouring_pairs_differ(self) -> None:
        a = derive_stream(42, 0, 0).random(64)
        b = derive_stream(42, 0, 1).random(64)
        assert not np.any(a == b)

    def test_generations_and_seeds_differ(self) -> None:
        base = derive_stream(1, 0, 0).random(8)
        assert not np.array_equal(base, derive_stream(1, 1, 0).random(8))
        assert not np.array_equal(base, derive_stream(2, 0, 0).random(8))

    def test_coordinator_stream_is_reserved_index(self) -> None:
        np.testing.assert_array_equal(
            coordinator_stream(5, 2).random(16),
            derive_stream(5, 2, COORDINATOR_STREAM).random(16),
        )

    def test_negative_coordinates_rejected(self) -> None:
        with pytest.raises(ValueError):
            derive_stream(0, -1, 0)

    def test_uniformity(self) -> None:
        draws = derive_stream(2024, 1, 1).random(100_000)
        counts, _ = np.histogram(draws, bins=10, range=(0.0, 1.0))
        expected = len(draws) / 10
        chi2 = float(((counts - expected) ** 2 / expected).sum())
        assert chi2 < CHI2_CRITICAL_9DF
