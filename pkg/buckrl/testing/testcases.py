import math

from typing import Optional, Sequence

import numpy as np
import pytest

from django.test.testcases import SimpleTestCase

from buckrl.logging.logging import TerminalLoggingMixin


class TestMixin(TerminalLoggingMixin):
    """Mixin class for tests."""

    verbosity = 0

    def assertListsAreEqual(
        self, first: list, second: list, msg: Optional[str] = None
    ) -> None:
        """Assert that first and second hold the same items, order ignored.

        Items only need ==, so unhashable values such as dicts work too.
        """
        remaining = list(second)
        missing = []
        for item in first:
            if item in remaining:
                remaining.remove(item)
            else:
                missing.append(item)
        if msg is None:
            msg = "Lists differ, only in first: {}, only in second: {}".format(
                missing, remaining
            )
        assert not missing and not remaining, msg

    def assertArraysAlmostEqual(
        self,
        first: Sequence[float],
        second: Sequence[float],
        atol: float = 1e-12,
        rtol: float = 0.0,
        msg: Optional[str] = None,
    ) -> None:
        """Assert elementwise closeness of two arrays of equal shape."""
        first, second = np.asarray(first, dtype=float), np.asarray(second, dtype=float)
        if msg is None:
            msg = "Arrays differ (atol={}, rtol={}):\n{}\n!=\n{}".format(
                atol, rtol, first, second
            )
        assert first.shape == second.shape, msg
        assert np.allclose(first, second, atol=atol, rtol=rtol), msg

    def assertWithinBinomialBand(
        self,
        count: int,
        trials: int,
        probability: float,
        sigmas: float = 3.0,
        msg: Optional[str] = None,
    ) -> None:
        """Assert count lies within sigmas standard deviations of trials * probability."""
        mean = trials * probability
        spread = sigmas * math.sqrt(trials * probability * (1.0 - probability))
        if msg is None:
            msg = "Count {} outside {} +- {:.1f}".format(count, mean, spread)
        assert abs(count - mean) <= spread, msg


@pytest.mark.non_db
class NonDBTestCase(TestMixin, SimpleTestCase):
    """Our custom test case wrapper for tests not involving database access."""

    maxDiff = None
