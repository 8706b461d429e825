from buckrl.environment import RewardParams, reward
from buckrl.exceptions import ConfigError
from buckrl.testing.testcases import NonDBTestCase


class RewardTest(NonDBTestCase):
    """reward() tests."""

    def setUp(self) -> None:
        """Run this setUp before each test."""
        super().setUp()
        self.params = RewardParams()

    def test_outside_band_is_linear_penalty(self) -> None:
        """|e| = 5 V with alpha 1e-2 costs 0.05."""
        self.assertAlmostEqual(reward(5.0, self.params), -0.05, places=15)
        self.assertAlmostEqual(reward(-5.0, self.params), -0.05, places=15)

    def test_exact_tracking_is_capped(self) -> None:
        """e = 0 pays r_cap whatever the parameters."""
        for params in (self.params, RewardParams(alpha=1.0, beta=10.0, r_cap=3.0)):
            self.assertEqual(reward(0.0, params), params.r_cap)

    def test_inside_band_is_inverse_error(self) -> None:
        """e = 0.1 V pays beta / |e| = 0.01."""
        self.assertAlmostEqual(reward(0.1, self.params), 0.01, places=15)

    def test_inside_band_never_exceeds_cap(self) -> None:
        """beta / |e| is cut at r_cap."""
        params = RewardParams(beta=1.0, omega=0.5)
        self.assertEqual(reward(0.1, params), 1.0)

    def test_small_error_uses_floor_not_cap(self) -> None:
        """0 < |e| <= eps_floor pays beta / eps_floor, not r_cap."""
        for e in (1e-6, 0.005, -0.01):
            self.assertAlmostEqual(reward(e, self.params), 0.1, places=15)
        self.assertLess(reward(1e-9, self.params), reward(0.0, self.params))

    def test_floor_still_capped(self) -> None:
        """beta / eps_floor above r_cap is cut at r_cap."""
        params = RewardParams(beta=0.1, eps_floor=0.01, r_cap=2.0)
        self.assertEqual(reward(0.001, params), 2.0)

    def test_monotone_within_each_branch(self) -> None:
        """Reward never increases with |e| inside the band or outside it."""
        inside = [0.001, 0.01, 0.02, 0.1, 0.3, 0.49]
        outside = [0.5, 1.0, 5.0, 50.0]
        for magnitudes in (inside, outside):
            values = [reward(m, self.params) for m in magnitudes]
            self.assertEqual(values, sorted(values, reverse=True))
            self.assertEqual(values, [reward(-m, self.params) for m in magnitudes])

    def test_parameters_must_be_positive(self) -> None:
        """Non-positive alpha is a config error on reward.alpha."""
        with self.assertRaises(ConfigError) as context:
            RewardParams(alpha=0.0)
        self.assertEqual(context.exception.field, "reward.alpha")
