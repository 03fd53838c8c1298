import math

import numpy as np
import pytest

from base.BaseError import InvalidArgumentError
from module.Design.PriorBox import PriorBox
from module.Prior.UniformPrior import UniformPrior

class TestUniformPrior:

    def test_draws_stay_in_support(self) -> None:
        prior = UniformPrior.gd(200.0, 600.0)
        draws = prior.sample(seed = 4, n = 10000)
        assert np.all(draws >= 200.0)
        assert np.all(draws <= 600.0)

    def test_mean_converges(self) -> None:
        prior = UniformPrior.velocity(0.5, 2.0)
        draws = prior.sample(seed = 9, n = 100000)
        assert np.mean(draws) == pytest.approx(1.25, rel = 0.01)

    def test_same_seed_same_draws(self) -> None:
        prior = UniformPrior.gd()
        np.testing.assert_array_equal(prior.sample(3, 50), prior.sample(3, 50))

    def test_density(self) -> None:
        prior = UniformPrior.gd(200.0, 600.0)
        assert prior.density(400.0) == pytest.approx(1.0 / 400.0)
        assert prior.density(600.0) == pytest.approx(1.0 / 400.0)
        assert prior.density(601.0) == 0.0
        assert prior.log_density(100.0) == -math.inf

    @pytest.mark.parametrize("lower, upper", [(1.0, 1.0), (2.0, 1.0), (0.0, math.inf)])
    def test_rejects_bad_bounds(self, lower: float, upper: float) -> None:
        with pytest.raises(InvalidArgumentError):
            UniformPrior(lower = lower, upper = upper)

    def test_rejects_empty_sample(self) -> None:
        with pytest.raises(InvalidArgumentError):
            UniformPrior.gd().sample(seed = 0, n = 0)

class TestPriorBox:

    def test_scale_maps_corners(self) -> None:
        box = PriorBox()
        x = box.scale([0.5, 2.0], [200.0, 600.0])
        np.testing.assert_allclose(x, [[0.0, 0.0], [1.0, 1.0]])

    def test_contains_is_closed(self) -> None:
        box = PriorBox()
        assert box.contains(0.5, 600.0)
        assert not box.contains(0.49, 400.0)

    def test_from_dict_ignores_other_keys(self) -> None:
        box = PriorBox.from_dict({"v_min": 1, "v_max": 3, "gd_min": 100, "gd_max": 200, "n_points": 5})
        assert box == PriorBox(1.0, 3.0, 100.0, 200.0)
        assert box.gd().width() == 100.0

    def test_rejects_inverted_box(self) -> None:
        with pytest.raises(InvalidArgumentError):
            PriorBox(gd_min = 600.0, gd_max = 200.0)
