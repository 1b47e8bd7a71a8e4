import numpy as np
import pytest

from hullmaps import SamplePlan, CapFocus, StrategyDimensionMismatchError, sample, sample_near


def test_uniform_grid_angles():
    dirs = sample(SamplePlan(dim=2, strategy="uniform_grid_2d", count=4))
    expected = np.array([[1, 0], [0, 1], [-1, 0], [0, -1]], dtype=float)
    assert np.allclose(dirs, expected, atol=1e-15)


def test_gaussian_reproducible():
    plan = SamplePlan(dim=4, strategy="gaussian_random", count=100, seed=7)
    a = sample(plan)
    b = sample(plan)
    assert a.shape == (100, 4)
    assert np.array_equal(a, b)


def test_all_outputs_unit_norm():
    for plan in (
        SamplePlan(dim=2, strategy="uniform_grid_2d", count=257),
        SamplePlan(dim=3, strategy="fibonacci_3d", count=513),
        SamplePlan(dim=5, strategy="gaussian_random", count=200, seed=1),
    ):
        dirs = sample(plan)
        assert np.abs(np.linalg.norm(dirs, axis=1) - 1.0).max() <= 1e-12


def test_fibonacci_nearest_neighbor_gap():
    """Brute-force check: every sample has a close neighbor at count=1000."""
    dirs = sample(SamplePlan(dim=3, strategy="fibonacci_3d", count=1000))
    dots = np.clip(dirs @ dirs.T, -1.0, 1.0)
    np.fill_diagonal(dots, -1.0)
    nn_angle = np.arccos(dots.max(axis=1))
    assert nn_angle.max() < 0.2


def test_strategy_dimension_mismatch():
    with pytest.raises(StrategyDimensionMismatchError):
        sample(SamplePlan(dim=3, strategy="uniform_grid_2d", count=10))
    with pytest.raises(StrategyDimensionMismatchError):
        sample(SamplePlan(dim=2, strategy="fibonacci_3d", count=10))


def test_plan_validation():
    with pytest.raises(ValueError):
        SamplePlan(dim=2, strategy="uniform_grid_2d", count=0)
    with pytest.raises(ValueError):
        SamplePlan(dim=2, strategy="no_such_strategy", count=5)
    with pytest.raises(ValueError):
        CapFocus(cap_radius=0.0)


def test_cap_single_sample_is_center():
    center = np.array([0.0, 0.0, 1.0])
    plan = SamplePlan(dim=3, strategy="fibonacci_3d", count=1, focus=CapFocus(0.3))
    out = sample_near(plan, center)
    assert np.array_equal(out, center[None, :])


def test_cap_containment_3d():
    center = np.array([0.0, 0.0, 1.0])
    plan = SamplePlan(dim=3, strategy="fibonacci_3d", count=100, focus=CapFocus(0.1))
    out = sample_near(plan, center)
    assert out.shape == (100, 3)
    assert np.all(out @ center >= np.cos(0.1))
    assert np.abs(np.linalg.norm(out, axis=1) - 1.0).max() <= 1e-12


def test_cap_containment_2d():
    center = np.array([1.0, 0.0])
    plan = SamplePlan(dim=2, strategy="uniform_grid_2d", count=64, focus=CapFocus(0.25))
    out = sample_near(plan, center)
    assert np.all(out @ center >= np.cos(0.25) - 1e-15)


def test_cap_containment_generic_dim():
    rng = np.random.default_rng(2)
    center = rng.standard_normal(4)
    center /= np.linalg.norm(center)
    plan = SamplePlan(dim=4, strategy="gaussian_random", count=60, seed=5,
                      focus=CapFocus(0.2))
    out = sample_near(plan, center)
    assert np.all(out @ center >= np.cos(0.2) - 1e-12)
    again = sample_near(plan, center)
    assert np.array_equal(out, again)


def test_full_cap_reaches_everywhere():
    center = np.array([0.0, 0.0, 1.0])
    plan = SamplePlan(dim=3, strategy="fibonacci_3d", count=4000, focus=CapFocus(np.pi))
    out = sample_near(plan, center)
    assert out[:, 2].min() < -0.99  # reaches near the antipode


def test_cap_requires_focus():
    plan = SamplePlan(dim=3, strategy="fibonacci_3d", count=10)
    with pytest.raises(ValueError):
        sample_near(plan, [0.0, 0.0, 1.0])
