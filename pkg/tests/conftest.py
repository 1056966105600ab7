import numpy as np
import pytest
from scipy.optimize import linear_sum_assignment


def matched_distance(a, b) -> float:
    """Largest pairwise distance under a minimum-cost perfect matching."""
    a = np.asarray(a, dtype=complex).ravel()
    b = np.asarray(b, dtype=complex).ravel()
    assert a.size == b.size, f"multiset sizes differ: {a.size} vs {b.size}"
    cost = np.abs(a[:, None] - b[None, :])
    rows, cols = linear_sum_assignment(cost)
    return float(cost[rows, cols].max())


@pytest.fixture
def rng():
    return np.random.default_rng(20240817)


def random_centered(rng, n: int, radius: float = 1.0) -> np.ndarray:
    r = radius * np.sqrt(rng.uniform(0.0, 1.0, n))
    theta = rng.uniform(0.0, 2.0 * np.pi, n)
    z = r * np.exp(1j * theta)
    return z - z.mean()
