import numpy as np
import pytest

from hyperfock import normalize


def random_state(rng, dim):
    """Normalized state with complex Gaussian amplitudes."""
    return normalize(rng.normal(size=dim) + 1j * rng.normal(size=dim))


@pytest.fixture
def rng():
    return np.random.default_rng(20240811)
