import numpy as np
import pytest
from hypothesis import settings

settings.register_profile("repo", max_examples=40, deadline=None)
settings.load_profile("repo")


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


def random_poly(rng, degree, scale=1.0):
    c = rng.normal(size=degree + 1) + 1j * rng.normal(size=degree + 1)
    return scale * c / np.sqrt(2 * (degree + 1))
