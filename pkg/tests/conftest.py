import numpy as np
import pytest

from grassgeo.sampling import (
    generator,
    random_chart_point_rng,
    random_plane_rng,
    random_tangent_rng,
)
from grassgeo.spaces import GrassmannSpace


@pytest.fixture
def rng():
    return generator(20240817)


@pytest.fixture
def cp1():
    return GrassmannSpace(1, 1, epsilon=1)


@pytest.fixture
def cp1_dual():
    return GrassmannSpace(1, 1, epsilon=-1)


@pytest.fixture
def g24():
    return GrassmannSpace(2, 2, epsilon=1)


@pytest.fixture
def g24_dual():
    return GrassmannSpace(2, 2, epsilon=-1)


def random_unitary(rng, n):
    A = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    q, r = np.linalg.qr(A)
    return q * (np.diag(r) / np.abs(np.diag(r))).conj()


__all__ = [
    "random_chart_point_rng",
    "random_plane_rng",
    "random_tangent_rng",
    "random_unitary",
]
