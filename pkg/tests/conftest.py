import numpy as np
import pytest

from torusweyl.lattice import TorusDim


@pytest.fixture
def rng():
    return np.random.default_rng(20240915)


def haar_unitary(rng: np.random.Generator, d: int) -> np.ndarray:
    z = rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d))
    q, r = np.linalg.qr(z)
    return q * (np.diagonal(r) / np.abs(np.diagonal(r)))


def random_operator(rng: np.random.Generator, d: int) -> np.ndarray:
    return rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d))


def lattice_points(dim: TorusDim):
    n = dim.two_d
    return [(q, p) for q in range(n) for p in range(n)]
