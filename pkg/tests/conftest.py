import numpy as np
import pytest

from gframes import GFrame, make_gon_basis, make_griesz
from gframes.linalg import random_unitary


def random_blocks(rng, n, dims, scale=1.0):
    return tuple(
        scale * (rng.standard_normal((d, n)) + 1j * rng.standard_normal((d, n)))
        / np.sqrt(2 * n)
        for d in dims
    )


def random_frame(rng, n, dims):
    """Gaussian blocks; almost surely a frame when sum(dims) >= n."""
    assert sum(dims) >= n
    return GFrame(n, random_blocks(rng, n, dims))


def random_gon(rng, n, dims):
    return make_gon_basis(n, dims, rotation=random_unitary(n, rng))


def random_riesz(rng, n, dims, cond_max=10.0):
    """Riesz operator basis with a controlled condition number."""
    U = random_unitary(n, rng)
    V = random_unitary(n, rng)
    s = np.exp(rng.uniform(0.0, np.log(cond_max), n))
    s = s / s.min()
    X = (U * s) @ V.conj().T
    return make_griesz(random_gon(rng, n, dims), X), X


@pytest.fixture
def rng():
    return np.random.default_rng(20260826)


@pytest.fixture
def mercedes():
    r3 = np.sqrt(3.0)
    return GFrame(2, (
        np.array([[1.0, 0.0]], dtype=complex),
        np.array([[-0.5, r3 / 2]], dtype=complex),
        np.array([[-0.5, -r3 / 2]], dtype=complex),
    ))
