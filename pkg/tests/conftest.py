import numpy as np
import pytest

from spectral_pencil import Quadruple, to_exact


def quad(x, y, f, g, backend="exact"):
    conv = to_exact if backend == "exact" else (lambda a: np.asarray(a, dtype=complex))
    return Quadruple(*(conv(np.atleast_2d(a)) for a in (x, y, f, g)))


@pytest.fixture
def E1():
    return quad([[0]], [[0]], [[1]], [[1]])


@pytest.fixture
def k1l2():
    return quad([[0]], [[0, 0], [0, 1]], [[1, 0]], [[1], [0]])


@pytest.fixture
def rng():
    return np.random.default_rng(20261016)
