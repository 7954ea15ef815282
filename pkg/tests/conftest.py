import math

import numpy as np
import pytest
from hypothesis import settings

settings.register_profile("default", deadline=None)
settings.load_profile("default")


def taylor_expm(A, terms=60):
    """exp(A) by scaling and squaring a truncated Taylor series.

    Independent of eigendecomposition; used as an oracle only.
    """
    norm = np.linalg.norm(A, 1)
    k = max(0, int(math.ceil(math.log2(norm))) + 1) if norm > 0 else 0
    B = A / 2**k
    out = np.eye(A.shape[0], dtype=complex)
    term = np.eye(A.shape[0], dtype=complex)
    for n in range(1, terms):
        term = term @ B / n
        out = out + term
    for _ in range(k):
        out = out @ out
    return out


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


def random_su2(rng):
    v = rng.normal(size=4)
    a, b, c, d = v / np.linalg.norm(v)
    return np.array([[a + 1j * b, -c + 1j * d], [c + 1j * d, a - 1j * b]])
