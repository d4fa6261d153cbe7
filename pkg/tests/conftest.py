from __future__ import annotations

import numpy as np
import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

settings.register_profile(
    "default", max_examples=40, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")

finite = st.floats(-10, 10, allow_nan=False, allow_infinity=False)


@st.composite
def cmatrices(draw, max_rows=6, max_cols=6, min_rows=1, min_cols=1):
    m = draw(st.integers(min_rows, max_rows))
    n = draw(st.integers(min_cols, max_cols))
    re = draw(arrays(np.float64, (m, n), elements=finite))
    im = draw(arrays(np.float64, (m, n), elements=finite))
    return re + 1j * im


@st.composite
def cvectors(draw, min_dim=1, max_dim=8, dim=None):
    n = dim if dim is not None else draw(st.integers(min_dim, max_dim))
    re = draw(arrays(np.float64, (n,), elements=finite))
    im = draw(arrays(np.float64, (n,), elements=finite))
    return re + 1j * im


def crandn(rng, *shape):
    return rng.standard_normal(shape) + 1j * rng.standard_normal(shape)


def random_unit(rng, n):
    v = crandn(rng, n)
    return v / np.linalg.norm(v)


def random_unitary(rng, n):
    q, r = np.linalg.qr(crandn(rng, n, n))
    return q * (np.diag(r) / np.abs(np.diag(r)))


@pytest.fixture
def rng():
    return np.random.default_rng(20260101)
