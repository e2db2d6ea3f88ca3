import numpy as np
import pytest
from hypothesis import strategies as st

from bilms.bicomplex import Bicomplex, BicomplexVector

coord = st.floats(min_value=-10, max_value=10, allow_nan=False, allow_infinity=False)


@st.composite
def bicomplexes(draw):
    return Bicomplex.from_coords(draw(coord), draw(coord), draw(coord), draw(coord))


def assert_close(a: Bicomplex, b: Bicomplex, atol: float = 1e-12):
    assert (a - b).norm() <= atol, f"{a!r} != {b!r}"


def assert_vec_close(a: BicomplexVector, b: BicomplexVector, atol: float = 1e-12):
    assert len(a) == len(b)
    err = np.sqrt((a - b).norm_sq())
    assert err <= atol, f"{a!r} != {b!r} (err {err:.3g})"


@pytest.fixture
def rng():
    return np.random.default_rng(12345)
