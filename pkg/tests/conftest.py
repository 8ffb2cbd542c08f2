import numpy as np
import pytest

from idealtetra import _fallback

try:
    from idealtetra import _kernels
except ImportError:
    _kernels = None

KERNELS = [pytest.param(_fallback, id="python")]
if _kernels is not None:
    KERNELS.append(pytest.param(_kernels, id="cython"))


@pytest.fixture(params=KERNELS)
def kernels(request):
    """Each kernel implementation in turn."""
    return request.param


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


def random_null(rng):
    """A random null vector with positive first coordinate."""
    u = rng.standard_normal(3)
    u /= np.linalg.norm(u)
    return rng.uniform(0.5, 3.0) * np.concatenate(([1.0], u))
