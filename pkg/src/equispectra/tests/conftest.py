"""
Global configuration and fixture setup for pytest.

This configuration depends on the :mod:`equispectra.tests.options`
plugin.
"""

import numpy as np
from pytest import fixture


@fixture(scope='session')
def full(request):
    """
    Whether the property suites run at full size.

    This fixture will only be set to `True` if the `--full` command-line
    option is set through the :mod:`equispectra.tests.options` plugin.
    """
    return request.config.getoption('--full')


@fixture(scope='module', params=[
    0x0000, 0x1234, #0xBEEF, 0xCAFE, 0xDEAD, 0xFFFF
])
def seed(request):
    """
    The seed of the random generators of a test module.
    """
    return request.param


@fixture
def rng(seed):
    """
    A fresh :py:class:`numpy.random.Generator` seeded with `seed`.
    """
    return np.random.default_rng(seed)
