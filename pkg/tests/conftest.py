import math

import pytest

from spinlab.quantum.qcore import DensityMatrix, PureState, computational_basis, mix
from spinlab.quantum.rng import RngStream
from spinlab.quantum.spin import spin_state

R2 = 1 / math.sqrt(2)


@pytest.fixture
def rng() -> RngStream:
    return RngStream(seed=20240601)


@pytest.fixture
def symmetric_state() -> PureState:
    return PureState((R2, R2))


@pytest.fixture
def half_mixture() -> DensityMatrix:
    return mix(computational_basis(2), [0.5, 0.5])


@pytest.fixture
def sixty_degree_state() -> PureState:
    return spin_state(math.pi / 3, 0.0)