import numpy as np
import pytest

from su2gap import Pair, SU2Element


@pytest.fixture
def rng():
    return np.random.default_rng(20260808)


@pytest.fixture
def lps_pair() -> Pair:
    """Quaternion-generator pair: rotations by arccos(-3/5) about orthogonal axes."""
    return Pair(
        SU2Element.from_quaternion(1, 2, 0, 0),
        SU2Element.from_quaternion(1, 0, 2, 0),
    )


@pytest.fixture
def commuting_pair() -> Pair:
    return Pair(
        SU2Element(np.exp(1j * np.pi / 5), 0.0),
        SU2Element(np.exp(1j * np.sqrt(2)), 0.0),
    )
