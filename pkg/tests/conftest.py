import numpy as np
import pytest

from gffads.correlators import GaussianPacket, Power
from gffads.spacetime import MinkVector


def rel_err(a, b):
    return abs(a - b) / max(abs(b), 1e-300)


@pytest.fixture
def packet_trio():
    """Bra packet, ket packet and tensor smearing used across stress checks.

    The bra enters matrix elements through fhat1(-k), so its carrier points
    into the backward cone to center the wavefunction inside V+.
    """
    f1 = GaussianPacket(MinkVector((0.0, 0.0)), 1.0, MinkVector((-2.0, -0.5)))
    f2 = GaussianPacket(MinkVector((0.3, -0.2)), 1.2, MinkVector((1.8, -0.4)))
    f = GaussianPacket(MinkVector((0.0, 0.0)), 0.8, MinkVector((0.0, 0.0)))
    return f1, f2, f


@pytest.fixture
def hpow():
    return Power(0.5)


@pytest.fixture
def rng():
    return np.random.default_rng(0)
