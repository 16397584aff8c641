import sys
from pathlib import Path

import numpy as np
import pytest

# Run against the source tree even when the package is not installed.
SRC = Path(__file__).resolve().parent.parent / "src"
if str(SRC) not in sys.path:
    sys.path.insert(0, str(SRC))

from localbiplots import SimulationConfig, simulate  # noqa: E402


@pytest.fixture(scope="session")
def sim_default():
    """The simulated dataset at default config, shared across test modules."""
    return simulate(SimulationConfig())


@pytest.fixture()
def rng():
    return np.random.default_rng(20240817)


def random_spd(rng, p, jitter=0.5):
    """Well-conditioned random SPD matrix, exactly symmetric as stored."""
    a = rng.normal(size=(p, p))
    m = a @ a.T + jitter * np.eye(p)
    return (m + m.T) / 2.0
