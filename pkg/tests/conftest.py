import datetime
import os

import numpy as np
import pytest

from diffregime.series import UniformSeries

EPOCH = datetime.date(2020, 1, 5)
REPO_ROOT = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))


def make_series(values, labels=None, dt=1.0):
    return UniformSeries(values=np.asarray(values, dtype=float), epoch=EPOCH,
                         dt=dt, labels=labels)


def dyadic_series(rng, n):
    """Random series whose values (k/1024) make float arithmetic exact under
    shifts by integers and scalings by powers of two."""
    return make_series(rng.integers(0, 8192, size=n) / 1024.0)


@pytest.fixture
def rng():
    return np.random.Generator(np.random.PCG64(1234))


@pytest.fixture(scope="session")
def dji_csv_path():
    return os.path.join(REPO_ROOT, "src", "diffregime", "data", "dji_weekly.csv")


@pytest.fixture(scope="session")
def dji_config_path():
    return os.path.join(REPO_ROOT, "configs", "dji_default.cfg")
