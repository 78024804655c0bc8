import numpy as np
import pytest

from qsatom import DriveConfig, PhaseShiftTable, ScatteringScalars


@pytest.fixture
def fano_scalars():
    """Asymmetric reference set: s-wave shifts of opposite sign, small
    l >= 1 norms sitting exactly on the triangle bound, tiny lamp shift."""
    return ScatteringScalars(delta0_plus=-0.03, delta0_minus=0.13,
                             norm2_pg_plus=0.005, norm2_pg_minus=0.005,
                             norm2_pdg=0.02, eps_r=-0.001)


@pytest.fixture
def dwave_table():
    """Phase-shift table with the reference s-wave shifts plus one d-wave
    channel; its scalar reduction is close to the reference set."""
    return PhaseShiftTable(delta_plus=np.array([-0.03, 0.0, 0.0633]),
                           delta_minus=np.array([0.13, 0.0, 0.0]))


@pytest.fixture
def mollow_drive():
    return DriveConfig(eta=1.0, ztilde=0.0, gammatilde=0.3)
