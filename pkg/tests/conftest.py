import numpy as np
import pytest

import vortexed as vx


@pytest.fixture(scope="session")
def rng():
    return np.random.default_rng(20260815)


@pytest.fixture(scope="session")
def lll_basis_small():
    """N=3 bosons, LLL, L in [0, 6]."""
    return vx.build_basis(vx.BasisSpec(n=3, n_ll=1, l_min=0, l_max=6))


@pytest.fixture(scope="session")
def two_level_basis_small():
    """N=3 bosons, two Landau levels, L in [-2, 4]."""
    return vx.build_basis(vx.BasisSpec(n=3, n_ll=2, l_min=-2, l_max=4))


@pytest.fixture(scope="session")
def engine_n6_lll():
    """Reusable N=6 lowest-level engine at the default couplings."""
    return vx.SweepEngine(vx.ModelParams(n=6, g=0.5, a=0.03, n_ll=1))


def random_state(basis, rng) -> np.ndarray:
    v = rng.standard_normal(basis.dimension)
    return v / np.linalg.norm(v)
