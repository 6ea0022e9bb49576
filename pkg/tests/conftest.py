import numpy as np
import pytest

from grsegments.algebra.rep import Quiver, Rep
from grsegments.analysis.segments import analyze
from grsegments.presets import preset
from grsegments.tame.catalog import build_catalog


@pytest.fixture(scope="session")
def kronecker() -> Quiver:
    return preset("kronecker")


@pytest.fixture(scope="session")
def a21() -> Quiver:
    return preset("a21")


@pytest.fixture(scope="session")
def a22() -> Quiver:
    return preset("a22_sink_source")


@pytest.fixture(scope="session")
def d4() -> Quiver:
    return preset("d4_tilde")


@pytest.fixture(scope="session")
def h_module(kronecker):
    """Kronecker H_n at the point 0: (id, nilpotent Jordan block)."""

    def make(n: int, p: int = 2) -> Rep:
        J = np.eye(n, k=1, dtype=np.int64)
        return Rep(quiver=kronecker, p=p, dims=(n, n), maps=(np.eye(n, dtype=np.int64), J))

    return make


@pytest.fixture(scope="session")
def kronecker_catalog(kronecker):
    return build_catalog(kronecker, 2, 10)


@pytest.fixture(scope="session")
def kronecker_analysis(kronecker_catalog):
    return analyze(kronecker_catalog, delta=2)


@pytest.fixture(scope="session")
def a21_catalog(a21):
    return build_catalog(a21, 2, 11)


@pytest.fixture(scope="session")
def a21_analysis(a21_catalog):
    return analyze(a21_catalog, delta=2)
