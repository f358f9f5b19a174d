import math

import pytest


def sigfig_tol(reference: float, figures: int) -> float:
    """Half a unit in the given significant digit of the reference value."""
    return 0.5 * 10.0 ** (math.floor(math.log10(abs(reference))) - figures + 1)


def assert_sigfigs(got: float, want: float, figures: int, what: str = ""):
    tol = sigfig_tol(want, figures)
    assert abs(got - want) <= tol, (
        f"{what or 'value'}: {got!r} differs from {want!r} by "
        f"{abs(got - want):.3e} (> {figures}-figure tolerance {tol:.3e})")


@pytest.fixture(scope="session")
def tf_reference():
    from sspade.problems import thomas_fermi
    return thomas_fermi.reference()


@pytest.fixture(scope="session")
def nls_reference():
    from sspade.problems import nls_vortex
    return nls_vortex.reference()


@pytest.fixture(scope="session")
def rd_reference():
    from sspade.problems import ruina_dieterich
    return ruina_dieterich.reference()
