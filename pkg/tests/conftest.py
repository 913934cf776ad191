import pytest

from smallgen.exactalg.polynomial import IntPolynomial


def P(*high_first):
    """Polynomial from coefficients written leading term first."""
    return IntPolynomial.from_high(*high_first)


@pytest.fixture
def poly():
    return P
