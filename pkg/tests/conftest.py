import pytest

from app.cluster import Step
from app.exactpoly import parse_form
from app.linsys import LinearSystem

LINE = "x + 2*y - z"
CONIC = "x^2 + y*z"
NODAL = "y^2*z - x^3 - x^2*z"
CUSPIDAL = "y^2*z - x^3"
QUINTIC = "y^2*z^3 - x^5"
SMOOTH_CUBIC = "y^2*z - x^3 + x*z^2"

# (curve, nu~, proj dim of L_C, genus, size of the singular cluster)
CORPUS = [
    (LINE, 1, 2, 0, 0),
    (CONIC, 4, 5, 0, 0),
    (NODAL, 5, 6, 0, 1),
    (CUSPIDAL, 5, 6, 0, 1),
    (QUINTIC, 4, 5, 0, 4),
]

ORIGIN = (0, 0, 1)
AT_Y = (0, 1, 0)


@pytest.fixture
def nodal():
    return parse_form(NODAL)


@pytest.fixture
def cuspidal():
    return parse_form(CUSPIDAL)


@pytest.fixture
def quintic():
    return parse_form(QUINTIC)


@pytest.fixture
def conic():
    return parse_form(CONIC)


@pytest.fixture
def smooth_cubic():
    return parse_form(SMOOTH_CUBIC)


@pytest.fixture
def first_step():
    return Step.first(0)


def pencil_for_conics(original):
    """Replacement for the L_C builder that gives conics a pencil instead of the net of conics."""

    def build(form, cluster):
        if form.degree == 2:
            return LinearSystem.from_forms([form, parse_form("x^2")])
        return original(form, cluster)

    return build
