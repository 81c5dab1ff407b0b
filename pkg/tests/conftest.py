from fractions import Fraction

import pytest

from trifree.independent import build
from trifree.shapes import catalog
from trifree.uniform import build_uniform


@pytest.fixture(scope="session")
def frame():
    return catalog()["frame"]


@pytest.fixture(scope="session")
def independent_levels(frame):
    return {k: build(k, frame) for k in (1, 2, 3)}


@pytest.fixture(scope="session")
def uniform_levels(frame):
    half = Fraction(1, 2)
    return {k: build_uniform(k, half, frame) for k in (1, 2, 3)}
