import random

import pytest

from ellrook.weights import FullElliptic, random_generic_point


@pytest.fixture
def rng():
    return random.Random(20260808)


def sample_elliptic(rng) -> FullElliptic:
    a, b, q, p = random_generic_point(rng)
    return FullElliptic(a, b, q, p)
