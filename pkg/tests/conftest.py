import random
from fractions import Fraction

import pytest

from ma6.exterior import KForm, dim_grade
from ma6.symplectic import project_effective, standard_space


@pytest.fixture(scope="session")
def space():
    return standard_space()


def rand_fraction(rng, num=6, den=4):
    return Fraction(rng.randint(-num, num), rng.randint(1, den))


def rand_form(rng, grade=3):
    return KForm(grade, [rand_fraction(rng) for _ in range(dim_grade(grade))])


def rand_effective(rng, s):
    """A random rational effective 3-form (projection of a random 3-form)."""
    return project_effective(s, rand_form(rng, 3))


def rand_vector(rng):
    return [rand_fraction(rng) for _ in range(6)]


@pytest.fixture
def rng():
    return random.Random(20260826)
