"""Core exterior algebra: wedge, contraction, pullback, exact complex
scalars.  Oracles are brute-force evaluations over basis vectors."""

import itertools
import random
from fractions import Fraction

import pytest

from ma6.exterior import (
    Bivector6,
    ExactComplex,
    GradeError,
    KForm,
    interior_bivector,
    interior_vector,
    rational_sqrt,
    wedge,
)

from conftest import rand_form, rand_vector


def det_perm(vals):
    """Brute-force alternating sum over permutations."""
    n = len(vals)
    total = 0
    for perm in itertools.permutations(range(n)):
        sign = 1
        for i in range(n):
            for j in range(i + 1, n):
                if perm[i] > perm[j]:
                    sign = -sign
        prod = sign
        for i in range(n):
            prod *= vals[i][perm[i]]
        total += prod
    return total


def eval_bruteforce(form, vectors):
    """(a1∧...∧ak)(v1..vk) summed over the form's terms, by permanent-style
    expansion: coefficient times det of the picked components."""
    from ma6.exterior import COMBS

    total = 0
    for idx, c in zip(COMBS[form.grade], form.coeffs):
        if c == 0:
            continue
        rows = [[v[i - 1] for i in idx] for v in vectors]
        total += c * det_perm(rows)
    return total


def test_evaluate_matches_bruteforce(rng):
    for _ in range(20):
        k = rng.randint(1, 4)
        form = rand_form(rng, k)
        vecs = [rand_vector(rng) for _ in range(k)]
        assert form.evaluate(*vecs) == eval_bruteforce(form, vecs)


def test_wedge_agrees_with_evaluation(rng):
    for _ in range(15):
        ka, kb = rng.randint(1, 2), rng.randint(1, 3)
        a, b = rand_form(rng, ka), rand_form(rng, kb)
        w = wedge(a, b)
        vecs = [rand_vector(rng) for _ in range(ka + kb)]
        # oracle: alternating sum over (ka, kb) shuffles
        total = 0
        idxs = range(ka + kb)
        for left in itertools.combinations(idxs, ka):
            right = [i for i in idxs if i not in left]
            perm = list(left) + right
            sign = 1
            for i in range(len(perm)):
                for j in range(i + 1, len(perm)):
                    if perm[i] > perm[j]:
                        sign = -sign
            total += sign * a.evaluate(*[vecs[i] for i in left]) * \
                b.evaluate(*[vecs[i] for i in right])
        assert w.evaluate(*vecs) == total


def test_wedge_graded_commutativity(rng):
    for ka, kb in [(1, 1), (1, 2), (2, 2), (2, 3), (3, 3), (1, 3)]:
        a, b = rand_form(rng, ka), rand_form(rng, kb)
        sign = (-1) ** (ka * kb)
        assert wedge(a, b) == wedge(b, a) * sign


def test_interior_vector_antiderivation(rng):
    for _ in range(10):
        ka, kb = rng.randint(1, 2), rng.randint(1, 2)
        a, b = rand_form(rng, ka), rand_form(rng, kb)
        X = rand_vector(rng)
        lhs = interior_vector(X, wedge(a, b))
        rhs = wedge(interior_vector(X, a), b) + \
            wedge(a, interior_vector(X, b)) * ((-1) ** ka)
        assert lhs == rhs


def test_interior_vector_square_zero(rng):
    form = rand_form(rng, 3)
    X = rand_vector(rng)
    assert interior_vector(X, interior_vector(X, form)).is_zero()


def test_interior_bivector_decomposable(rng):
    """i_{X∧Y} = i_Y ∘ i_X on decomposable bivectors."""
    for _ in range(8):
        X, Y = rand_vector(rng), rand_vector(rng)
        B = Bivector6.decomposable(X, Y)
        form = rand_form(rng, 3)
        assert interior_bivector(B, form) == \
            interior_vector(Y, interior_vector(X, form))


def test_pullback_functorial(rng):
    A = [[rng.randint(-2, 2) for _ in range(6)] for _ in range(6)]
    B = [[rng.randint(-2, 2) for _ in range(6)] for _ in range(6)]
    AB = [[sum(A[i][k] * B[k][j] for k in range(6)) for j in range(6)]
          for i in range(6)]
    form = rand_form(rng, 3)
    assert form.pullback(AB) == form.pullback(A).pullback(B)


def test_pullback_is_precomposition(rng):
    A = [[rng.randint(-2, 2) for _ in range(6)] for _ in range(6)]
    form = rand_form(rng, 2)
    X, Y = rand_vector(rng), rand_vector(rng)
    AX = [sum(A[i][j] * X[j] for j in range(6)) for i in range(6)]
    AY = [sum(A[i][j] * Y[j] for j in range(6)) for i in range(6)]
    assert form.pullback(A).evaluate(X, Y) == form.evaluate(AX, AY)


def test_grade_errors():
    with pytest.raises(GradeError):
        KForm.basis(1) + KForm.basis(1, 2)
    with pytest.raises(ValueError):
        KForm(3, [0] * 5)


def test_exact_complex_field_axioms():
    a = ExactComplex(Fraction(1, 2), Fraction(-3, 4))
    b = ExactComplex(Fraction(2, 3), Fraction(5))
    assert (a * b) / b == a
    assert a * a.conjugate() == ExactComplex(a.re ** 2 + a.im ** 2, 0)
    assert (a + b) - b == a
    assert 1 / (1 / a) == a


def test_rational_sqrt():
    assert rational_sqrt(Fraction(9, 4)) == Fraction(3, 2)
    assert rational_sqrt(Fraction(2)) is None
    assert rational_sqrt(Fraction(0)) == 0
