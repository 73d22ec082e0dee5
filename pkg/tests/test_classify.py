"""Orbit classification against the nine normal forms, invariance under
symplectic changes of basis, and the assembled Calabi-Yau-type data."""

import random
from fractions import Fraction

import pytest

from ma6.classify import (
    OrbitClass,
    TABLE1_CLASSES,
    UnclassifiableError,
    build_gcy,
    classify,
    table1_form,
)
from ma6.exterior import KForm
from ma6.hitchin import ExactnessError, k_squared, pfaffian
from ma6.lr import in_sp3
from ma6.symplectic import EffectivenessError

from conftest import rand_fraction

PARAMS = [Fraction(1, 2), Fraction(1), Fraction(2), Fraction(3)]

PRINTED_SIGNATURES = {
    1: (3, 3), 2: (0, 6), 3: (4, 2), 4: (0, 3), 5: (2, 1),
    6: (0, 1), 7: (1, 0), 8: (0, 0), 9: (0, 0),
}


def expected_lambda(row, p):
    if row == 1:
        return p ** 4
    if row in (2, 3):
        return -p ** 4
    return Fraction(0)


def test_table_rows_classify(space):
    for row, cls in TABLE1_CLASSES.items():
        for p in PARAMS:
            omega = table1_form(row, p)
            got, report = classify(omega, space)
            assert got == cls, (row, p)
            assert report.lambda_ == expected_lambda(row, p)
            sig = report.signature
            assert (sig.pos, sig.neg) == PRINTED_SIGNATURES[row], (row, p)


def random_symplectic(rng, n_factors=6):
    """A random symplectic matrix: a product of symplectic transvections
    built from the standard symplectic form's matrix."""
    # A = matrix of Ω in the basis; transvection: x ↦ x + c·Ω(x, v)·v
    from ma6.symplectic import standard_space

    s = standard_space()
    A = s.matrix
    M = [[Fraction(int(i == j)) for j in range(6)] for i in range(6)]
    for _ in range(n_factors):
        v = [Fraction(rng.randint(-2, 2)) for _ in range(6)]
        c = Fraction(rng.randint(-2, 2), rng.randint(1, 3))
        # T e_j = e_j + c·Ω(e_j, v)·v
        T = [[Fraction(int(i == j)) for j in range(6)] for i in range(6)]
        for j in range(6):
            om = sum(A[j][k] * v[k] for k in range(6))
            for i in range(6):
                T[i][j] += c * om * v[i]
        M = [[sum(M[i][k] * T[k][j] for k in range(6)) for j in range(6)]
             for i in range(6)]
    return M


def test_symplectic_matrices_preserve_omega(space, rng):
    for _ in range(5):
        S = random_symplectic(rng)
        assert space.omega.pullback(S) == space.omega


def test_classification_is_symplectic_invariant(space, rng):
    """The class and invariants are unchanged by a symplectic pullback."""
    for row in (1, 2, 3, 4, 5, 6, 7, 8):
        omega = table1_form(row, Fraction(2))
        S = random_symplectic(rng, n_factors=4)
        moved = omega.pullback(S)
        got, report = classify(moved, space)
        assert got == TABLE1_CLASSES[row], row
        assert report.lambda_ == expected_lambda(row, Fraction(2))
        sig = report.signature
        assert (sig.pos, sig.neg) == PRINTED_SIGNATURES[row]


def test_classify_rejects_non_effective(space):
    with pytest.raises(EffectivenessError):
        classify(KForm.basis(1, 2, 4), space)


def test_build_gcy_hyperbolic_anchor(space):
    st = build_gcy(table1_form(1, Fraction(1)), space)
    assert st.branch == "hyperbolic"
    K = [list(r) for r in st.K]
    assert K == [[(1 if i < 3 else -1) if i == j else 0 for j in range(6)]
                 for i in range(6)]
    assert st.alpha + st.beta == table1_form(1, Fraction(1))
    assert st.ratio == Fraction(-1, 6)


def test_build_gcy_elliptic(space):
    st = build_gcy(table1_form(2, Fraction(1)), space)
    assert st.branch == "elliptic"
    K = [list(r) for r in st.K]
    K2 = [[sum(K[i][k] * K[k][j] for k in range(6)) for j in range(6)]
          for i in range(6)]
    assert K2 == [[-1 if i == j else 0 for j in range(6)] for i in range(6)]
    # metric definiteness: the elliptic normal form gives a definite g
    from ma6.lr import signature

    sig = signature(st.g)
    assert sig.zero == 0 and sig.pos * sig.neg == 0


def test_build_gcy_normalizes(space):
    """A scaled hyperbolic form yields the same K as its normal form."""
    st1 = build_gcy(table1_form(1, Fraction(1)), space)
    st2 = build_gcy(table1_form(1, Fraction(1)) * Fraction(3), space)
    assert st1.K == st2.K
