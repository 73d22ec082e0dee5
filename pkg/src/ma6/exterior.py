"""Graded exterior algebra of a fixed 6-dimensional real vector space.

Coefficients are ordinary Python scalars: ``fractions.Fraction`` for exact
work, ``float`` for numerics, ``complex``/``ExactComplex`` for the elliptic
branch.  All values are immutable; every operation is a pure function.

Basis covectors are indexed 1..6 and identified with the Darboux
coordinates (q1, q2, q3, p1, p2, p3).
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from functools import lru_cache

DIM = 6

# lexicographically ordered multi-indices, per grade
COMBS = {k: list(itertools.combinations(range(1, DIM + 1), k)) for k in range(DIM + 1)}
POS = {k: {c: i for i, c in enumerate(COMBS[k])} for k in range(DIM + 1)}


def dim_grade(k):
    """Dimension C(6,k) of the grade-k component."""
    return len(COMBS[k])


@lru_cache(maxsize=None)
def merge_sign(a, b):
    """Sign of sorting the concatenation of two disjoint increasing tuples.

    Returns (sign, merged) with sign in {1,-1}, or (0, None) on overlap.
    """
    if set(a) & set(b):
        return 0, None
    inv = 0
    for x in a:
        for y in b:
            if x > y:
                inv += 1
    return (-1) ** inv, tuple(sorted(a + b))


class GradeError(ValueError):
    pass


class KForm:
    """A grade-k exterior form, stored densely over lexicographic multi-indices."""

    __slots__ = ("grade", "coeffs")

    def __init__(self, grade, coeffs):
        if not 0 <= grade <= DIM:
            raise GradeError(f"grade {grade} out of range")
        coeffs = tuple(coeffs)
        if len(coeffs) != dim_grade(grade):
            raise ValueError(
                f"grade {grade} needs {dim_grade(grade)} coefficients, got {len(coeffs)}"
            )
        object.__setattr__(self, "grade", grade)
        object.__setattr__(self, "coeffs", coeffs)

    def __setattr__(self, *a):
        raise AttributeError("KForm is immutable")

    @classmethod
    def zero(cls, grade):
        return cls(grade, (0,) * dim_grade(grade))

    @classmethod
    def basis(cls, *indices, scale=1):
        """The basis form e_{i1}* ∧ ... ∧ e_{ik}* (indices need not be sorted)."""
        k = len(indices)
        if len(set(indices)) != k:
            return cls.zero(k)
        sign = perm_sign_sort(indices)
        key = tuple(sorted(indices))
        c = [0] * dim_grade(k)
        c[POS[k][key]] = sign * scale
        return cls(k, c)

    def __getitem__(self, idx):
        return self.coeffs[POS[self.grade][tuple(idx)]]

    def __add__(self, other):
        if self.grade != other.grade:
            raise GradeError("cannot add forms of different grade")
        return KForm(self.grade, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other):
        if self.grade != other.grade:
            raise GradeError("cannot subtract forms of different grade")
        return KForm(self.grade, tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self):
        return KForm(self.grade, tuple(-a for a in self.coeffs))

    def __mul__(self, s):
        return KForm(self.grade, tuple(a * s for a in self.coeffs))

    __rmul__ = __mul__

    def __truediv__(self, s):
        return KForm(self.grade, tuple(a / s for a in self.coeffs))

    def __eq__(self, other):
        return (
            isinstance(other, KForm)
            and self.grade == other.grade
            and all(a == b for a, b in zip(self.coeffs, other.coeffs))
        )

    def __hash__(self):
        return hash((self.grade, self.coeffs))

    def is_zero(self):
        return all(c == 0 for c in self.coeffs)

    def max_abs(self):
        return max((abs(c) for c in self.coeffs), default=0)

    def conjugate(self):
        return KForm(self.grade, tuple(_conj(c) for c in self.coeffs))

    def real(self):
        return KForm(self.grade, tuple(_re(c) for c in self.coeffs))

    def imag(self):
        return KForm(self.grade, tuple(_im(c) for c in self.coeffs))

    def evaluate(self, *vectors):
        """ω(v1, ..., vk) for k vectors given as length-6 sequences."""
        k = self.grade
        if len(vectors) != k:
            raise ValueError(f"grade-{k} form takes {k} vectors")
        total = 0
        for idx, c in zip(COMBS[k], self.coeffs):
            if c == 0:
                continue
            rows = [[v[i - 1] for v in vectors] for i in idx]
            total = total + c * _det(rows)
        return total

    def pullback(self, matrix):
        """Pullback along the linear map with the given matrix (rows = output).

        ``matrix`` maps a source space of dimension m = len(matrix[0]) into V;
        the result is a k-form on the source (m must be 6 for a KForm result,
        smaller sources return the dense coefficient list over that space).
        """
        k = self.grade
        m = len(matrix[0])
        out_combs = list(itertools.combinations(range(m), k))
        out = []
        for J in out_combs:
            acc = 0
            for idx, c in zip(COMBS[k], self.coeffs):
                if c == 0:
                    continue
                sub = [[matrix[i - 1][j] for j in J] for i in idx]
                acc = acc + c * _det(sub)
            out.append(acc)
        if m == DIM:
            return KForm(k, out)
        return out

    def __repr__(self):
        terms = []
        for idx, c in zip(COMBS[self.grade], self.coeffs):
            if c != 0:
                terms.append(f"{c}*e{''.join(map(str, idx))}")
        return "KForm(" + (" + ".join(terms) if terms else "0") + ")"


def perm_sign_sort(seq):
    """Sign of the permutation sorting ``seq`` (distinct entries)."""
    seq = list(seq)
    sign = 1
    for i in range(len(seq)):
        for j in range(i + 1, len(seq)):
            if seq[i] > seq[j]:
                sign = -sign
    return sign


def _det(rows):
    n = len(rows)
    if n == 0:
        return 1
    if n == 1:
        return rows[0][0]
    if n == 2:
        return rows[0][0] * rows[1][1] - rows[0][1] * rows[1][0]
    if n == 3:
        a, b, c = rows[0]
        d, e, f = rows[1]
        g, h, i = rows[2]
        return a * (e * i - f * h) - b * (d * i - f * g) + c * (d * h - e * g)
    total = 0
    for perm in itertools.permutations(range(n)):
        term = perm_sign_sort([p + 1 for p in perm])
        for r, c in enumerate(perm):
            term = term * rows[r][c]
        total = total + term
    return total


def wedge(a, b):
    """Exterior product a ∧ b."""
    j, k = a.grade, b.grade
    if j + k > DIM:
        raise GradeError(f"wedge of grades {j} and {k} exceeds dimension {DIM}")
    out = [0] * dim_grade(j + k)
    pos = POS[j + k]
    for ia, ca in zip(COMBS[j], a.coeffs):
        if ca == 0:
            continue
        for ib, cb in zip(COMBS[k], b.coeffs):
            if cb == 0:
                continue
            sign, merged = merge_sign(ia, ib)
            if sign:
                p = pos[merged]
                out[p] = out[p] + sign * ca * cb
    return KForm(j + k, out)


def wedge_all(*forms):
    it = iter(forms)
    acc = next(it)
    for f in it:
        acc = wedge(acc, f)
    return acc


def interior_vector(X, omega):
    """Contraction i_X ω for a vector X (length-6 sequence)."""
    k = omega.grade
    if k < 1:
        raise GradeError("cannot contract a 0-form with a vector")
    out = [0] * dim_grade(k - 1)
    pos = POS[k - 1]
    for idx, c in zip(COMBS[k], omega.coeffs):
        if c == 0:
            continue
        for t, i in enumerate(idx):
            xi = X[i - 1]
            if xi == 0:
                continue
            rest = idx[:t] + idx[t + 1:]
            p = pos[rest]
            out[p] = out[p] + ((-1) ** t) * xi * c
    return KForm(k - 1, out)


class Bivector6:
    """An element of Λ²(V), stored like a 2-form over 2-index multi-indices."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs):
        coeffs = tuple(coeffs)
        if len(coeffs) != dim_grade(2):
            raise ValueError("Bivector6 needs C(6,2)=15 coefficients")
        object.__setattr__(self, "coeffs", coeffs)

    def __setattr__(self, *a):
        raise AttributeError("Bivector6 is immutable")

    @classmethod
    def decomposable(cls, X, Y):
        """X ∧ Y for two vectors."""
        out = [0] * dim_grade(2)
        for (i, j), p in POS[2].items():
            out[p] = X[i - 1] * Y[j - 1] - X[j - 1] * Y[i - 1]
        return cls(out)

    def __getitem__(self, idx):
        return self.coeffs[POS[2][tuple(idx)]]

    def __eq__(self, other):
        return isinstance(other, Bivector6) and self.coeffs == other.coeffs

    def __repr__(self):
        return f"Bivector6{self.coeffs}"


def interior_bivector(B, omega):
    """Contraction i_B ω with the convention i_{X∧Y} = i_Y ∘ i_X.

    The convention is calibrated so that contraction of Ω0 with its dual
    bivector gives n = 3 (see symplectic module).
    """
    k = omega.grade
    if k < 2:
        raise GradeError("cannot contract a form of grade < 2 with a bivector")
    out = KForm.zero(k - 2)
    for (i, j), c in zip(COMBS[2], B.coeffs):
        if c == 0:
            continue
        ei = [0] * DIM
        ei[i - 1] = 1
        ej = [0] * DIM
        ej[j - 1] = 1
        out = out + c * interior_vector(ej, interior_vector(ei, omega))
    return out


# --- scalar helpers -------------------------------------------------------

class ExactComplex:
    """Complex number with exact rational real and imaginary parts."""

    __slots__ = ("re", "im")

    def __init__(self, re, im=0):
        object.__setattr__(self, "re", Fraction(re))
        object.__setattr__(self, "im", Fraction(im))

    def __setattr__(self, *a):
        raise AttributeError("ExactComplex is immutable")

    def _coerce(other):
        if isinstance(other, ExactComplex):
            return other
        if isinstance(other, (int, Fraction)):
            return ExactComplex(other)
        return None

    def __add__(self, other):
        o = ExactComplex._coerce(other)
        if o is None:
            return NotImplemented
        return ExactComplex(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, other):
        o = ExactComplex._coerce(other)
        if o is None:
            return NotImplemented
        return ExactComplex(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        o = ExactComplex._coerce(other)
        if o is None:
            return NotImplemented
        return ExactComplex(o.re - self.re, o.im - self.im)

    def __neg__(self):
        return ExactComplex(-self.re, -self.im)

    def __mul__(self, other):
        o = ExactComplex._coerce(other)
        if o is None:
            return NotImplemented
        return ExactComplex(self.re * o.re - self.im * o.im,
                            self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = ExactComplex._coerce(other)
        if o is None:
            return NotImplemented
        d = o.re * o.re + o.im * o.im
        if d == 0:
            raise ZeroDivisionError("division by zero ExactComplex")
        return ExactComplex((self.re * o.re + self.im * o.im) / d,
                            (self.im * o.re - self.re * o.im) / d)

    def __rtruediv__(self, other):
        o = ExactComplex._coerce(other)
        if o is None:
            return NotImplemented
        return o / self

    def __eq__(self, other):
        o = ExactComplex._coerce(other)
        if o is None:
            return NotImplemented
        return self.re == o.re and self.im == o.im

    def __hash__(self):
        return hash((self.re, self.im))

    def __abs__(self):
        # exact only when re*re+im*im is a perfect rational square
        from math import sqrt
        return sqrt(float(self.re * self.re + self.im * self.im))

    def conjugate(self):
        return ExactComplex(self.re, -self.im)

    def __repr__(self):
        return f"ExactComplex({self.re}, {self.im})"


def _conj(c):
    if isinstance(c, (complex, ExactComplex)):
        return c.conjugate()
    return c


def _re(c):
    if isinstance(c, complex):
        return c.real
    if isinstance(c, ExactComplex):
        return c.re
    return c


def _im(c):
    if isinstance(c, complex):
        return c.imag
    if isinstance(c, ExactComplex):
        return c.im
    return 0


def rational_sqrt(x):
    """Exact square root of a nonnegative Fraction, or None if irrational."""
    x = Fraction(x)
    if x < 0:
        raise ValueError("square root of negative rational")
    if x == 0:
        return Fraction(0)
    from math import isqrt
    n, d = x.numerator, x.denominator
    rn, rd = isqrt(n), isqrt(d)
    if rn * rn == n and rd * rd == d:
        return Fraction(rn, rd)
    return None
