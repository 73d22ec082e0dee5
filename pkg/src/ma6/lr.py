"""The quadratic invariant of an effective 3-form, its Sylvester signature,
the characteristic pencil, and the sp(3) membership test."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .exterior import COMBS, DIM, KForm, interior_vector, wedge
from .symplectic import EffectivenessError, bot, is_effective
from .hitchin import mat_mul


@dataclass(frozen=True)
class QuadForm6:
    """Symmetric 6x6 quadratic form; Q(X) = Xᵀ Q X."""

    matrix: tuple

    def __call__(self, X, Y=None):
        Y = X if Y is None else Y
        return sum(self.matrix[i][j] * X[i] * Y[j]
                   for i in range(DIM) for j in range(DIM))

    def scale(self, c):
        return QuadForm6(tuple(tuple(e * c for e in row) for row in self.matrix))


@dataclass(frozen=True)
class Signature:
    pos: int
    neg: int
    zero: int

    @property
    def rank(self):
        return self.pos + self.neg


@dataclass(frozen=True)
class CubicPencil:
    """Coefficients of ξ ↦ (i_Xω − ξΩ)³ / Ω³ as a cubic in ξ."""

    c3: object
    c2: object
    c1: object
    c0: object


def q_form(omega, s, tol=0):
    """Q with Q(X) = −(1/4) ⊥²(i_X ω ∧ i_X ω); requires ω effective."""
    if omega.grade != 3:
        raise ValueError("q_form takes a 3-form")
    if not is_effective(s, omega, tol=tol):
        raise EffectivenessError("q_form requires an effective 3-form")
    contr = []
    for a in range(DIM):
        ea = [0] * DIM
        ea[a] = 1
        contr.append(interior_vector(ea, omega))
    exact = not any(isinstance(c, float) for c in omega.coeffs)
    quarter = Fraction(-1, 4) if exact else -0.25
    Q = [[0] * DIM for _ in range(DIM)]
    for a in range(DIM):
        for b in range(a, DIM):
            val = quarter * bot(s, bot(s, wedge(contr[a], contr[b]))).coeffs[0]
            Q[a][b] = val
            Q[b][a] = val
    return QuadForm6(tuple(tuple(row) for row in Q))


# One-time calibration: with ⊥ pinned by the commutator identity (⊥Ω = 3),
# q pinned by the characteristic-pencil coefficient, and K pinned by the
# real-Calabi-Yau product structure, the q/K compatibility identity holds
# with a global factor 2: 2·q_ω(X) = Ω(K_ω X, X).
COMPAT_SCALE = 2


def compat_q_k(omega, s, K=None):
    """Residual of the calibrated identity 2·q_ω(X) = Ω(K_ω X, X).

    The matrix form reads 2Q = sym(Kᵀ A) with A the matrix of Ω; returns the
    largest absolute deviation (0 means the identity holds exactly).
    """
    from .hitchin import hitchin_k

    Q = q_form(omega, s, tol=_float_tol(omega))
    if K is None:
        K = hitchin_k(omega, s)
    A = s.matrix
    M = mat_mul([[K[j][i] for j in range(DIM)] for i in range(DIM)], A)
    res = 0
    half = Fraction(1, 2) if not isinstance(M[0][0], float) else 0.5
    for i in range(DIM):
        for j in range(DIM):
            sym = (M[i][j] + M[j][i]) * half
            res = max(res, abs(COMPAT_SCALE * Q.matrix[i][j] - sym))
    return res


def _float_tol(omega):
    if any(isinstance(c, float) for c in omega.coeffs):
        return 1e-9 * (1 + omega.max_abs())
    return 0


def signature(Q, tol=1e-9):
    """Sylvester inertia of a symmetric quadratic form.

    Exact entries use symmetric congruence diagonalization over the
    rationals; float entries fall back to eigenvalue signs with ``tol``.
    """
    M = [list(row) for row in Q.matrix]
    if any(isinstance(M[i][j], float) for i in range(DIM) for j in range(DIM)):
        import numpy as np

        eig = np.linalg.eigvalsh(np.array(M, dtype=float))
        scale = max(1.0, float(abs(eig).max()))
        pos = int((eig > tol * scale).sum())
        neg = int((eig < -tol * scale).sum())
        return Signature(pos, neg, DIM - pos - neg)
    pos = neg = zero = 0
    n = DIM
    r = 0
    while r < n:
        # choose a nonzero diagonal pivot, manufacturing one if necessary
        piv = next((i for i in range(r, n) if M[i][i] != 0), None)
        if piv is None:
            pair = next(((i, j) for i in range(r, n) for j in range(i + 1, n)
                         if M[i][j] != 0), None)
            if pair is None:
                zero += n - r
                break
            i, j = pair
            for c in range(n):
                M[i][c] += M[j][c]
            for c in range(n):
                M[c][i] += M[c][j]
            piv = i
        if piv != r:
            M[r], M[piv] = M[piv], M[r]
            for c in range(n):
                M[c][r], M[c][piv] = M[c][piv], M[c][r]
        p = M[r][r]
        if p > 0:
            pos += 1
        else:
            neg += 1
        for i in range(r + 1, n):
            if M[i][r] != 0:
                f = Fraction(M[i][r]) / Fraction(p)
                for c in range(n):
                    M[i][c] -= f * M[r][c]
                for c in range(n):
                    M[c][i] -= f * M[c][r]
        r += 1
    return Signature(pos, neg, zero)


def char_pencil(omega, s, X):
    """Expand (i_Xω − ξΩ)³ / Ω³ as a cubic in ξ.

    For effective ω this equals −ξ³ + q_ω(X)·ξ, the polynomial form of the
    characteristic-root identity.
    """
    if omega.grade != 3:
        raise ValueError("char_pencil takes a 3-form")
    phi = interior_vector(X, omega)
    O = s.omega
    top = wedge(wedge(O, O), O).coeffs[0]
    c0 = wedge(wedge(phi, phi), phi).coeffs[0] / top
    c1 = -3 * wedge(wedge(phi, phi), O).coeffs[0] / top
    c2 = 3 * wedge(wedge(phi, O), O).coeffs[0] / top
    c3 = -1 if not isinstance(c0, float) else -1.0
    return CubicPencil(c3, c2, c1, c0)


def in_sp3(K, s, tol=0):
    """True iff Ω(KX, Y) + Ω(X, KY) = 0 for all X, Y, i.e. Kᵀ A + A K = 0."""
    A = s.matrix
    Kt = [[K[j][i] for j in range(DIM)] for i in range(DIM)]
    M1 = mat_mul(Kt, A)
    M2 = mat_mul(A, K)
    res = max(abs(M1[i][j] + M2[i][j]) for i in range(DIM) for j in range(DIM))
    return res <= tol
