"""Linear invariants of 3-forms in dimension 6: the K-map, its pfaffian,
the dual form, and the decomposable splitting.

Sign convention: the vector v = a_iso(ψ, θ) is defined by ξ ∧ ψ = ξ(v) θ
for every covector ξ.  With this choice the K-map of dq123 + dp123 is
diag(1,1,1,−1,−1,−1), matching the standard real Calabi-Yau product
structure on the (q, p) splitting.
"""

from __future__ import annotations

from fractions import Fraction

from .exterior import (
    COMBS,
    DIM,
    POS,
    ExactComplex,
    GradeError,
    _im,
    KForm,
    interior_vector,
    merge_sign,
    rational_sqrt,
    wedge,
)


class DegenerateFormError(ValueError):
    """Raised when an operation requires a nonzero Hitchin pfaffian."""


class ExactnessError(ValueError):
    """Raised when an exact computation would need an irrational root."""


def _theta_of(space_or_theta):
    theta = getattr(space_or_theta, "theta", space_or_theta)
    if theta.grade != DIM:
        raise GradeError("volume form must have grade 6")
    if theta.is_zero():
        raise ValueError("volume form is zero")
    return theta


def a_iso(psi, theta):
    """The vector v with ξ ∧ ψ = ξ(v)·θ for all covectors ξ (ψ of grade 5)."""
    theta = _theta_of(theta)
    if psi.grade != 5:
        raise GradeError("a_iso takes a 5-form")
    t = theta.coeffs[0]
    v = []
    for i in range(1, DIM + 1):
        comp = tuple(j for j in range(1, DIM + 1) if j != i)
        sign, _ = merge_sign((i,), comp)
        v.append(sign * psi.coeffs[POS[5][comp]] / t)
    return v


def hitchin_k(omega, space_or_theta):
    """Hitchin's map K with K(X)θ = A(i_X ω ∧ ω); returned as a 6x6 array
    whose column j is K(e_{j+1})."""
    theta = _theta_of(space_or_theta)
    if omega.grade != 3:
        raise GradeError("hitchin_k takes a 3-form")
    cols = []
    for j in range(DIM):
        ej = [0] * DIM
        ej[j] = 1
        cols.append(a_iso(wedge(interior_vector(ej, omega), omega), theta))
    return [[cols[j][i] for j in range(DIM)] for i in range(DIM)]


def mat_mul(A, B):
    return [[sum(A[i][k] * B[k][j] for k in range(len(B))) for j in range(len(B[0]))]
            for i in range(len(A))]


def mat_trace(A):
    t = 0
    for i in range(len(A)):
        t = t + A[i][i]
    return t


def k_squared(omega, space_or_theta):
    K = hitchin_k(omega, space_or_theta)
    return mat_mul(K, K)


def pfaffian(omega, space_or_theta):
    """Hitchin pfaffian λ = (1/6) tr(K²)."""
    t = mat_trace(k_squared(omega, space_or_theta))
    if isinstance(t, float):
        return t / 6.0
    return Fraction(t, 6) if isinstance(t, int) else t / 6


def pullback_3form(K, omega):
    """(K*ω)(X,Y,Z) = ω(KX, KY, KZ) for a 6x6 matrix K."""
    return omega.pullback(K)


def _abs_pow(lam, num, den, exact):
    """|lam|^(num/den) for den in {2, 4}; exact path requires a rational root."""
    a = -lam if lam < 0 else lam
    if exact:
        r = rational_sqrt(a)
        if den == 4 and r is not None:
            r = rational_sqrt(r)
        if r is None:
            raise ExactnessError(
                f"|λ|^(1/{den}) is irrational for λ = {lam}; use the float backend")
        return r ** num
    return float(a) ** (num / den)


def dual_form(omega, space_or_theta):
    """Hitchin's dual form ω̂ = |λ|^(−3/2) K*ω (requires λ ≠ 0)."""
    theta = _theta_of(space_or_theta)
    lam = pfaffian(omega, theta)
    if lam == 0:
        raise DegenerateFormError("degenerate 3-form has no dual")
    exact = not isinstance(lam, float)
    factor = 1 / _abs_pow(lam, 3, 2, exact)
    K = hitchin_k(omega, theta)
    return pullback_3form(K, omega) * factor


class SplitPair:
    """Decomposable splitting of a nondegenerate 3-form.

    Hyperbolic branch (λ > 0): ω = alpha + beta, both real decomposable,
    ordered so (α∧β)/θ > 0.  Elliptic branch (λ < 0): ω = alpha + conj(alpha)
    with alpha complex decomposable and (α∧ᾱ)/(iθ) > 0; beta is the conjugate.
    """

    def __init__(self, branch, alpha, beta):
        self.branch = branch
        self.alpha = alpha
        self.beta = beta

    def __repr__(self):
        return f"SplitPair({self.branch}, {self.alpha!r}, {self.beta!r})"


def split_pair(omega, space_or_theta):
    theta = _theta_of(space_or_theta)
    lam = pfaffian(omega, theta)
    if lam == 0:
        raise DegenerateFormError("cannot split a degenerate 3-form")
    exact = not isinstance(lam, float)
    factor = 1 / _abs_pow(lam, 3, 2, exact)
    K = hitchin_k(omega, theta)
    dual = pullback_3form(K, omega) * factor
    half = Fraction(1, 2) if exact else 0.5
    if lam > 0:
        alpha = (omega + dual) * half
        beta = (omega - dual) * half
        orient = wedge(alpha, beta).coeffs[0] / theta.coeffs[0]
        if orient < 0:
            alpha, beta = beta, alpha
        return SplitPair("hyperbolic", alpha, beta)
    i_unit = ExactComplex(0, 1) if exact else 1j
    alpha = (omega + dual * i_unit) * half
    abar = alpha.conjugate()
    # (α∧ᾱ)/(iθ): α∧ᾱ is purely imaginary, so this is its imaginary part / θ
    ratio = wedge(alpha, abar).coeffs[0] / theta.coeffs[0]
    im = _im(ratio)
    if im < 0:
        alpha, abar = abar, alpha
    return SplitPair("elliptic", alpha, abar)


def is_decomposable(phi, space_or_theta, tol=None):
    """True iff φ is a decomposable 3-form, i.e. its K-map vanishes.

    For 3-forms in 6 variables i_Xφ ∧ φ = 0 for all X exactly characterizes
    decomposability.  ``tol`` enables the approximate check for floats; the
    default scales a 1e-9 relative tolerance by the cubic homogeneity of K.
    """
    theta = _theta_of(space_or_theta)
    K = hitchin_k(phi, theta)
    entries = [K[i][j] for i in range(DIM) for j in range(DIM)]
    if any(isinstance(e, (float, complex)) for e in entries):
        if tol is None:
            scale = max(abs(c) for c in phi.coeffs) if not phi.is_zero() else 0
            tol = 1e-9 * (1 + scale) ** 3
        return max(abs(e) for e in entries) <= tol
    return all(e == 0 for e in entries)


def theta_pairing(omega, omega2, space_or_theta):
    """Θ(ω, ω′) = (ω ∧ ω′)/θ, the symplectic pairing on 3-forms."""
    theta = _theta_of(space_or_theta)
    if omega.grade != 3 or omega2.grade != 3:
        raise GradeError("theta_pairing takes two 3-forms")
    return wedge(omega, omega2).coeffs[0] / theta.coeffs[0]
