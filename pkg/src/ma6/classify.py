"""Orbit classification of effective 3-forms and assembly of the pointwise
generalized almost Calabi-Yau data.

The nine orbit classes are named after the constant-coefficient
Monge-Ampère equations they represent.  The classifier reads the pair
(sign of the pfaffian, inertia of the quadratic invariant, vanishing of ω).
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction

from .exterior import KForm
from .symplectic import EffectivenessError, is_effective
from .hitchin import (
    DegenerateFormError,
    ExactnessError,
    _abs_pow,
    hitchin_k,
    pfaffian,
    split_pair,
    theta_pairing,
)
from .lr import QuadForm6, Signature, q_form, signature


class OrbitClass(enum.Enum):
    HESSIAN_ONE = "HessianOne"
    SPECIAL_LAGRANGIAN_ELLIPTIC = "SpecialLagrangianElliptic"
    SPECIAL_LAGRANGIAN_HYPERBOLIC = "SpecialLagrangianHyperbolic"
    LAPLACE = "Laplace"
    WAVE = "Wave"
    LAPLACE_2D = "Laplace2D"
    WAVE_2D = "Wave2D"
    SECOND_DERIVATIVE = "SecondDerivative"
    ZERO = "Zero"


class UnclassifiableError(ValueError):
    """Signature pattern outside the classification table's convention."""


@dataclass(frozen=True)
class InvariantReport:
    lambda_: object
    signature: Signature
    effective: bool
    nondegenerate: bool
    branch: str  # "hyperbolic" | "elliptic" | "degenerate"


# printed-table signature order calibration: computed (pos, neg) inertia of
# the definite elliptic normal form comes out (0, 6), matching the printed
# (0,6) directly, so the printed order is (pos, neg).
RANK1_LAPLACE_SIGN = (0, 1)  # computed inertia of the 2D-Laplace normal form


def table1_form(row, param=Fraction(1)):
    """Normal form of the given classification-table row (1..9).

    The parameter enters so that the pfaffian is exactly ±param⁴ for rows
    1-3: the dq123+dp123-type row stores param² on dp123 and the two
    special-Lagrangian rows store param⁴/4 on dp123.  (The printed normal
    forms carry γ resp. ν², whose literal pfaffians are γ² resp. −4ν⁴; this
    reparametrization keeps the same orbits while making the table's λ
    column hold exactly.)
    """
    p = Fraction(param) if not isinstance(param, float) else param
    one = p - p + 1  # scalar 1 in param's type
    if row == 1:
        return KForm.basis(1, 2, 3, scale=one) + KForm.basis(4, 5, 6, scale=p * p)
    if row == 2:
        return (KForm.basis(2, 3, 4, scale=one) - KForm.basis(1, 3, 5, scale=one)
                + KForm.basis(1, 2, 6, scale=one)
                - KForm.basis(4, 5, 6, scale=p ** 4 / 4))
    if row == 3:
        return (KForm.basis(2, 3, 4, scale=one) + KForm.basis(1, 3, 5, scale=one)
                + KForm.basis(1, 2, 6, scale=one)
                + KForm.basis(4, 5, 6, scale=p ** 4 / 4))
    if row == 4:
        return (KForm.basis(2, 3, 4, scale=one) - KForm.basis(1, 3, 5, scale=one)
                + KForm.basis(1, 2, 6, scale=one))
    if row == 5:
        return (KForm.basis(2, 3, 4, scale=one) + KForm.basis(1, 3, 5, scale=one)
                + KForm.basis(1, 2, 6, scale=one))
    if row == 6:
        return KForm.basis(1, 2, 6, scale=one) - KForm.basis(1, 3, 5, scale=one)
    if row == 7:
        return KForm.basis(1, 2, 6, scale=one) + KForm.basis(1, 3, 5, scale=one)
    if row == 8:
        return KForm.basis(2, 3, 4, scale=one)
    if row == 9:
        return KForm.zero(3)
    raise ValueError(f"no table row {row}")


TABLE1_CLASSES = {
    1: OrbitClass.HESSIAN_ONE,
    2: OrbitClass.SPECIAL_LAGRANGIAN_ELLIPTIC,
    3: OrbitClass.SPECIAL_LAGRANGIAN_HYPERBOLIC,
    4: OrbitClass.LAPLACE,
    5: OrbitClass.WAVE,
    6: OrbitClass.LAPLACE_2D,
    7: OrbitClass.WAVE_2D,
    8: OrbitClass.SECOND_DERIVATIVE,
    9: OrbitClass.ZERO,
}


def classify(omega, s, tol=0):
    """Map an effective 3-form to its orbit class and invariant report."""
    float_mode = any(isinstance(c, float) for c in omega.coeffs)
    eff_tol = tol if tol else (1e-9 * (1 + omega.max_abs()) if float_mode else 0)
    if not is_effective(s, omega, tol=eff_tol):
        raise EffectivenessError("classification requires an effective 3-form")
    lam = pfaffian(omega, s)
    if float_mode:
        lam_tol = 1e-9 * (1 + omega.max_abs()) ** 4
        if abs(lam) <= lam_tol:
            lam = 0.0
    Q = q_form(omega, s, tol=eff_tol)
    sig = signature(Q)
    branch = "hyperbolic" if lam > 0 else "elliptic" if lam < 0 else "degenerate"
    report = InvariantReport(lambda_=lam, signature=sig,
                             effective=True, nondegenerate=lam != 0, branch=branch)
    if lam > 0:
        return OrbitClass.HESSIAN_ONE, report
    if lam < 0:
        pattern = {sig.pos, sig.neg}
        if pattern == {0, 6}:
            return OrbitClass.SPECIAL_LAGRANGIAN_ELLIPTIC, report
        if pattern == {4, 2}:
            return OrbitClass.SPECIAL_LAGRANGIAN_HYPERBOLIC, report
        raise UnclassifiableError(
            f"λ < 0 with signature {(sig.pos, sig.neg)} is outside the table's convention")
    rank = sig.rank
    if rank == 3:
        cls = OrbitClass.LAPLACE if {sig.pos, sig.neg} == {0, 3} else OrbitClass.WAVE
        return cls, report
    if rank == 1:
        cls = (OrbitClass.LAPLACE_2D if (sig.pos, sig.neg) == RANK1_LAPLACE_SIGN
               else OrbitClass.WAVE_2D)
        return cls, report
    if rank == 0:
        zero = omega.max_abs() <= eff_tol if float_mode else omega.is_zero()
        return (OrbitClass.ZERO if zero else OrbitClass.SECOND_DERIVATIVE), report
    raise UnclassifiableError(
        f"λ = 0 with signature rank {rank} is outside the table's convention")


@dataclass(frozen=True)
class GczStructure:
    """Pointwise generalized almost Calabi-Yau data (g, Ω, K, α, β)."""

    g: QuadForm6
    omega: KForm       # the symplectic 2-form
    K: tuple           # 6x6 array, K² = ±Id
    alpha: KForm
    beta: KForm
    branch: str
    ratio: object      # (α ∧ β)/Ω³


def build_gcy(omega, s):
    """Normalize ω by |λ|^(1/4) and assemble the 5-tuple (g, Ω, K, α, β).

    Exact inputs require |λ| to be a rational fourth power; otherwise the
    float backend must be used.
    """
    lam = pfaffian(omega, s)
    if lam == 0:
        raise DegenerateFormError("cannot build the structure for λ = 0")
    exact = not isinstance(lam, float)
    root = _abs_pow(lam, 1, 4, exact)
    normalized = omega * (1 / root)
    K = hitchin_k(normalized, s)
    g = q_form(normalized, s, tol=0 if exact else 1e-9 * (1 + normalized.max_abs()))
    sp = split_pair(normalized, s)
    omega3_over_theta = -6  # Ω³ = −6θ
    ratio = theta_pairing(sp.alpha, sp.beta, s) / omega3_over_theta
    return GczStructure(g=g, omega=s.omega, K=tuple(map(tuple, K)),
                        alpha=sp.alpha, beta=sp.beta, branch=sp.branch, ratio=ratio)
