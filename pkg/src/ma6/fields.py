"""Differential forms with variable coefficients on 6-dimensional charts:
exterior derivative, pullbacks, Monge-Ampère operator evaluation, solution
checks, and the closedness / flatness / integrability criteria.

Coordinates follow the (q1, q2, q3, p1, p2, p3) convention of the exterior
module; the aliases (x, y, z, p, q, h) name the same slots.  Coefficients
are either exact polynomials (`poly.Poly`) or black-box evaluators
point -> scalar.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field as dc_field

import numpy as np

from .exterior import COMBS, DIM, KForm, POS, dim_grade, merge_sign
from .hitchin import dual_form, pfaffian
from .poly import Poly

DEFAULT_H = 1e-4
DEFAULT_TOL = 1e-6
CURVATURE_TOL = 1e-5


class BranchChangeError(ValueError):
    """λ changes sign (or vanishes) across the sample region."""


class DegeneratePointError(ValueError):
    pass


def _entry_eval(entry, x):
    if isinstance(entry, Poly):
        return entry.eval(x)
    if callable(entry):
        return entry(x)
    return entry  # constant scalar


class FormField:
    """A grade-k differential form on a 6-dim chart.

    ``coeffs`` is a dense tuple over lexicographic multi-indices; each entry
    is a Poly, a constant scalar, or a callable point -> scalar.
    """

    def __init__(self, grade, coeffs):
        coeffs = tuple(coeffs)
        if len(coeffs) != dim_grade(grade):
            raise ValueError(f"grade {grade} needs {dim_grade(grade)} coefficients")
        self.grade = grade
        self.coeffs = coeffs

    @classmethod
    def constant(cls, form):
        return cls(form.grade, form.coeffs)

    @classmethod
    def from_pointwise(cls, grade, fn):
        """Wrap a function point -> KForm as a field (shared evaluation)."""
        return cls(grade, tuple(_PointwiseCoeff(fn, i) for i in range(dim_grade(grade))))

    def is_polynomial(self):
        return all(isinstance(c, Poly) or not callable(c) for c in self.coeffs)

    def evaluate(self, x):
        return KForm(self.grade, tuple(_entry_eval(c, x) for c in self.coeffs))


class _PointwiseCoeff:
    """One coefficient of a pointwise-defined field, with a shared cache."""

    def __init__(self, fn, index):
        self.fn = fn
        self.index = index
        self._cache = {}

    def __call__(self, x):
        key = tuple(x)
        if key not in self._cache:
            if len(self._cache) > 64:
                self._cache.clear()
            self._cache[key] = self.fn(x)
        return self._cache[key].coeffs[self.index]


def _to_poly(entry):
    if isinstance(entry, Poly):
        return entry
    if callable(entry):
        raise ValueError("exact exterior derivative needs polynomial coefficients")
    return Poly.const(entry)


def d_exact(fld):
    """Exact exterior derivative of a polynomial form field."""
    k = fld.grade
    out = [Poly({}) for _ in range(dim_grade(k + 1))]
    for idx, entry in zip(COMBS[k], fld.coeffs):
        p = _to_poly(entry)
        for a in range(1, DIM + 1):
            dp = p.diff(a - 1)
            if dp.is_zero():
                continue
            sign, merged = merge_sign((a,), idx)
            if sign:
                pos = POS[k + 1][merged]
                out[pos] = out[pos] + sign * dp
    return FormField(k + 1, out)


def _assemble_d(partials, k):
    """Exterior derivative from the 6 coefficient-partial KForms."""
    out = [0.0] * dim_grade(k + 1)
    for a in range(1, DIM + 1):
        pk = partials[a - 1]
        for idx, c in zip(COMBS[k], pk.coeffs):
            if c == 0:
                continue
            sign, merged = merge_sign((a,), idx)
            if sign:
                out[POS[k + 1][merged]] += sign * c
    return KForm(k + 1, out)


def d_numeric(fld, x, h=DEFAULT_H):
    """Central-difference exterior derivative of any field at a point."""
    k = fld.grade
    x = list(x)
    partials = []
    for a in range(DIM):
        xp = list(x)
        xm = list(x)
        xp[a] += h
        xm[a] -= h
        partials.append((fld.evaluate(xp) - fld.evaluate(xm)) * (1.0 / (2 * h)))
    return _assemble_d(partials, k)


class DiffeoMap:
    """A map ℝ⁶ → ℝ⁶ given by 6 component functions (Poly or callable)."""

    def __init__(self, components, h=DEFAULT_H):
        if len(components) != DIM:
            raise ValueError("need 6 components")
        self.components = tuple(components)
        self.h = h

    def is_polynomial(self):
        return all(isinstance(c, Poly) or not callable(c) for c in self.components)

    def __call__(self, x):
        return [_entry_eval(c, x) for c in self.components]

    def jacobian(self, x):
        """6x6 Jacobian; exact for polynomial components, FD otherwise."""
        J = [[0] * DIM for _ in range(DIM)]
        for i, c in enumerate(self.components):
            if isinstance(c, Poly):
                for a in range(DIM):
                    J[i][a] = c.diff(a).eval(x)
            elif callable(c):
                for a in range(DIM):
                    xp = list(x)
                    xm = list(x)
                    xp[a] += self.h
                    xm[a] -= self.h
                    J[i][a] = (c(xp) - c(xm)) / (2 * self.h)
            # constants contribute zero rows
        return J

    def jacobian_poly(self):
        if not self.is_polynomial():
            raise ValueError("symbolic Jacobian needs polynomial components")
        return [[_to_poly(c).diff(a) for a in range(DIM)] for c in self.components]


def _poly_det(rows):
    n = len(rows)
    if n == 1:
        return rows[0][0]
    if n == 2:
        return rows[0][0] * rows[1][1] - rows[0][1] * rows[1][0]
    if n == 3:
        a, b, c = rows[0]
        d, e, f = rows[1]
        g, h, i = rows[2]
        return a * (e * i - f * h) - b * (d * i - f * g) + c * (d * h - e * g)
    raise ValueError("polynomial determinants implemented up to 3x3")


def pullback_field_poly(phi, fld):
    """Symbolic pullback φ*ω of a polynomial field along a polynomial map."""
    if not (phi.is_polynomial() and fld.is_polynomial()):
        raise ValueError("symbolic pullback needs polynomial data")
    comps = [_to_poly(c) for c in phi.components]
    J = phi.jacobian_poly()
    k = fld.grade
    out = []
    for Jidx in COMBS[k]:
        acc = Poly({})
        for Iidx, entry in zip(COMBS[k], fld.coeffs):
            p = _to_poly(entry)
            if p.is_zero():
                continue
            minor = _poly_det([[J[i - 1][j - 1] for j in Jidx] for i in Iidx])
            if minor.is_zero():
                continue
            acc = acc + p.subst(comps) * minor
        out.append(acc)
    return FormField(k, out)


def pullback_map(phi, fld, x):
    """(φ*ω)ₓ for any map with a Jacobian: evaluate ω at φ(x), pull back."""
    J = phi.jacobian(x)
    if _singular(J):
        raise ValueError(f"Jacobian singular at {x}")
    return fld.evaluate(phi(x)).pullback(J)


def _singular(J):
    try:
        return abs(np.linalg.det(np.array(J, dtype=float))) < 1e-12
    except (TypeError, ValueError):
        return False  # exact entries: let downstream arithmetic decide


def is_symplectomorphism(phi, s, points=None, tol=1e-9):
    """Check φ*Ω = Ω; exact (symbolic) for polynomial φ, sampled otherwise."""
    omega_field = FormField.constant(s.omega)
    if phi.is_polynomial():
        pb = pullback_field_poly(phi, omega_field)
        return all(_to_poly(a) == _to_poly(b)
                   for a, b in zip(pb.coeffs, omega_field.coeffs))
    if points is None:
        raise ValueError("sampled check needs points")
    for x in points:
        diff = pullback_map(phi, omega_field, x) - s.omega
        if diff.max_abs() > tol:
            return False
    return True


class SectionMap:
    """A function f: ℝ³ → ℝ with gradient and Hessian access.

    Closed-form ``grad``/``hess`` are used when supplied; otherwise central
    finite differences with step ``h`` (the Hessian differentiates the
    gradient when one is available).
    """

    def __init__(self, f, grad=None, hess=None, h=DEFAULT_H):
        self.f = f
        self._grad = grad
        self._hess = hess
        self.h = h

    @classmethod
    def from_poly(cls, p):
        """Exact section from a polynomial in the three base variables."""
        grads = [p.diff(i) for i in range(3)]
        hess = [[p.diff(i).diff(j) for j in range(3)] for i in range(3)]

        def pad(x):
            return tuple(x) + (0, 0, 0)

        return cls(
            f=lambda x: float(p.eval(pad(x))),
            grad=lambda x: [float(g.eval(pad(x))) for g in grads],
            hess=lambda x: [[float(hess[i][j].eval(pad(x))) for j in range(3)]
                            for i in range(3)],
        )

    def __call__(self, x):
        return self.f(x)

    def grad(self, x):
        if self._grad is not None:
            return list(self._grad(x))
        g = []
        for a in range(3):
            xp = list(x)
            xm = list(x)
            xp[a] += self.h
            xm[a] -= self.h
            g.append((self.f(xp) - self.f(xm)) / (2 * self.h))
        return g

    def hess(self, x):
        if self._hess is not None:
            return [list(r) for r in self._hess(x)]
        if self._grad is not None:
            H = [[0.0] * 3 for _ in range(3)]
            for a in range(3):
                xp = list(x)
                xm = list(x)
                xp[a] += self.h
                xm[a] -= self.h
                gp, gm = self._grad(xp), self._grad(xm)
                for b in range(3):
                    H[b][a] = (gp[b] - gm[b]) / (2 * self.h)
            # symmetrize FD noise
            return [[(H[i][j] + H[j][i]) / 2 for j in range(3)] for i in range(3)]
        h = max(self.h, 3e-4)  # nested differences lose accuracy; widen the step
        H = [[0.0] * 3 for _ in range(3)]
        f = self.f
        for a in range(3):
            for b in range(a, 3):
                if a == b:
                    xp = list(x)
                    xm = list(x)
                    xp[a] += h
                    xm[a] -= h
                    H[a][a] = (f(xp) - 2 * f(x) + f(xm)) / (h * h)
                else:
                    val = 0.0
                    for sa, sb, w in ((1, 1, 1), (1, -1, -1), (-1, 1, -1), (-1, -1, 1)):
                        xx = list(x)
                        xx[a] += sa * h
                        xx[b] += sb * h
                        val += w * f(xx)
                    H[a][b] = H[b][a] = val / (4 * h * h)
        return H


def ma_operator(fld, section, x):
    """The Monge-Ampère expression of ω at the base point x ∈ ℝ³.

    Substitutes p_i = ∂f/∂x_i and dp_i = Σ_j f_ij dx_j into ω and returns
    the coefficient of dx1∧dx2∧dx3.
    """
    if fld.grade != 3:
        raise ValueError("Monge-Ampère operators come from 3-forms")
    grad = section.grad(x)
    H = section.hess(x)
    point = list(x) + list(grad)
    omega = fld.evaluate(point)
    # rows of the graph map's Jacobian: identity over the base, H over fibers
    J = [[1 if i == j else 0 for j in range(3)] for i in range(3)] + \
        [[H[i][j] for j in range(3)] for i in range(3)]
    val = 0
    for idx, c in zip(COMBS[3], omega.coeffs):
        if c == 0:
            continue
        sub = [J[i - 1] for i in idx]
        det = (sub[0][0] * (sub[1][1] * sub[2][2] - sub[1][2] * sub[2][1])
               - sub[0][1] * (sub[1][0] * sub[2][2] - sub[1][2] * sub[2][0])
               + sub[0][2] * (sub[1][0] * sub[2][1] - sub[1][1] * sub[2][0]))
        val = val + c * det
    return val


class Submanifold3:
    """A parametrized 3-submanifold u: U ⊆ ℝ³ → ℝ⁶."""

    def __init__(self, components, jacobian=None, h=DEFAULT_H):
        if len(components) != DIM:
            raise ValueError("need 6 components")
        self.components = tuple(components)
        self._jacobian = jacobian
        self.h = h

    def __call__(self, u):
        return [_entry_eval(c, tuple(u) + (0, 0, 0)) if isinstance(c, Poly)
                else c(u) if callable(c) else c
                for c in self.components]

    def jacobian(self, u):
        """6x3 Jacobian (columns = tangent vectors)."""
        if self._jacobian is not None:
            return self._jacobian(u)
        J = [[0.0] * 3 for _ in range(DIM)]
        for a in range(3):
            up = list(u)
            um = list(u)
            up[a] += self.h
            um[a] -= self.h
            fp, fm = self(up), self(um)
            for i in range(DIM):
                J[i][a] = (fp[i] - fm[i]) / (2 * self.h)
        return J


@dataclass
class SolutionReport:
    passed: bool
    max_lagrangian: float
    max_omega: float
    n_points: int
    excluded: list = dc_field(default_factory=list)
    tol: float = DEFAULT_TOL


def check_generalized_solution(L, fld, s, params, tol=DEFAULT_TOL):
    """Check that L is Lagrangian for Ω and that ω vanishes on it.

    ``params`` are parameter-space sample points; rank-deficient points are
    excluded and reported.
    """
    max_lag = 0.0
    max_om = 0.0
    excluded = []
    n = 0
    for u in params:
        J = L.jacobian(u)
        if np.linalg.matrix_rank(np.array(J, dtype=float), tol=1e-8) < 3:
            excluded.append(tuple(u))
            continue
        n += 1
        x = L(u)
        t = [[J[i][a] for i in range(DIM)] for a in range(3)]
        for a in range(3):
            for b in range(a + 1, 3):
                max_lag = max(max_lag, abs(s.omega.evaluate(t[a], t[b])))
        om = fld.evaluate(x)
        max_om = max(max_om, abs(om.evaluate(*t)))
    return SolutionReport(passed=(n > 0 and max_lag <= tol and max_om <= tol),
                          max_lagrangian=max_lag, max_omega=max_om,
                          n_points=n, excluded=excluded, tol=tol)


# --- pointwise invariants of a 3-form field -------------------------------

def _degeneracy_threshold(omega):
    return 1e-8 * (1 + float(omega.max_abs())) ** 4


def lambda_field(fld, s, x):
    """λ(ω(x)); raises DegeneratePointError below the degeneracy threshold."""
    omega = fld.evaluate(x)
    lam = pfaffian(omega, s)
    if abs(lam) < _degeneracy_threshold(omega):
        raise DegeneratePointError(f"|λ| below threshold at {tuple(x)}")
    return lam


def normalized_field(fld, s):
    """The pointwise |λ|^(−1/4)-normalized field (black-box coefficients)."""

    def fn(x):
        omega = fld.evaluate(x)
        lam = lambda_field(fld, s, x)
        return omega * (1.0 / abs(float(lam)) ** 0.25)

    return FormField.from_pointwise(3, fn)


def dual_field(fld, s):
    """The pointwise Hitchin-dual field ω̂(x)."""

    def fn(x):
        lambda_field(fld, s, x)  # degeneracy guard
        return dual_form(fld.evaluate(x), s)

    return FormField.from_pointwise(3, fn)


def _lambda_signs(fld, s, points):
    signs = set()
    for x in points:
        signs.add(1 if lambda_field(fld, s, x) > 0 else -1)
    if len(signs) != 1:
        raise BranchChangeError("λ changes sign across the sample region")
    return signs.pop()


@dataclass
class CheckReport:
    passed: bool
    max_residual: float
    n_points: int
    tol: float
    details: dict = dc_field(default_factory=dict)


def closedness_check(fld, s, points, h=DEFAULT_H, tol=DEFAULT_TOL):
    """d of both |λ|^(−1/4)-normalized fields (ω and ω̂) at sample points."""
    _lambda_signs(fld, s, points)
    nf = normalized_field(fld, s)
    duf = dual_field(fld, s)
    ndual = FormField.from_pointwise(
        3, lambda x: duf.evaluate(x) * (1.0 / abs(float(lambda_field(fld, s, x))) ** 0.25))
    res_n = 0.0
    res_d = 0.0
    for x in points:
        res_n = max(res_n, float(d_numeric(nf, x, h).max_abs()))
        res_d = max(res_d, float(d_numeric(ndual, x, h).max_abs()))
    worst = max(res_n, res_d)
    return CheckReport(passed=worst <= tol, max_residual=worst,
                       n_points=len(points), tol=tol,
                       details={"normalized": res_n, "dual": res_d})


def gcy_integrability_check(fld, s, points, h=DEFAULT_H, tol=DEFAULT_TOL):
    """dα = dβ = 0 for the pointwise splitting of the normalized field,
    cross-checked against closedness_check, plus constancy of (α∧β)/Ω³."""
    from .hitchin import split_pair, theta_pairing

    _lambda_signs(fld, s, points)
    nf = normalized_field(fld, s)

    def split_at(x):
        return split_pair(nf.evaluate(x), s)

    alpha_f = FormField.from_pointwise(3, lambda x: split_at(x).alpha)
    beta_f = FormField.from_pointwise(3, lambda x: split_at(x).beta)
    res = 0.0
    ratios = []
    for x in points:
        res = max(res, float(d_numeric(alpha_f, x, h).max_abs()))
        res = max(res, float(d_numeric(beta_f, x, h).max_abs()))
        sp = split_at(x)
        ratios.append(complex(_as_complex(theta_pairing(sp.alpha, sp.beta, s))) / -6)
    ratio_dev = max(abs(r - ratios[0]) for r in ratios)
    integrable = res <= tol and ratio_dev <= tol
    closed = closedness_check(fld, s, points, h=h, tol=tol)
    return CheckReport(passed=integrable, max_residual=res,
                       n_points=len(points), tol=tol,
                       details={"ratio_deviation": ratio_dev,
                                "ratio": ratios[0],
                                "closedness_passed": closed.passed,
                                "agrees_with_closedness": closed.passed == integrable})


def _as_complex(v):
    from .exterior import ExactComplex

    if isinstance(v, ExactComplex):
        return complex(float(v.re), float(v.im))
    return complex(v)


# --- curvature of a metric field ------------------------------------------

class MetricField:
    """point -> symmetric 6x6 array (numpy-convertible)."""

    def __init__(self, fn):
        self.fn = fn

    @classmethod
    def constant(cls, M):
        arr = np.array(M, dtype=float)
        return cls(lambda x: arr)

    @classmethod
    def from_q_field(cls, fld, s):
        """The quadratic invariant q_ω(x) of an effective 3-form field."""
        from .lr import q_form

        def fn(x):
            omega = fld.evaluate(x)
            tol = 1e-9 * (1 + float(omega.max_abs()))
            Q = q_form(omega, s, tol=tol)
            return np.array([[float(e) for e in row] for row in Q.matrix])

        return cls(fn)

    def __call__(self, x):
        return np.array(self.fn(x), dtype=float)


def christoffel(g, x, h=DEFAULT_H):
    """Γ^k_{ij} by central differences of the metric."""
    x = np.asarray(x, dtype=float)
    n = DIM
    dg = np.zeros((n, n, n))
    for a in range(n):
        e = np.zeros(n)
        e[a] = h
        dg[a] = (g(x + e) - g(x - e)) / (2 * h)
    ginv = np.linalg.inv(g(x))
    gamma = np.zeros((n, n, n))
    for k in range(n):
        for i in range(n):
            for j in range(n):
                gamma[k, i, j] = 0.5 * sum(
                    ginv[k, l] * (dg[i][j, l] + dg[j][i, l] - dg[l][i, j])
                    for l in range(n))
    return gamma


def riemann(g, x, h=DEFAULT_H):
    """R^l_{kij} = ∂_iΓ^l_{jk} − ∂_jΓ^l_{ik} + Γ^l_{im}Γ^m_{jk} − Γ^l_{jm}Γ^m_{ik}."""
    x = np.asarray(x, dtype=float)
    n = DIM
    dgamma = np.zeros((n, n, n, n))
    for a in range(n):
        e = np.zeros(n)
        e[a] = h
        dgamma[a] = (christoffel(g, x + e, h) - christoffel(g, x - e, h)) / (2 * h)
    gam = christoffel(g, x, h)
    R = np.zeros((n, n, n, n))
    for l in range(n):
        for k in range(n):
            for i in range(n):
                for j in range(n):
                    R[l, k, i, j] = (dgamma[i][l, j, k] - dgamma[j][l, i, k]
                                     + sum(gam[l, i, m] * gam[m, j, k]
                                           - gam[l, j, m] * gam[m, i, k]
                                           for m in range(n)))
    return R


def flatness_check(g, points, h=DEFAULT_H, tol=CURVATURE_TOL):
    """Flat iff every curvature component is ≤ tol at every sample point."""
    worst = 0.0
    for x in points:
        worst = max(worst, float(np.abs(riemann(g, x, h)).max()))
    return CheckReport(passed=worst <= tol, max_residual=worst,
                       n_points=len(points), tol=tol)


def sample_box(box, n, seed=0):
    """n uniform points in a box given as a list of (lo, hi) pairs."""
    rng = random.Random(seed)
    return [[rng.uniform(lo, hi) for lo, hi in box] for _ in range(n)]
