"""Multivariate polynomials in 6 variables with exact rational coefficients.

Just enough arithmetic for exterior derivatives and pullbacks of polynomial
differential forms: ring operations, partial derivatives, evaluation, and
substitution of polynomials for variables.
"""

from __future__ import annotations

from fractions import Fraction

NVARS = 6


class Poly:
    """Sparse polynomial: map from exponent tuples (length 6) to Fraction."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        clean = {}
        for exps, c in (terms or {}).items():
            c = Fraction(c)
            if c != 0:
                exps = tuple(int(e) for e in exps)
                if len(exps) != NVARS:
                    raise ValueError("exponent tuple must have length 6")
                clean[exps] = clean.get(exps, Fraction(0)) + c
        object.__setattr__(self, "terms", {e: c for e, c in clean.items() if c != 0})

    def __setattr__(self, *a):
        raise AttributeError("Poly is immutable")

    @classmethod
    def const(cls, c):
        return cls({(0,) * NVARS: Fraction(c)})

    @classmethod
    def var(cls, i):
        """The coordinate polynomial x_{i+1} (i in 0..5)."""
        e = [0] * NVARS
        e[i] = 1
        return cls({tuple(e): Fraction(1)})

    def __add__(self, other):
        other = _coerce(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, Fraction(0)) + c
        return Poly(out)

    __radd__ = __add__

    def __sub__(self, other):
        return self + (-_coerce(other))

    def __rsub__(self, other):
        return _coerce(other) + (-self)

    def __neg__(self):
        return Poly({e: -c for e, c in self.terms.items()})

    def __mul__(self, other):
        other = _coerce(other)
        out = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, Fraction(0)) + c1 * c2
        return Poly(out)

    __rmul__ = __mul__

    def __pow__(self, n):
        out = Poly.const(1)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __eq__(self, other):
        try:
            other = _coerce(other)
        except TypeError:
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def is_zero(self):
        return not self.terms

    def diff(self, i):
        out = {}
        for e, c in self.terms.items():
            if e[i] > 0:
                ne = list(e)
                ne[i] -= 1
                out[tuple(ne)] = c * e[i]
        return Poly(out)

    def eval(self, point):
        total = 0
        for e, c in self.terms.items():
            t = c
            for x, k in zip(point, e):
                for _ in range(k):
                    t = t * x
            total = total + t
        return total

    def subst(self, polys):
        """Substitute polys[i] for variable i."""
        out = Poly({})
        for e, c in self.terms.items():
            t = Poly.const(c)
            for i, k in enumerate(e):
                if k:
                    t = t * polys[i] ** k
            out = out + t
        return out

    def __repr__(self):
        if not self.terms:
            return "Poly(0)"
        parts = []
        for e, c in sorted(self.terms.items()):
            mono = "*".join(f"x{i+1}^{k}" if k > 1 else f"x{i+1}"
                            for i, k in enumerate(e) if k)
            parts.append(f"{c}" + ("*" + mono if mono else ""))
        return "Poly(" + " + ".join(parts) + ")"


def _coerce(x):
    if isinstance(x, Poly):
        return x
    if isinstance(x, (int, Fraction)):
        return Poly.const(x)
    raise TypeError(f"cannot coerce {type(x)} to Poly")
