"""Graded derivations given by their values on generators and coordinates."""
from __future__ import annotations

from typing import Mapping

from .algebra import GradedAlgebra, GradedElement, scalar
from .errors import DegreeError, ForeignGeneratorError


class Derivation:
    """A derivation of fixed degree, determined by its values on generators.

    Values on coordinates must have the derivation's own degree; values on a
    generator of degree k must have degree k + degree.  Missing entries are zero.
    """

    __slots__ = ("algebra", "degree", "values")

    def __init__(self, algebra: GradedAlgebra, degree: int, values: Mapping[str, GradedElement],
                 check: bool = True):
        self.algebra = algebra
        self.degree = degree
        vals = {}
        for name, v in values.items():
            if not isinstance(v, GradedElement):
                v = algebra.from_poly(v)
            if v.algebra is not algebra and v.algebra != algebra:
                raise ForeignGeneratorError(f"value for {name!r} lives in another algebra")
            if name in algebra.index:
                base = algebra.generators[algebra.index[name]].degree
            elif name in algebra.coord_index:
                base = 0
            else:
                raise ForeignGeneratorError(f"{name!r} is not a generator of the algebra")
            if v.is_zero():
                continue
            if check:
                ds = v.degrees()
                if ds != {base + degree}:
                    raise DegreeError(f"value on {name!r} has degree {sorted(ds)}, "
                                      f"expected {base + degree}")
            vals[name] = v
        self.values = vals

    @classmethod
    def zero(cls, algebra, degree) -> "Derivation":
        return cls(algebra, degree, {})

    @property
    def odd(self) -> bool:
        return self.degree % 2 == 1

    def value(self, name: str) -> GradedElement:
        return self.values.get(name) or self.algebra.zero()

    def names(self):
        return list(self.algebra.names) + list(self.algebra.coords)

    def __call__(self, e: GradedElement) -> GradedElement:
        return apply(self, e)

    def _same(self, other: "Derivation"):
        if other.algebra is not self.algebra and other.algebra != self.algebra:
            raise ForeignGeneratorError("derivations act on different algebras")

    def __add__(self, other: "Derivation") -> "Derivation":
        self._same(other)
        if other.degree != self.degree and not (self.is_zero() or other.is_zero()):
            raise DegreeError("cannot add derivations of different degrees")
        deg = other.degree if self.is_zero() and not other.is_zero() else self.degree
        vals = dict(self.values)
        for k, v in other.values.items():
            vals[k] = vals[k] + v if k in vals else v
        return Derivation(self.algebra, deg, vals, check=False)

    def __neg__(self):
        return Derivation(self.algebra, self.degree, {k: -v for k, v in self.values.items()}, False)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, k):
        return Derivation(self.algebra, self.degree, {n: v * k for n, v in self.values.items()}, False)

    def __rmul__(self, left):
        """Scalar multiple, or left multiplication by an algebra element."""
        if isinstance(left, GradedElement):
            deg = left.degree
            if deg is None:
                return Derivation.zero(self.algebra, self.degree)
            return Derivation(self.algebra, self.degree + deg,
                              {n: left * v for n, v in self.values.items()}, check=False)
        return self * scalar(left)

    def is_zero(self) -> bool:
        return all(v.is_zero() for v in self.values.values())

    def __eq__(self, other):
        if not isinstance(other, Derivation):
            return NotImplemented
        if other.algebra is not self.algebra and other.algebra != self.algebra:
            return False
        return self.residual(other) is None

    def residual(self, other: "Derivation"):
        """First (name, difference) where the two derivations disagree, or None."""
        for name in self.names():
            diff = self.value(name) - other.value(name)
            if not diff.is_zero():
                return name, diff
        return None

    def extend_to(self, target: GradedAlgebra) -> "Derivation":
        """Same derivation on a larger algebra, zero on the new generators."""
        if target is self.algebra:
            return self
        return Derivation(target, self.degree,
                          {n: target.embed(v) for n, v in self.values.items()}, check=False)

    def __repr__(self):
        body = ", ".join(f"{n} -> {v}" for n, v in self.values.items())
        return f"Derivation(deg={self.degree}; {body})"

    __str__ = __repr__


def derivation(algebra: GradedAlgebra, degree: int, values: Mapping) -> Derivation:
    return Derivation(algebra, degree, values)


def _apply_to_key(D: Derivation, gexp, cexp) -> GradedElement:
    alg = D.algebra
    out = alg.zero()
    # coefficient part: D(x^c) m = sum_i c_i x^(c - e_i) D(x_i) m
    if any(cexp):
        mono_g = alg.monomial(gexp)
        for i, k in enumerate(cexp):
            if not k:
                continue
            dx = D.values.get(alg.coords[i])
            if dx is None:
                continue
            lowered = list(cexp)
            lowered[i] -= 1
            out = out + alg.monomial(alg.zero_g, lowered, k) * dx * mono_g
    # generator part by the graded Leibniz rule
    if not any(gexp):
        return out
    coeff = alg.monomial(alg.zero_g, cexp)
    n = len(gexp)
    prefix_deg = 0
    for i in range(n):
        e = gexp[i]
        if not e:
            continue
        name = alg.generators[i].name
        dg = D.values.get(name)
        if dg is not None:
            before = tuple(gexp[j] if j < i else 0 for j in range(n))
            after = tuple(gexp[j] if j > i else 0 for j in range(n))
            here = tuple(e - 1 if j == i else 0 for j in range(n))
            sign = -1 if (D.degree * prefix_deg) % 2 else 1
            piece = alg.monomial(_plus(before, here), None, sign * e) * dg * alg.monomial(after)
            out = out + coeff * piece
        prefix_deg += e * alg.degrees[i]
    return out


def _plus(a, b):
    return tuple(x + y for x, y in zip(a, b))


def apply(D: Derivation, e: GradedElement) -> GradedElement:
    if e.algebra is not D.algebra and e.algebra != D.algebra:
        raise ForeignGeneratorError("derivation applied to an element of another algebra")
    alg = D.algebra
    out = alg.zero()
    for (gexp, cexp), c in e.terms.items():
        out = out + _apply_to_key(D, gexp, cexp) * c
    if e.truncated:
        out = type(out)(alg, out.terms, True)
    return out


def commutator(D1: Derivation, D2: Derivation) -> Derivation:
    """Graded commutator D1 D2 - (-1)^{|D1||D2|} D2 D1, materialised on generators."""
    D1._same(D2)
    alg = D1.algebra
    sign = -1 if (D1.degree * D2.degree) % 2 == 0 else 1
    vals = {}
    for name in D1.names():
        v2 = D2.values.get(name)
        v1 = D1.values.get(name)
        val = alg.zero()
        if v2 is not None:
            val = val + apply(D1, v2)
        if v1 is not None:
            val = val + apply(D2, v1) * sign
        if not val.is_zero():
            vals[name] = val
    return Derivation(alg, D1.degree + D2.degree, vals, check=False)


def compose_on(D1: Derivation, D2: Derivation, name: str) -> GradedElement:
    """(D1 o D2)(generator)."""
    return apply(D1, D2.value(name))


def is_homological(D: Derivation):
    """(True, None) if D has degree 1 and D o D vanishes, else (False, (name, D(D(name))))."""
    if D.degree != 1:
        return False, ("degree", D.degree)
    for name in D.names():
        v = D.values.get(name)
        if v is None:
            continue
        dd = apply(D, v)
        if not dd.is_zero():
            return False, (name, dd)
    return True, None


def jacobi_residual(D1: Derivation, D2: Derivation, D3: Derivation) -> Derivation:
    """[D1,[D2,D3]] - [[D1,D2],D3] - (-1)^{|D1||D2|} [D2,[D1,D3]]."""
    sign = -1 if (D1.degree * D2.degree) % 2 else 1
    lhs = commutator(D1, commutator(D2, D3))
    rhs = commutator(commutator(D1, D2), D3) + commutator(D2, commutator(D1, D3)) * sign
    return lhs - rhs


__all__ = ["Derivation", "derivation", "apply", "commutator", "is_homological",
           "jacobi_residual", "compose_on"]
