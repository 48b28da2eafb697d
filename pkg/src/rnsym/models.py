"""Finite cdga models of manifolds together with their vector-field calculus.

A model is a graded algebra with a homological derivation ``d`` and a list of
basis vector fields, each described by the values of its contraction on the
generators.  Vector fields are combinations of basis fields with polynomial
coefficients; contraction, Lie derivative and bracket are derived from that.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping

from .algebra import CoeffPoly, GradedAlgebra, GradedElement
from .derivation import Derivation, commutator, is_homological
from .errors import DegreeError, NotClosedError, NotVectorFieldError


@dataclass
class CdgaModel:
    name: str
    algebra: GradedAlgebra
    d: Derivation
    # basis field name -> {generator name -> value of the contraction}
    fields: dict = field(default_factory=dict)

    def __post_init__(self):
        ok, witness = is_homological(self.d)
        if not ok:
            raise NotClosedError(f"model differential is not square-zero at {witness[0]}", witness)
        for fname in self.fields:
            iota = self.basis_contraction(fname)
            sq = commutator(iota, iota)
            if not sq.is_zero():
                raise NotClosedError(f"contraction by {fname!r} does not square to zero",
                                     sq.residual(Derivation.zero(self.algebra, -2)))
        self._duals = None

    @property
    def field_names(self) -> list[str]:
        return list(self.fields)

    def basis_contraction(self, fname: str) -> Derivation:
        return Derivation(self.algebra, -1, self.fields[fname])

    def poly(self, terms=None) -> CoeffPoly:
        return CoeffPoly(self.algebra.coords, terms or {})

    def const(self, value) -> CoeffPoly:
        return CoeffPoly.constant(self.algebra.coords, value)

    def coord(self, name: str) -> CoeffPoly:
        return CoeffPoly.variable(self.algebra.coords, name)

    def vf(self, components: Mapping[str, object] | None = None) -> "VectorField":
        return VectorField(self, components or {})

    def basis_field(self, fname: str) -> "VectorField":
        return VectorField(self, {fname: 1})

    def el(self, name: str) -> GradedElement:
        return self.algebra.gen(name)

    def _pairing(self, fname: str, gname: str):
        v = self.fields[fname].get(gname)
        if v is None:
            return Fraction(0)
        p = v.to_poly()
        return p.constant_value() if p.is_constant() else None

    def dual_generators(self) -> dict:
        """For each basis field, a degree-1 generator it pairs to 1 while all others pair to 0."""
        if self._duals is None:
            duals = {}
            for fname in self.fields:
                for g in self.algebra.generators:
                    if g.degree == 1 and self._pairing(fname, g.name) == 1 and all(
                            self._pairing(o, g.name) == 0 for o in self.fields if o != fname):
                        duals[fname] = g.name
                        break
            self._duals = duals
        return self._duals

    def coordinate_duals(self) -> dict:
        """Basis field -> coordinate x with L_field(x) = 1 and L_other(x) = 0, where available."""
        out = {}
        for fname in self.fields:
            L = lie_derivative(self, self.basis_field(fname))
            for c in self.algebra.coords:
                v = L.value(c)
                if v == 1 and all(lie_derivative(self, self.basis_field(o)).value(c).is_zero()
                                  for o in self.fields if o != fname):
                    out[fname] = c
                    break
        return out


class VectorField:
    """Polynomial combination of a model's basis fields."""

    __slots__ = ("model", "components")

    def __init__(self, model: CdgaModel, components: Mapping[str, object]):
        self.model = model
        coords = model.algebra.coords
        comps = {}
        for k, v in components.items():
            if k not in model.fields:
                raise NotVectorFieldError(f"{k!r} is not a basis field of {model.name}")
            p = v if isinstance(v, CoeffPoly) else CoeffPoly.constant(coords, v)
            if isinstance(v, GradedElement):
                p = v.to_poly()
            p = CoeffPoly(coords, p.terms)
            if not p.is_zero():
                comps[k] = p
        self.components = comps

    def coefficient(self, fname: str) -> CoeffPoly:
        return self.components.get(fname) or CoeffPoly(self.model.algebra.coords)

    def __add__(self, other: "VectorField") -> "VectorField":
        comps = dict(self.components)
        for k, v in other.components.items():
            comps[k] = comps[k] + v if k in comps else v
        return VectorField(self.model, comps)

    def __neg__(self):
        return VectorField(self.model, {k: -v for k, v in self.components.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, k):
        return VectorField(self.model, {n: v * k for n, v in self.components.items()})

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, VectorField):
            return NotImplemented
        return self.model is other.model and self.components == other.components

    def __hash__(self):
        return hash(frozenset(self.components.items()))

    def is_zero(self) -> bool:
        return not self.components

    def max_coeff_degree(self) -> int:
        return max((p.degree() for p in self.components.values()), default=-1)

    def __str__(self):
        if not self.components:
            return "0"
        parts = []
        for k in self.model.fields:
            if k in self.components:
                p = self.components[k]
                ps = str(p)
                if ps == "1":
                    parts.append(k)
                elif ps == "-1":
                    parts.append(f"-{k}")
                elif len(p.terms) == 1:
                    parts.append(f"{ps} {k}")
                else:
                    parts.append(f"({ps}) {k}")
        return " + ".join(parts).replace("+ -", "- ")

    __repr__ = __str__


def contraction(model: CdgaModel, X: VectorField) -> Derivation:
    """The degree -1 derivation iota_X, linear over the coefficient ring."""
    alg = model.algebra
    vals: dict = {}
    for fname, coeff in X.components.items():
        c = alg.from_poly(coeff)
        for gname, v in model.fields[fname].items():
            term = c * v
            vals[gname] = vals[gname] + term if gname in vals else term
    return Derivation(alg, -1, vals, check=False)


def lie_derivative(model: CdgaModel, X: VectorField) -> Derivation:
    """L_X = [d, iota_X]."""
    return commutator(model.d, contraction(model, X))


def as_vector_field(model: CdgaModel, D: Derivation) -> VectorField:
    """Write a degree -1 derivation as a contraction iota_Z, or raise."""
    if D.degree != -1:
        raise DegreeError("only degree -1 derivations are contractions")
    duals = model.dual_generators()
    missing = [f for f in model.fields if f not in duals]
    if missing:
        raise NotVectorFieldError(f"no dual generators for fields {missing}")
    Z = VectorField(model, {f: D.value(g).to_poly() for f, g in duals.items()})
    res = contraction(model, Z).residual(D)
    if res is not None:
        raise NotVectorFieldError(f"derivation is not a contraction (mismatch at {res[0]})")
    return Z


def vf_bracket(model: CdgaModel, X: VectorField, Y: VectorField) -> VectorField:
    """The field Z with iota_Z = [L_X, iota_Y]."""
    return as_vector_field(model, commutator(lie_derivative(model, X), contraction(model, Y)))


# built-in models

def point() -> CdgaModel:
    alg = GradedAlgebra([])
    return CdgaModel("point", alg, Derivation.zero(alg, 1), {})


def _affine_names(m: int) -> list[str]:
    return ["x", "y", "z"][:m] if m <= 3 else [f"x{i}" for i in range(1, m + 1)]


def affine(m: int, cap: int | None = None, names: list[str] | None = None) -> CdgaModel:
    """Polynomial forms on R^m; the basis field ``D<coord>`` is the coordinate derivative."""
    names = list(names) if names else _affine_names(m)
    if len(names) != m:
        raise ValueError("need one name per coordinate")
    alg = GradedAlgebra([(f"d{c}", 1) for c in names], names, cap)
    d = Derivation(alg, 1, {c: alg.gen(f"d{c}") for c in names})
    fields = {f"D{c}": {f"d{c}": alg.one()} for c in names}
    return CdgaModel(f"affine({m})", alg, d, fields)


def torus(k: int) -> CdgaModel:
    """Invariant forms on the k-torus: odd generators dphi_i, d = 0, fields e_i."""
    gens = [f"dphi{i}" for i in range(1, k + 1)]
    alg = GradedAlgebra([(g, 1) for g in gens])
    fields = {f"e{i}": {g: alg.one()} for i, g in zip(range(1, k + 1), gens)}
    return CdgaModel(f"torus({k})", alg, Derivation.zero(alg, 1), fields)


def sphere_even(n: int) -> CdgaModel:
    """Minimal model of S^n for even n: x of degree n, y of degree 2n-1, dy = x^2."""
    if n <= 0 or n % 2:
        raise ValueError("sphere_even needs a positive even dimension")
    alg = GradedAlgebra([("x", n), ("y", 2 * n - 1)])
    d = Derivation(alg, 1, {"y": alg.gen("x") * alg.gen("x")})
    return CdgaModel(f"sphere_even({n})", alg, d, {})


def builtin(name: str, *args, **kwargs) -> CdgaModel:
    table = {"point": point, "affine": affine, "torus": torus, "sphere_even": sphere_even}
    if name not in table:
        raise ValueError(f"unknown model {name!r}; choose from {sorted(table)}")
    return table[name](*args, **kwargs)


def explicit(name: str, generators, coords=(), differential=None, fields=None,
             cap: int | None = None) -> CdgaModel:
    """Model from explicit data.  ``differential`` and ``fields`` map names to callables
    or elements; callables receive the algebra."""
    alg = GradedAlgebra(generators, coords, cap)

    def resolve(v):
        return v(alg) if callable(v) else v

    d = Derivation(alg, 1, {k: resolve(v) for k, v in (differential or {}).items()})
    fl = {f: {g: resolve(v) for g, v in vals.items()} for f, vals in (fields or {}).items()}
    return CdgaModel(name, alg, d, fl)


__all__ = ["CdgaModel", "VectorField", "contraction", "lie_derivative", "vf_bracket",
           "as_vector_field", "point", "affine", "torus", "sphere_even", "builtin", "explicit"]
