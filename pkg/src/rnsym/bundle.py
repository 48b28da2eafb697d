"""Trivial R[n]-bundles over a model and their symmetry dg Lie algebra.

The algebra of functions on the bundle is the model algebra with one extra
generator ``t`` of degree n, and the homological vector field is
Q = d + H d/dt for a closed (n+1)-form H.  Symmetries in degree 0 are
L_X + B d/dt with L_X H = dB, in degree -1 they are iota_X + alpha d/dt, and
below that eta d/dt.  ``SymElement`` stores (degree, X, form); ``encode``
turns it into a literal derivation of the bundle algebra so every closed
formula here can be checked against graded commutators.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

from .algebra import CoeffPoly, GradedElement, basis_in_degree, coeff_monomials
from .derivation import Derivation, apply, commutator
from .errors import DecodeError, DegreeError, ForeignGeneratorError, NotClosedError
from .models import CdgaModel, VectorField, as_vector_field, contraction, lie_derivative, vf_bracket

FIBER = "t"


class RnBundle:
    def __init__(self, model: CdgaModel, n: int, H: GradedElement | int = 0):
        if n < 1:
            raise DegreeError("fiber degree n must be positive")
        self.model = model
        self.n = n
        alg = model.algebra
        if not isinstance(H, GradedElement):
            H = alg.const(H) if H else alg.zero()
        if H.algebra != alg:
            raise ForeignGeneratorError("H must be an element of the model algebra")
        if not H.is_zero() and H.degree != n + 1:
            raise DegreeError(f"H has degree {H.degree}, expected {n + 1}")
        dH = apply(model.d, H)
        if not dH.is_zero():
            raise NotClosedError(f"dH = {dH} is nonzero", (FIBER, dH))
        self.H = H
        self.total = alg.extended([(FIBER, n)])
        self.t = self.total.gen(FIBER)
        self.dt = Derivation(self.total, -n, {FIBER: self.total.one()})
        self.Q = model.d.extend_to(self.total) + self.total.embed(H) * self.dt
        self._flat = None

    @property
    def flat(self) -> "RnBundle":
        """The same bundle with H = 0."""
        if self._flat is None:
            self._flat = self if self.H.is_zero() else RnBundle(self.model, self.n, 0)
        return self._flat

    def d(self, e: GradedElement) -> GradedElement:
        return apply(self.model.d, e)

    def lie(self, X: VectorField, e: GradedElement) -> GradedElement:
        return apply(lie_derivative(self.model, X), e)

    def iota(self, X: VectorField, e: GradedElement) -> GradedElement:
        return apply(contraction(self.model, X), e)

    def __repr__(self):
        return f"RnBundle({self.model.name}, n={self.n}, H={self.H})"


def build_bundle(model: CdgaModel, n: int, H=0) -> RnBundle:
    return RnBundle(model, n, H)


def gauge(P: RnBundle, B: GradedElement) -> RnBundle:
    """The bundle with H' = H + dB."""
    return RnBundle(P.model, P.n, P.H + P.d(B))


class SymElement:
    """Typed symmetry of degree q: (X, form) read according to the shape of q."""

    __slots__ = ("bundle", "degree", "X", "form")

    def __init__(self, bundle: RnBundle, degree: int, X: VectorField | None = None,
                 form: GradedElement | None = None):
        model = bundle.model
        self.bundle = bundle
        self.degree = degree
        if X is not None and not X.is_zero() and degree not in (0, -1):
            raise DegreeError("only degrees 0 and -1 carry a vector field")
        self.X = X if X is not None else model.vf()
        form = form if form is not None else model.algebra.zero()
        if not isinstance(form, GradedElement):
            form = model.algebra.from_poly(form)
        if form.algebra != model.algebra:
            raise ForeignGeneratorError("form must live in the model algebra")
        if not form.is_zero() and form.degree != bundle.n + degree:
            raise DegreeError(f"form has degree {form.degree}, expected {bundle.n + degree}")
        self.form = form

    @property
    def shape(self) -> str:
        return {0: "L", -1: "i"}.get(self.degree, "eta")

    @property
    def shifted_degree(self) -> int:
        return self.degree + 1

    def _like(self, X, form):
        return SymElement(self.bundle, self.degree, X, form)

    def _check(self, other):
        if other.bundle is not self.bundle or other.degree != self.degree:
            raise DegreeError("elements must share bundle and degree")

    def __add__(self, other):
        self._check(other)
        return self._like(self.X + other.X, self.form + other.form)

    def __neg__(self):
        return self._like(-self.X, -self.form)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, k):
        return self._like(self.X * k, self.form * k)

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, SymElement):
            return NotImplemented
        return (self.degree == other.degree and self.X == other.X and self.form == other.form
                and self.bundle.model is other.bundle.model)

    def __hash__(self):
        return hash((self.degree, self.X, self.form))

    def is_zero(self) -> bool:
        return self.X.is_zero() and self.form.is_zero()

    def __str__(self):
        tail = f"({self.form}) Dt"
        if self.shape == "L":
            return f"L[{self.X}] + {tail}"
        if self.shape == "i":
            return f"iota[{self.X}] + {tail}"
        return tail

    __repr__ = __str__


def sym_element(P: RnBundle, q: int, X=None, form=None) -> SymElement:
    return SymElement(P, q, X, form)


def constraint_residual(e: SymElement) -> GradedElement:
    """L_X H - dB for a degree-0 element (zero exactly for members)."""
    P = e.bundle
    return P.lie(e.X, P.H) - P.d(e.form)


def is_member(e: SymElement) -> bool:
    if e.degree > 0:
        return e.is_zero()
    if e.degree == 0:
        return constraint_residual(e).is_zero()
    return e.degree >= -e.bundle.n or e.is_zero()


def sym_d(e: SymElement) -> SymElement:
    """[Q, e] in typed form."""
    P = e.bundle
    if e.shape == "L":
        return SymElement(P, 1, None, P.d(e.form) - P.lie(e.X, P.H))
    if e.shape == "i":
        return SymElement(P, 0, e.X, P.d(e.form) + P.iota(e.X, P.H))
    return SymElement(P, e.degree + 1, None, P.d(e.form))


def _raw_bracket(a: SymElement, b: SymElement) -> SymElement | None:
    """Table entries for shape pairs with the shape of ``a`` not after ``b``."""
    P = a.bundle
    q = a.degree + b.degree
    sa, sb = a.shape, b.shape
    if sa == "L" and sb == "L":
        return SymElement(P, q, vf_bracket(P.model, a.X, b.X),
                          P.lie(a.X, b.form) - P.lie(b.X, a.form))
    if sa == "L" and sb == "i":
        return SymElement(P, q, vf_bracket(P.model, a.X, b.X),
                          P.lie(a.X, b.form) - P.iota(b.X, a.form))
    if sa == "L" and sb == "eta":
        return SymElement(P, q, None, P.lie(a.X, b.form))
    if sa == "i" and sb == "i":
        return SymElement(P, q, None, P.iota(a.X, b.form) + P.iota(b.X, a.form))
    if sa == "i" and sb == "eta":
        return SymElement(P, q, None, P.iota(a.X, b.form))
    if sa == "eta" and sb == "eta":
        return SymElement(P, q, None, None)
    return None


def sym_bracket(a: SymElement, b: SymElement) -> SymElement:
    """Graded commutator of two typed symmetries."""
    if a.bundle.model is not b.bundle.model:
        raise ForeignGeneratorError("symmetries of different bundles")
    r = _raw_bracket(a, b)
    if r is not None:
        return r
    sign = 1 if (a.degree * b.degree) % 2 else -1
    return _raw_bracket(b, a) * sign


def map_F(e: SymElement) -> SymElement:
    """Chain map to the flat bundle: B -> B - iota_X H in degree 0, identity below."""
    P = e.bundle
    if e.degree == 0:
        return SymElement(P.flat, 0, e.X, e.form - P.iota(e.X, P.H))
    return SymElement(P.flat, e.degree, e.X, e.form)


def bracket_defect(a: SymElement, b: SymElement) -> GradedElement:
    """d iota_Y iota_X H for degree-0 inputs."""
    P = a.bundle
    return P.d(P.iota(b.X, P.iota(a.X, P.H)))


def bracket_H(a: SymElement, b: SymElement) -> SymElement:
    """Degree-0 bracket corrected so that F preserves it."""
    if a.degree != 0 or b.degree != 0:
        raise DegreeError("the corrected bracket is defined on degree 0")
    r = sym_bracket(a, b)
    return SymElement(a.bundle, 0, r.X, r.form + bracket_defect(a, b))


# literal derivations of the bundle algebra

def encode(e: SymElement) -> Derivation:
    P = e.bundle
    tot = P.total
    vals = {}
    if e.shape == "L":
        vals.update(lie_derivative(P.model, e.X).extend_to(tot).values)
    elif e.shape == "i":
        vals.update(contraction(P.model, e.X).extend_to(tot).values)
    if not e.form.is_zero():
        vals[FIBER] = tot.embed(e.form)
    return Derivation(tot, e.degree, vals, check=False)


def _model_part(P: RnBundle, D: Derivation) -> Derivation:
    alg = P.model.algebra
    vals = {}
    for n in list(alg.names) + list(alg.coords):
        vals[n] = P.total.restrict(D.value(n), alg)
    return Derivation(alg, D.degree, vals, check=False)


def decode(D: Derivation, P: RnBundle) -> SymElement:
    """Inverse of ``encode`` where the typed data is recoverable from the derivation."""
    q = D.degree
    if D.value(FIBER).degrees() - {P.n + q}:
        raise DecodeError("value on t has the wrong degree")
    form = P.total.restrict(D.value(FIBER), P.model.algebra)
    if P.total.embed(form) != D.value(FIBER):
        raise DecodeError("value on t involves t")
    X = None
    if q == -1:
        X = as_vector_field(P.model, _model_part(P, D))
    elif q == 0:
        duals = P.model.coordinate_duals()
        missing = [f for f in P.model.fields if f not in duals]
        if missing:
            raise DecodeError(f"Lie derivatives do not determine the fields {missing} on this model")
        X = VectorField(P.model, {f: P.total.restrict(D.value(c), P.model.algebra).to_poly()
                                  for f, c in duals.items()})
    e = SymElement(P, q, X, form)
    res = encode(e).residual(D)
    if res is not None:
        raise DecodeError(f"derivation is not a typed symmetry (mismatch at {res[0]})")
    return e


def literal_d(e: SymElement) -> Derivation:
    return commutator(e.bundle.Q, encode(e))


def literal_bracket(a: SymElement, b: SymElement) -> Derivation:
    return commutator(encode(a), encode(b))


# spaces

def field_basis(model: CdgaModel, cap: int | None) -> list[VectorField]:
    coords = model.algebra.coords
    if coords and cap is None:
        raise ValueError("a coefficient cap is required to enumerate vector fields")
    monos = coeff_monomials(len(coords), cap) if coords else [()]
    return [VectorField(model, {f: CoeffPoly(coords, {m: 1})}) for f in model.fields for m in monos]


def ambient_basis(P: RnBundle, q: int, cap: int | None = None) -> list[SymElement]:
    """Basis of the typed space of degree q before imposing the degree-0 constraint."""
    model = P.model
    forms = basis_in_degree(model.algebra, P.n + q, cap) if P.n + q >= 0 else []
    out = []
    if q in (0, -1):
        out += [SymElement(P, q, X, None) for X in field_basis(model, cap)]
    out += [SymElement(P, q, None, f) for f in forms]
    return out


def vector_of(e: SymElement) -> dict:
    """Sparse coordinates of a typed element in the ambient monomial basis."""
    out = {}
    for fname, p in e.X.components.items():
        for m, c in p.terms.items():
            out[("X", fname, m)] = c
    for key, c in e.form.terms.items():
        out[("F", key)] = c
    return out


def _kernel_elements(P, q, basis, image: Callable[[SymElement], dict]):
    from .linalg import nullspace

    rows_index: dict = {}
    cols = []
    for b in basis:
        col = {}
        for k, v in image(b).items():
            col[rows_index.setdefault(k, len(rows_index))] = v
        cols.append(col)
    rows = [[c.get(r, Fraction(0)) for c in cols] for r in range(len(rows_index))]
    out = []
    for vec in nullspace(rows, len(basis)):
        e = SymElement(P, q)
        for coef, b in zip(vec, basis):
            if coef:
                e = e + b * coef
        out.append(e)
    return out


@dataclass
class SymSpace:
    degree: int
    description: str
    basis: list = field(default_factory=list)
    predicate: Callable | None = None

    @property
    def dimension(self) -> int:
        return len(self.basis)


def sym_space(P: RnBundle, q: int, cap: int | None = None) -> SymSpace:
    n = P.n
    if q > 0 or q < -n:
        return SymSpace(q, "0")
    if q == 0:
        basis = _kernel_elements(P, 0, ambient_basis(P, 0, cap),
                                 lambda e: constraint_residual(e).terms)
        return SymSpace(0, f"{{L_X + B dt : L_X H = dB, B of degree {n}}}", basis, is_member)
    if q == -1:
        return SymSpace(-1, f"vector fields + forms of degree {n - 1}", ambient_basis(P, -1, cap))
    return SymSpace(q, f"forms of degree {n + q}", ambient_basis(P, q, cap))


def are_equivalent(P1: RnBundle, P2: RnBundle, cap: int | None = None):
    """(True, B) with H2 - H1 = dB when the bundles are gauge equivalent, else (False, None)."""
    from .cohomology import AlgebraComplex, is_exact

    if P1.model is not P2.model or P1.n != P2.n:
        return False, None
    cx = AlgebraComplex(P1.model.algebra, P1.model.d, cap)
    return is_exact(P2.H - P1.H, cx, degree=P1.n + 1)


__all__ = ["RnBundle", "SymElement", "SymSpace", "build_bundle", "gauge", "sym_element",
           "sym_space", "sym_d", "sym_bracket", "map_F", "bracket_H", "bracket_defect",
           "encode", "decode", "literal_d", "literal_bracket", "ambient_basis", "field_basis",
           "vector_of", "constraint_residual", "is_member", "are_equivalent"]
