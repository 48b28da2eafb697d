"""Cohomology of finite slices of graded complexes by exact rank computations."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .algebra import GradedAlgebra, GradedElement, basis_monomials
from .bundle import RnBundle, field_basis, sym_d, sym_space, vector_of
from .derivation import Derivation, apply
from .errors import NotClosedError
from .linalg import bareiss_rank, solve


@dataclass
class Rank:
    value: int
    truncated: bool = False


@dataclass
class CohomologyResult:
    degree: int
    value: int
    truncated: bool = False
    note: str | None = None

    def __int__(self):
        return self.value


def _matrix(columns: list[dict], extra_keys=()):
    index: dict = {}
    for col in columns:
        for k in col:
            index.setdefault(k, len(index))
    for k in extra_keys:
        index.setdefault(k, len(index))
    rows = [[Fraction(0)] * len(columns) for _ in range(len(index))]
    for j, col in enumerate(columns):
        for k, v in col.items():
            rows[index[k]][j] = v
    return index, rows


class AlgebraComplex:
    """A graded algebra with a degree-1 derivation, sliced by degree and coefficient cap."""

    def __init__(self, algebra: GradedAlgebra, differential: Derivation, coeff_cap: int | None = None):
        self.algebra = algebra
        self.differential = differential
        self.coeff_cap = coeff_cap
        self._basis: dict = {}
        self._rank: dict = {}

    def basis(self, k: int) -> list:
        if k not in self._basis:
            self._basis[k] = basis_monomials(self.algebra, k, self.coeff_cap)
        return self._basis[k]

    def dimension(self, k: int) -> int:
        return len(self.basis(k))

    def image_columns(self, k: int):
        alg = self.algebra
        return [apply(self.differential, GradedElement(alg, {key: Fraction(1)})) for key in self.basis(k)]

    def rank(self, k: int) -> Rank:
        """Rank of d from degree k to degree k+1."""
        if k not in self._rank:
            images = self.image_columns(k)
            target = set(self.basis(k + 1))
            outside = any(key not in target for img in images for key in img.terms)
            truncated = outside or any(img.truncated for img in images)
            _, rows = _matrix([img.terms for img in images])
            self._rank[k] = Rank(bareiss_rank(rows) if rows else 0, truncated)
        return self._rank[k]

    @property
    def capped(self) -> bool:
        return bool(self.algebra.coords)

    def __call__(self, e: GradedElement) -> GradedElement:
        return apply(self.differential, e)


def betti(cx: AlgebraComplex, k: int) -> CohomologyResult:
    dim = cx.dimension(k)
    r_out = cx.rank(k)
    r_in = cx.rank(k - 1) if k > 0 else Rank(0)
    note = None
    if cx.capped:
        note = f"coefficient degree capped at {cx.coeff_cap}; rank valid below cap"
    return CohomologyResult(k, dim - r_out.value - r_in.value, r_out.truncated or r_in.truncated, note)


def betti_numbers(cx: AlgebraComplex, top: int) -> tuple:
    return tuple(betti(cx, k).value for k in range(top + 1))


def de_rham(model, cap: int | None = None) -> AlgebraComplex:
    return AlgebraComplex(model.algebra, model.d, cap)


def is_exact(e: GradedElement, cx: AlgebraComplex, degree: int | None = None):
    """(True, b) with d b = e, or (False, None).  Raises if e is not closed."""
    alg = cx.algebra
    if e.is_zero():
        return True, alg.zero()
    k = e.degree if degree is None else degree
    de = cx(e)
    if not de.is_zero():
        raise NotClosedError(f"element is not closed: d e = {de}", de)
    if k == 0:
        return False, None
    keys = cx.basis(k - 1)
    images = cx.image_columns(k - 1)
    index, rows = _matrix([img.terms for img in images], e.terms)
    rhs = [Fraction(0)] * len(index)
    for key, v in e.terms.items():
        rhs[index[key]] = v
    sol = solve(rows, rhs, len(keys))
    if sol is None:
        return False, None
    b = GradedElement(alg, {key: v for key, v in zip(keys, sol) if v})
    return True, b


# the symmetry complex of a bundle

class SymComplex:
    def __init__(self, P: RnBundle, cap: int | None = None):
        self.P = P
        self.cap = cap
        self._spaces: dict = {}

    def space(self, q: int):
        if q not in self._spaces:
            self._spaces[q] = sym_space(self.P, q, self.cap)
        return self._spaces[q]

    def dimension(self, q: int) -> int:
        return self.space(q).dimension

    def rank(self, q: int) -> int:
        """Rank of [Q, -] from degree q to q+1 (zero out of degree 0)."""
        if q >= 0 or q < -self.P.n:
            return 0
        cols = [vector_of(sym_d(e)) for e in self.space(q).basis]
        _, rows = _matrix(cols)
        return bareiss_rank(rows) if rows else 0

    def cohomology(self, q: int) -> int:
        return self.dimension(q) - self.rank(q) - self.rank(q - 1)


def sym_cohomology_direct(P: RnBundle, cap: int | None = None) -> tuple:
    cx = SymComplex(P, cap)
    return tuple(cx.cohomology(q) for q in range(-P.n, 1))


def sym_cohomology_formula(P: RnBundle, cap: int | None = None) -> tuple:
    """Closed formula: H^{-p} = H^{n-p}(M) for p > 0 and H^0 = (vector fields) + H^n(M)."""
    base = de_rham(P.model, cap)
    n = P.n
    out = [betti(base, n - p).value for p in range(n, 0, -1)]
    out.append(len(field_basis(P.model, cap)) + betti(base, n).value)
    return tuple(out)


def sym_cohomology(P: RnBundle, cap: int | None = None) -> dict:
    direct = sym_cohomology_direct(P, cap)
    formula = sym_cohomology_formula(P, cap)
    return {"degrees": list(range(-P.n, 1)), "direct": direct, "formula": formula,
            "agree": direct == formula}


__all__ = ["AlgebraComplex", "SymComplex", "CohomologyResult", "betti", "betti_numbers",
           "de_rham", "is_exact", "sym_cohomology", "sym_cohomology_direct",
           "sym_cohomology_formula"]
