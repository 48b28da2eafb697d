"""Derived brackets, Hamiltonian symmetries and n-plectic structures.

The derived bracket of a, b is [[Q, a], b].  It is defined on the whole
typed algebra through ``sym_d`` and ``sym_bracket``; ``derived_bracket``
instead uses the closed-form table for negative-degree inputs, so the two can
be compared.  Shifted degree is degree + 1.
"""
from __future__ import annotations

from .algebra import CoeffPoly, GradedElement
from .bundle import RnBundle, SymElement, decode, encode, sym_bracket, sym_d
from .derivation import apply, commutator
from .errors import DegreeError, MembershipError
from .models import VectorField, contraction, vf_bracket


def derived_bracket_general(a: SymElement, b: SymElement) -> SymElement:
    return sym_bracket(sym_d(a), b)


def derived_bracket(a: SymElement, b: SymElement) -> SymElement:
    """Closed-form table on negative-degree symmetries."""
    if a.degree >= 0 or b.degree >= 0:
        raise DegreeError("derived brackets take negative-degree symmetries")
    P = a.bundle
    q = a.degree + b.degree + 1
    if a.shape == "i" and b.shape == "i":
        form = (P.lie(a.X, b.form) - P.iota(b.X, P.d(a.form))
                - P.iota(b.X, P.iota(a.X, P.H)))
        return SymElement(P, q, vf_bracket(P.model, a.X, b.X), form)
    if a.shape == "i":
        return SymElement(P, q, None, P.lie(a.X, b.form))
    if b.shape == "i":
        form_deg = P.n + a.degree
        sign = -1 if (P.n - form_deg) % 2 else 1
        return SymElement(P, q, None, P.iota(b.X, P.d(a.form)) * sign)
    return SymElement(P, q, None, None)


def literal_derived_bracket(a: SymElement, b: SymElement):
    return commutator(commutator(a.bundle.Q, encode(a)), encode(b))


def twisted_derived_bracket(a: SymElement, b: SymElement) -> SymElement:
    """(-1)^{||a||} [[Q, a], b] with ||a|| the shifted degree."""
    r = derived_bracket_general(a, b)
    return r * -1 if a.shifted_degree % 2 else r


def _sign(k: int) -> int:
    return -1 if k % 2 else 1


def leibniz_residuals(a: SymElement, b: SymElement, c: SymElement | None = None,
                      twisted: bool = False) -> dict:
    """Residuals of the differential and bracket Leibniz rules (zero elements when they hold).

    For the plain bracket [[Q,a],b] the rule reads
    a(bc) = (-1)^{||a||} (ab)c + (-1)^{||a|| ||b||} b(ac);
    the twisted bracket satisfies it without the first sign.
    """
    br = twisted_derived_bracket if twisted else derived_bracket_general
    sa = a.shifted_degree
    out = {}
    lhs = sym_d(br(a, b))
    rhs = br(sym_d(a), b) + br(a, sym_d(b)) * _sign(sa)
    out["differential"] = lhs - rhs
    if c is not None:
        sb = b.shifted_degree
        first = br(br(a, b), c) * (1 if twisted else _sign(sa))
        out["bracket"] = br(a, br(b, c)) - first - br(b, br(a, c)) * _sign(sa * sb)
    return out


def leibniz_verify(a: SymElement, b: SymElement, c: SymElement | None = None,
                   twisted: bool = False) -> bool:
    return all(r.is_zero() for r in leibniz_residuals(a, b, c, twisted).values())


# Hamiltonian symmetries

def gsym_check(e: SymElement):
    """(ok, residual).  Degree 0 needs L_X H = 0 and B = 0; degree -1 needs d alpha + iota_X H = 0."""
    P = e.bundle
    if e.degree > 0:
        return e.is_zero(), None
    if e.degree == 0:
        lx = P.lie(e.X, P.H)
        if not e.form.is_zero():
            return False, ("B", e.form)
        return lx.is_zero(), (None if lx.is_zero() else ("L_X H", lx))
    if e.degree == -1:
        r = P.d(e.form) + P.iota(e.X, P.H)
        return r.is_zero(), (None if r.is_zero() else ("d alpha + iota_X H", r))
    return True, None


def require_ham(e: SymElement):
    ok, res = gsym_check(e)
    if not ok:
        raise MembershipError(f"not a Hamiltonian symmetry: {res[0]} = {res[1]}", res)


def ham_bracket(a: SymElement, b: SymElement, pure_form_row: bool = True) -> SymElement:
    """Bracket on Hamiltonian symmetries of negative degree.

    ``pure_form_row=False`` zeroes the bracket of a pure form with a degree -1
    element, which is the alternative convention for that row.
    """
    for e in (a, b):
        if e.degree >= 0:
            raise DegreeError("Hamiltonian brackets take negative-degree symmetries")
        require_ham(e)
    P = a.bundle
    q = a.degree + b.degree + 1
    if a.shape == "i" and b.shape == "i":
        return SymElement(P, q, vf_bracket(P.model, a.X, b.X), P.lie(a.X, b.form))
    if a.shape == "i":
        return SymElement(P, q, None, P.lie(a.X, b.form))
    if b.shape == "i":
        if not pure_form_row:
            return SymElement(P, q)
        form_deg = P.n + a.degree
        sign = -1 if (P.n - form_deg) % 2 else 1
        return SymElement(P, q, None, P.iota(b.X, P.d(a.form)) * sign)
    return SymElement(P, q)


# n-plectic structures

class RatFunc:
    """Quotient of coefficient polynomials, kept unreduced."""

    __slots__ = ("num", "den")

    def __init__(self, num: CoeffPoly, den: CoeffPoly | None = None):
        self.num = num
        self.den = den if den is not None else CoeffPoly.constant(num.coords, 1)

    def is_zero(self):
        return self.num.is_zero()

    def __add__(self, o):
        return RatFunc(self.num * o.den + o.num * self.den, self.den * o.den)

    def __sub__(self, o):
        return RatFunc(self.num * o.den - o.num * self.den, self.den * o.den)

    def __mul__(self, o):
        return RatFunc(self.num * o.num, self.den * o.den)

    def __truediv__(self, o):
        return RatFunc(self.num * o.den, self.den * o.num)

    def simplified(self) -> "RatFunc":
        if self.den.is_constant():
            k = self.den.constant_value()
            return RatFunc(self.num * (1 / k))
        try:
            return RatFunc(self.num.divexact(self.den))
        except ArithmeticError:
            return self

    def polynomial(self) -> CoeffPoly:
        return self.num.divexact(self.den)


def _contraction_matrix(P: RnBundle, element: GradedElement):
    """Rows indexed by generator monomials, columns by basis fields: iota_{e_i} element."""
    model = P.model
    cols = []
    rows_index: dict = {}
    for fname in model.fields:
        img = apply(model.basis_contraction(fname), element)
        col = {}
        for gexp, poly in img.coefficients().items():
            col[rows_index.setdefault(gexp, len(rows_index))] = poly.uncapped()
        cols.append(col)
    return rows_index, cols


def _rf_rref(rows, ncols):
    """Gauss-Jordan over the fraction field of the coefficient ring."""
    a = [list(r) for r in rows]
    pivots = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(a)) if not a[i][c].is_zero()), None)
        if p is None:
            continue
        a[r], a[p] = a[p], a[r]
        piv = a[r][c]
        a[r] = [(v / piv).simplified() for v in a[r]]
        for i in range(len(a)):
            if i != r and not a[i][c].is_zero():
                f = a[i][c]
                a[i] = [(x - f * y).simplified() for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
    return a[:r], pivots


def _rf_matrix(P, element, extra=None):
    coords = P.model.algebra.coords
    rows_index, cols = _contraction_matrix(P, element)
    if extra is not None:
        for gexp in extra.coefficients():
            rows_index.setdefault(gexp, len(rows_index))
    zero = CoeffPoly(coords)
    rows = [[RatFunc(col.get(r, zero)) for col in cols] for r in range(len(rows_index))]
    return rows_index, rows


def nplectic_check(P: RnBundle):
    """(True, None) if iota_v H = 0 forces v = 0 over the fraction field, else (False, v)."""
    model = P.model
    fields = list(model.fields)
    _, rows = _rf_matrix(P, P.H)
    red, pivots = _rf_rref(rows, len(fields))
    free = [c for c in range(len(fields)) if c not in pivots]
    if not free:
        return True, None
    f = free[0]
    coords = model.algebra.coords
    vec = {fields[f]: RatFunc(CoeffPoly.constant(coords, 1))}
    for row, p in zip(red, pivots):
        vec[fields[p]] = RatFunc(-row[f].num, row[f].den)
    den = CoeffPoly.constant(coords, 1)
    for v in vec.values():
        den = den * v.den
    comps = {k: (v.num * den).divexact(v.den) for k, v in vec.items()}
    return False, VectorField(model, comps)


def hamiltonian_vector_field(P: RnBundle, alpha: GradedElement) -> VectorField:
    """The field X with d alpha + iota_X H = 0 (unique for n-plectic H; must be polynomial)."""
    model = P.model
    if not alpha.is_zero() and alpha.degree != P.n - 1:
        raise DegreeError(f"Hamiltonian forms have degree {P.n - 1}")
    fields = list(model.fields)
    target = -P.d(alpha)
    rows_index, rows = _rf_matrix(P, P.H, target)
    coords = model.algebra.coords
    rhs_polys = target.coefficients()
    zero = CoeffPoly(coords)
    aug = [row + [RatFunc(rhs_polys.get(g, zero).uncapped())] for g, row in
           zip(sorted(rows_index, key=rows_index.get), rows)]
    red, pivots = _rf_rref(aug, len(fields) + 1)
    if len(fields) in pivots:
        raise MembershipError("d alpha is not in the image of contraction with H")
    comps = {}
    for row, p in zip(red, pivots):
        try:
            comps[fields[p]] = row[-1].polynomial()
        except ArithmeticError:
            raise MembershipError(f"Hamiltonian field of {alpha} is not polynomial") from None
    X = VectorField(model, comps)
    check = P.d(alpha) + P.iota(X, P.H)
    if not check.is_zero():
        raise MembershipError("Hamiltonian field is not unique; H is not n-plectic")
    return X


def ham_element(P: RnBundle, alpha: GradedElement) -> SymElement:
    return SymElement(P, -1, hamiltonian_vector_field(P, alpha), alpha)


def poisson(P: RnBundle, f: GradedElement, g: GradedElement) -> GradedElement:
    """{f, g} read off from the Hamiltonian bracket of (X_f, f) and (X_g, g)."""
    return ham_bracket(ham_element(P, f), ham_element(P, g)).form


def higher_derived_bracket(elements: list[SymElement]) -> SymElement:
    """[[...[[Q, a1], a2], ...], ak] as a literal commutator, decoded to typed form."""
    if not elements:
        raise ValueError("need at least one element")
    P = elements[0].bundle
    D = P.Q
    for e in elements:
        D = commutator(D, encode(e))
    return decode(D, P)


def multi_contraction(P: RnBundle, fields: list[VectorField], form: GradedElement) -> GradedElement:
    """iota_{X1} iota_{X2} ... iota_{Xk} form."""
    out = form
    for X in reversed(fields):
        out = apply(contraction(P.model, X), out)
    return out


def rogers_bracket(P: RnBundle, forms: list[GradedElement]) -> GradedElement:
    """(-1)^{floor(k/2)} iota_{X1} ... iota_{Xk} H for Hamiltonian forms alpha_1..alpha_k."""
    k = len(forms)
    fields = [hamiltonian_vector_field(P, a) for a in forms]
    sign = -1 if (k // 2) % 2 else 1
    return multi_contraction(P, fields, P.H) * sign


__all__ = ["derived_bracket", "derived_bracket_general", "literal_derived_bracket",
           "twisted_derived_bracket", "leibniz_residuals", "leibniz_verify", "gsym_check", "ham_bracket", "nplectic_check",
           "hamiltonian_vector_field", "ham_element", "poisson", "higher_derived_bracket",
           "rogers_bracket", "multi_contraction"]
