"""Certificates for lifting an infinitesimal action to the R[n]-bundle.

An assignment gives an (n-1)-form alpha_a for every basis element a of the
Lie algebra.  The checks below verify the strict, Leibniz, ladder and BRST
forms of the lifting equations and compare them with the Cartan model.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations

from .algebra import GradedElement
from .bundle import RnBundle
from .cohomology import AlgebraComplex, is_exact
from .derivation import apply
from .errors import DegreeError
from .lie import (EquivariantComplex, LieAction, brst_differential, cartan_differential,
                  ce_differential, forgetful, invariance_residuals)


class AlphaAssignment:
    def __init__(self, act: LieAction, P: RnBundle, forms):
        alg = P.model.algebra
        if isinstance(forms, dict):
            forms = [forms.get(a, forms.get(act.g.names[a], alg.zero())) for a in range(act.g.dim)]
        forms = [f if isinstance(f, GradedElement) else alg.const(f) for f in forms]
        if len(forms) != act.g.dim:
            raise ValueError("need one form per basis element")
        for f in forms:
            if not f.is_zero() and f.degree != P.n - 1:
                raise DegreeError(f"alpha has degree {f.degree}, expected {P.n - 1}")
        self.act, self.P, self.forms = act, P, forms

    def __getitem__(self, a: int) -> GradedElement:
        return self.forms[a]

    def of_bracket(self, a: int, b: int) -> GradedElement:
        """alpha_{[a,b]}."""
        out = self.P.model.algebra.zero()
        for c, f in self.act.g.bracket(a, b).items():
            out = out + self.forms[c] * f
        return out

    def c(self, a: int, b: int) -> GradedElement:
        iota = self.act.iota
        return apply(iota(a), self.forms[b]) + apply(iota(b), self.forms[a])


@dataclass
class LiftReport:
    ok: bool
    residuals: dict = field(default_factory=dict)
    constants: list | None = None
    detail: dict = field(default_factory=dict)


def _nonzero(items):
    return [(k, v) for k, v in items if not v.is_zero()]


def _equation_residuals(A: AlphaAssignment) -> dict:
    act, P = A.act, A.P
    dim = act.g.dim
    moment = _nonzero((a, P.d(A[a]) + apply(act.iota(a), P.H)) for a in range(dim))
    equiv = _nonzero(((a, b), apply(act.lie(a), A[b]) - A.of_bracket(a, b))
                     for a in range(dim) for b in range(dim))
    return {"moment": moment, "equivariance": equiv}


def check_strict(A: AlphaAssignment) -> LiftReport:
    """iota_a alpha_b + iota_b alpha_a = 0, d alpha_a + iota_a H = 0, L_a alpha_b = alpha_{[a,b]}."""
    dim = A.act.g.dim
    res = {"symmetric": _nonzero(((a, b), A.c(a, b)) for a in range(dim) for b in range(a, dim))}
    res.update(_equation_residuals(A))
    return LiftReport(not any(res.values()), res)


def _is_constant(e: GradedElement, P: RnBundle) -> bool:
    if not P.d(e).is_zero():
        return False
    return all(sum(c) == 0 for _, c in e.terms)


def check_leibniz(A: AlphaAssignment) -> LiftReport:
    """Moment and equivariance equations, with c_{a,b} required to be constant."""
    dim = A.act.g.dim
    res = _equation_residuals(A)
    consts = [[A.c(a, b) for b in range(dim)] for a in range(dim)]
    bad = [((a, b), consts[a][b]) for a in range(dim) for b in range(a, dim)
           if not _is_constant(consts[a][b], A.P)]
    res["nonconstant_c"] = bad
    return LiftReport(not any(res.values()), res, consts)


def _c_scalars(consts) -> list | None:
    """Scalar matrix when every c_{a,b} is a multiple of the unit, else None."""
    out = []
    for row in consts:
        vals = []
        for e in row:
            if e.is_zero():
                vals.append(Fraction(0))
                continue
            try:
                vals.append(e.scalar_value())
            except DegreeError:
                return None
        out.append(vals)
    return out


def cartan_element(A: AlphaAssignment, cx: EquivariantComplex) -> GradedElement:
    W = cx.embed(A.P.H)
    for a in range(A.act.g.dim):
        W = W + cx.embed(A[a]) * cx.omega(a)
    return W


def cartan_equivalence(A: AlphaAssignment) -> LiftReport:
    """Build W = H + alpha_a Omega^a and classify it in the Cartan model.

    strict: W invariant and d_C W = 0.  leibniz: W invariant and
    d_C W = 1/2 c_{a,b} Omega^a Omega^b with constant c_{a,b}.
    """
    cx = cartan_differential(A.act.g, A.act)
    W = cartan_element(A, cx)
    inv = invariance_residuals(W, cx)
    dW = cx(W)
    dim = A.act.g.dim
    consts = [[A.c(a, b) for b in range(dim)] for a in range(dim)]
    expected = cx.algebra.zero()
    for a in range(dim):
        for b in range(dim):
            expected = expected + cx.embed(consts[a][b]) * cx.omega(a) * cx.omega(b) * Fraction(1, 2)
    scalars = _c_scalars(consts) if all(_is_constant(c, A.P) for row in consts for c in row) else None
    strict = not inv and dW.is_zero()
    leibniz = not inv and scalars is not None and dW == expected
    detail = {"W": W, "dW": dW, "invariant": not inv, "strict": strict, "leibniz": leibniz}
    return LiftReport(strict or leibniz, {"invariance": list(inv.items())}, scalars, detail)


# ladders

class SigmaLadder:
    """sigma_0 = H and sigma_j on increasing index tuples, extended antisymmetrically."""

    def __init__(self, act: LieAction, P: RnBundle, rungs: dict):
        self.act, self.P = act, P
        dim, n = act.g.dim, P.n
        self.rungs = {0: {(): P.H}}
        for j, table in rungs.items():
            if j < 1 or j > n + 1:
                raise DegreeError(f"ladder index {j} outside 1..{n + 1}")
            clean = {}
            for key, form in table.items():
                key = (key,) if isinstance(key, int) else tuple(key)
                if len(key) != j or any(not 0 <= k < dim for k in key):
                    raise DegreeError(f"rung {j} has a malformed argument {key}")
                if not form.is_zero() and form.degree != n + 1 - j:
                    raise DegreeError(f"rung {j} needs forms of degree {n + 1 - j}")
                sign, ordered = _sort_sign(key)
                if sign == 0:
                    continue
                clean[ordered] = clean.get(ordered, P.model.algebra.zero()) + form * sign
            self.rungs[j] = clean

    def value(self, j: int, args) -> GradedElement:
        sign, key = _sort_sign(tuple(args))
        zero = self.P.model.algebra.zero()
        if sign == 0:
            return zero
        return self.rungs.get(j, {}).get(key, zero) * sign


def _sort_sign(key: tuple):
    if len(set(key)) != len(key):
        return 0, key
    arr = list(key)
    sign = 1
    for i in range(len(arr)):
        for j in range(len(arr) - 1 - i):
            if arr[j] > arr[j + 1]:
                arr[j], arr[j + 1] = arr[j + 1], arr[j]
                sign = -sign
    return sign, tuple(arr)


def ce_cochain_differential(S: SigmaLadder, j: int, args: tuple) -> GradedElement:
    """(delta sigma_j)(a_0, ..., a_j) for form-valued cochains."""
    act, g = S.act, S.act.g
    out = S.P.model.algebra.zero()
    for i, a in enumerate(args):
        rest = args[:i] + args[i + 1:]
        term = apply(act.lie(a), S.value(j, rest))
        out = out + term * (-1 if i % 2 else 1)
    for i, k in combinations(range(len(args)), 2):
        rest = tuple(x for m, x in enumerate(args) if m not in (i, k))
        for c, f in g.bracket(args[i], args[k]).items():
            out = out + S.value(j, (c,) + rest) * (f * (-1 if (i + k) % 2 else 1))
    return out


def check_sigma_ladder(S: SigmaLadder) -> LiftReport:
    """dH = 0, (delta sigma_j) = (-1)^j d sigma_{j+1} for j <= n, and delta sigma_{n+1} = 0."""
    P, dim, n = S.P, S.act.g.dim, S.P.n
    res = {"closed": _nonzero([((), P.d(P.H))])}
    for j in range(0, n + 2):
        rung = []
        for args in combinations(range(dim), j + 1):
            lhs = ce_cochain_differential(S, j, args)
            rhs = P.d(S.value(j + 1, args)) * (-1 if j % 2 else 1) if j <= n else P.model.algebra.zero()
            r = lhs - rhs
            if not r.is_zero():
                rung.append((args, r))
        res[j] = rung
    return LiftReport(not any(res.values()), res)


def induced_ladder(A: AlphaAssignment) -> SigmaLadder:
    """sigma_1(a) = d alpha_a and sigma_2(a, b) = -alpha_{[a,b]}, higher rungs zero."""
    dim = A.act.g.dim
    r1 = {(a,): A.P.d(A[a]) for a in range(dim)}
    r2 = {(a, b): -A.of_bracket(a, b) for a, b in combinations(range(dim), 2)}
    return SigmaLadder(A.act, A.P, {1: r1, 2: r2})


# BRST lifts

def brst_complex(act: LieAction) -> EquivariantComplex:
    return brst_differential(act.g, act)


def check_brst_lift(W: GradedElement, act: LieAction, P: RnBundle,
                    cx: EquivariantComplex | None = None) -> LiftReport:
    cx = cx or brst_complex(act)
    if W.algebra != cx.algebra:
        raise DegreeError("W must live in the BRST algebra")
    if not W.is_zero() and W.degree != P.n + 1:
        raise DegreeError(f"W has degree {W.degree}, expected {P.n + 1}")
    dW = cx(W)
    base = cx.algebra.restrict(W, P.model.algebra)
    ce = ce_differential(act.g, act)
    shadow = forgetful(W, ce)
    shadow_d = ce(shadow)
    res = {"delta": _nonzero([((), dW)]), "base": _nonzero([((), base - P.H)])}
    detail = {"shadow": shadow, "shadow_closed": shadow_d.is_zero(), "delta_W": dW}
    return LiftReport(not any(res.values()), res, None, detail)


def equivalence_of_lifts(W1: GradedElement, W2: GradedElement, act: LieAction, P: RnBundle,
                         cap: int | None = None, cx: EquivariantComplex | None = None):
    """(True, primitive) when W1 - W2 is BRST-exact in degree n+1, else (False, None)."""
    cx = cx or brst_complex(act)
    for W in (W1, W2):
        if not cx(W).is_zero():
            raise DegreeError("both lifts must be BRST-closed")
    complex_ = AlgebraComplex(cx.algebra, cx.differential, cap)
    return is_exact(W1 - W2, complex_, degree=P.n + 1)


__all__ = ["AlphaAssignment", "LiftReport", "SigmaLadder", "check_strict", "check_leibniz",
           "cartan_equivalence", "cartan_element", "check_sigma_ladder", "induced_ladder",
           "ce_cochain_differential", "check_brst_lift", "equivalence_of_lifts", "brst_complex"]
