"""Lie algebras, infinitesimal actions and the equivariant complexes they generate.

Conventions: ghosts ``theta<a>`` have degree 1, curvature generators
``Omega<a>`` have degree 2, and f^a_{bc} are the structure constants of
[e_b, e_c] = f^a_{bc} e_a.  The Weil differential sends theta^a to
-Omega^a - 1/2 f^a_{bc} theta^b theta^c and Omega^a to f^a_{bc} Omega^b theta^c;
with that sign the BRST operator below squares to zero together with
Omega^a iota_a on forms (see ``weil_differential``).
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Iterable, Mapping

from .algebra import GradedAlgebra, GradedElement, basis_monomials
from .derivation import Derivation, apply, commutator
from .errors import JacobiError, NotHomomorphismError
from .models import CdgaModel, VectorField, contraction, lie_derivative, vf_bracket


class LieAlgebra:
    def __init__(self, names: Iterable[str] | int, constants: Mapping | Iterable = ()):
        if isinstance(names, int):
            names = [str(i) for i in range(1, names + 1)]
        self.names = tuple(names)
        self.dim = len(self.names)
        items = constants.items() if isinstance(constants, Mapping) else \
            (((a, b, c), v) for a, b, c, v in constants)
        f: dict = {}
        for (a, b, c), v in items:
            a, b, c = (self._index(x) for x in (a, b, c))
            v = Fraction(v)
            for key, val in (((a, b, c), v), ((a, c, b), -v)):
                if key in f and f[key] != val:
                    raise ValueError(f"inconsistent structure constant at {key}")
                f[key] = val
        self.f = {k: v for k, v in f.items() if v}
        self._check_jacobi()

    def _index(self, x) -> int:
        if isinstance(x, int):
            return x
        return self.names.index(x)

    def const(self, a: int, b: int, c: int) -> Fraction:
        return self.f.get((a, b, c), Fraction(0))

    def bracket(self, b: int, c: int) -> dict:
        """[e_b, e_c] as {a: f^a_{bc}}."""
        return {a: v for (a, bb, cc), v in self.f.items() if bb == b and cc == c}

    def _check_jacobi(self):
        n = self.dim
        for a, b, c, d in product(range(n), repeat=4):
            if not b < c:
                continue
            # sum over cyclic (a,b,c) of f^d_{a e} f^e_{b c}
            total = Fraction(0)
            for x, y, z in ((a, b, c), (b, c, a), (c, a, b)):
                for e in range(n):
                    total += self.const(d, x, e) * self.const(e, y, z)
            if total:
                raise JacobiError(f"Jacobi identity fails at {(a, b, c, d)}", (a, b, c, d))

    def __repr__(self):
        return f"LieAlgebra(dim={self.dim})"


def abelian(k: int) -> LieAlgebra:
    return LieAlgebra(k)


def su2() -> LieAlgebra:
    """Structure constants f^a_{bc} = epsilon_{abc}."""
    consts = [(0, 1, 2, 1), (1, 2, 0, 1), (2, 0, 1, 1)]
    return LieAlgebra(3, consts)


class LieAction:
    """Homomorphism from a Lie algebra into the vector fields of a model."""

    def __init__(self, g: LieAlgebra, model: CdgaModel, fields: Iterable[VectorField] | Mapping):
        if isinstance(fields, Mapping):
            fields = [fields[n] for n in g.names]
        self.g = g
        self.model = model
        self.fields = list(fields)
        if len(self.fields) != g.dim:
            raise ValueError("need one vector field per basis element")
        for b, c in product(range(g.dim), repeat=2):
            if b >= c:
                continue
            lhs = vf_bracket(model, self.fields[b], self.fields[c])
            rhs = model.vf()
            for a, v in g.bracket(b, c).items():
                rhs = rhs + self.fields[a] * v
            if lhs != rhs:
                raise NotHomomorphismError(
                    f"[X_{g.names[b]}, X_{g.names[c]}] = {lhs} but the structure constants give {rhs}",
                    (b, c))

    @classmethod
    def trivial(cls, g: LieAlgebra, model: CdgaModel) -> "LieAction":
        return cls(g, model, [model.vf() for _ in range(g.dim)])

    def lie(self, a: int) -> Derivation:
        return lie_derivative(self.model, self.fields[a])

    def iota(self, a: int) -> Derivation:
        return contraction(self.model, self.fields[a])


def theta_name(g: LieAlgebra, a: int) -> str:
    return f"theta{g.names[a]}"


def omega_name(g: LieAlgebra, a: int) -> str:
    return f"Omega{g.names[a]}"


@dataclass
class EquivariantComplex:
    kind: str
    g: LieAlgebra
    action: LieAction | None
    algebra: GradedAlgebra
    differential: Derivation

    @property
    def model(self):
        return self.action.model if self.action else None

    def theta(self, a: int) -> GradedElement:
        return self.algebra.gen(theta_name(self.g, a))

    def omega(self, a: int) -> GradedElement:
        return self.algebra.gen(omega_name(self.g, a))

    def embed(self, e: GradedElement) -> GradedElement:
        return self.algebra.embed(e)

    def __call__(self, e: GradedElement) -> GradedElement:
        return apply(self.differential, e)


def _algebra(g, model, ghosts: bool, curvature: bool) -> GradedAlgebra:
    pre = []
    if ghosts:
        pre += [(theta_name(g, a), 1) for a in range(g.dim)]
    if curvature:
        pre += [(omega_name(g, a), 2) for a in range(g.dim)]
    if model is None:
        return GradedAlgebra(pre)
    return model.algebra.extended([], prepend=pre)


def _ce_values(g, alg) -> dict:
    vals = {}
    for a in range(g.dim):
        v = alg.zero()
        for (aa, b, c), f in g.f.items():
            if aa == a:
                v = v - alg.gen(theta_name(g, b)) * alg.gen(theta_name(g, c)) * (f / 2)
        vals[theta_name(g, a)] = v
    return vals


def _weil_values(g, alg, curvature_sign: int) -> dict:
    vals = _ce_values(g, alg)
    for a in range(g.dim):
        vals[theta_name(g, a)] = vals[theta_name(g, a)] + alg.gen(omega_name(g, a)) * curvature_sign
        v = alg.zero()
        for (aa, b, c), f in g.f.items():
            if aa == a:
                v = v + alg.gen(omega_name(g, b)) * alg.gen(theta_name(g, c)) * f
        vals[omega_name(g, a)] = v
    return vals


def _form_values(act: LieAction, alg, with_theta: bool, with_omega: bool) -> dict:
    """Values of d + theta^a L_a + Omega^a iota_a on the model's generators and coordinates."""
    model = act.model
    g = act.g
    d = model.d.extend_to(alg)
    total = d
    for a in range(g.dim):
        if with_theta:
            total = total + alg.gen(theta_name(g, a)) * act.lie(a).extend_to(alg)
        if with_omega:
            total = total + alg.gen(omega_name(g, a)) * act.iota(a).extend_to(alg)
    names = list(model.algebra.names) + list(model.algebra.coords)
    return {n: total.value(n) for n in names}


def ce_differential(g: LieAlgebra, act: LieAction | None = None) -> EquivariantComplex:
    """Chevalley-Eilenberg differential on Lambda g* (tensor forms, if an action is given)."""
    model = act.model if act else None
    alg = _algebra(g, model, True, False)
    vals = _ce_values(g, alg)
    if act:
        vals.update(_form_values(act, alg, True, False))
    return EquivariantComplex("ce", g, act, alg, Derivation(alg, 1, vals))


def weil_differential(g: LieAlgebra, curvature_sign: int = -1) -> EquivariantComplex:
    """Weil algebra Lambda g* (x) S g*.

    ``curvature_sign`` is the coefficient of Omega^a in the image of theta^a.
    Both signs give a square-zero operator on the Weil algebra alone; only -1
    is compatible with the BRST and Cartan operators used here.
    """
    alg = _algebra(g, None, True, True)
    return EquivariantComplex("weil", g, None, alg,
                              Derivation(alg, 1, _weil_values(g, alg, curvature_sign)))


def brst_differential(g: LieAlgebra, act: LieAction, curvature_sign: int = -1) -> EquivariantComplex:
    alg = _algebra(g, act.model, True, True)
    vals = _weil_values(g, alg, curvature_sign)
    vals.update(_form_values(act, alg, True, True))
    return EquivariantComplex("brst", g, act, alg, Derivation(alg, 1, vals))


def cartan_differential(g: LieAlgebra, act: LieAction) -> EquivariantComplex:
    """d + Omega^a iota_a on S g* (x) forms; square-zero on invariant elements."""
    alg = _algebra(g, act.model, False, True)
    vals = _form_values(act, alg, False, True)
    return EquivariantComplex("cartan", g, act, alg, Derivation(alg, 1, vals))


def extended_lie(cx: EquivariantComplex, b: int) -> Derivation:
    """L_b on the model, extended to ghosts and curvature by the coadjoint action
    L_b Omega^a = -f^a_{bc} Omega^c (and the same on theta)."""
    g, alg = cx.g, cx.algebra
    vals = {}
    if cx.action is not None:
        L = cx.action.lie(b).extend_to(alg)
        vals.update(L.values)
    for a in range(g.dim):
        for namer in (theta_name, omega_name):
            if namer(g, a) not in alg.index:
                continue
            v = alg.zero()
            for c in range(g.dim):
                f = g.const(a, b, c)
                if f:
                    v = v - alg.gen(namer(g, c)) * f
            vals[namer(g, a)] = v
    return Derivation(alg, 0, vals)


def invariance_residuals(e: GradedElement, cx: EquivariantComplex) -> dict:
    """{b: L_b e} for every b where it is nonzero."""
    out = {}
    for b in range(cx.g.dim):
        r = apply(extended_lie(cx, b), e)
        if not r.is_zero():
            out[b] = r
    return out


def invariance_check(e: GradedElement, cx: EquivariantComplex) -> bool:
    return not invariance_residuals(e, cx)


def cartan_square_identity(cx: EquivariantComplex):
    """Residual of d_C o d_C = Omega^a L_a on generators, or None."""
    alg = cx.algebra
    square = commutator(cx.differential, cx.differential) * Fraction(1, 2)
    expected = Derivation.zero(alg, 2)
    for a in range(cx.g.dim):
        expected = expected + cx.omega(a) * cx.action.lie(a).extend_to(alg)
    return square.residual(expected)


def invariant_subspace(cx: EquivariantComplex, k: int, coeff_cap: int | None = None):
    """Basis of the invariant elements of degree k (within the coefficient cap)."""
    from .linalg import nullspace

    alg = cx.algebra
    keys = basis_monomials(alg, k, coeff_cap)
    if not keys:
        return []
    ops = [extended_lie(cx, b) for b in range(cx.g.dim)]
    images = []
    for key in keys:
        src = GradedElement(alg, {key: Fraction(1)})
        images.append([apply(L, src) for L in ops])
    rows_index: dict = {}
    columns = []
    for imgs in images:
        col = {}
        for b, img in enumerate(imgs):
            for term, c in img.terms.items():
                col[rows_index.setdefault((b, term), len(rows_index))] = c
        columns.append(col)
    rows = [[col.get(r, Fraction(0)) for col in columns] for r in range(len(rows_index))]
    kernel = nullspace(rows, len(keys))
    return [GradedElement(alg, {key: v for key, v in zip(keys, vec) if v}) for vec in kernel]


def forgetful(e: GradedElement, target: EquivariantComplex) -> GradedElement:
    """Set every curvature generator to zero."""
    return e.algebra.restrict(e, target.algebra)


def van_est_families(cx: EquivariantComplex) -> dict:
    """The BRST operator split into the images of the van Est map's building blocks.

    ``dbar`` acts on ghosts by the CE formula, on curvature by the coadjoint
    term and on forms by theta^a L_a; ``iotabar`` sends theta^a to -Omega^a;
    ``d`` and ``iota`` are the model differential and Omega^a iota_a.
    """
    g, alg, act = cx.g, cx.algebra, cx.action
    model = act.model
    dbar = dict(_ce_values(g, alg))
    weil = _weil_values(g, alg, -1)
    for a in range(g.dim):
        dbar[omega_name(g, a)] = weil[omega_name(g, a)]
    names = list(model.algebra.names) + list(model.algebra.coords)
    theta_L = Derivation.zero(alg, 1)
    omega_iota = Derivation.zero(alg, 1)
    for a in range(g.dim):
        theta_L = theta_L + cx.theta(a) * act.lie(a).extend_to(alg)
        omega_iota = omega_iota + cx.omega(a) * act.iota(a).extend_to(alg)
    for n in names:
        dbar[n] = theta_L.value(n)
    return {
        "dbar": Derivation(alg, 1, dbar),
        "iotabar": Derivation(alg, 1, {theta_name(g, a): -cx.omega(a) for a in range(g.dim)}),
        "d": model.d.extend_to(alg),
        "iota": Derivation(alg, 1, {n: omega_iota.value(n) for n in names}),
    }


def van_est_identities(cx: EquivariantComplex) -> dict:
    """Check that the four families add up to the BRST operator, family by family."""
    fam = van_est_families(cx)
    g = cx.g
    delta = cx.differential
    model_names = list(cx.model.algebra.names) + list(cx.model.algebra.coords)
    report = {}
    ghost_sum = fam["dbar"] + fam["iotabar"]
    report["ghosts"] = all(ghost_sum.value(theta_name(g, a)) == delta.value(theta_name(g, a))
                           for a in range(g.dim))
    report["curvature"] = all(fam["dbar"].value(omega_name(g, a)) == delta.value(omega_name(g, a))
                              for a in range(g.dim))
    form_sum = fam["dbar"] + fam["d"] + fam["iota"]
    report["forms"] = all(form_sum.value(n) == delta.value(n) for n in model_names)
    total = fam["dbar"] + fam["iotabar"] + fam["d"] + fam["iota"]
    report["total"] = total.residual(delta) is None
    report["ok"] = all(report.values())
    return report
