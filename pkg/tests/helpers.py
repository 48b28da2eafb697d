"""Shared random generators and independent sympy oracles for the test suite."""
from __future__ import annotations

import random
from fractions import Fraction

import sympy

from rnsym.algebra import CoeffPoly, GradedElement, basis_monomials
from rnsym.bundle import RnBundle, SymElement
from rnsym.derivation import Derivation
from rnsym.models import VectorField, affine, point, sphere_even, torus

COEFFS = [Fraction(v) for v in (-2, -1, 1, 2, 3)] + [Fraction(1, 2), Fraction(-1, 3)]


def all_models():
    return {"point": point(), "affine2": affine(2), "torus3": torus(3), "sphere4": sphere_even(2)}


def random_element(rng: random.Random, alg, degree: int, cap: int = 2, nterms: int = 3) -> GradedElement:
    keys = basis_monomials(alg, degree, cap if alg.coords else None)
    if not keys:
        return alg.zero()
    picked = rng.sample(keys, min(nterms, len(keys)))
    return GradedElement(alg, {k: rng.choice(COEFFS) for k in picked})


def random_poly(rng: random.Random, coords, cap: int = 2, nterms: int = 2) -> CoeffPoly:
    if not coords:
        return CoeffPoly.constant(coords, rng.choice(COEFFS))
    monos = [m for m in _monos(len(coords), cap)]
    picked = rng.sample(monos, min(nterms, len(monos)))
    return CoeffPoly(coords, {m: rng.choice(COEFFS) for m in picked})


def _monos(n, cap):
    from itertools import product
    return [e for e in product(range(cap + 1), repeat=n) if sum(e) <= cap]


def random_derivation(rng: random.Random, alg, degree: int, cap: int = 1) -> Derivation:
    vals = {}
    for g in alg.generators:
        vals[g.name] = random_element(rng, alg, g.degree + degree, cap, 2)
    for c in alg.coords:
        vals[c] = random_element(rng, alg, degree, cap, 2) if degree >= 0 else alg.zero()
    return Derivation(alg, degree, vals)


def random_field(rng: random.Random, model, cap: int = 1) -> VectorField:
    coords = model.algebra.coords
    return VectorField(model, {f: random_poly(rng, coords, cap, 2) for f in model.fields
                               if rng.random() < 0.7})


def random_sym(rng: random.Random, P: RnBundle, degree: int, cap: int = 1) -> SymElement:
    X = random_field(rng, P.model, cap) if degree in (0, -1) else None
    form_deg = P.n + degree
    form = random_element(rng, P.model.algebra, form_deg, cap, 2) if form_deg >= 0 else None
    return SymElement(P, degree, X, form)


# sympy oracles

def sympy_poly(p: CoeffPoly):
    syms = sympy.symbols(p.coords) if p.coords else ()
    if len(p.coords) == 1:
        syms = (syms,) if not isinstance(syms, tuple) else syms
    expr = sympy.Integer(0)
    for exps, c in p.terms.items():
        term = sympy.Rational(c.numerator, c.denominator)
        for s, e in zip(syms, exps):
            term *= s ** e
        expr += term
    return sympy.expand(expr)


def sympy_rank(rows) -> int:
    if not rows or not rows[0]:
        return 0
    return sympy.Matrix([[sympy.Rational(v.numerator, v.denominator) for v in r] for r in rows]).rank()
