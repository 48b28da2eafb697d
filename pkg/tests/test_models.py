import random

import pytest
import sympy

from rnsym.derivation import Derivation, apply, commutator, is_homological
from rnsym.errors import DegreeError, NotClosedError, NotVectorFieldError
from rnsym.models import (VectorField, affine, as_vector_field, builtin, contraction, explicit,
                          lie_derivative, sphere_even, torus, vf_bracket)

from helpers import all_models, random_field, sympy_poly


@pytest.mark.parametrize("name", ["point", "affine2", "torus3", "sphere4"])
def test_builtin_differentials_square_to_zero(name):
    assert is_homological(all_models()[name].d)[0]


@pytest.mark.parametrize("name", ["point", "affine2", "torus3", "sphere4"])
def test_cartan_calculus_on_basis_fields(name):
    model = all_models()[name]
    fields = [model.basis_field(f) for f in model.fields]
    d = model.d
    for X in fields:
        assert commutator(d, contraction(model, X)) == lie_derivative(model, X)
        for Y in fields:
            LX, LY, iY = lie_derivative(model, X), lie_derivative(model, Y), contraction(model, Y)
            Z = vf_bracket(model, X, Y)
            assert commutator(LX, iY) == contraction(model, Z)
            assert commutator(LX, LY) == lie_derivative(model, Z)
            assert commutator(contraction(model, X), iY).is_zero()


def _sympy_bracket(model, X, Y):
    """Component formula [X, Y]^i = X(Y^i) - Y(X^i) on affine space."""
    coords = model.algebra.coords
    syms = sympy.symbols(coords)
    comp = {f"D{c}": s for c, s in zip(coords, syms)}

    def act(V, expr):
        return sum(sympy_poly(V.coefficient(f)) * sympy.diff(expr, s) for f, s in comp.items())

    return {f: sympy.expand(act(X, sympy_poly(Y.coefficient(f))) - act(Y, sympy_poly(X.coefficient(f))))
            for f in comp}


@pytest.mark.parametrize("seed", range(4))
def test_vf_bracket_matches_component_formula(seed):
    rng = random.Random(seed)
    model = affine(2)
    for _ in range(10):
        X, Y = random_field(rng, model, 2), random_field(rng, model, 2)
        Z = vf_bracket(model, X, Y)
        oracle = _sympy_bracket(model, X, Y)
        for f, expr in oracle.items():
            assert sympy.expand(sympy_poly(Z.coefficient(f)) - expr) == 0
        LX, LY = lie_derivative(model, X), lie_derivative(model, Y)
        assert commutator(LX, LY) == lie_derivative(model, Z)
        assert commutator(LX, contraction(model, Y)) == contraction(model, Z)


def test_lie_derivative_on_coordinates_is_directional_derivative():
    model = affine(2)
    x, y = model.coord("x"), model.coord("y")
    X = model.vf({"Dx": y, "Dy": x * x})
    L = lie_derivative(model, X)
    alg = model.algebra
    assert L.value("x") == alg.from_poly(y)
    assert apply(L, alg.gen("dy")) == alg.gen("x") * alg.gen("dx") * 2


def test_as_vector_field_inverts_contraction():
    model = affine(3)
    X = model.vf({"Dx": model.coord("z"), "Dz": 3})
    assert as_vector_field(model, contraction(model, X)) == X
    with pytest.raises(DegreeError):
        as_vector_field(model, lie_derivative(model, X))
    S = sphere_even(2)
    with pytest.raises(NotVectorFieldError):
        as_vector_field(S, Derivation(S.algebra, -1, {"y": S.el("x")}))


def test_vector_field_formatting_and_errors():
    model = affine(2)
    X = model.vf({"Dx": -model.coord("y"), "Dy": model.coord("x")})
    assert str(X) == "-y Dx + x Dy"
    with pytest.raises(NotVectorFieldError):
        model.vf({"Dq": 1})


def test_sphere_model_structure():
    S = sphere_even(2)
    alg = S.algebra
    assert apply(S.d, alg.gen("y")) == alg.gen("x") ** 2
    with pytest.raises(ValueError):
        sphere_even(3)


def test_torus_fields_pair_with_generators():
    T = torus(2)
    assert T.dual_generators() == {"e1": "dphi1", "e2": "dphi2"}
    assert apply(contraction(T, T.basis_field("e2")), T.el("dphi1") * T.el("dphi2")) == -T.el("dphi1")


def test_explicit_model_and_rejection():
    m = explicit("circle", [("a", 1)], fields={"v": {"a": 1}})
    assert m.field_names == ["v"]
    with pytest.raises(NotClosedError):
        explicit("bad", [("a", 1), ("b", 2), ("c", 3)],
                 differential={"a": lambda alg: alg.gen("b"), "b": lambda alg: alg.gen("c")})
    with pytest.raises(ValueError):
        builtin("klein")
    assert isinstance(VectorField(m, {"v": 2}), VectorField)
