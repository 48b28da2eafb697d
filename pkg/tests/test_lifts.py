from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from rnsym.bundle import build_bundle
from rnsym.derivation import apply
from rnsym.errors import DegreeError
from rnsym.lie import LieAction, abelian, su2
from rnsym.lifts import (AlphaAssignment, SigmaLadder, brst_complex, cartan_element,
                         cartan_equivalence, ce_cochain_differential, check_brst_lift,
                         check_leibniz, check_sigma_ladder, check_strict, equivalence_of_lifts,
                         induced_ladder)
from rnsym.models import affine, contraction, torus


def plane_rotation(scale=Fraction(1)):
    m = affine(2)
    x, y = m.coord("x"), m.coord("y")
    act = LieAction(abelian(1), m, [m.vf({"Dx": -y, "Dy": x})])
    P = build_bundle(m, 1, m.el("dx") * m.el("dy"))
    alpha = (m.el("x") ** 2 + m.el("y") ** 2) * (Fraction(1, 2) * scale)
    return AlphaAssignment(act, P, [alpha])


def space_rotations(scale=Fraction(1)):
    """su(2) on R^3 with the volume form; alpha_a = 1/3 iota_a iota_E vol is a strict lift."""
    m = affine(3)
    x, y, z = (m.coord(c) for c in "xyz")
    fields = [m.vf({"Dy": z, "Dz": -y}), m.vf({"Dz": x, "Dx": -z}), m.vf({"Dx": y, "Dy": -x})]
    act = LieAction(su2(), m, fields)
    vol = m.el("dx") * m.el("dy") * m.el("dz")
    P = build_bundle(m, 2, vol)
    euler = apply(contraction(m, m.vf({"Dx": x, "Dy": y, "Dz": z})), vol)
    alphas = [apply(act.iota(a), euler) * (Fraction(1, 3) * scale) for a in range(3)]
    return AlphaAssignment(act, P, alphas)


def torus_theta():
    t = torus(2)
    act = LieAction(abelian(1), t, [t.basis_field("e1")])
    return AlphaAssignment(act, build_bundle(t, 2), [t.el("dphi1")])


def test_rotation_is_a_strict_lift():
    A = plane_rotation()
    report = check_strict(A)
    assert report.ok and not any(report.residuals.values())
    cart = cartan_equivalence(A)
    assert cart.detail["strict"] and cart.detail["dW"].is_zero()


def test_torus_theta_is_leibniz_but_not_strict():
    A = torus_theta()
    strict = check_strict(A)
    assert not strict.ok
    (key, value), = strict.residuals["symmetric"]
    assert key == (0, 0) and value.scalar_value() == 2
    leib = check_leibniz(A)
    assert leib.ok and leib.constants[0][0].scalar_value() == 2
    cart = cartan_equivalence(A)
    assert cart.detail["leibniz"] and not cart.detail["strict"]
    assert cart.constants == [[Fraction(2)]]
    cx_omega = cart.detail["W"].algebra.gen("Omega1")
    assert cart.detail["dW"] == cx_omega * cx_omega


def test_moment_map_residual_names_the_failure():
    A = plane_rotation(Fraction(2))
    report = check_strict(A)
    assert not report.ok and report.residuals["moment"]
    assert not check_leibniz(A).ok


def _assignments():
    return {
        "plane": plane_rotation(),
        "plane-scaled": plane_rotation(Fraction(3)),
        "plane-zero": plane_rotation(Fraction(0)),
        "space": space_rotations(),
        "space-scaled": space_rotations(Fraction(-1)),
        "torus": torus_theta(),
    }


@pytest.mark.parametrize("name", list(_assignments()))
def test_strict_implies_leibniz_and_cartan_agrees(name):
    A = _assignments()[name]
    strict, leib, cart = check_strict(A), check_leibniz(A), cartan_equivalence(A)
    if strict.ok:
        assert leib.ok
    assert cart.detail["strict"] == strict.ok
    assert cart.detail["leibniz"] == leib.ok


@pytest.mark.parametrize("name", list(_assignments()))
def test_brst_closure_of_cartan_element_matches_strictness(name):
    A = _assignments()[name]
    cx = brst_complex(A.act)
    report = check_brst_lift(cartan_element(A, cx), A.act, A.P, cx)
    assert report.ok == check_strict(A).ok


def test_space_rotations_are_strict_and_their_ladder_closes():
    A = space_rotations()
    assert check_strict(A).ok
    ladder = check_sigma_ladder(induced_ladder(A))
    assert ladder.ok and set(ladder.residuals) == {"closed", 0, 1, 2, 3}


@given(st.fractions(min_value=-3, max_value=3, max_denominator=3))
def test_only_unit_scaling_is_strict_yet_every_scaling_keeps_the_ladder(k):
    A = plane_rotation(k)
    assert check_strict(A).ok == (k == 1)
    # the induced ladder is linear in alpha and H is invariant, so it cannot see the moment equation
    assert check_sigma_ladder(induced_ladder(A)).ok


def test_perturbed_ladder_fails_the_first_equation():
    A = space_rotations()
    S = induced_ladder(A)
    m = A.P.model
    bump = m.el("z") * m.el("dx") * m.el("dy")
    r1 = {(a,): S.value(1, (a,)) for a in range(3)}
    r1[(0,)] = r1[(0,)] + bump
    broken = check_sigma_ladder(SigmaLadder(A.act, A.P, {1: r1, 2: dict(S.rungs[2])}))
    assert not broken.ok
    # L_{X_0} H - d sigma_1(0) picks up -d(bump)
    assert broken.residuals[0] == [((0,), -A.P.d(bump))]


def test_ladder_values_are_antisymmetric():
    A = space_rotations()
    S = induced_ladder(A)
    assert S.value(2, (1, 0)) == -S.value(2, (0, 1))
    assert S.value(2, (1, 1)).is_zero()
    assert ce_cochain_differential(S, 0, (0,)) == apply(A.act.lie(0), A.P.H)


def test_ladder_shape_errors():
    A = space_rotations()
    m = A.P.model
    with pytest.raises(DegreeError):
        SigmaLadder(A.act, A.P, {1: {(0, 1): m.el("dx") * m.el("dy")}})
    with pytest.raises(DegreeError):
        SigmaLadder(A.act, A.P, {1: {(0,): m.el("dx")}})
    with pytest.raises(DegreeError):
        SigmaLadder(A.act, A.P, {5: {}})
    with pytest.raises(DegreeError):
        SigmaLadder(A.act, A.P, {1: {(7,): m.el("dx") * m.el("dy")}})


def test_alpha_assignment_checks_degree_and_count():
    A = plane_rotation()
    m = A.P.model
    with pytest.raises(DegreeError):
        AlphaAssignment(A.act, A.P, [m.el("dx")])
    with pytest.raises(ValueError):
        AlphaAssignment(A.act, A.P, [m.el("x"), m.el("y")])
    named = AlphaAssignment(A.act, A.P, {"1": m.el("x")})
    assert named[0] == m.el("x")


def test_brst_lift_of_bare_H_reports_residual():
    A = plane_rotation()
    cx = brst_complex(A.act)
    report = check_brst_lift(cx.embed(A.P.H), A.act, A.P, cx)
    assert not report.ok
    (_, residual), = report.residuals["delta"]
    x, y = cx.algebra.gen("x"), cx.algebra.gen("y")
    omega = cx.omega(0)
    assert residual == -(x * omega * cx.algebra.gen("dx")) - y * omega * cx.algebra.gen("dy")
    assert not report.residuals["base"]


def test_brst_lift_input_errors():
    A = plane_rotation()
    cx = brst_complex(A.act)
    with pytest.raises(DegreeError):
        check_brst_lift(A.P.H, A.act, A.P, cx)
    with pytest.raises(DegreeError):
        check_brst_lift(cx.theta(0) * cx.omega(0), A.act, A.P, cx)


def test_equivalence_of_lifts():
    t = torus(2)
    act = LieAction.trivial(abelian(1), t)
    P = build_bundle(t, 1)
    cx = brst_complex(act)
    zero, area = cx.algebra.zero(), cx.embed(t.el("dphi1") * t.el("dphi2"))
    assert equivalence_of_lifts(zero, area, act, P, cx=cx) == (False, None)
    shift = cx(cx.theta(0))
    assert shift == -cx.omega(0)
    ok, prim = equivalence_of_lifts(area + shift, area, act, P, cx=cx)
    assert ok and cx(prim) == shift
    with pytest.raises(DegreeError):
        equivalence_of_lifts(cx.theta(0) * cx.embed(t.el("dphi1")), zero, act, P, cx=cx)
