from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from rnsym.bundle import build_bundle
from rnsym.cohomology import (AlgebraComplex, SymComplex, betti, betti_numbers, de_rham, is_exact,
                              sym_cohomology, sym_cohomology_direct, sym_cohomology_formula)
from rnsym.errors import NotClosedError
from rnsym.lie import abelian, su2, weil_differential
from rnsym.linalg import bareiss_rank, nullspace, solve
from rnsym.models import affine, explicit, point, sphere_even, torus

from helpers import sympy_rank


@pytest.mark.parametrize("model,top,expected", [
    (point(), 2, (1, 0, 0)),
    (torus(2), 3, (1, 2, 1, 0)),
    (torus(3), 4, (1, 3, 3, 1, 0)),
    (sphere_even(2), 5, (1, 0, 1, 0, 0, 0)),
    (sphere_even(4), 8, (1, 0, 0, 0, 1, 0, 0, 0, 0)),
])
def test_de_rham_betti_numbers(model, top, expected):
    assert betti_numbers(de_rham(model), top) == expected


def test_affine_space_is_acyclic_below_the_cap():
    cx = de_rham(affine(2), 3)
    assert betti(cx, 0).value == 1
    assert "capped" in betti(cx, 0).note
    m = affine(2)
    closed = m.el("y") * m.el("dx") + m.el("x") * m.el("dy")
    ok, b = is_exact(closed, cx)
    assert ok and cx(b) == closed


def _permuted_sphere():
    return explicit("sphere permuted", [("y", 3), ("x", 2)],
                    differential={"y": lambda a: a.gen("x") * a.gen("x")})


def _permuted_torus():
    gens = [("dphi3", 1), ("dphi1", 1), ("dphi2", 1)]
    return explicit("torus permuted", gens)


@pytest.mark.parametrize("original,permuted,top", [
    (sphere_even(2), _permuted_sphere(), 7),
    (torus(3), _permuted_torus(), 4),
])
def test_generator_order_does_not_change_betti_numbers(original, permuted, top):
    assert betti_numbers(de_rham(original), top) == betti_numbers(de_rham(permuted), top)


def _matrix_of(cx, k):
    """Matrix of d from degree k to k+1 in the monomial bases."""
    target = {key: i for i, key in enumerate(cx.basis(k + 1))}
    cols = cx.image_columns(k)
    rows = [[Fraction(0)] * len(cols) for _ in target]
    for j, img in enumerate(cols):
        for key, v in img.terms.items():
            rows[target[key]][j] = v
    return rows


def _matmul(a, b):
    if not a or not b:
        return []
    return [[sum(a[i][k] * b[k][j] for k in range(len(b))) for j in range(len(b[0]))]
            for i in range(len(a))]


@pytest.mark.parametrize("name", ["sphere4", "weil_su2", "affine2"])
def test_matrix_composite_of_consecutive_differentials_vanishes(name):
    if name == "sphere4":
        cx = de_rham(sphere_even(2))
    elif name == "weil_su2":
        w = weil_differential(su2())
        cx = AlgebraComplex(w.algebra, w.differential)
    else:
        cx = de_rham(affine(2), 2)
    for k in range(4):
        prod = _matmul(_matrix_of(cx, k + 1), _matrix_of(cx, k))
        assert all(v == 0 for row in prod for v in row)


def test_abelian_weil_algebra_is_acyclic():
    w = weil_differential(abelian(2))
    assert betti_numbers(AlgebraComplex(w.algebra, w.differential), 4) == (1, 0, 0, 0, 0)


def test_weil_ranks_against_sympy():
    w = weil_differential(su2())
    cx = AlgebraComplex(w.algebra, w.differential)
    for k in range(4):
        rows = _matrix_of(cx, k)
        assert cx.rank(k).value == sympy_rank(rows)


fractions = st.fractions(min_value=-5, max_value=5, max_denominator=4)


@given(st.integers(1, 6).flatmap(
    lambda n: st.lists(st.lists(fractions, min_size=n, max_size=n), min_size=1, max_size=6)))
def test_bareiss_rank_agrees_with_sympy(rows):
    assert bareiss_rank(rows) == sympy_rank(rows)


@given(st.lists(st.lists(fractions, min_size=4, max_size=4), min_size=1, max_size=5))
def test_nullspace_vectors_are_killed(rows):
    for v in nullspace(rows, 4):
        assert all(sum(a * b for a, b in zip(r, v)) == 0 for r in rows)
    assert len(nullspace(rows, 4)) == 4 - bareiss_rank(rows)


def test_solve_reports_inconsistency():
    rows = [[Fraction(1), Fraction(1)], [Fraction(2), Fraction(2)]]
    assert solve(rows, [Fraction(1), Fraction(3)], 2) is None
    x = solve(rows, [Fraction(1), Fraction(2)], 2)
    assert x[0] + x[1] == 1


def test_is_exact_on_sphere():
    s = sphere_even(2)
    cx = de_rham(s)
    x, y = s.el("x"), s.el("y")
    ok, b = is_exact(x * x, cx)
    assert ok and b == y
    assert is_exact(x, cx) == (False, None)
    with pytest.raises(NotClosedError):
        is_exact(y, cx)


def test_is_exact_zero_and_degree_zero():
    t = torus(2)
    cx = de_rham(t)
    assert is_exact(t.algebra.zero(), cx)[0]
    assert is_exact(t.algebra.one(), cx) == (False, None)
    assert is_exact(t.el("dphi1"), cx) == (False, None)


def test_symmetry_cohomology_of_point_and_sphere():
    assert sym_cohomology_direct(build_bundle(point(), 2)) == (1, 0, 0)
    s = sphere_even(2)
    report = sym_cohomology(build_bundle(s, 3, s.el("x") ** 2))
    assert report["direct"] == report["formula"] == (1, 0, 1, 0)
    assert report["degrees"] == [-3, -2, -1, 0]


def test_symmetry_cohomology_of_three_torus_disagrees_with_formula():
    t = torus(3)
    P = build_bundle(t, 2, t.el("dphi1") * t.el("dphi2") * t.el("dphi3"))
    # the invariant model has 3 degree-0 fields but 6 in the formula count (3 + b_2)
    assert sym_cohomology_direct(P) == (1, 3, 3)
    assert sym_cohomology_formula(P) == (1, 3, 6)
    assert not sym_cohomology(P)["agree"]


def test_sym_complex_ranks_are_bounded_by_dimensions():
    a = affine(2)
    P = build_bundle(a, 1, a.el("dx") * a.el("dy"))
    cx = SymComplex(P, 2)
    for q in (-1, 0):
        assert 0 <= cx.rank(q) <= cx.dimension(q)
    assert cx.rank(0) == 0


def test_betti_of_single_element_complex():
    s = sphere_even(2)
    cx = AlgebraComplex(s.algebra, s.d)
    r = betti(cx, 2)
    assert r.value == 1 and not r.truncated and int(r) == 1
