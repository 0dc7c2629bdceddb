"""Ring laws, composition coherence, and solver behavior for the polynomial core."""

from fractions import Fraction

import pytest
from hypothesis import given, settings

from tangentcat.polycore import (
    Polynomial,
    PolyMap,
    ShapeError,
    compose,
    compose_all,
    concat,
    eval_map,
    first_difference,
    invert_polymap,
    jacobian,
    map_equal,
    matrix_cofactor_inverse,
    matrix_det,
    pair_into,
    selection_indices,
)

from conftest import grid_points, polymaps, polynomials, rational_points


def v(arity, i):
    return Polynomial.variable(arity, i)


# ---------------------------------------------------------------- ring laws


@given(polynomials(2), polynomials(2), polynomials(2))
def test_addition_associative_commutative(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert a + b == b + a


@given(polynomials(2))
def test_additive_identity_and_inverse(a):
    zero = Polynomial.zero(2)
    assert a + zero == a
    assert a + (-a) == zero


@given(polynomials(2, max_degree=2), polynomials(2, max_degree=2), polynomials(2, max_degree=2))
def test_multiplication_laws(a, b, c):
    assert (a * b) * c == a * (b * c)
    assert a * b == b * a
    assert a * (b + c) == a * b + a * c


@given(polynomials(2))
def test_multiplicative_identity(a):
    assert a * Polynomial.constant(2, 1) == a


@given(polynomials(3), rational_points(3))
def test_evaluation_is_ring_homomorphism(a, point):
    b = Polynomial.variable(3, 0) * Polynomial.variable(3, 1)
    pt = list(point)
    assert (a + b).evaluate(pt) == a.evaluate(pt) + b.evaluate(pt)
    assert (a * b).evaluate(pt) == a.evaluate(pt) * b.evaluate(pt)


def test_canonical_form_is_structural_equality():
    a = v(2, 0) + v(2, 1) + v(2, 0)
    b = v(2, 0).scale(2) + v(2, 1)
    assert a == b
    assert a.terms == b.terms


def test_str_rendering():
    p = v(2, 0) * v(2, 0) - v(2, 1).scale(Fraction(1, 2))
    assert str(p) == "-1/2*x1 + x0^2"


# ------------------------------------------------------- composition and eval


@given(polymaps(2, 2), polymaps(2, 3), rational_points(2))
def test_compose_matches_pointwise_evaluation(f, g, point):
    pt = list(point)
    assert eval_map(compose(f, g), pt) == eval_map(g, list(eval_map(f, pt)))


@given(polymaps(2, 2))
def test_compose_identity_laws(f):
    assert compose(PolyMap.identity(2), f) == f
    assert compose(f, PolyMap.identity(2)) == f


@given(polymaps(2, 2), polymaps(2, 2), polymaps(2, 2))
def test_compose_associative(f, g, h):
    assert compose(compose(f, g), h) == compose(f, compose(g, h))
    assert compose_all(f, g, h) == compose(f, compose(g, h))


def test_compose_shape_error():
    with pytest.raises(ShapeError):
        compose(PolyMap.identity(2), PolyMap.identity(3))


@settings(max_examples=50)
@given(polymaps(2, 2, max_degree=2), polymaps(2, 2, max_degree=2))
def test_chain_rule(f, g):
    """The Jacobian of a composite is the product of Jacobians along f."""
    comp = compose(f, g)
    jf, jg, jc = jacobian(f), jacobian(g), jacobian(comp)
    for i in range(2):
        for j in range(2):
            expected = Polynomial.zero(2)
            for k in range(2):
                expected = expected + jg[i][k].substitute(list(f.components)) * jf[k][j]
            assert jc[i][j] == expected


# -------------------------------------------------------- structural helpers


def test_concat_and_selection():
    f = PolyMap.selection(3, [2, 0])
    assert selection_indices(f) == (2, 0)
    assert selection_indices(PolyMap.from_components(1, [v(1, 0) + v(1, 0)])) is None
    g = concat([PolyMap.identity(2), PolyMap.constant(2, [7])])
    assert eval_map(g, [1, 2]) == (1, 2, 7)


def test_pair_into_reassembles_from_projections():
    p1 = PolyMap.selection(3, [0, 1])
    p2 = PolyMap.selection(3, [0, 2])
    f = PolyMap.from_components(1, [v(1, 0), v(1, 0) * v(1, 0)])
    g = PolyMap.from_components(1, [v(1, 0), v(1, 0) + v(1, 0)])
    paired = pair_into(3, [p1, p2], [f, g])
    assert eval_map(paired, [3]) == (3, 9, 6)


def test_pair_into_rejects_inconsistent_overlap():
    p1 = PolyMap.selection(2, [0])
    p2 = PolyMap.selection(2, [0])
    f = PolyMap.from_components(1, [v(1, 0)])
    g = PolyMap.from_components(1, [v(1, 0) + Polynomial.constant(1, 1)])
    with pytest.raises(ShapeError):
        pair_into(2, [p1, p2], [f, g])


def test_first_difference_names_a_monomial():
    f = PolyMap.from_components(1, [v(1, 0)])
    g = PolyMap.from_components(1, [v(1, 0) + v(1, 0) * v(1, 0)])
    diff = first_difference(f, g)
    assert diff is not None and "x0" in diff
    assert first_difference(f, f) is None
    assert map_equal(f, f)


# ----------------------------------------------------------------- inversion


def test_matrix_det_and_cofactor_inverse():
    one = Polynomial.constant(1, 1)
    x = v(1, 0)
    m = [[one, x], [Polynomial.zero(1), one]]
    assert matrix_det(m) == one
    inv = matrix_cofactor_inverse(m)
    assert inv is not None
    assert inv[0][1] == -x
    # non-constant determinant is conservatively rejected
    assert matrix_cofactor_inverse([[x]]) is None
    assert matrix_cofactor_inverse([[Polynomial.zero(1)]]) is None


def test_invert_shear():
    n = 4
    comps = [v(n, 0), v(n, 1), v(n, 2), v(n, 3) + v(n, 0) * v(n, 1) * v(n, 2)]
    f = PolyMap(n, tuple(comps))
    inv = invert_polymap(f)
    assert inv is not None
    assert compose(f, inv) == PolyMap.identity(n)
    assert compose(inv, f) == PolyMap.identity(n)


def test_invert_permutation_and_scaling():
    f = PolyMap.from_components(2, [v(2, 1).scale(2), v(2, 0)])
    inv = invert_polymap(f)
    assert inv is not None
    assert eval_map(inv, [6, 5]) == (5, 3)


def test_invert_refuses_noninvertible():
    assert invert_polymap(PolyMap.from_components(1, [v(1, 0) * v(1, 0)])) is None
    assert invert_polymap(PolyMap.selection(2, [0, 0])) is None


@settings(max_examples=30)
@given(polymaps(3, 3, max_degree=1, max_terms=3))
def test_inversion_is_two_sided_whenever_found(f):
    inv = invert_polymap(f)
    if inv is not None:
        assert compose(f, inv) == PolyMap.identity(3)
        assert compose(inv, f) == PolyMap.identity(3)
        for pt in grid_points(3):
            assert eval_map(inv, list(eval_map(f, pt))) == tuple(pt)
