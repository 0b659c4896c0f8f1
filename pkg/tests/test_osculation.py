import random

import pytest
import sympy

from conftest import sym_matrix
from osculant.osculation import (UnderdeterminedCommonSpace, affine_partial_count, certify_common_point,
                                 common_osculating_space, expected_osc_dim, find_common_point, laplace_defect,
                                 osc_dim, osculating_hyperplane, partials_matrix)
from osculant.ratpoly import MPoly, monomials_of_degree, product, render
from osculant.varieties import (ProjPoint, apply_functionals, form_to_veronese_coordinates, hyperplane_section_param,
                                linear_projection, projection_functionals, random_independent_forms, rnc, segre,
                                togliatti, veronese, veronese_point)


def cube_projection():
    X = MPoly.gens(3)
    return linear_projection(veronese(2, 3), [veronese_point(x, 3) for x in X])


def test_partials_matrix_shape_and_entries():
    V = rnc(3)
    pm = partials_matrix(V, 1, (1, 2))
    assert pm.matrix.shape == (4, 3)
    # columns: value, d/dX0, d/dX1 of (x^3, x^2 y, x y^2, y^3) at (1, 2)
    assert pm.matrix.to_lists() == [[1, 3, 0], [2, 4, 1], [4, 4, 4], [8, 0, 12]]
    with pytest.raises(ValueError):
        partials_matrix(V, 1, (0, 0))


@pytest.mark.parametrize("V,k", [(rnc(4), 2), (veronese(2, 3), 2), (segre(3), 2), (togliatti(), 2)])
def test_osc_dim_matches_sympy_rank(V, k):
    pt = (3, -2, 5, 7, -1, 4)[:V.nvars]
    rows = partials_matrix(V, k, pt).matrix.to_lists()
    assert osc_dim(V, k, pt) == sym_matrix(rows).rank() - 1


def test_generic_dims_and_counts():
    assert osc_dim(rnc(5), 3) == 3
    assert osc_dim(veronese(2, 3), 2, certify=True) == 5
    assert affine_partial_count(segre(3), 2) == 7
    assert expected_osc_dim(segre(3), 2) == 6
    assert expected_osc_dim(veronese(2, 2), 3) == 5


def test_laplace_equation_after_projecting_from_the_common_point():
    # dropping x0x1x2 from the seven cubics leaves a surface in P^5 with a Laplace equation
    T = togliatti()
    from osculant.varieties import ParamVariety
    P = ParamVariety("proj-from-point", T.coordinates[1:], "projective", T.factors)
    assert laplace_defect(P, 2, certify=True) == 1
    assert laplace_defect(T, 2, certify=True) == 0


@pytest.mark.parametrize("point", [(1, 2), (3, -1), (2, 5)])
def test_rnc_osculating_hyperplane_is_power_of_the_dual_line(point):
    # forms vanishing to order d at (a, b) are multiples of (b X - a Y)^d
    a, b = point
    d = 3
    h = osculating_hyperplane(rnc(d), d - 1, point)
    X, Y = MPoly.gens(2)
    f = (b * X - a * Y) ** d
    assert h == ProjPoint(f.coefficient_vector(monomials_of_degree(2, d)))


def test_togliatti_hyperplane_at_111():
    V = cube_projection()
    h = osculating_hyperplane(V, 2, (1, 1, 1))
    X0, X1, X2 = MPoly.gens(3)
    f = (X1 - X2) * (X0 - X2) * (X0 - X1)
    coeffs = [f.coefficient(next(iter(c.terms))) for c in V.coordinates]
    assert h == ProjPoint(coeffs)


def test_togliatti_common_point_certified():
    V = cube_projection()
    c = find_common_point(V, 2, 3, seed=0)
    assert c.as_list() == [0, 0, 0, 1, 0, 0, 0]
    cert = certify_common_point(V, 2, c, certify=True)
    assert cert.verdict == "common-point-verified" and cert.mode == "certified"
    assert cert.generic_dim == 5 and cert.defect == 0


def test_full_veronese_has_no_common_point():
    V = veronese(2, 3)
    assert find_common_point(V, 2, 3, seed=0) is None
    cand = [1 if m == (1, 1, 1) else 0 for m in monomials_of_degree(3, 3)]
    assert certify_common_point(V, 2, cand).verdict == "no-common-point"


def test_two_point_projection_has_no_common_point():
    forms = random_independent_forms(random.Random(0), 2, 3)
    V = linear_projection(veronese(2, 3), [veronese_point(l, 3) for l in forms])
    assert find_common_point(V, 2, 3, seed=0) is None


@pytest.mark.parametrize("seed", range(3))
def test_veronese_n1_common_point_is_product(seed):
    forms = random_independent_forms(random.Random(seed), 3, 3)
    centers = [veronese_point(l, 3) for l in forms]
    V = linear_projection(veronese(2, 3), centers)
    funcs = projection_functionals([list(c) for c in centers], 10)
    expected = ProjPoint(apply_functionals(funcs, form_to_veronese_coordinates(product(forms, 3))))
    assert find_common_point(V, 2, 3, seed=seed) == expected


def test_veronese_n2_common_space_is_a_line_containing_the_product_point():
    forms = random_independent_forms(random.Random(0), 5, 5)
    centers = [veronese_point(l, 5) for l in forms]
    V = linear_projection(veronese(2, 5), centers)
    space = common_osculating_space(V, 4, 3, seed=1)
    assert space.dim == 1
    with pytest.raises(UnderdeterminedCommonSpace):
        find_common_point(V, 4, 3, seed=1)
    funcs = projection_functionals([list(c) for c in centers], 21)
    cand = apply_functionals(funcs, form_to_veronese_coordinates(product(forms, 3)))
    assert certify_common_point(V, 4, cand, certify=True).verdict == "common-point-verified"
    for v in space.basis:
        assert certify_common_point(V, 4, list(v), certify=True).verdict == "common-point-verified"


def test_common_space_deterministic_by_seed():
    V = cube_projection()
    a = common_osculating_space(V, 2, 3, seed=5)
    b = common_osculating_space(V, 2, 3, seed=5)
    assert a == b


def test_segre_section_n3_common_point():
    a = [3, -1, 4, 1, -5, 9, 2, -6]
    V = hyperplane_section_param(segre(3), a)
    c = find_common_point(V, 2, 3, seed=0)
    assert c is not None
    assert certify_common_point(V, 2, c, certify=True).verdict == "common-point-verified"


def test_certificate_dict_order():
    V = cube_projection()
    d = certify_common_point(V, 2, [0, 0, 0, 1, 0, 0, 0]).to_dict()
    assert list(d) == ["variety", "k", "generic_dim", "expected_dim", "defect", "candidate", "mode", "verdict"]


def test_candidate_length_checked():
    with pytest.raises(ValueError):
        certify_common_point(cube_projection(), 2, [1, 0])
