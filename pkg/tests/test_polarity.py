import random
from fractions import Fraction

import pytest

from osculant.linalg import ExactMatrix
from osculant.ratpoly import MPoly, product, random_linear_form, render
from osculant.polarity import (PARITY_MESSAGE, CubicSystem, admissible_hyperplane, build_m_tensor,
                               coordinate_base_point, has_base_point, laplace_line_test,
                               line_dependence_determinants, random_cubic_system, rnc_bridge_determinants,
                               rnc_polarity_check, segre_osc_form, segre_pairing, segre_point,
                               segre_section_common_point, togliatti_system)
from osculant.varieties import ProjPoint, hyperplane_section_param, restrict_to_hyperplane, segre


def test_rnc_polarity_hand_example():
    x, y = MPoly.gens(2)
    # x*y*(x+y) = -1/3 x^3 - 1/3 y^3 + 1/3 (x+y)^3
    w = rnc_polarity_check(3, [x, y, x + y])
    assert w == [Fraction(-1, 3), Fraction(-1, 3), Fraction(1, 3)]
    assert rnc_polarity_check(2, [x, y]) is None


@pytest.mark.parametrize("d", [3, 5])
def test_rnc_polarity_witness_reexpands(d):
    rng = random.Random(d)
    forms = [random_linear_form(rng, 2) for _ in range(d)]
    w = rnc_polarity_check(d, forms)
    assert w is not None
    assert sum((l ** d * c for l, c in zip(forms, w)), MPoly.zero(2)) == product(forms, 2)


def test_rnc_polarity_validation():
    x, y = MPoly.gens(2)
    with pytest.raises(ValueError):
        rnc_polarity_check(3, [x, y])
    with pytest.raises(ValueError):
        rnc_polarity_check(3, [x, 2 * x, y])


def test_m_tensor_small_cases():
    assert build_m_tensor(1).matrix.to_lists() == [[0, -1], [1, 0]]
    M2 = build_m_tensor(2).matrix
    assert M2.to_lists() == [[0, 0, 0, 1], [0, 0, -1, 0], [0, -1, 0, 0], [1, 0, 0, 0]]
    assert segre_pairing(2, [1, 0, 0, 1]) == 2
    with pytest.raises(ValueError):
        segre_pairing(2, [1, 0, 0])


def test_pairing_parity_symbolic():
    assert segre_pairing(3, MPoly.gens(8)).is_zero()
    q = segre_pairing(2, MPoly.gens(4))
    assert render(q) == "2*X0*X3 - 2*X1*X2"
    t = MPoly.gens(4)
    assert segre_pairing(2, segre_point([(t[0], t[1]), (t[2], t[3])])).is_zero()


def test_segre_osc_form_is_minus_m_image():
    pts = [(2, 3), (-1, 4), (5, 1)]
    form = segre_osc_form(3, pts)
    mx = build_m_tensor(3).apply(segre_point(pts))
    assert form == [-v for v in mx]


@pytest.mark.parametrize("N,seed", [(3, 0), (3, 1), (5, 0)])
def test_segre_section_certificate(N, seed):
    a = admissible_hyperplane(N, random.Random(seed))
    c, cert = segre_section_common_point(N, a)
    assert cert.verified
    assert sum(x * y for x, y in zip(a, c)) == 0
    assert c == ProjPoint(build_m_tensor(N).apply(a))


def test_even_n_rejected_with_parity_message():
    with pytest.raises(ValueError, match="symmetric"):
        segre_section_common_point(4, [1] * 16)
    assert "quadric" in PARITY_MESSAGE


def test_cubic_system_validation():
    X0, X1, X2 = MPoly.gens(3)
    with pytest.raises(ValueError):
        CubicSystem((X0 ** 3, X1 ** 3, X2 ** 3))
    with pytest.raises(ValueError):
        CubicSystem((X0 ** 3, X1 ** 3, X2 ** 3, 2 * X0 ** 3))
    with pytest.raises(ValueError):
        CubicSystem((X0 ** 3, X1 ** 3, X2 ** 3, X0 ** 2))
    with pytest.raises(ValueError):
        togliatti_system(X0, X1, X0 + X1)


def test_line_test_togliatti_holds():
    X = MPoly.gens(3)
    t = laplace_line_test(togliatti_system(*X))
    assert t.holds and t.witness is None
    assert all(D.is_zero() for D in t.determinants)


def test_line_test_general_linear_forms():
    rng = random.Random(2)
    ls = [random_linear_form(rng, 3) for _ in range(3)]
    assert laplace_line_test(togliatti_system(*ls)).holds


def test_line_test_fails_with_witness():
    X0, X1, X2 = MPoly.gens(3)
    S = CubicSystem((X0 ** 3, X1 ** 3, X2 ** 3, X0 ** 2 * X1))
    t = laplace_line_test(S)
    assert t.verdict == "fails" and t.witness is not None
    assert not laplace_line_test(random_cubic_system(random.Random(0))).holds


def test_base_point_detection():
    X0, X1, X2 = MPoly.gens(3)
    assert not has_base_point([X0 ** 3, X1 ** 3, X2 ** 3, X0 * X1 * X2])
    forms = [X0 ** 2 * X1, X1 ** 3, X2 ** 3, X0 * X1 * X2]
    assert has_base_point(forms)
    assert coordinate_base_point(forms) == (1, 0, 0)
    # a common zero at (1, 2, 3), away from every 0/1 point
    L1, L2 = 2 * X0 - X1, 3 * X0 - X2
    g = [L1 * X0 ** 2, L1 * X1 ** 2, L2 * X2 ** 2, L2 * X0 * X1]
    assert all(f.evaluate((1, 2, 3)) == 0 for f in g)
    assert has_base_point(g)
    assert coordinate_base_point(g) is None


def test_bridge_determinants_vanish_for_odd_products():
    rng = random.Random(5)
    ls = [random_linear_form(rng, 3) for _ in range(3)]
    assert all(D.is_zero() for D in rnc_bridge_determinants(ls))


def test_line_dependence_determinants_shape():
    X = MPoly.gens(3)
    with pytest.raises(ValueError):
        line_dependence_determinants([X[0] ** 3, X[1] ** 3])
