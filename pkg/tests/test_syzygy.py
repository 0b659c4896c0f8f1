import random

import pytest

from osculant.polarity import CubicSystem, random_cubic_system, togliatti_system
from osculant.ratpoly import MPoly, random_linear_form, restrict_mod_line
from osculant.syzygy import (DegenerateRestriction, SplittingType, degrees_from_h, generic_splitting, random_line,
                             splitting_type, syzygy_dimension)

X0, X1, X2 = MPoly.gens(3)


@pytest.mark.parametrize("degrees", [(0, -1, -2), (-1, -1, -1), (0, 0, -3)])
def test_degrees_from_h_inverts_formula(degrees):
    h = [sum(max(0, a + k + 1) for a in degrees) for k in range(3)]
    assert degrees_from_h(h) == degrees


def test_degrees_from_h_rejects_inconsistent():
    with pytest.raises(DegenerateRestriction):
        degrees_from_h((2, 3, 6))  # c_{-1} < 0
    with pytest.raises(DegenerateRestriction):
        degrees_from_h((0, 2, 6))  # sums to -2: a base point on the line


def test_syzygy_dimension_hand_case():
    # restricted to X2 = 0 the togliatti system is (s^3, t^3, 0, 0)
    g = [restrict_mod_line(f, X2) for f in togliatti_system(X0, X1, X2)]
    assert syzygy_dimension(g, 0) == 2
    assert syzygy_dimension(g, 1) == 4


def test_togliatti_type_on_random_line():
    st = splitting_type(togliatti_system(X0, X1, X2), MPoly.linear([3, -7, 11]))
    assert st.degrees == (0, -1, -2) and st.h == (1, 3, 6)


def test_random_system_balanced():
    S = random_cubic_system(random.Random(1))
    assert splitting_type(S, MPoly.linear([2, 5, -9])).degrees == (-1, -1, -1)


def test_jumping_line_for_non_togliatti_system():
    S = CubicSystem((X0 ** 3, X1 ** 3, X2 ** 3, X0 ** 2 * X1))
    assert splitting_type(S, MPoly.linear([1, 1, 1])).degrees == (-1, -1, -1)
    assert splitting_type(S, X2).degrees == (0, -1, -2)


def test_degenerate_restriction():
    S = CubicSystem((X0 * X1 ** 2, X0 ** 2 * X1, X0 ** 3, X0 * X2 ** 2))
    with pytest.raises(DegenerateRestriction):
        splitting_type(S, X0)


def test_generic_splitting_reports():
    g = generic_splitting(togliatti_system(X0, X1, X2), 4, seed=3)
    assert g.degrees == (0, -1, -2) and g.agree and g.confirmed
    assert len(g.observations) == 4
    one = generic_splitting(togliatti_system(X0, X1, X2), 1)
    assert not one.confirmed
    with pytest.raises(ValueError):
        generic_splitting(togliatti_system(X0, X1, X2), 0)


def test_random_line_primitive_in_range():
    rng = random.Random(0)
    for _ in range(50):
        l = random_line(rng)
        c = [l.coefficient(e) for e in ((1, 0, 0), (0, 1, 0), (0, 0, 1))]
        assert any(c) and all(abs(x) <= 99 for x in c)
        from math import gcd
        assert gcd(gcd(c[0], c[1]), c[2]) == 1


def test_splitting_type_validation():
    with pytest.raises(ValueError):
        SplittingType((0, -2, -1), (0, 0, 0), (1, 0, 0))
    with pytest.raises(ValueError):
        SplittingType((0, 0, -1), (0, 0, 0), (1, 0, 0))
