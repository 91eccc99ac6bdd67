from fractions import Fraction

import numpy as np
import pytest

from vecconf.arrangement.algebra.poly2 import ONE, X, Y, BiPoly
from vecconf.arrangement.domain import DimensionError


def test_product_expands():
    p = (X + Y) * (X - Y)
    assert p == X ** 2 - Y ** 2
    assert p.coeff(1, 1) == 0
    assert p.total_degree == 2


def test_power_and_degrees():
    p = (ONE + X) ** 3 * Y
    assert p.coeff(2, 1) == 3
    assert (p.deg_x, p.deg_y) == (3, 1)
    assert BiPoly().deg_x == -1


def test_scalar_lifting():
    assert 2 * X + 1 == BiPoly({(1, 0): 2, (0, 0): 1})
    assert 1 - X == -(X - 1)
    assert X * Fraction(1, 2) + X * Fraction(1, 2) == X


def test_from_matrix_and_window():
    m = np.array([[1, 2, 2, 1], [2, 2, 2, 0]])
    p = BiPoly.from_matrix(m)
    assert p.coeff(1, 0) == 2 and p.coeff(0, 3) == 1
    assert np.array_equal(p.to_matrix(2, 4).astype(np.int64), m)
    with pytest.raises(DimensionError):
        p.to_matrix(2, 3)


def test_from_matrix_with_swapped_variables():
    p = BiPoly.from_matrix([[0, 5]], row_var="y", col_var="x")
    assert p == 5 * X


def test_substitute():
    p = X ** 2 + Y
    assert p.substitute(X + 1, X * Y) == X ** 2 + 2 * X + 1 + X * Y
    assert p.substitute(X, Y) == p


def test_to_text():
    assert (30 * X ** 2 + 60 * X + 32).to_text() == "30*x^2 + 60*x + 32"
    assert (Y + Y ** 2).to_text() == "y^2 + y"
    assert (-X * Y + 1).to_text() == "-x*y + 1"
    assert BiPoly().to_text() == "0"


def test_negative_exponent_rejected():
    with pytest.raises(DimensionError):
        BiPoly({(-1, 0): 1})


def test_substitute_is_a_ring_homomorphism():
    p = X ** 2 * Y + 3 * X - 2
    q = (X + Y) ** 2 - Y ** 3
    sx, sy = -(X + Y + ONE), 2 * Y - X
    assert (p + q).substitute(sx, sy) == p.substitute(sx, sy) + q.substitute(sx, sy)
    assert (p * q).substitute(sx, sy) == p.substitute(sx, sy) * q.substitute(sx, sy)


def test_dehn_sommerville_substitution_is_an_involution():
    p = BiPoly.from_matrix([[2, 5, 5, 2], [6, 0, 6, 0], [4, 4, 0, 0]])
    flip = -(X + Y + ONE)
    assert p.substitute(flip, Y).substitute(flip, Y) == p
    assert p.substitute(-(X + ONE), Y).substitute(-(X + ONE), Y) == p


def test_reflect():
    p = 3 * X ** 2 * Y + X - 1
    assert p.reflect(deg_x=2) == 3 * Y + X - X ** 2
    assert p.reflect(deg_y=1) == 3 * X ** 2 + X * Y - Y
    assert p.reflect(deg_x=2, deg_y=1) == p.reflect(deg_x=2).reflect(deg_y=1)
    assert p.reflect(deg_x=3).reflect(deg_x=3) == p
    with pytest.raises(DimensionError):
        p.reflect(deg_x=1)
