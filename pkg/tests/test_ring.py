from fractions import Fraction

import pytest

from wedgesyz.ring import EQ, GT, LT, ParseError, PolyRing, compare_monomials, graded_piece_basis

R5 = PolyRing(("x0", "x1", "x2", "x3", "x4"))
XYZ = PolyRing(("x", "y", "z"))


def test_parse_rnc_quadric():
    f = R5("x1^2 - x0*x2")
    assert f.as_dict() == {(0, 2, 0, 0, 0): 1, (1, 0, 1, 0, 0): -1}
    assert str(f) == "x1^2 - x0*x2"


def test_parse_zero_is_empty():
    assert R5("0").as_dict() == {}
    assert not R5("0")


def test_parse_power_of_sum():
    f = R5("(x0+x1)^3")
    assert sorted(f.as_dict().values()) == [1, 1, 3, 3]


def test_parse_rationals_and_unary_minus():
    assert R5("-1/2*x0 + 3/4*x1") == R5("x1*3/4 - 1/2*x0")
    assert R5("-(x0 - x1)") == R5("x1 - x0")


@pytest.mark.parametrize("bad", ["x0 +", "x9", "x0^", "2**x1", "(x0", "x0/2", "2 x0", "1/0"])
def test_parse_errors_carry_position(bad):
    with pytest.raises(ParseError) as exc:
        R5(bad)
    assert "position" in str(exc.value)


def test_multiply():
    q = R5("x1^2 - x0*x2")
    assert q * R5.one() == q
    assert R5("x0") * R5("x1") == R5("x0*x1")
    assert (R5("x0") * R5("x1")).homogeneous_degree() == 2
    assert R5("x0+x1") * R5("x0-x1") == R5("x0^2 - x1^2")


def test_exact_arithmetic():
    f = R5("1/3*x0") + R5("1/6*x0")
    assert f.as_dict() == {(1, 0, 0, 0, 0): Fraction(1, 2)}


def test_grevlex_comparisons():
    assert compare_monomials((0, 2, 0), (1, 0, 1), XYZ) == GT
    assert compare_monomials((3, 0, 0), (0, 2, 0), XYZ) == GT
    assert compare_monomials((1, 1, 0), (1, 1, 0), XYZ) == EQ
    assert compare_monomials((1, 0, 1), (0, 2, 0), XYZ) == LT


def test_lex_differs_from_grevlex():
    lex = XYZ.with_order("lex")
    assert compare_monomials((1, 0, 1), (0, 2, 0), lex) == GT


def test_graded_piece_basis():
    assert len(graded_piece_basis(XYZ, 2)) == 6
    assert list(graded_piece_basis(R5, 0)) == [(0,) * 5]
    assert [R5.monomial(m) for m in graded_piece_basis(R5, 1)] == R5.gens()


def test_graded_piece_sorted_descending():
    mons = graded_piece_basis(XYZ, 3)
    keys = [XYZ.key(m) for m in mons]
    assert keys == sorted(keys, reverse=True)


def test_ring_validation():
    with pytest.raises(ValueError):
        PolyRing(("x", "x"))
    with pytest.raises(ValueError):
        PolyRing(("x",), "weird")
