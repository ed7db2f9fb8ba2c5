from fractions import Fraction

import flint
import pytest
from hypothesis import given
from hypothesis import strategies as st

from superyang.errors import DivisionByZero, EvaluationPole
from superyang.exact_field import (
    FieldTower, Poly, RatFun, poly_gcd, ratfun_shift, rational_roots, tower_substitute,
)

u = Poly.x()
small = st.fractions(min_value=-5, max_value=5, max_denominator=4)
polys = st.lists(small, min_size=0, max_size=5).map(Poly)
nonzero_polys = polys.filter(lambda p: not p.is_zero())


def to_flint(p):
    return flint.fmpq_poly([flint.fmpq(c.numerator, c.denominator) for c in p.coeffs])


def test_poly_basics():
    p = (u - 1) * (u + 2)
    assert p == Poly([-2, 1, 1])
    assert p.degree == 2 and p.lc == 1 and p.is_monic()
    assert p(Fraction(1)) == 0
    assert p.shift(1) == u * (u + 3)
    assert Poly.from_roots([1, -2]) == p
    q, r = (p * (u + 5) + 3).divmod(p)
    assert q == u + 5 and r == Poly.const(3)


def test_poly_json_round_trip():
    p = Poly([Fraction(1, 2), 0, -3])
    assert p.to_json() == ["1/2", "0", "-3"]
    assert Poly.from_json(p.to_json()) == p


def test_ratfun_canonical_form():
    f = RatFun((u - 1) * (u + 1), 2 * (u - 1))
    assert f.num == Poly([Fraction(1, 2), Fraction(1, 2)]) and f.den == Poly.const(1)
    g = RatFun(u + 1, u) + RatFun(Poly.const(-1), u)
    assert g == RatFun.one()
    assert RatFun(u, u - 1).inverse() == RatFun(u - 1, u)


def test_division_by_zero():
    with pytest.raises(DivisionByZero):
        RatFun(u, Poly())
    with pytest.raises(DivisionByZero):
        RatFun.zero().inverse()


def test_rational_roots_oracle():
    p = (u - Fraction(1, 2)) ** 2 * (u + 3) * (u * u + 1)
    roots, rem = rational_roots(p)
    assert roots == {Fraction(1, 2): 2, Fraction(-3): 1}
    assert rem.monic() == u * u + 1


def test_shift_composition():
    f = RatFun(u + 1, u * (u - 2))
    assert ratfun_shift(ratfun_shift(f, 2), -3) == ratfun_shift(f, -1)
    assert ratfun_shift(f, 1) == RatFun(u + 2, (u + 1) * (u - 1))


@given(polys, polys, polys)
def test_poly_ring_axioms(a, b, c):
    assert (a + b) * c == a * c + b * c
    assert (a * b) * c == a * (b * c)
    assert a - a == Poly()


@given(nonzero_polys, nonzero_polys)
def test_gcd_against_flint(a, b):
    g = poly_gcd(a, b).monic()
    ref = to_flint(a).gcd(to_flint(b))
    assert to_flint(g) == ref / ref[ref.degree()]


@given(nonzero_polys, nonzero_polys, nonzero_polys, nonzero_polys)
def test_ratfun_field_axioms(a, b, c, d):
    x, y = RatFun(a, b), RatFun(c, d)
    assert (x + y) - y == x
    if y:
        assert (x * y) / y == x
    assert RatFun(a * c, b * c) == RatFun(a, b)


@given(st.lists(small, min_size=1, max_size=4))
def test_rational_roots_recover_roots(rs):
    roots, rem = rational_roots(Poly.from_roots(rs))
    assert rem.degree == 0
    assert sum(roots.values()) == len(rs)
    for r in rs:
        assert roots[r] == rs.count(r)


def test_tower_consecutive_substitution():
    T = FieldTower(["u1", "u2"])
    u1, u2 = T.gen("u1"), T.gen("u2")
    f = (u1 - u2) / (u1 + u2 + 1)
    g = tower_substitute(f, "u1", 1)
    assert tower_substitute(g, "u2", 1) == 0
    with pytest.raises(EvaluationPole):
        tower_substitute(1 / (u1 - u2), "u1", 0).substitute("u2", 0)
    # reduced quotient: the removable singularity is not a pole
    h = (u1 * u1 - u2 * u2) / (u1 - u2)
    assert tower_substitute(tower_substitute(h, "u1", 2), "u2", 2) == 4
