from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from superyang.drinfeld import (
    DrinfeldTuple, cancel_common, drinfeld_from_weight, shift_tuple, shift_weight,
    solve_shift_equation, tensor_transition, weight_from_drinfeld, xi_tuple,
    y_classification_normalize,
)
from superyang.errors import DegreeMismatch, IrrationalRoots, NoSolution
from superyang.exact_field import Poly, RatFun

u = Poly.x()
root = st.fractions(min_value=-4, max_value=4, max_denominator=3)
roots = st.lists(root, max_size=4)


@st.composite
def tuples(draw, n=None):
    n = draw(st.integers(1, 3)) if n is None else n
    return DrinfeldTuple.from_roots(draw(roots), draw(roots), [draw(roots) for _ in range(n)])


@given(roots, st.sampled_from([1, 2]))
def test_shift_solver_inverts(rs, step):
    P = Poly.from_roots(rs)
    assert solve_shift_equation(RatFun(P.shift(step), P), step) == P


@pytest.mark.parametrize("ratio,step", [
    (RatFun(u + 1, u + 3), 1),   # would need 1/((u+1)(u+2))
    (RatFun(u, u + 1), 1),       # would need 1/u
    (RatFun(u + 1, u), 2),       # strings of step 2 do not close up
    (RatFun(2 * u, u + 1), 1),   # does not tend to 1
])
def test_shift_solver_no_solution(ratio, step):
    with pytest.raises(NoSolution):
        solve_shift_equation(ratio, step)


def test_shift_solver_irrational():
    with pytest.raises(IrrationalRoots):
        solve_shift_equation(RatFun(u * u + 2 * u + 2, u * u + 1), 1)


def test_shift_solver_oracle():
    # P = u(u-1): P(u+2)/P(u) = (u+2)(u+1)/(u(u-1))
    assert solve_shift_equation(RatFun((u + 2) * (u + 1), u * (u - 1)), 2) == u * (u - 1)


def test_tuple_validation_and_json():
    with pytest.raises(ValueError):
        DrinfeldTuple(2 * u, u, [Poly.const(1)])
    t = DrinfeldTuple.from_roots([Fraction(-1, 2)], [2], [[1, 1], []])
    assert t.to_json() == {"Qbar": ["1/2", "1"], "Q": ["-2", "1"],
                           "P": [["1", "-2", "1"], ["1"]]}
    assert DrinfeldTuple.from_json(t.to_json()) == t
    assert t.n == 2


@given(tuples())
def test_weight_round_trip(t):
    w = weight_from_drinfeld(t)
    assert w[-1] == RatFun.one()
    assert drinfeld_from_weight(w) == cancel_common(t)


@given(tuples(n=2), st.fractions(min_value=-3, max_value=3, max_denominator=2))
def test_shift_compatibility(t, a):
    w = weight_from_drinfeld(t)
    assert drinfeld_from_weight(shift_weight(w, a)) == cancel_common(shift_tuple(t, a))


def test_transition_oracle():
    t1 = DrinfeldTuple(u + 1, u - 1, [u])
    t2 = DrinfeldTuple(u - 1, u - 2, [Poly.const(1)])
    assert tensor_transition(t1, t2) == DrinfeldTuple(u + 1, u - 2, [u])


@given(st.data())
def test_transition_laws(data):
    n = data.draw(st.integers(1, 3))
    a, b, c = (data.draw(tuples(n)) for _ in range(3))
    one = DrinfeldTuple.ones(n)
    assert tensor_transition(a, one) == cancel_common(a)
    assert tensor_transition(a, b) == tensor_transition(b, a)
    assert tensor_transition(tensor_transition(a, b), c) == \
        tensor_transition(a, tensor_transition(b, c))


@given(st.data())
def test_transition_is_weight_product(data):
    n = data.draw(st.integers(1, 3))
    a, b = data.draw(tuples(n)), data.draw(tuples(n))
    wa, wb = weight_from_drinfeld(a), weight_from_drinfeld(b)
    assert drinfeld_from_weight(tuple(x * y for x, y in zip(wa, wb))) == tensor_transition(a, b)


def test_y_normalization():
    t = DrinfeldTuple((u + 1) * (u - 3), (u - 3) * (u - 2), [Poly.const(1)])
    assert y_classification_normalize(t) == DrinfeldTuple(u + 1, u - 2, [Poly.const(1)])
    with pytest.raises(DegreeMismatch):
        y_classification_normalize(DrinfeldTuple(u * u, u - 1, [Poly.const(1)]))


def test_xi_tuples():
    assert str(xi_tuple(2, 1)) == "(u + 1, u - 1, u - 1, 1)"
    assert str(xi_tuple(3, 2)) == "(u + 1, u - 2, 1, u - 2, 1)"
    assert str(xi_tuple(2, 2)) == "(u + 1, u - 2, 1, u - 3)"
    with pytest.raises(ValueError):
        xi_tuple(2, 3)


def test_documented_examples():
    alpha = Fraction(5, 2)
    w = weight_from_drinfeld(DrinfeldTuple(u + alpha, u, [Poly.const(1)] * 2))
    assert w == (RatFun(u + alpha, u), RatFun.one(), RatFun.one(), RatFun.one())
    assert weight_from_drinfeld(DrinfeldTuple.ones(3)) == (RatFun.one(),) * 5
    t1 = DrinfeldTuple(u + 1, u, [Poly.const(1)])
    t2 = DrinfeldTuple(u, u - 1, [Poly.const(1)])
    assert tensor_transition(t1, t2) == DrinfeldTuple(u + 1, u - 1, [Poly.const(1)])
    t = DrinfeldTuple(u * (u + 1), u * (u - 1), [u])
    assert y_classification_normalize(t) == DrinfeldTuple(u + 1, u - 1, [u])
    with pytest.raises(DegreeMismatch):
        y_classification_normalize(DrinfeldTuple((u + 1) * (u + 2), u + 3, [u]))
    d, n = 2, 4
    assert solve_shift_equation(RatFun(u - d + 1, u - d), 1) == u - d
    ratio = RatFun((u - n + 1) * (u - n), (u - n - 1) * (u - n))
    assert solve_shift_equation(ratio, 2) == u - n - 1
    assert shift_tuple(t1, Fraction(3)) == DrinfeldTuple(u + 4, u + 3, [Poly.const(1)])
