import itertools
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from superyang.errors import Inconsistent, NotScalar, VerificationFailure, WrongSpaceKind
from superyang.exact_field import Poly, RatFun, ratfun_shift
from superyang.rep import Family, U, rtt_residual, ybe_residual
from superyang.super_space import SuperSpace, operator_Q_osp, permutation_P
from superyang.yangian_osp import (
    OspHighestWeight, central_from_weight, central_on_vector, central_series,
    check_osp_relations, complete_weight, consistency_check, defrel_check, embedding_F,
    embedding_sum_check, expected_xi_weight, highest_weight_osp, osp_R, tensor_module_osp,
    vector_rep_osp, vector_rep_osp0, vplus_subspace, w_subspace, xi_module, yangian_normalizer,
)

u = Poly.x()


@pytest.mark.parametrize("n", [1, 2])
def test_ybe(n):
    for sp in (SuperSpace.osp(n), SuperSpace.osp0(n)):
        assert ybe_residual(osp_R(sp), sp) is None


@pytest.mark.parametrize("n", [1, 2])
def test_ybe_wrong_kappa_fails(n):
    sp = SuperSpace.osp(n)
    N = sp.dim ** 2
    P = Family.constant(permutation_P(sp, 2, 1, 2))
    Q = Family.constant(operator_Q_osp(sp, 2, 1, 2))
    lin = U - int(sp.kappa) - 1
    bad = (Family.identity(N).scale_poly(U * lin) - P.scale_poly(lin) + Q.scale_poly(U)
           ).divide_poly(U * lin)
    assert ybe_residual(bad, sp) is not None


def test_R_kind_mismatch():
    with pytest.raises(WrongSpaceKind):
        osp_R(SuperSpace.osp(1), "sub")
    with pytest.raises(WrongSpaceKind):
        vector_rep_osp(SuperSpace.osp0(1))


@pytest.mark.parametrize("n", [1, 2])
def test_vector_reps_rtt(n):
    sp, sub = SuperSpace.osp(n), SuperSpace.osp0(n)
    assert rtt_residual(vector_rep_osp(sp), osp_R(sp)) is None
    assert rtt_residual(vector_rep_osp0(sub), osp_R(sub)) is None
    assert rtt_residual(tensor_module_osp(sp, (-1, 0)), osp_R(sp)) is None


def test_rtt_negative_control():
    sp = SuperSpace.osp(1)
    rep = vector_rep_osp(sp)
    rep.t[(1, 1)] = rep.t[(1, 1)].scale_poly(U + 1).divide_poly(U)
    assert rtt_residual(rep, osp_R(sp)) is not None


@pytest.mark.parametrize("n", [1, 2, 3])
def test_vector_rep_weight_and_central_series(n):
    """Hand computation: lambda_1 = (u+1)/u, lambda_1' = (u-n-1)/(u-n), the
    rest 1, hence c(u) = (u^2 - 1)/u^2."""
    sp = SuperSpace.osp(n)
    rep = vector_rep_osp(sp)
    _, hw = highest_weight_osp(rep)
    expected = [RatFun(u + 1, u)] + [RatFun.one()] * (2 * n) + [RatFun(u - n - 1, u - n)]
    assert list(hw.full) == expected
    consistency_check(hw)
    c = central_series(rep).c
    assert c == RatFun(u * u - 1, u * u)
    assert c == central_from_weight(hw)
    assert complete_weight(hw.reduced, n).full == hw.full


def test_central_series_not_scalar():
    sp = SuperSpace.osp(1)
    rep = vector_rep_osp(sp)
    rep.t[(1, 2)] = rep.t[(1, 2)].scale_poly(U + 1).divide_poly(U)
    with pytest.raises(NotScalar):
        central_series(rep)


def test_central_series_tensor_is_product():
    sp = SuperSpace.osp(1)
    V = vector_rep_osp(sp)
    c = central_series(tensor_module_osp(sp, (-1, 0))).c
    cv = central_series(V).c
    assert c == ratfun_shift(cv, -1) * cv


def test_consistency_violation():
    hw = OspHighestWeight(1, (RatFun(u + 1, u), RatFun.one(), RatFun.one(), RatFun.one()))
    with pytest.raises(Inconsistent) as exc:
        consistency_check(hw)
    assert exc.value.index == 1


@given(st.lists(st.tuples(st.integers(-4, 4), st.integers(-2, 2)), max_size=4),
       st.integers(1, 3))
def test_yangian_normalizer(factors, n):
    kappa = -n
    num, den = Poly.const(1), Poly.const(1)
    for b, e in factors:
        for _ in range(abs(e)):
            if e > 0:
                num = num * (u - b)
            else:
                den = den * (u - b)
    f = RatFun(num, den)
    c = ratfun_shift(f, -kappa) * f
    g = yangian_normalizer(c, kappa)
    assert g is not None and ratfun_shift(g, -kappa) * g == c
    assert g == f


def test_yangian_normalizer_none_for_vector_rep():
    assert yangian_normalizer(RatFun(u * u - 1, u * u), -1) is None


@pytest.mark.parametrize("n", [1, 2, 3])
def test_w_subspace(n):
    rep = w_subspace(SuperSpace.osp(n))
    assert rep.checks == {"action_formula": True, "isomorphic_to_vector_osp0": True,
                          "annihilation": True, "t11_scalar": True}


def test_w_subspace_wrong_module_detected():
    sp = SuperSpace.osp(1)
    with pytest.raises(VerificationFailure):
        w_subspace(sp, tensor_module_osp(sp, (0, 0)))


@pytest.mark.parametrize("n", [1, 2])
def test_vplus(n):
    sp = SuperSpace.osp(n)
    basis, rep = vplus_subspace(tensor_module_osp(sp, (-1, 0)))
    assert rep.space == SuperSpace.osp0(n)
    assert rep.dim == 2 * n + 1


@pytest.mark.parametrize("n,d", [(1, 1), (2, 1), (2, 2), (3, 1), (3, 2)])
def test_xi_module(n, d):
    X = xi_module(d, n)
    assert X.weight.reduced == expected_xi_weight(n, d)
    c = central_on_vector(X.chain, X.xi, SuperSpace.osp(n).kappa)
    assert c == central_from_weight(X.weight)


def test_xi_exception_oracle():
    """d = n = 2: lambda = ((u+1)/(u-1), (u-2)/(u-1), (u-2)/(u-1), (u-2)/(u-3))."""
    X = xi_module(2, 2)
    assert X.weight.reduced == (RatFun(u + 1, u - 1), RatFun(u - 2, u - 1),
                                RatFun(u - 2, u - 1), RatFun(u - 2, u - 3))


@pytest.mark.parametrize("n", [1, 2])
def test_defining_relations(n):
    sp = SuperSpace.osp(n)
    rep = vector_rep_osp(sp)
    quads = list(itertools.product(sp.indices, repeat=4))
    pts = [(Fraction(7, 3), Fraction(-5, 2)), (Fraction(11), Fraction(1, 7))]
    assert defrel_check(rep, quads, pts) is None


@pytest.mark.parametrize("n", [1, 2])
def test_embedding(n):
    sp = SuperSpace.osp(n)
    for rep in (vector_rep_osp(sp), tensor_module_osp(sp, (-1, 0))):
        assert embedding_sum_check(rep)
        assert check_osp_relations(sp, embedding_F(rep))
