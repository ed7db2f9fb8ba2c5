import pytest

from superyang.errors import NonCyclic, NotInHook, RelationViolation
from superyang.exact_field import Poly, RatFun
from superyang.rep import U, rtt_residual, yang_R, yang_Rprime, ybe_residual
from superyang.super_space import SuperSpace
from superyang.sym_group import Tableau, act_on_tensor, murphy_idempotent, standard_tableaux
from superyang.yangian_gl import (
    antisymmetrizer_module, antisymmetrizer_weight, check_gl_relations, check_intertwining,
    coproduct_power, evaluation_module, gl_action_tensor, highest_weight, fusion_rhs, fusion_rhs_prime,
    pi_flat, pi_sharp, polynomial_module, r_product_dense, supertranspose_twist,
    symmetrizer_module, symmetrizer_weight, tensor_action_R, tensor_action_Rprime,
    vector_rep_A, vector_rep_B, xi_check, xi_weight,
)

GL = [(1, 1), (2, 1), (1, 2), (2, 2)]
u = Poly.x()


def sp_of(mn):
    return SuperSpace.gl(*mn)


@pytest.mark.parametrize("mn", GL)
def test_ybe(mn):
    sp = sp_of(mn)
    assert ybe_residual(yang_R(sp), sp) is None


@pytest.mark.parametrize("mn", GL)
def test_vector_reps_rtt(mn):
    sp = sp_of(mn)
    R = yang_R(sp)
    for rep in (vector_rep_A(sp), vector_rep_B(sp), supertranspose_twist(vector_rep_A(sp))):
        assert rtt_residual(rep, R) is None, rep.name


def test_rtt_negative_control():
    """Rescaling one generating series by a non-central factor breaks RTT."""
    sp = SuperSpace.gl(2, 1)
    rep = vector_rep_A(sp)
    rep.t[(1, 1)] = rep.t[(1, 1)].scale_poly(U + 1).divide_poly(U)
    assert rtt_residual(rep, yang_R(sp)) is not None


@pytest.mark.parametrize("mn", [(1, 1), (2, 1)])
def test_ybe_negative_control(mn):
    """The partial transpose 1 - Q/u is not a solution of the YBE, and
    scalar rescalings of R remain solutions (the check is homogeneous)."""
    sp = sp_of(mn)
    assert ybe_residual(yang_Rprime(sp), sp) is not None
    R = yang_R(sp)
    assert ybe_residual(R.scale_poly(U + 1).divide_poly(U), sp) is None


@pytest.mark.parametrize("mn", GL)
def test_evaluation_module_reproduces_vector_rep(mn):
    sp = sp_of(mn)
    E = gl_action_tensor(sp, 1)
    ev = evaluation_module(sp, E)
    B = vector_rep_B(sp)
    assert all(ev.t[k] == B.t[k] for k in B.t)


def test_gl_relations_and_violation():
    sp = SuperSpace.gl(1, 1)
    E = gl_action_tensor(sp, 2)
    check_gl_relations(sp, E)
    assert rtt_residual(evaluation_module(sp, E, check=False), yang_R(sp)) is None
    bad = dict(E)
    bad[(1, 1)] = E[(1, 1)] * 2
    with pytest.raises(RelationViolation):
        check_gl_relations(sp, bad)


@pytest.mark.parametrize("mn", [(1, 1), (2, 1), (1, 2)])
def test_chain_matches_dense_oracle(mn):
    sp = sp_of(mn)
    c = (0, 1)
    rep = tensor_action_R(sp, c)
    dense = r_product_dense(sp, 2, list(enumerate(c, 1)))
    assert all(rep.t[k] == dense[k] for k in dense)
    repp = tensor_action_Rprime(sp, c)
    densep = r_product_dense(sp, 2, [(2, c[1]), (1, c[0])], prime=True)
    assert all(repp.t[k] == densep[k] for k in densep)


@pytest.mark.parametrize("mn", [(1, 1), (2, 1)])
def test_chain_equals_coproduct(mn):
    sp = sp_of(mn)
    c = (0, 1, -1)
    rep = tensor_action_R(sp, c)
    cop = coproduct_power(vector_rep_A(sp), [-x for x in c])
    assert all(rep.t[k] == cop.t[k] for k in rep.t)


@pytest.mark.parametrize("mn", GL)
def test_twist_of_R_action_is_Rprime_action(mn):
    sp = sp_of(mn)
    c = (0, 1)
    tw = supertranspose_twist(tensor_action_R(sp, c))
    rp = tensor_action_Rprime(sp, c)
    assert all(tw.t[k] == rp.t[k] for k in rp.t)


@pytest.mark.parametrize("mn", [(1, 1), (2, 1), (1, 2)])
def test_tensor_actions_rtt_d3(mn):
    sp = sp_of(mn)
    R = yang_R(sp)
    assert rtt_residual(tensor_action_R(sp, (0, 1, -1)), R) is None
    assert rtt_residual(tensor_action_Rprime(sp, (0, 1, -1)), R) is None


@pytest.mark.parametrize("U_", [U_ for lam in [(3,), (2, 1), (1, 1, 1)]
                                for U_ in standard_tableaux(lam)], ids=str)
def test_fusion_intertwining(U_):
    """E_U T(u) = E_U (1 - sum P_0a / u) and the primed analogue."""
    sp = SuperSpace.gl(1, 1)
    E = act_on_tensor(murphy_idempotent(U_), sp)
    c = U_.contents()
    assert check_intertwining(tensor_action_R(sp, c), E, fusion_rhs(sp, 3)) is None
    assert check_intertwining(tensor_action_Rprime(sp, c), E, fusion_rhs_prime(sp, 3)) is None


def test_fusion_intertwining_fails_for_wrong_contents():
    sp = SuperSpace.gl(1, 1)
    U_ = Tableau.parse("1,2;3")
    E = act_on_tensor(murphy_idempotent(U_), sp)
    assert check_intertwining(tensor_action_R(sp, (0, 0, 0)), E, fusion_rhs(sp, 3)) is not None


def test_theorem_weights_oracle():
    """L_U for U = 1,3;2 on C^{1|1}: pi_flat = (1 - 1/u, 1 + 2/u), pi_sharp = (1 + 2/u, 1 - 1/u)."""
    sp = SuperSpace.gl(1, 1)
    U_ = Tableau.parse("1,3;2")
    flat = (RatFun(u - 1, u), RatFun(u + 2, u))
    sharp = (RatFun(u + 2, u), RatFun(u - 1, u))
    assert pi_flat((2, 1), 1, 1) == flat and pi_sharp((2, 1), 1, 1) == sharp
    assert highest_weight(polynomial_module(sp, U_, "R").rep).weights == flat
    assert highest_weight(polynomial_module(sp, U_, "Rprime").rep).weights == sharp


@pytest.mark.parametrize("mn", [(2, 1), (1, 2)])
def test_theorem_weights_d3(mn):
    sp = sp_of(mn)
    for lam in [(3,), (2, 1), (1, 1, 1)]:
        for U_ in standard_tableaux(lam):
            assert highest_weight(polynomial_module(sp, U_, "R").rep).weights == pi_flat(lam, *mn)
            assert highest_weight(polynomial_module(sp, U_, "Rprime").rep).weights == \
                pi_sharp(lam, *mn)


def test_not_in_hook():
    with pytest.raises(NotInHook, match="lambda_2 = 2 > n = 1"):
        polynomial_module(SuperSpace.gl(1, 1), Tableau.parse("1,2;3,4"))
    with pytest.raises(NotInHook):
        pi_flat((2, 2), 1, 1)


def test_non_cyclic():
    sp = SuperSpace.gl(1, 1)
    with pytest.raises(NonCyclic):
        highest_weight(evaluation_module(sp, gl_action_tensor(sp, 2)))


@pytest.mark.parametrize("mn", [(1, 1), (2, 1), (1, 2)])
@pytest.mark.parametrize("d", [1, 2, 3])
def test_symmetrizer_antisymmetrizer_weights(mn, d):
    sp = sp_of(mn)
    assert highest_weight(symmetrizer_module(sp, d)).weights == symmetrizer_weight(sp, d)
    assert highest_weight(antisymmetrizer_module(sp, d)).weights == antisymmetrizer_weight(sp, d)


def test_antisymmetrizer_weight_beyond_m_oracle():
    # d = 3 > m = 1 on C^{1|1}: (1 + 1/u, 1 + (1 - 3)/u)
    sp = SuperSpace.gl(1, 1)
    assert antisymmetrizer_weight(sp, 3) == (RatFun(u + 1, u), RatFun(u - 2, u))


@pytest.mark.parametrize("mnd", [(2, 1, 2), (3, 1, 3), (4, 1, 4)])
def test_xi(mnd):
    m, n, d = mnd
    sp = SuperSpace.gl(m, n)
    assert xi_check(sp, d) == xi_weight(sp, d)
    assert xi_weight(sp, d)[0] == RatFun(u + 1, u)
