from fractions import Fraction
from math import factorial

import pytest
from hypothesis import given
from hypothesis import strategies as st

from superyang.errors import ResourceBound
from superyang.super_space import SuperSpace
from superyang.sym_group import (
    GroupAlgElem, Tableau, act_on_tensor, antisymmetrizer, conjugate, fusion_idempotent,
    hook_data, hook_length_product, jucys_murphy, murphy_idempotent, num_standard_tableaux,
    parse_partition, partitions, standard_tableaux, symmetrizer, transposition,
)

ALL_TABLEAUX = [U for d in range(1, 5) for lam in partitions(d) for U in standard_tableaux(lam)]


def perm(s, c=1):
    return GroupAlgElem.perm(tuple(s), Fraction(c))


def test_partition_counts():
    assert [len(list(partitions(d))) for d in range(1, 7)] == [1, 2, 3, 5, 7, 11]
    assert conjugate((3, 1)) == (2, 1, 1)
    assert parse_partition("3,1,1") == (3, 1, 1)
    with pytest.raises(ValueError):
        parse_partition("1,2")


def test_hook_length_oracles():
    assert hook_length_product((3, 2)) == 24
    assert num_standard_tableaux((3, 2)) == 5
    assert num_standard_tableaux((2, 2)) == 2
    assert num_standard_tableaux((3, 1, 1)) == 6
    for d in range(1, 7):
        assert sum(num_standard_tableaux(l) ** 2 for l in partitions(d)) == factorial(d)
        for lam in partitions(d):
            assert len(standard_tableaux(lam)) == num_standard_tableaux(lam)


def test_tableau_parse():
    U = Tableau.parse("1,3;2")
    assert U.shape == (2, 1) and U.contents() == (0, -1, 1)
    with pytest.raises(ValueError):
        Tableau.parse("2,1;3")


def test_hook_data_oracle():
    h = hook_data((3, 2, 1), 1, 2)
    assert h.mu == (1,) and h.nu == (2, 1)
    assert hook_data((2, 2), 1, 1) is None


def test_murphy_two_boxes():
    assert murphy_idempotent(Tableau.parse("1,2")) == (perm((1, 2)) + perm((2, 1))) * Fraction(1, 2)
    assert murphy_idempotent(Tableau.parse("1;2")) == (perm((1, 2)) - perm((2, 1))) * Fraction(1, 2)


def test_murphy_hook_oracle():
    # by hand: (1 + (12))/2 * (x_3 - 2)/(-1 - 2), x_3 = (13) + (23)
    one = perm((1, 2, 3))
    x3 = GroupAlgElem.perm(transposition(1, 3, 3)) + GroupAlgElem.perm(transposition(2, 3, 3))
    expected = (one + perm((2, 1, 3))) * Fraction(1, 2) * (x3 - one * 2) * Fraction(-1, 3)
    assert murphy_idempotent(Tableau.parse("1,2;3")) == expected


def test_symmetrizers_are_row_and_column_idempotents():
    for d in range(1, 5):
        assert murphy_idempotent(Tableau([tuple(range(1, d + 1))])) == symmetrizer(d)
        assert murphy_idempotent(Tableau([(a,) for a in range(1, d + 1)])) == antisymmetrizer(d)


@pytest.mark.parametrize("U", ALL_TABLEAUX, ids=str)
def test_murphy_identity_coefficient(U):
    """The trace in the regular representation: coefficient of 1 is f_lambda / d!."""
    e = murphy_idempotent(U)
    d = U.size
    assert e.terms.get(tuple(range(1, d + 1)), 0) == Fraction(num_standard_tableaux(U.shape),
                                                              factorial(d))


@pytest.mark.parametrize("U", ALL_TABLEAUX, ids=str)
def test_jucys_murphy_eigenvalues(U):
    e = murphy_idempotent(U)
    for a in range(1, U.size + 1):
        assert jucys_murphy(a, U.size) * e == e * U.content(a)


@pytest.mark.parametrize("U", [U for U in ALL_TABLEAUX if U.size <= 3], ids=str)
def test_fusion_equals_murphy_small(U):
    assert fusion_idempotent(U) == murphy_idempotent(U)


def test_fusion_bound(monkeypatch):
    U = Tableau.parse("1,2,3;4,5")
    with pytest.raises(ResourceBound):
        fusion_idempotent(U)
    with pytest.raises(ResourceBound):
        fusion_idempotent(Tableau.parse("1,2;3"), bound=2)
    monkeypatch.setenv("SUPERYANG_FUSION_BOUND", "2")
    with pytest.raises(ResourceBound):
        fusion_idempotent(Tableau.parse("1,2;3"))


@given(st.permutations([1, 2, 3]), st.permutations([1, 2, 3]))
def test_tensor_action_is_homomorphism(s, t):
    sp = SuperSpace.gl(1, 1)
    x, y = perm(s), perm(t)
    assert act_on_tensor(x * y, sp) == act_on_tensor(x, sp) * act_on_tensor(y, sp)


def test_super_symmetric_powers():
    # Sym^d C^{1|1} has dimension 2 for d >= 1; Lambda^3 C^{2|0} = 0
    for d in range(1, 5):
        assert act_on_tensor(symmetrizer(d), SuperSpace.gl(1, 1)).rank() == 2
    assert act_on_tensor(antisymmetrizer(3), SuperSpace.gl(2, 0)).rank() == 0
    # super exterior square of C^{0|2} is the ordinary symmetric square
    assert act_on_tensor(antisymmetrizer(2), SuperSpace.gl(0, 2)).rank() == 3
