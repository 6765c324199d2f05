import itertools

import pytest
from hypothesis import given, strategies as st

from mggs import fpalg
from mggs.catalog import EX3_B1
from mggs.errors import DimensionError


def test_perm_apply_example3_vector():
    assert fpalg.perm_apply(EX3_B1, 5, 13) == (12, 11, 2, 10, 1, 3, 3, 1, 10, 2, 11, 12)
    assert fpalg.perm_apply(EX3_B1, 5, 13) == fpalg.scale(-1, EX3_B1, 13)


def test_perm_apply_identity_and_symmetric():
    assert fpalg.perm_apply((3, 1, 4, 1), 1, 5) == (3, 1, 4, 1)
    assert fpalg.perm_apply((1, 2, 2, 1), 4, 5) == (1, 2, 2, 1)


def test_perm_apply_length_mismatch():
    with pytest.raises(DimensionError):
        fpalg.perm_apply((1, 2, 3), 2, 5)


@pytest.mark.parametrize("p", [3, 5])
def test_perm_apply_composes_exhaustively(p):
    for v in itertools.product(range(p), repeat=p - 1):
        for u1 in range(1, p):
            for u2 in range(1, p):
                lhs = fpalg.perm_apply(fpalg.perm_apply(v, u1, p), u2, p)
                assert lhs == fpalg.perm_apply(v, u1 * u2 % p, p)


@pytest.mark.parametrize("p", [7, 11, 13])
def test_perm_apply_composes_on_distinct_entries(p):
    # a vector with distinct entries determines the index map, so this covers every v
    v = tuple(range(1, p))
    for u1 in range(1, p):
        for u2 in range(1, p):
            lhs = fpalg.perm_apply(fpalg.perm_apply(v, u1, p), u2, p)
            assert lhs == fpalg.perm_apply(v, u1 * u2 % p, p)


@given(st.sampled_from([11, 13]), st.data())
def test_perm_apply_is_a_permutation(p, data):
    u = data.draw(st.integers(1, p - 1))
    v = tuple(range(1, p))
    assert sorted(fpalg.perm_apply(v, u, p)) == list(v)


def test_row_space_equal():
    A = ((1, 2, 2, 1),)
    assert fpalg.row_space_equal(A, A, 5)
    assert fpalg.row_space_equal(A, ((2, 4, 4, 2),), 5)
    assert not fpalg.row_space_equal(A, ((2, 1, 1, 2),), 5)
    with pytest.raises(DimensionError):
        fpalg.row_space_equal(A, ((1, 2, 3),), 5)


@given(st.lists(st.lists(st.integers(0, 6), min_size=5, max_size=5), min_size=1, max_size=4))
def test_rref_idempotent(rows):
    R, piv = fpalg.rref(rows, 7)
    assert fpalg.rref(R, 7) == (R, piv)
    assert len(R) == fpalg.rank(rows, 7)


def test_scalar_action_example3():
    from mggs.catalog import example3

    E = example3().E
    assert fpalg.scalar_action(E, 5, 13) == 12
    assert fpalg.scalar_action(E, 1, 13) == 1
    assert fpalg.scalar_action(E, 3, 13) is None


def test_scalar_action_implies_stabilizer():
    from mggs.catalog import example3

    E = example3().E
    for u in range(1, 13):
        if fpalg.scalar_action(E, u, 13) is not None:
            assert fpalg.row_space_equal(fpalg.perm_mat(E, u, 13), E, 13)


def test_unit_subgroup_generated():
    assert fpalg.unit_subgroup_generated({12}, 13) == {1, 12}
    assert fpalg.unit_subgroup_generated(set(), 5) == {1}
    assert fpalg.unit_subgroup_generated({3}, 7) == {1, 3, 2, 6, 4, 5}


def test_solve_row_space():
    E = ((1, 0, 2, 1), (0, 1, 1, 3))
    m = fpalg.solve_row_space((2, 3, 2, 1), E, 5)
    assert m == (2, 3)
    assert fpalg.solve_row_space((1, 1, 1, 1), E, 5) is None


def test_check_prime():
    for bad in (2, 4, 9, 1 << 16):
        with pytest.raises(ValueError):
            fpalg.check_prime(bad)
