import json

import pytest

from mggs import fpalg
from mggs.autgrp import (
    FLAG_EXTRA_DIAGONALS,
    FLAG_TRIVIAL_MINUS_ONE,
    AutReport,
    aut_structure,
    compute_U,
    compute_V,
    compute_W,
    diagonal_normalizers,
    normalizer_conjugation_check,
    normalizer_sequence,
    raw_sequence,
    valid_diagonal_pairs,
)
from mggs.catalog import catalog, compare, example2, example3
from mggs.errors import DomainError, UnsupportedGroupError
from mggs.groups import construct, full_space, gupta_sidki

EX1 = construct(5, [[1, 2, 2, 1]])
EX2 = example2(5)
EX3 = example3()


def test_compute_U():
    assert compute_U(EX1) == {1, 4}
    assert compute_U(EX2) == {1, 2, 3, 4}
    assert compute_U(gupta_sidki(5)) == {1}
    with pytest.raises(UnsupportedGroupError):
        compute_U(construct(3, [[1, 1]]))


def test_symmetric_groups_contain_minus_one():
    for row in ([1, 2, 2, 1], [1, 4, 4, 1], [0, 1, 1, 0], [2, 0, 0, 2]):
        assert 4 in compute_U(construct(5, [row]))


def test_compute_V_and_scalars():
    V, scalars = compute_V(EX3)
    assert V == {1, 5, 12, 8}
    assert scalars[1] == 1 and scalars[5] == 12
    V, scalars = compute_V(EX2)
    assert V == {1, 2, 3, 4}
    # with (v P_u)_i = v_(u i) the vector (1,...,p-1) is scaled by u itself
    assert scalars == {u: u for u in range(1, 5)}


def test_compute_W():
    assert compute_W(compute_V(EX3)[1], 13) == {1, 12}
    assert compute_W(compute_V(full_space(5))[1], 5) == {1}
    assert compute_W(compute_V(EX2)[1], 5) == {1, 2, 3, 4}


def test_rank_one_U_equals_V():
    for G in (EX1, EX2, gupta_sidki(3), gupta_sidki(7), construct(7, [[1, 3, 0, 0, 3, 1]]), construct(5, [[1, 4, 4, 1]])):
        assert compute_U(G) == compute_V(G)[0]


def test_scalar_map_multiplicative():
    for G in (EX2, EX3, example2(7), gupta_sidki(3)):
        V, sc = compute_V(G)
        for x in V:
            for y in V:
                assert sc[x * y % G.p] == sc[x] * sc[y] % G.p


def test_report_invariants():
    for exp in catalog():
        r = aut_structure(exp.group)
        assert r.V <= r.U
        assert r.scalars[1] == 1
        assert r.W == fpalg.unit_subgroup_generated(r.scalars.values(), exp.group.p)


def test_catalog_matches():
    for exp in catalog():
        assert compare(exp, aut_structure(exp.group)) == []


def test_example1_flags():
    r = aut_structure(EX1)
    assert r.W == {1}
    assert FLAG_TRIVIAL_MINUS_ONE in r.flags
    assert r.out_finite and r.coprime_autos
    assert r.structure == "(G ⋊ C_5) ⋊ C_2"


def test_structure_strings():
    assert aut_structure(gupta_sidki(3)).structure == "(G ⋊ ∏_ω C_3) ⋊ C_2²"
    assert aut_structure(gupta_sidki(5)).structure == "G ⋊ ∏_ω C_5"
    assert not aut_structure(gupta_sidki(5)).coprime_autos
    assert aut_structure(EX3).structure == "(G ⋊ ∏_ω C_13) ⋊ (C_12 × C_2)"


def test_report_json_roundtrip():
    for G in (EX1, EX3):
        r = aut_structure(G)
        d = json.loads(r.to_json())
        assert AutReport.from_dict(d) == r
        for key in ("classification", "U", "V", "W", "scalars", "structure", "out_finite", "coprime_autos"):
            assert key in d


def test_normalizer_sequence_examples():
    seq = normalizer_sequence(EX1, 1, 1)
    assert seq.is_constant() and seq.terms(5) == (1,) * 5
    seq = normalizer_sequence(EX1, 4, 1)
    assert seq.terms(6) == (4,) * 6
    seq = normalizer_sequence(EX3, 3, 12)
    # frozen from the stepwise solver
    assert seq.terms(6) == (3, 10, 10, 10, 10, 10)
    assert (seq.preperiod, seq.period) == (1, 1)
    assert (2 * fpalg.multiplicative_order(12, 13)) % seq.period == 0


def test_normalizer_sequence_periodic_in_example2():
    seq = normalizer_sequence(EX2, 2, 2)
    assert seq.terms(6) == (2, 4, 3, 1, 2, 4)
    assert seq.period == 4


def test_normalizer_sequence_domain_errors():
    with pytest.raises(DomainError):
        normalizer_sequence(gupta_sidki(5), 2, 1)
    with pytest.raises(DomainError):
        normalizer_sequence(EX1, 1, 4)


def test_trivial_W_gives_constant_sequences():
    for G in (EX1, full_space(5), gupta_sidki(5)):
        for _, _, seq in diagonal_normalizers(G):
            assert seq.is_constant()


def test_conjugation_check_examples():
    assert normalizer_conjugation_check(raw_sequence(5, [1]), EX1, 3).passed
    assert normalizer_conjugation_check(normalizer_sequence(EX1, 4, 1), EX1, 3).passed
    bad = normalizer_conjugation_check(raw_sequence(5, [2]), EX1, 3)
    assert not bad.passed and "s_1" in bad.witness


def test_parameter_count_and_distinct_portraits():
    for exp in catalog():
        G = exp.group
        U = compute_U(G)
        W = compute_W(compute_V(G, U)[1], G.p)
        pairs = diagonal_normalizers(G)
        assert len(pairs) == len(U) * len(W)
        assert len({seq.portrait(2).key() for _, _, seq in pairs}) == len(pairs)


def test_brute_force_diagonal_count():
    # every (d0, d1) whose recurrence closes, not only d1 in d0*W
    assert valid_diagonal_pairs(EX1) == [(1, 1), (1, 4), (4, 1), (4, 4)]
    assert len(valid_diagonal_pairs(EX3)) == 48
    assert len(valid_diagonal_pairs(EX2)) == 16
    assert FLAG_EXTRA_DIAGONALS in aut_structure(EX3).flags
    assert FLAG_EXTRA_DIAGONALS not in aut_structure(EX2).flags


def test_extra_diagonal_pairs_still_normalize():
    from mggs.autgrp import _solve_sequence

    for G, depth in ((EX1, 4), (EX3, 3)):
        scalars = compute_V(G)[1]
        for d0, d1 in valid_diagonal_pairs(G):
            seq = _solve_sequence(G, scalars, d0, d1)
            assert normalizer_conjugation_check(seq, G, depth).passed
