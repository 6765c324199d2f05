import json

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from mggs import oracle
from mggs.errors import DepthError, DimensionError, PreconditionError, RankError, ResourceError, UnsupportedGroupError
from mggs.groups import (
    CONSTANT,
    REGULAR,
    SYMMETRIC,
    a_portrait,
    construct,
    from_dict,
    full_space,
    gupta_sidki,
    kappa_a_portrait,
    load,
)
from mggs.quotient import enumerate_portraits, enumerate_quotient, layered, member_at_depth
from mggs.stabilizer import (
    b_coordinates,
    coordinate_word,
    forced_a_coords,
    generator_words,
    order_p_conjugator,
    regularisation_gens,
)
from mggs.words import A, B, C, Word, abelianize, evaluate, random_word, sections_of_word

GS3 = gupta_sidki(3)
SYM5 = construct(5, [[1, 2, 2, 1]])


# construction ---------------------------------------------------------------------


def test_classification():
    assert SYM5.classification == SYMMETRIC
    assert construct(5, [[1, 2, 3, 4]]).classification == REGULAR
    assert construct(3, [[1, 1]]).classification == CONSTANT
    assert construct(5, [[3, 3, 3, 3]]).classification == CONSTANT
    assert full_space(3).classification == REGULAR
    assert construct(5, [[1, 2, 2, 1], [0, 1, 1, 0]]).classification == REGULAR


def test_construct_errors():
    with pytest.raises(RankError):
        construct(5, [[1, 2, 3, 4], [2, 4, 1, 3]])
    with pytest.raises(RankError):
        construct(5, [[0, 0, 0, 0]])
    with pytest.raises(DimensionError):
        construct(5, [[1, 2, 3]])
    with pytest.raises(ValueError):
        construct(4, [[1, 2, 3]])


def test_constant_excluded_from_regularisation():
    with pytest.raises(UnsupportedGroupError):
        regularisation_gens(construct(3, [[1, 1]]))


def test_group_json(tmp_path):
    path = tmp_path / "g.json"
    path.write_text(json.dumps(SYM5.to_dict()))
    assert load(path) == SYM5
    assert from_dict({"p": 3, "rows": [[1, 2]]}) == GS3


# quotients ---------------------------------------------------------------------------


def test_quotient_orders():
    a_only = [Word(3, [A(1)])]
    for d in (1, 2, 3):
        assert enumerate_quotient(GS3, a_only, d).order == 3
    assert enumerate_quotient(GS3, generator_words(GS3), 1).order == 3
    # frozen from the BFS oracle
    assert enumerate_quotient(GS3, generator_words(GS3), 2).order == 27
    assert enumerate_quotient(GS3, generator_words(GS3), 3).order == 2187


def test_layered_agrees_with_bfs():
    for G, d in ((GS3, 3), (SYM5, 2), (construct(3, [[1, 0]]), 3)):
        Q = enumerate_quotient(G, generator_words(G), d)
        L = layered(G, generator_words(G), d)
        assert L.order == Q.order
        rng = np.random.default_rng(0)
        for g in Q.elements[:: max(1, Q.order // 200)]:
            assert g in L
        for _ in range(50):
            n = len(g.t)
            h = type(g)(G.p, d, np.ones(n, dtype=np.int64), rng.integers(0, G.p, n))
            assert (h in L) == (h in Q)


def test_layer_dimensions_frozen():
    assert layered(GS3, generator_words(GS3), 4).layer_dims() == [1, 2, 4, 12]
    assert layered(SYM5, generator_words(SYM5), 3).layer_dims() == [1, 5, 19]
    assert layered(SYM5, regularisation_gens(SYM5), 3).layer_dims() == [1, 5, 20]


def test_quotient_deterministic_and_words():
    Q1 = enumerate_quotient(GS3, generator_words(GS3), 2)
    Q2 = enumerate_quotient(GS3, generator_words(GS3), 2)
    assert Q1.to_json_list() == Q2.to_json_list()
    for g in Q1:
        assert evaluate(Q1.word_of(g), GS3, 2) == g


def test_member_at_depth():
    Q = enumerate_quotient(GS3, generator_words(GS3), 2)
    assert member_at_depth(Q.elements[0].__class__.identity(3, 2), Q)
    rng = np.random.default_rng(1)
    assert member_at_depth(evaluate(random_word(GS3, 9, rng), GS3, 3), Q)
    # frozen: kappa_1(a) lies in G mod Stab(2) but not mod Stab(3)
    assert member_at_depth(kappa_a_portrait(1, 1, 3, 2), Q)
    assert kappa_a_portrait(1, 1, 3, 3) not in layered(GS3, generator_words(GS3), 3)
    with pytest.raises(DepthError):
        member_at_depth(a_portrait(1, 3, 1), Q)


def test_resource_caps():
    with pytest.raises(ResourceError):
        enumerate_quotient(GS3, generator_words(GS3), 3, cap=100)
    with pytest.raises(ResourceError):
        enumerate_quotient(GS3, generator_words(GS3), 9)


# regularisation --------------------------------------------------------------------------


def test_regularisation_gens():
    reg = construct(5, [[1, 2, 3, 4]])
    assert regularisation_gens(reg) == generator_words(reg)
    assert Word(5, [C(1)]) in regularisation_gens(SYM5)


def test_regularisation_index():
    # c is trivial mod Stab(2), so the index p only shows from depth 3
    assert oracle.regularisation_index(SYM5, 2) == 1
    assert oracle.regularisation_index(SYM5, 3) == 5
    assert oracle.regularisation_index(construct(5, [[1, 4, 4, 1]]), 3) == 5
    assert oracle.regularisation_index(GS3, 3) == 1


# coordinates -------------------------------------------------------------------------------


def test_b_coordinates_examples():
    co = b_coordinates(Word(5, [B((1,))]), SYM5)
    assert co.n == ((1,), (0,), (0,), (0,), (0,))
    assert co.s == (0, 1, 2, 2, 1)
    co = b_coordinates(Word(3), GS3)
    assert co.n == ((0,),) * 3 and co.s == (0, 0, 0)
    with pytest.raises(PreconditionError):
        b_coordinates(Word(3, [A(1)]), GS3)


def test_kappa1_b_coordinates():
    b, a = Word(3, [B((1,))]), Word(3, [A(1)])
    w = b * (a.inverse() ** 2 * b * a**2) * (a.inverse() * b * a)  # b . b^(a^2) . b^a
    co = b_coordinates(w, GS3)
    assert co.n == ((1,), (1,), (1,))
    assert co.s == (0, 0, 0)
    for sec in sections_of_word(w, GS3):
        assert abelianize(sec, GS3) == (0, (1,))


def test_forced_a_coords_examples():
    assert forced_a_coords(((0,),) * 3, GS3) == (0, 0, 0)
    assert forced_a_coords(((1,),) * 3, GS3) == (0, 0, 0)
    assert forced_a_coords(((1,), (0,), (0,), (0,), (0,)), SYM5) == (0, 1, 2, 2, 1)


@pytest.mark.parametrize("G", [GS3, SYM5, construct(5, [[1, 2, 3, 4], [0, 1, 0, 0]])])
@given(seed=st.integers(0, 2**32 - 1))
@settings(max_examples=40, deadline=None)
def test_coordinate_contract(G, seed):
    w = random_word(G, 9, np.random.default_rng(seed), stabilizer=True)
    co = b_coordinates(w, G)
    for k, sec in enumerate(sections_of_word(w, G)):
        assert abelianize(sec, G) == (co.s[k], co.n[k])
        assert abelianize(co.L[k], G) == (0, (0,) * G.r)


def test_coordinate_word_has_requested_coordinates():
    n = ((1,), (2,), (0,), (4,), (3,))
    co = b_coordinates(coordinate_word(n, SYM5), SYM5)
    assert co.n == n
    assert abelianize(coordinate_word(n, SYM5), SYM5) == (0, (0,))


# order-p conjugators ----------------------------------------------------------------------------


def test_conjugator_identity():
    h = order_p_conjugator(Word(3), GS3, 3)
    assert h.portrait(GS3, 3).is_identity()


def test_conjugator_gs3_commutator():
    a = Word(3, [A(1)])
    x = Word(3, [B((1,)), A(1), B((2,))])
    g = a.inverse() * x.inverse() * a * x
    h = order_p_conjugator(g, GS3, 4).portrait(GS3, 4)
    ap = a_portrait(1, 3, 4)
    assert ap.conj(h) == ap * evaluate(g, GS3, 4)
    assert h.truncate(3) in layered(GS3, regularisation_gens(GS3), 3)


def test_conjugator_precondition():
    with pytest.raises(PreconditionError):
        order_p_conjugator(Word(3, [B((1,))]), GS3, 3)


@pytest.mark.parametrize("G", [GS3, SYM5, construct(5, [[1, 2, 3, 4], [0, 1, 0, 0]])])
def test_conjugators_sampled(G):
    assert oracle.check_order_p_prop(G, trials=25, depth=3, seed=7, counterexample=False).passed


# structural spot checks -------------------------------------------------------------------------


def test_abelianization_rank(group):
    assert oracle.abelianization_rank(group, 2) == group.r + 1


def test_symmetric_obstruction():
    assert oracle.symmetric_obstruction(SYM5, 3)["outside"] == ["b[1]"]
    assert oracle.symmetric_obstruction(GS3, 3)["outside"] == []


def test_directed_elements():
    for G in (GS3, SYM5):
        assert oracle.check_directed_elements(G, 3).passed
