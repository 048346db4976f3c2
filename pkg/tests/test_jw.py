import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from symweb.jw import (
    LOOP,
    TLDiagram,
    TLElement,
    cap_kills,
    jw_matrix,
    jw_recursive,
    jw_tl,
    jw_word,
    random_tl,
    tl_compose,
    tl_e,
    tl_embed,
    tl_identity,
    verify,
)
from symweb.braid import trace_closure
from symweb.qpoly import parse_laurent, qfact, qint
from symweb.repbackend import IntertwinerMatrix, evaluate, tensor_action
from symweb.spider import Cap, Cup, Merge, Split, compose, gen, identity, tensor


def test_loop_value():
    assert LOOP == parse_laurent("-q - q^-1")


def test_tl_relations():
    e0, e1 = tl_e(3, 0), tl_e(3, 1)
    d, loops = tl_compose(e0, e0)
    assert d == e0 and loops == 1
    d, loops = tl_compose(e0, tl_compose(e1, e0)[0])
    assert d == e0 and loops == 0


def test_crossing_diagram_rejected():
    with pytest.raises(ValueError):
        TLDiagram.from_pairs(2, 2, [(("b", 0), ("t", 1)), (("b", 1), ("t", 0))])


def test_jw2_closed_form():
    # JW_2 = 1 + e/[2] with loop -[2]
    want = TLElement.build(2, 2, [(tl_identity(2), qint(2)), (tl_e(2, 0), 1)], qint(2))
    assert evaluate(tl_embed(jw_tl(2))) == evaluate(tl_embed(want))


@pytest.mark.parametrize("k", [1, 2, 3, 4, 5])
def test_projector_properties(k):
    assert verify(k) == {"idempotent": True, "cap-kill": True, "recursion": True}


def test_jw3_rank_and_closure():
    assert jw_matrix(3).trace() == 4
    assert trace_closure(jw_word(3)) == -qint(4)


def test_cap_kill_fails_for_identity():
    assert not evaluate(compose(tl_embed(tl_e(2, 0)), tl_embed(tl_e(2, 0)))) == evaluate(tl_embed(tl_e(2, 0)))
    assert cap_kills(3)


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**6), st.integers(0, 1), st.integers(0, 3), st.integers(0, 3), st.integers(0, 3))
def test_embedding_is_functorial(seed, parity, a, b, c):
    rng = random.Random(seed)
    a, b, c = 2 * a + parity, 2 * b + parity, 2 * c + parity
    d1, d2 = random_tl(rng, a, b), random_tl(rng, b, c)
    d, loops = tl_compose(d2, d1)
    lhs = evaluate(compose(tl_embed(d2), tl_embed(d1)))
    rhs = evaluate(tl_embed(d)).scale(LOOP ** loops)
    assert lhs == rhs


def test_jw_word_matches_recursion_as_webs():
    for k in range(2, 5):
        assert evaluate(jw_word(k)) == evaluate(jw_recursive(k))


def test_jw_absorbs_smaller():
    big = jw_matrix(3)
    small = jw_matrix(2).kron(IntertwinerMatrix.identity((1,)))
    assert big @ small == big


def test_jw3_quantum_trace():
    k_action = tensor_action((1, 1, 1))["K"]
    assert (k_action @ jw_matrix(3)).trace() == qint(4)


def test_jw2_is_id_plus_cup_cap_over_2():
    want = identity(1, 1) + compose(gen(Cup(1)), gen(Cap(1))).divide(qint(2))
    assert evaluate(jw_word(2)) == evaluate(want)


def _explode_right(k):
    if k == 1:
        return identity(1)
    return compose(tensor(identity(1), _explode_right(k - 1)), gen(Split(1, k - 1)))


def _assemble_right(k):
    if k == 1:
        return identity(1)
    return compose(gen(Merge(1, k - 1)), tensor(identity(1), _assemble_right(k - 1)))


@pytest.mark.parametrize("k", [2, 3, 4, 5])
def test_jw_independent_of_cascade_shape(k):
    other = compose(_explode_right(k), _assemble_right(k)).divide(qfact(k))
    assert evaluate(other) == jw_matrix(k)


def test_tl_embedding_basics():
    e = evaluate(tl_embed(tl_e(2, 0)))
    assert e @ e == e.scale(LOOP)
    assert tl_embed(tl_identity(3)) == identity(1, 1, 1)
