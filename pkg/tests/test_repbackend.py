import json
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from symweb.qpoly import ONE, LaurentHalf, parse_laurent, qbinom, qint
from symweb.relations import random_closed_web
from symweb.repbackend import (
    IntertwinerMatrix,
    basis,
    equal,
    eval_closed,
    evaluate,
    gen_matrix,
    is_intertwiner,
    thick_cap_by_cascade,
    thick_cup_by_cascade,
    word_matrix,
)
from symweb.spider import Cap, Cup, Merge, Split, assemble, circle, compose, explode, gen, identity

GENERATORS = (
    [Cap(k) for k in range(1, 4)]
    + [Cup(k) for k in range(1, 4)]
    + [Merge(k, l) for k in range(1, 4) for l in range(1, 4)]
    + [Split(k, l) for k in range(1, 4) for l in range(1, 4)]
)


def test_basis_is_lexicographic():
    assert basis((1, 2)) == [(0, 0), (0, 1), (0, 2), (1, 0), (1, 1), (1, 2)]
    assert basis(()) == [()]


@pytest.mark.parametrize("g", GENERATORS, ids=str)
def test_generators_are_intertwiners(g):
    assert is_intertwiner(gen_matrix(g))


def test_non_intertwiner_is_detected():
    m = IntertwinerMatrix((1,), (1,), {((0,), (0,)): ONE})
    assert not is_intertwiner(m)


def test_cap2_entries():
    m = gen_matrix(Cap(2))
    assert m[((), (0, 2))] == parse_laurent("q^3 + q")
    assert m[((), (1, 1))] == parse_laurent("-1")
    assert m[((), (2, 0))] == qint(2)


def test_merge_split_digon():
    for k in range(1, 4):
        for l in range(1, 4):
            d = gen_matrix(Merge(k, l)) @ gen_matrix(Split(k, l))
            assert d == IntertwinerMatrix.identity((k + l,)).scale(qbinom(k + l, l))


def test_thick_cup_needs_denominator():
    m = gen_matrix(Cup(2))
    assert not m.is_integral()
    assert m.denominator() == qint(2)


def test_circle_values():
    for k in range(1, 7):
        assert eval_closed(circle(k)) == (-1) ** k * qint(k + 1)


def _dense_word(word):
    # reference: full Kronecker products slice by slice
    m = IntertwinerMatrix.identity(word.domain)
    for s in word.slices:
        full = IntertwinerMatrix.identity(s.left).kron(gen_matrix(s.generator)).kron(
            IntertwinerMatrix.identity(s.right))
        m = full @ m
    return m


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10_000))
def test_sparse_matches_kronecker(seed):
    u = random_closed_web(random.Random(seed), max_slices=8, max_thickness=2)
    (w, _), *_ = u.terms
    assert word_matrix(w) == _dense_word(w)


@pytest.mark.parametrize("k", [2, 3, 4])
def test_sparse_matches_kronecker_open(k):
    for u in (explode(k), assemble(k), compose(explode(k), assemble(k))):
        (w, _), = u.terms
        assert word_matrix(w) == _dense_word(w)


def test_equal_handles_zero():
    z = compose(gen(Cap(1)), gen(Cup(2)))
    assert equal(z, z)
    lollipop = compose(gen(Cap(1)), gen(Split(1, 1)))
    assert equal(lollipop, z.__class__.zero(lollipop.domain, lollipop.codomain))


def test_matrix_equality_cross_multiplies():
    a = IntertwinerMatrix.identity((1,)).scale(qint(2)).divide_by([qint(2)])
    assert a == IntertwinerMatrix.identity((1,))


def test_json_dump():
    m = evaluate(compose(gen(Merge(1, 1)), gen(Split(1, 1))))
    data = json.loads(json.dumps(m.to_json()))
    assert data["schema"] == 1
    assert data["domain"] == [2] and data["codomain"] == [2]
    assert data["cols"] == [[0], [1], [2]]
    diag = {tuple(r): LaurentHalf.from_json(v) for r, c, v in data["entries"] if r == c}
    assert diag[(1,)] == qint(2)


def test_identity_evaluates_to_identity():
    assert evaluate(identity(2, 1)) == IntertwinerMatrix.identity((2, 1))


@pytest.mark.parametrize("k", [2, 3, 4, 5])
def test_thick_caps_match_their_definition(k):
    assert gen_matrix(Cap(k)) == thick_cap_by_cascade(k)
    assert gen_matrix(Cup(k)) == thick_cup_by_cascade(k)

