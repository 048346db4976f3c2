import pytest

from symweb.spider import (
    Cap,
    Cup,
    Merge,
    Split,
    WebMorphism,
    WebObject,
    WebWord,
    assemble,
    at,
    circle,
    compose,
    explode,
    gen,
    identity,
    ladders,
    nested_caps,
    nested_cups,
    slice_at,
    tensor,
)


def test_generator_boundaries():
    assert gen(Merge(2, 3)).domain.labels == (2, 3)
    assert gen(Merge(2, 3)).codomain.labels == (5,)
    assert gen(Split(1, 4)).domain.labels == (5,)
    assert gen(Cap(2)).codomain.labels == ()
    assert gen(Cup(2)).codomain.labels == (2, 2)


def test_bad_labels_rejected():
    with pytest.raises(ValueError):
        WebObject((1, 0))
    with pytest.raises(ValueError):
        Merge(0, 1)
    with pytest.raises(ValueError):
        slice_at(Cap(1), (1, 2), 0)


def test_mismatched_composition_is_zero():
    u = compose(gen(Cap(1)), gen(Cup(2)))
    assert u.is_zero()
    assert u.domain.labels == () and u.codomain.labels == ()


def test_composition_is_associative_on_words():
    a, b, c = gen(Split(1, 1)), gen(Merge(1, 1)), gen(Split(1, 1))
    assert compose(compose(a, b), c) == compose(a, compose(b, c))


def test_tensor_pads_slices():
    u = tensor(gen(Cap(1)), identity(2))
    (w, c), = u.terms
    assert w.slices[0].right == (2,)
    assert u.codomain.labels == (2,)


def test_circle_is_closed():
    assert circle(3).is_closed()
    assert not gen(Cap(1)).is_closed()


def test_linear_combinations_merge_terms():
    u = identity(1, 1)
    v = u + u
    assert len(v) == 1 and v.terms[0][1] == 2
    assert (v - v).is_zero()


def test_formal_denominator():
    u = identity(1).divide(3)
    assert u.denom == 3
    assert (u + u).denom == 3


def test_explode_and_assemble_boundaries():
    assert explode(3).codomain.labels == (1, 1, 1)
    assert assemble(3).domain.labels == (1, 1, 1)
    assert nested_caps((1, 2)).domain.labels == (1, 2, 2, 1)
    assert nested_cups((1, 2)).codomain.labels == (1, 2, 2, 1)


def test_ladders_erase_zero_labels():
    u = ladders((2, 0), [("F", 1, 2)])
    assert u.domain.labels == (2,) and u.codomain.labels == (2,)
    assert len(u.terms[0][0]) == 0


def test_ladder_negative_weight_is_zero():
    assert ladders((1, 1), [("F", 1, 2)]).is_zero()
    assert ladders((1, 1), [("F", 1, 2), ("E", 1, 2)]).is_zero()


def test_word_dsl_text():
    w = WebWord((1, 1), (slice_at(Merge(1, 1), (1, 1), 0), slice_at(Split(1, 1), (2,), 0)))
    assert w.dsl() == "s(1,1) ; m(1,1)"
    assert at(Cap(1), (2, 1, 1), 1).terms[0][0].dsl() == "id(2) x cap(1)"
    assert WebWord(()).dsl() == "id()"


def test_identity_of_zero_object_is_zero():
    assert WebMorphism.identity(WebObject.zero_object()).is_zero()


def test_assemble_after_explode_is_factorial():
    from symweb.qpoly import qfact
    from symweb.repbackend import IntertwinerMatrix, evaluate
    for k in range(1, 6):
        m = evaluate(compose(assemble(k), explode(k)))
        assert m == IntertwinerMatrix.identity((k,)).scale(qfact(k))


def test_ladders_give_generators():
    from symweb.spider import e_ladder, f_ladder
    assert f_ladder(2, 1, 2, (3, 0)) == gen(Split(1, 2))
    assert e_ladder(2, 1, 2, (1, 2)) == gen(Merge(1, 2))
    assert f_ladder(2, 1, 0, (1, 1)) == identity(1, 1)
    assert f_ladder(2, 1, 2, (1, 0)).is_zero()
    assert e_ladder(2, 1, 2, (0, 1)).is_zero()


def test_tensor_with_zero_and_empty():
    z = compose(gen(Cap(1)), gen(Cup(2)))
    assert tensor(identity(1), z).is_zero()
    assert tensor(identity(), gen(Cap(1))) == gen(Cap(1))


def test_addition_of_mismatched_boundaries_rejected():
    with pytest.raises(ValueError):
        identity(1) + identity(2)


def test_bilinearity():
    from symweb.qpoly import qint
    from symweb.repbackend import evaluate
    a, b = gen(Split(1, 1)), gen(Split(1, 1)).scale(qint(3))
    c = gen(Merge(1, 1))
    assert compose(a + b, c) == compose(a, c) + compose(b, c)
    assert evaluate(tensor(a + b, c)) == evaluate(tensor(a, c) + tensor(b, c))


def test_word_boundaries_recomputed():
    u = compose(explode(3), assemble(3))
    for w, _ in u.terms:
        cur = w.domain
        for s in w.slices:
            assert s.domain == cur
            cur = s.codomain
        assert cur == w.codomain
