import random
from dataclasses import replace

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from symweb.jw import jw_word
from symweb.qpoly import qint
from symweb.relations import (
    check_relation,
    measure,
    random_closed_web,
    relation_catalogue,
    rule,
    scalar_of,
    simplify,
    sweep,
    threads,
)
from symweb.repbackend import eval_closed, evaluate
from symweb.spider import Cap, Cup, Split, at, circle, compose, gen, identity, tensor

FAMILIES = {
    "frobenius_merge", "frobenius_split", "digon_removal", "square_removal_F", "square_removal_E",
    "square_switch", "ef_fe", "circle_removal", "circle_k", "dumbbell", "lollipop", "snake_left",
    "snake_right", "vertex_slide_cap_a", "vertex_slide_cap_b", "vertex_slide_cup_a",
    "vertex_slide_cup_b", "commutation_FF", "commutation_FE", "serre_F", "serre_E",
    "divided_power", "ef_relation",
}


def test_catalogue_covers_every_family():
    assert {r.name for r in relation_catalogue()} == FAMILIES
    for r in relation_catalogue():
        assert list(r.instances(6)), r.name


@pytest.mark.parametrize("r", relation_catalogue(), ids=lambda r: r.name)
def test_rule_holds(r):
    bad = [rep.line() for rep in sweep(5, [r]) if not rep.ok]
    assert not bad


def test_square_switch_full_grid():
    reports = sweep(8, [rule("square_switch")])
    params = {(p.params["k"], p.params["l"], p.params["j1"], p.params["j2"]) for p in reports}
    want = {(k, l, a, b) for k in range(1, 5) for l in range(1, 5) for a in (1, 2) for b in (1, 2)
            if a <= k and b <= l}
    assert want <= params
    assert all(p.ok for p in reports)


def test_wrong_rule_is_detected():
    digon = rule("digon_removal")
    broken = replace(digon, rhs=lambda k, l: digon.rhs(k, l).scale(qint(2)))
    assert not check_relation(broken, {"k": 1, "l": 1}).ok


def test_out_of_range_parameters_rejected():
    with pytest.raises(ValueError):
        check_relation(rule("digon_removal"), {"k": 0, "l": 1})


def test_report_line_format():
    rep = check_relation(rule("digon_removal"), {"k": 2, "l": 1})
    assert rep.line() == "digon_removal k=2 l=1 : OK"
    assert rep.to_json()["ok"] is True


def test_threads_env(monkeypatch):
    monkeypatch.setenv("SYMWEB_THREADS", "3")
    assert threads() == 3
    monkeypatch.setenv("SYMWEB_THREADS", "nope")
    assert threads() == 1
    monkeypatch.setenv("SYMWEB_THREADS", "2")
    assert all(r.ok for r in sweep(3, [rule("frobenius_merge")]))


def test_simplify_circle_to_scalar():
    res = simplify(circle(2))
    assert res.complete
    assert scalar_of(res.morphism) == qint(3)


def test_simplify_snake():
    snake = compose(tensor(identity(2), gen(Cap(2))), tensor(gen(Cup(2)), identity(2)))
    res = simplify(snake)
    assert res.morphism == identity(2)


def test_simplify_lollipop():
    lolli = compose(gen(Cap(1)), gen(Split(1, 1)))
    assert simplify(lolli).morphism.is_zero()


def test_simplify_jw2_squared():
    p = jw_word(2)
    res = simplify(compose(p, p))
    assert res.complete
    assert evaluate(res.morphism) == evaluate(p)
    assert res.morphism == simplify(p).morphism


def test_simplify_budget():
    u = compose(at(Cap(1), (1, 1), 0), compose(circle(1).tensor(identity(1, 1)), at(Cup(1), (), 0)))
    res = simplify(u, budget=0)
    assert res.exhausted
    assert eval_closed(res.morphism) == eval_closed(u)


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**6))
def test_simplify_is_sound(seed):
    u = random_closed_web(random.Random(seed), max_slices=10, max_thickness=3)
    res = simplify(u)
    assert res.complete
    assert eval_closed(res.morphism) == eval_closed(u)
    for w, _ in res.morphism.terms:
        assert measure(w) <= measure(u.terms[0][0])


def test_catalogue_examples():
    assert len(relation_catalogue()) >= 12
    lhs, rhs = rule("dumbbell").sides({})
    assert sorted(str(c) for _, c in rhs.terms) == sorted([str(qint(2)), "1"])
    rep = check_relation(rule("digon_removal"), {"k": 1, "l": 1})
    assert rep.ok and rep.lhs == evaluate(identity(2)).scale(qint(2))
    assert check_relation(rule("square_switch"), {"k": 2, "l": 1, "j1": 1, "j2": 1}).ok
    assert check_relation(rule("serre_F"), {"a": 1, "b": 1, "c": 1, "i1": 1}).ok
    assert check_relation(rule("serre_E"), {"a": 1, "b": 1, "c": 1, "i1": 2}).ok


def test_ef_fe_coefficient_is_k_minus_l():
    from symweb.spider import ladders
    for k, l in [(3, 1), (1, 3), (2, 2)]:
        lhs, rhs = rule("ef_fe").sides({"k": k, "l": l})
        fe = ladders((k, l), [("E", 1, 1), ("F", 1, 1)])
        ef = ladders((k, l), [("F", 1, 1), ("E", 1, 1)])
        diff = evaluate(ef) - evaluate(fe) if not ef.is_zero() and not fe.is_zero() else None
        if diff is not None:
            want = evaluate(identity(k, l)).scale(qint(k - l) if k >= l else -qint(l - k))
            assert evaluate(lhs) == evaluate(rhs)
            assert diff == want


def test_simplify_examples_from_contract():
    res = simplify(circle(1))
    assert scalar_of(res.morphism) == -qint(2)
    from symweb.spider import Merge
    m = gen(Merge(1, 2))
    assert simplify(m).morphism == m and simplify(m).steps == 0
