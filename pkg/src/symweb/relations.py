"""Executable relations of the symmetric spider, a checker and a small simplifier."""

from __future__ import annotations

import itertools
import os
import random
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, Iterable, Iterator, Sequence

from .qpoly import ONE, LaurentHalf, qbinom, qint, qint_signed
from .repbackend import IntertwinerMatrix, evaluate
from .spider import (
    Cap,
    Cup,
    Generator,
    Merge,
    Slice,
    Split,
    WebMorphism,
    WebObject,
    WebWord,
    circle,
    compose,
    compose_all,
    gen,
    identity,
    ladders,
    tensor_all,
)


@dataclass(frozen=True)
class RewriteRule:
    """One relation as a pair of morphism builders over a parameter grid.

    ``grid(t)`` yields parameter dicts whose boundary thickness is at most
    ``t``; ``valid`` decides whether an arbitrary dict is in range.
    """

    name: str
    params: tuple[str, ...]
    lhs: Callable[..., WebMorphism]
    rhs: Callable[..., WebMorphism]
    grid: Callable[[int], Iterable[dict]]
    direction: str = "check"
    description: str = ""

    def instances(self, max_thickness: int = 6) -> Iterator[dict]:
        yield from self.grid(max_thickness)

    def valid(self, params: dict) -> bool:
        if set(params) != set(self.params):
            return False
        if any(not isinstance(v, int) or v < 0 for v in params.values()):
            return False
        t = 3 * sum(params.values()) + 3
        return any(params == p for p in self.grid(t))

    def sides(self, params: dict) -> tuple[WebMorphism, WebMorphism]:
        return self.lhs(**params), self.rhs(**params)


@dataclass
class RelationReport:
    rule: str
    params: dict
    ok: bool
    lhs: IntertwinerMatrix | None = None
    rhs: IntertwinerMatrix | None = None

    def line(self) -> str:
        ps = " ".join(f"{k}={v}" for k, v in self.params.items())
        return f"{self.rule} {ps} : {'OK' if self.ok else 'FAIL'}"

    def to_json(self) -> dict:
        out = {"rule": self.rule, "params": self.params, "ok": self.ok}
        if self.lhs is not None:
            out["matrix"] = self.lhs.to_json()
        return out


def _side_matrix(u: WebMorphism) -> IntertwinerMatrix | None:
    if u.domain.zero or u.codomain.zero:
        return None
    return evaluate(u)


def check_relation(rule: RewriteRule, params: dict) -> RelationReport:
    """Evaluate both sides exactly and compare."""
    if not rule.valid(params):
        raise ValueError(f"parameters {params} out of range for {rule.name}")
    lhs, rhs = rule.sides(params)
    a, b = _side_matrix(lhs), _side_matrix(rhs)
    if a is None or b is None:
        ok = (a is None or a.is_zero()) and (b is None or b.is_zero())
    else:
        ok = a == b
    return RelationReport(rule.name, dict(params), ok, a, b)


# -- helpers -------------------------------------------------------------------


def _id(*labels: int) -> WebMorphism:
    return identity(*labels)


def _g(g: Generator) -> WebMorphism:
    return gen(g)


def _pos(*ks: int) -> bool:
    return all(k >= 1 for k in ks)


def _range(lo: int, hi: int) -> range:
    return range(lo, hi + 1)


def _lad(weight: Sequence[int], *steps: tuple[str, int, int]) -> WebMorphism:
    return ladders(weight, steps)


def _sum(terms: list[WebMorphism], domain, codomain) -> WebMorphism:
    out = WebMorphism.zero(domain, codomain)
    for t in terms:
        if t.is_zero():
            continue
        out = t if out.is_zero() else out + t
    return out


def _ladder_sum(weight, terms: list[tuple[LaurentHalf, list]]) -> WebMorphism:
    built = [(c, ladders(weight, st)) for c, st in terms]
    dom = built[0][1].domain
    cods = [m.codomain for _, m in built if not m.codomain.zero]
    cod = cods[0] if cods else WebObject.zero_object()
    return _sum([m.scale(c) for c, m in built if not m.is_zero()], dom, cod)


# -- rule definitions ----------------------------------------------------------------


def frob_merge_lhs(h, k, l):
    return compose(_g(Merge(h + k, l)), tensor_all(_g(Merge(h, k)), _id(l)))


def frob_merge_rhs(h, k, l):
    return compose(_g(Merge(h, k + l)), tensor_all(_id(h), _g(Merge(k, l))))


def frob_split_lhs(h, k, l):
    return compose(tensor_all(_g(Split(h, k)), _id(l)), _g(Split(h + k, l)))


def frob_split_rhs(h, k, l):
    return compose(tensor_all(_id(h), _g(Split(k, l))), _g(Split(h, k + l)))


def _grid3(t):
    for h, k, l in itertools.product(_range(1, t), repeat=3):
        if h + k + l <= t:
            yield {"h": h, "k": k, "l": l}


def _grid2(t):
    for k, l in itertools.product(_range(1, t), repeat=2):
        if k + l <= t:
            yield {"k": k, "l": l}


def _grid1(t, cap=8):
    for k in _range(1, min(t, cap)):
        yield {"k": k}


def digon_lhs(k, l):
    return compose(_g(Merge(k, l)), _g(Split(k, l)))


def digon_rhs(k, l):
    return _id(k + l).scale(qbinom(k + l, l))


def square_removal_f_lhs(k, l, j1, j2):
    return _lad((k, l), ("F", 1, j1), ("F", 1, j2))


def square_removal_f_rhs(k, l, j1, j2):
    return _ladder_sum((k, l), [(qbinom(j1 + j2, j1), [("F", 1, j1 + j2)])])


def square_removal_e_lhs(k, l, j1, j2):
    return _lad((k, l), ("E", 1, j1), ("E", 1, j2))


def square_removal_e_rhs(k, l, j1, j2):
    return _ladder_sum((k, l), [(qbinom(j1 + j2, j1), [("E", 1, j1 + j2)])])


def _grid_square(t, jmax=2):
    for k, l in itertools.product(_range(0, t), repeat=2):
        if 1 <= k + l <= t:
            for j1, j2 in itertools.product(_range(1, jmax), repeat=2):
                yield {"k": k, "l": l, "j1": j1, "j2": j2}


def square_switch_lhs(k, l, j1, j2):
    return _lad((k, l), ("F", 1, j1), ("E", 1, j2))


def square_switch_rhs(k, l, j1, j2):
    terms = []
    for jp in range(0, min(j1, j2) + 1):
        c = qbinom(k - j1 - l + j2, jp)
        if c:
            terms.append((c, [("E", 1, j2 - jp), ("F", 1, j1 - jp)]))
    if not terms:
        return WebMorphism.zero(square_switch_lhs(k, l, j1, j2).domain, _switch_cod(k, l, j1, j2))
    return _ladder_sum((k, l), terms)


def _switch_cod(k, l, j1, j2):
    a, b = k - j1 + j2, l + j1 - j2
    if a < 0 or b < 0:
        return WebObject.zero_object()
    return WebObject(tuple(x for x in (a, b) if x))


def _grid_switch(t, kmax=4, jmax=2):
    for k, l in itertools.product(_range(0, kmax), repeat=2):
        if 1 <= k + l <= t:
            for j1, j2 in itertools.product(_range(0, jmax), repeat=2):
                yield {"k": k, "l": l, "j1": j1, "j2": j2}


def ef_fe_lhs(k, l):
    return square_switch_lhs(k, l, 1, 1)


def ef_fe_rhs(k, l):
    fe = _lad((k, l), ("E", 1, 1), ("F", 1, 1))
    terms = [] if fe.is_zero() else [fe]
    c = qint_signed(k - l)
    if c:
        terms.append(_id(*[x for x in (k, l) if x]).scale(c))
    return _sum(terms, WebObject(tuple(x for x in (k, l) if x)), WebObject(tuple(x for x in (k, l) if x)))


def _grid_effe(t):
    for k, l in itertools.product(_range(0, t), repeat=2):
        if 1 <= k + l <= t:
            yield {"k": k, "l": l}


def circle1_lhs():
    return circle(1)


def circle1_rhs():
    return _id().scale(-qint(2))


def circlek_lhs(k):
    return circle(k)


def circlek_rhs(k):
    return _id().scale(qint(k + 1) * (-1) ** k)


def dumbbell_lhs():
    return compose(_g(Split(1, 1)), _g(Merge(1, 1)))


def dumbbell_rhs():
    return _id(1, 1).scale(qint(2)) + compose(_g(Cup(1)), _g(Cap(1)))


def lollipop_lhs():
    return compose(_g(Cap(1)), _g(Split(1, 1)))


def lollipop_rhs():
    return WebMorphism.zero((2,), ())


def snake_left_lhs(k):
    return compose(tensor_all(_g(Cap(k)), _id(k)), tensor_all(_id(k), _g(Cup(k))))


def snake_right_lhs(k):
    return compose(tensor_all(_id(k), _g(Cap(k))), tensor_all(_g(Cup(k)), _id(k)))


def snake_rhs(k):
    return _id(k)


def slide_cap_a_lhs(k, l):
    return compose_all(
        _g(Cap(l)),
        tensor_all(_id(l), _g(Cap(k)), _id(l)),
        tensor_all(_g(Split(l, k)), _id(k), _id(l)),
    )


def slide_cap_a_rhs(k, l):
    return compose(_g(Cap(k + l)), tensor_all(_id(k + l), _g(Merge(k, l))))


def slide_cap_b_lhs(k, l):
    return compose_all(
        _g(Cap(k)),
        tensor_all(_id(k), _g(Cap(l)), _id(k)),
        tensor_all(_id(k), _id(l), _g(Split(l, k))),
    )


def slide_cap_b_rhs(k, l):
    return compose(_g(Cap(k + l)), tensor_all(_g(Merge(k, l)), _id(k + l)))


def slide_cup_a_lhs(k, l):
    return compose_all(
        tensor_all(_g(Merge(l, k)), _id(k), _id(l)),
        tensor_all(_id(l), _g(Cup(k)), _id(l)),
        _g(Cup(l)),
    )


def slide_cup_a_rhs(k, l):
    return compose(tensor_all(_id(k + l), _g(Split(k, l))), _g(Cup(k + l)))


def slide_cup_b_lhs(k, l):
    return compose_all(
        tensor_all(_id(k), _id(l), _g(Merge(l, k))),
        tensor_all(_id(k), _g(Cup(l)), _id(k)),
        _g(Cup(k)),
    )


def slide_cup_b_rhs(k, l):
    return compose(tensor_all(_g(Split(k, l)), _id(k + l)), _g(Cup(k + l)))


def _grid_slide(t, kmax=3):
    # boundary is (k+l, k, l) or its mirror
    for k, l in itertools.product(_range(1, kmax), repeat=2):
        if 2 * (k + l) <= t:
            yield {"k": k, "l": l}


def comm_ff_lhs(a, b, c, d, j1, j2):
    return _lad((a, b, c, d), ("F", 3, j2), ("F", 1, j1))


def comm_ff_rhs(a, b, c, d, j1, j2):
    return _lad((a, b, c, d), ("F", 1, j1), ("F", 3, j2))


def _grid_comm4(t):
    for w in itertools.product(_range(0, 2), repeat=4):
        if 1 <= sum(w) <= t:
            for j1, j2 in itertools.product(_range(1, 2), repeat=2):
                yield dict(zip("abcd", w), j1=j1, j2=j2)


def comm_fe_lhs(a, b, c, j1, j2):
    return _lad((a, b, c), ("E", 2, j2), ("F", 1, j1))


def comm_fe_rhs(a, b, c, j1, j2):
    return _lad((a, b, c), ("F", 1, j1), ("E", 2, j2))


def _grid_w3(t, jmax=2, lo=1):
    for w in itertools.product(_range(0, 3), repeat=3):
        if 1 <= sum(w) <= t:
            for j1, j2 in itertools.product(_range(lo, jmax), repeat=2):
                yield dict(zip("abc", w), j1=j1, j2=j2)


def _serre(kind, a, b, c, i1, i2):
    w = (a, b, c)
    x = [(1, [(kind, i2, 1), (kind, i1, 1), (kind, i1, 1)]),
         (-qint(2), [(kind, i1, 1), (kind, i2, 1), (kind, i1, 1)]),
         (1, [(kind, i1, 1), (kind, i1, 1), (kind, i2, 1)])]
    built = [(co, ladders(w, st)) for co, st in x]
    return built


def _serre_lhs(kind):
    def lhs(a, b, c, i1):
        i2 = 3 - i1
        built = _serre(kind, a, b, c, i1, i2)
        dom = built[0][1].domain
        cods = [m.codomain for _, m in built if not m.codomain.zero]
        cod = cods[0] if cods else WebObject.zero_object()
        return _sum([m.scale(co) for co, m in built if not m.is_zero()], dom, cod)
    return lhs


def _serre_rhs(a, b, c, i1):
    lhs = _serre_lhs("F")(a, b, c, i1)
    return WebMorphism.zero(lhs.domain, lhs.codomain)


def _serre_rhs_e(a, b, c, i1):
    lhs = _serre_lhs("E")(a, b, c, i1)
    return WebMorphism.zero(lhs.domain, lhs.codomain)


def _grid_serre(t):
    for w in itertools.product(_range(0, 3), repeat=3):
        if 1 <= sum(w) <= t:
            for i1 in (1, 2):
                yield dict(zip("abc", w), i1=i1)


def divpow_lhs(a, b, c, i, j1, j2):
    return _lad((a, b, c), ("F", i, j2), ("F", i, j1))


def divpow_rhs(a, b, c, i, j1, j2):
    return _ladder_sum((a, b, c), [(qbinom(j1 + j2, j1), [("F", i, j1 + j2)])])


def _grid_divpow(t):
    for w in itertools.product(_range(0, 3), repeat=3):
        if 1 <= sum(w) <= t:
            for i in (1, 2):
                for j1, j2 in itertools.product(_range(1, 2), repeat=2):
                    yield dict(zip("abc", w), i=i, j1=j1, j2=j2)


def efrel_lhs(a, b, c, i, j1, j2):
    return _lad((a, b, c), ("F", i, j1), ("E", i, j2))


def efrel_rhs(a, b, c, i, j1, j2):
    w = (a, b, c)
    ki, kn = w[i - 1], w[i]
    terms = []
    for jp in range(0, min(j1, j2) + 1):
        co = qbinom(ki - j1 - kn + j2, jp)
        if co:
            terms.append((co, [("E", i, j2 - jp), ("F", i, j1 - jp)]))
    lhs = efrel_lhs(a, b, c, i, j1, j2)
    if not terms:
        return WebMorphism.zero(lhs.domain, lhs.codomain)
    out = _ladder_sum(w, terms)
    return out


def _grid_efrel(t):
    for w in itertools.product(_range(0, 2), repeat=3):
        if 1 <= sum(w) <= t:
            for i in (1, 2):
                for j1, j2 in itertools.product(_range(0, 2), repeat=2):
                    yield dict(zip("abc", w), i=i, j1=j1, j2=j2)


def _none(t):
    yield {}


CATALOGUE: tuple[RewriteRule, ...] = (
    RewriteRule("frobenius_merge", ("h", "k", "l"), frob_merge_lhs, frob_merge_rhs, _grid3,
                "check", "both bracketings of a double merge agree"),
    RewriteRule("frobenius_split", ("h", "k", "l"), frob_split_lhs, frob_split_rhs, _grid3,
                "check", "both bracketings of a double split agree"),
    RewriteRule("digon_removal", ("k", "l"), digon_lhs, digon_rhs, _grid2,
                "reducing", "merge after split is a quantum binomial times the identity"),
    RewriteRule("square_removal_F", ("k", "l", "j1", "j2"), square_removal_f_lhs, square_removal_f_rhs,
                _grid_square, "reducing", "two F rungs fuse into one"),
    RewriteRule("square_removal_E", ("k", "l", "j1", "j2"), square_removal_e_lhs, square_removal_e_rhs,
                _grid_square, "reducing", "two E rungs fuse into one"),
    RewriteRule("square_switch", ("k", "l", "j1", "j2"), square_switch_lhs, square_switch_rhs,
                _grid_switch, "check", "E over F becomes a sum of F over E"),
    RewriteRule("ef_fe", ("k", "l"), ef_fe_lhs, ef_fe_rhs, _grid_effe,
                "check", "EF = FE + [k-l] on two strands"),
    RewriteRule("circle_removal", (), circle1_lhs, circle1_rhs, _none,
                "reducing", "a 1-labeled circle is -[2]"),
    RewriteRule("circle_k", ("k",), circlek_lhs, circlek_rhs, _grid1,
                "reducing", "a k-labeled circle is (-1)^k [k+1]"),
    RewriteRule("dumbbell", (), dumbbell_lhs, dumbbell_rhs, _none,
                "reducing", "split after merge of two 1-strands"),
    RewriteRule("lollipop", (), lollipop_lhs, lollipop_rhs, _none,
                "reducing", "a cap on a split 2-strand vanishes"),
    RewriteRule("snake_left", ("k",), snake_left_lhs, snake_rhs, lambda t: _grid1(t // 3, 4),
                "reducing", "zig-zag with the cap on the left"),
    RewriteRule("snake_right", ("k",), snake_right_lhs, snake_rhs, lambda t: _grid1(t // 3, 4),
                "reducing", "zig-zag with the cap on the right"),
    RewriteRule("vertex_slide_cap_a", ("k", "l"), slide_cap_a_lhs, slide_cap_a_rhs, _grid_slide,
                "check", "split slides around a cap onto the right"),
    RewriteRule("vertex_slide_cap_b", ("k", "l"), slide_cap_b_lhs, slide_cap_b_rhs, _grid_slide,
                "check", "split slides around a cap onto the left"),
    RewriteRule("vertex_slide_cup_a", ("k", "l"), slide_cup_a_lhs, slide_cup_a_rhs, _grid_slide,
                "check", "merge slides around a cup onto the right"),
    RewriteRule("vertex_slide_cup_b", ("k", "l"), slide_cup_b_lhs, slide_cup_b_rhs, _grid_slide,
                "check", "merge slides around a cup onto the left"),
    RewriteRule("commutation_FF", ("a", "b", "c", "d", "j1", "j2"), comm_ff_lhs, comm_ff_rhs, _grid_comm4,
                "check", "ladders on distant strand pairs commute"),
    RewriteRule("commutation_FE", ("a", "b", "c", "j1", "j2"), comm_fe_lhs, comm_fe_rhs,
                lambda t: _grid_w3(t, 2, 1), "check", "F_1 and E_2 ladders commute"),
    RewriteRule("serre_F", ("a", "b", "c", "i1"), _serre_lhs("F"), _serre_rhs, _grid_serre,
                "check", "F_i^2 F_j - [2] F_i F_j F_i + F_j F_i^2 = 0"),
    RewriteRule("serre_E", ("a", "b", "c", "i1"), _serre_lhs("E"), _serre_rhs_e, _grid_serre,
                "check", "E_i^2 E_j - [2] E_i E_j E_i + E_j E_i^2 = 0"),
    RewriteRule("divided_power", ("a", "b", "c", "i", "j1", "j2"), divpow_lhs, divpow_rhs, _grid_divpow,
                "reducing", "F^(j2) F^(j1) = [j1+j2 choose j1] F^(j1+j2) on three strands"),
    RewriteRule("ef_relation", ("a", "b", "c", "i", "j1", "j2"), efrel_lhs, efrel_rhs, _grid_efrel,
                "check", "idempotented EF relation on three strands"),
)


def relation_catalogue() -> list[RewriteRule]:
    return list(CATALOGUE)


def rule(name: str) -> RewriteRule:
    for r in CATALOGUE:
        if r.name == name:
            return r
    raise KeyError(name)


def threads() -> int:
    try:
        return max(1, int(os.environ.get("SYMWEB_THREADS", "1")))
    except ValueError:
        return 1


def sweep(max_thickness: int = 6, rules: Iterable[RewriteRule] | None = None) -> list[RelationReport]:
    """Check every rule at every instance within the thickness bound."""
    jobs = [(r, p) for r in (rules or CATALOGUE) for p in r.instances(max_thickness)]
    n = threads()
    if n == 1:
        return [check_relation(r, p) for r, p in jobs]
    with ThreadPoolExecutor(max_workers=n) as ex:
        return list(ex.map(lambda rp: check_relation(*rp), jobs))


# -- simplifier -------------------------------------------------------------------------


@dataclass
class SimplifyResult:
    morphism: WebMorphism
    complete: bool
    steps: int = 0

    @property
    def exhausted(self) -> bool:
        return not self.complete


def _strip_ids(w: WebWord) -> WebWord:
    return WebWord(w.domain, tuple(s for s in w.slices if s.generator.kind != "id"))


def measure(w: WebWord) -> tuple[int, int]:
    return len(w), w.label_sum()


# local replacements: (lower kind, upper kind, extra left, extra right) -> builder
def _local_replacement(g1: Generator, g2: Generator, el: int, er: int, block: tuple[int, ...]):
    """Return (name, local morphism on the freed block) or None."""
    k1, k2 = g1.kind, g2.kind
    if el == 0 and er == 0:
        if k1 == "cup" and k2 == "cap" and g1.params == g2.params:
            k = g1.params[0]
            return "circle_k", _id().scale(qint(k + 1) * (-1) ** k)
        if k1 == "split" and k2 == "merge" and g1.params == g2.params:
            k, l = g1.params
            return "digon_removal", _id(k + l).scale(qbinom(k + l, l))
        if k1 == "merge" and k2 == "split" and g1.params == (1, 1) and g2.params == (1, 1):
            return "dumbbell", dumbbell_rhs()
        if k1 == "split" and k2 == "cap" and g1.params == (1, 1) and g2.params == (1,):
            return "lollipop", WebMorphism.zero((2,), ())
        if k1 == "cup" and k2 == "merge" and g1.params == (1,) and g2.params == (1, 1):
            return "lollipop", WebMorphism.zero((), (2,))
        return None
    if k1 == "cup" and k2 == "cap" and g1.params == g2.params:
        k = g1.params[0]
        if block == (k, k, k):
            return ("snake_right" if er else "snake_left"), _id(k)
    return None


def _try_at(word: WebWord, a: int):
    """Find a rewrite whose lower slice is ``word.slices[a]``."""
    slices = word.slices
    low = slices[a]
    g1 = low.generator
    amb = low.codomain
    nout = len(g1.codomain)
    configs = [(0, 0)]
    if g1.kind == "cup":
        configs += [(0, 1), (1, 0)]
    for el, er in configs:
        start = low.position - el
        length = nout + el + er
        if start < 0 or start + length > len(amb):
            continue
        block = amb[start:start + length]
        bp = start
        track = []
        for b in range(a + 1, len(slices)):
            s = slices[b]
            ps, nd, nc = s.position, len(s.generator.domain), len(s.generator.codomain)
            if ps + nd <= bp:
                track.append(("L", bp))
                bp += nc - nd
                continue
            if ps >= bp + length:
                track.append(("R", bp))
                continue
            # the slice touches the block
            g2 = s.generator
            if el == 0 and er == 0:
                fits = ps == bp and nd == length
            else:
                fits = nd == 2 and g2.kind == "cap" and ps == bp + (1 if er else 0)
            if fits:
                rep = _local_replacement(g1, g2, el, er, block)
                if rep is not None:
                    return a, b, el, er, track, rep
            break
    return None


def _rebuild(word: WebWord, found) -> WebMorphism:
    a, b, el, er, track, (_, local) = found
    slices = word.slices
    low, up = slices[a], slices[b]
    g1 = low.generator
    pre = low.domain
    start = low.position - el
    length_in = len(g1.domain) + el + er
    length_mid = len(g1.codomain) + el + er
    left, right = pre[:start], pre[start + length_in:]
    out_block = local.codomain.labels
    mids = []
    for s, (side, bp) in zip(slices[a + 1:b], track):
        if side == "R":
            nl = s.left[:bp] + out_block + s.left[bp + length_mid:]
            mids.append(Slice(s.generator, nl, s.right))
        else:
            o = bp - (s.position + len(s.generator.domain))
            nr = s.right[:o] + out_block + s.right[o + length_mid:]
            mids.append(Slice(s.generator, s.left, nr))
    prefix, suffix = slices[:a], slices[b + 1:]
    terms = []
    for w, c in local.terms:
        body = tuple(x.padded(left, right) for x in w.slices)
        terms.append((WebWord(word.domain, prefix + body + tuple(mids) + suffix), c))
    dom, cod = word.domain, word.codomain
    return WebMorphism.build(dom, cod, terms)


def _rewrite_once(word: WebWord):
    for a in range(len(word.slices)):
        found = _try_at(word, a)
        if found is not None:
            return found[5][0], _rebuild(word, found)
    return None


def _reduce_denominator(m: WebMorphism) -> WebMorphism:
    if m.denom == 1 or m.is_zero():
        return m
    d = m.denom
    terms = list(m.terms)
    changed = True
    while changed:
        changed = False
        if terms and all(d.divides(c) for _, c in terms):
            return WebMorphism.build(m.domain, m.codomain, [(w, c.exact_div(d)) for w, c in terms])
        for j in range(2, 16):
            f = qint(j)
            if f.divides(d) and all(f.divides(c) for _, c in terms):
                d = d.exact_div(f)
                terms = [(w, c.exact_div(f)) for w, c in terms]
                changed = True
                break
    if d.is_monomial() and abs(next(iter(d.terms.values()))) == 1:
        inv = d ** -1
        return WebMorphism.build(m.domain, m.codomain, [(w, c * inv) for w, c in terms])
    return WebMorphism.build(m.domain, m.codomain, terms, d)


def simplify(u: WebMorphism, budget: int = 10_000) -> SimplifyResult:
    """Apply circle, digon, dumbbell, lollipop and snake reductions until none match.

    Each application strictly lowers (slice count, label sum) of the words it
    produces. Running out of ``budget`` returns the partial result with
    ``complete=False``.
    """
    if u.is_zero() or u.domain.zero or u.codomain.zero:
        return SimplifyResult(u, True, 0)
    pending = [(_strip_ids(w), c) for w, c in u.terms]
    done: list[tuple[WebWord, LaurentHalf]] = []
    steps = 0
    while pending:
        if steps >= budget:
            done.extend(pending)
            res = WebMorphism.build(u.domain, u.codomain, done, u.denom)
            return SimplifyResult(_reduce_denominator(res), False, steps)
        w, c = pending.pop()
        hit = _rewrite_once(w)
        if hit is None:
            done.append((w, c))
            continue
        steps += 1
        _, repl = hit
        for w2, c2 in repl.terms:
            assert measure(w2) < measure(w)
            pending.append((w2, c * c2))
    res = WebMorphism.build(u.domain, u.codomain, done, u.denom)
    return SimplifyResult(_reduce_denominator(res), True, steps)


def scalar_of(u: WebMorphism) -> LaurentHalf | None:
    """The scalar of a closed morphism that is a multiple of the empty word."""
    if not u.is_closed():
        return None
    if u.is_zero():
        return LaurentHalf()
    if len(u.terms) != 1 or u.terms[0][0].slices:
        return None
    c = u.terms[0][1]
    quo, rem = c.divmod(u.denom)
    return None if rem else quo


# -- random closed webs -------------------------------------------------------------------------


def _moves(obj: tuple[int, ...], max_thickness: int, max_strands: int) -> list[tuple[Generator, int]]:
    out = []
    n = len(obj)
    if n + 2 <= max_strands:
        for p in range(n + 1):
            for k in range(1, max_thickness + 1):
                out.append((Cup(k), p))
    for p in range(n - 1):
        a, b = obj[p], obj[p + 1]
        if a == b:
            out.append((Cap(a), p))
        if a + b <= max_thickness:
            out.append((Merge(a, b), p))
    if n + 1 <= max_strands:
        for p, x in enumerate(obj):
            for a in range(1, x):
                out.append((Split(a, x - a), p))
    return out


def _apply(obj: tuple[int, ...], g: Generator, p: int) -> tuple[int, ...]:
    return obj[:p] + g.codomain + obj[p + len(g.domain):]


@lru_cache(maxsize=None)
def _can_close(obj: tuple[int, ...], steps: int, max_thickness: int, max_strands: int) -> bool:
    if steps == 0:
        return obj == ()
    if len(obj) > 2 * steps:
        return False
    return any(_can_close(_apply(obj, g, p), steps - 1, max_thickness, max_strands)
               for g, p in _moves(obj, max_thickness, max_strands))


def random_closed_web(rng: random.Random, max_slices: int = 10, max_thickness: int = 3,
                      max_strands: int = 4, min_slices: int = 2) -> WebMorphism:
    """A random closed single-word web, built as a walk that is always closable."""
    lengths = [n for n in range(min_slices, max_slices + 1) if _can_close((), n, max_thickness, max_strands)]
    n = rng.choice(lengths)
    obj: tuple[int, ...] = ()
    slices = []
    for left in range(n, 0, -1):
        opts = [(g, p) for g, p in _moves(obj, max_thickness, max_strands)
                if _can_close(_apply(obj, g, p), left - 1, max_thickness, max_strands)]
        g, p = rng.choice(opts)
        slices.append(Slice(g, obj[:p], obj[p + len(g.domain):]))
        obj = _apply(obj, g, p)
    return WebMorphism.from_word(WebWord((), tuple(slices)))
