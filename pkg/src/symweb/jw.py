"""Jones-Wenzl projectors and the Temperley-Lieb embedding.

Temperley-Lieb diagrams are planar matchings between ``bottom`` points
``("b", i)`` and ``top`` points ``("t", j)``. Closed loops are replaced by
-[2] as soon as they appear.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from functools import lru_cache

from .qpoly import ONE, ZERO, LaurentHalf, qfact, qint, qint_factors
from .repbackend import IntertwinerMatrix, evaluate
from .spider import (
    Cap,
    Cup,
    WebMorphism,
    assemble,
    at,
    compose,
    explode,
    identity,
)

LOOP = -qint(2)

Point = tuple[str, int]


@dataclass(frozen=True)
class TLDiagram:
    bottom: int
    top: int
    arcs: frozenset[frozenset[Point]]

    def __post_init__(self):
        seen = [p for a in self.arcs for p in a]
        want = {("b", i) for i in range(self.bottom)} | {("t", j) for j in range(self.top)}
        if len(seen) != len(set(seen)) or set(seen) != want or any(len(a) != 2 for a in self.arcs):
            raise ValueError("arcs must pair up every boundary point exactly once")
        if not _planar(self):
            raise ValueError("TL diagram arcs cross")

    @classmethod
    def from_pairs(cls, bottom: int, top: int, pairs) -> TLDiagram:
        return cls(bottom, top, frozenset(frozenset(p) for p in pairs))

    def partner(self) -> dict[Point, Point]:
        out = {}
        for a in self.arcs:
            x, y = tuple(a)
            out[x], out[y] = y, x
        return out

    def through_count(self) -> int:
        return sum(1 for a in self.arcs if {p[0] for p in a} == {"b", "t"})


def _boundary_order(d: TLDiagram) -> dict[Point, int]:
    # walk the boundary of the rectangle: bottom left-to-right, then top right-to-left
    order = {("b", i): i for i in range(d.bottom)}
    for j in range(d.top):
        order[("t", j)] = d.bottom + d.top - 1 - j
    return order


def _planar(d: TLDiagram) -> bool:
    order = _boundary_order(d)
    chords = [tuple(sorted(order[p] for p in a)) for a in d.arcs]
    for a, b in chords:
        for c, e in chords:
            if a < c < b < e:
                return False
    return True


def tl_identity(k: int) -> TLDiagram:
    return TLDiagram.from_pairs(k, k, [(("b", i), ("t", i)) for i in range(k)])


def tl_e(k: int, i: int) -> TLDiagram:
    """Cap-cup generator joining strands ``i`` and ``i+1`` (0-based)."""
    pairs = [(("b", i), ("b", i + 1)), (("t", i), ("t", i + 1))]
    pairs += [(("b", x), ("t", x)) for x in range(k) if x not in (i, i + 1)]
    return TLDiagram.from_pairs(k, k, pairs)


def tl_compose(d2: TLDiagram, d1: TLDiagram) -> tuple[TLDiagram, int]:
    """``d2`` stacked on ``d1``; returns the diagram and the number of closed loops."""
    if d1.top != d2.bottom:
        raise ValueError("TL boundary mismatch")
    p1, p2 = d1.partner(), d2.partner()
    # middle points m_i: top of d1 == bottom of d2
    pairs = []
    used_mid: set[int] = set()

    def walk(start: Point, in_lower: bool) -> Point:
        cur, lower = start, in_lower
        while True:
            nxt = (p1 if lower else p2)[cur]
            if lower and nxt[0] == "t":
                used_mid.add(nxt[1])
                cur, lower = ("b", nxt[1]), False
            elif not lower and nxt[0] == "b":
                used_mid.add(nxt[1])
                cur, lower = ("t", nxt[1]), True
            else:
                return ("b", nxt[1]) if lower else ("t", nxt[1])

    done: set[Point] = set()
    for i in range(d1.bottom):
        s = ("b", i)
        if s in done:
            continue
        e = walk(s, True)
        done |= {s, e}
        pairs.append((s, e))
    for j in range(d2.top):
        s = ("t", j)
        if s in done:
            continue
        e = walk(s, False)
        done |= {s, e}
        pairs.append((s, e))
    loops = 0
    for m in range(d1.top):
        if m in used_mid:
            continue
        loops += 1
        cur = ("t", m)
        while True:
            used_mid.add(cur[1])
            nxt = p1[cur]
            cur2 = p2[("b", nxt[1])]
            used_mid.add(nxt[1])
            if cur2[1] == m:
                break
            cur = ("t", cur2[1])
    return TLDiagram.from_pairs(d1.bottom, d2.top, pairs), loops


def tl_tensor(a: TLDiagram, b: TLDiagram) -> TLDiagram:
    def sh(p: Point) -> Point:
        return (p[0], p[1] + (a.bottom if p[0] == "b" else a.top))
    arcs = set(a.arcs) | {frozenset(sh(p) for p in arc) for arc in b.arcs}
    return TLDiagram(a.bottom + b.bottom, a.top + b.top, frozenset(arcs))


@dataclass(frozen=True)
class TLElement:
    """``(1/denom) * sum(coeff * diagram)``."""

    bottom: int
    top: int
    terms: tuple[tuple[TLDiagram, LaurentHalf], ...]
    denom: LaurentHalf = ONE

    @classmethod
    def build(cls, bottom, top, terms, denom=ONE) -> TLElement:
        acc: dict[TLDiagram, LaurentHalf] = {}
        for d, c in terms:
            acc[d] = acc.get(d, ZERO) + LaurentHalf.coerce(c)
        return cls(bottom, top, tuple((d, c) for d, c in acc.items() if c), LaurentHalf.coerce(denom))

    @classmethod
    def diagram(cls, d: TLDiagram) -> TLElement:
        return cls(d.bottom, d.top, ((d, ONE),))

    def compose(self, lower: TLElement) -> TLElement:
        out = []
        for d2, c2 in self.terms:
            for d1, c1 in lower.terms:
                d, loops = tl_compose(d2, d1)
                out.append((d, c1 * c2 * LOOP ** loops))
        return TLElement.build(lower.bottom, self.top, out, self.denom * lower.denom)

    def __add__(self, other: TLElement) -> TLElement:
        if self.denom == other.denom:
            return TLElement.build(self.bottom, self.top, self.terms + other.terms, self.denom)
        a = [(d, c * other.denom) for d, c in self.terms]
        b = [(d, c * self.denom) for d, c in other.terms]
        return TLElement.build(self.bottom, self.top, a + b, self.denom * other.denom)

    def scale(self, c) -> TLElement:
        c = LaurentHalf.coerce(c)
        return TLElement.build(self.bottom, self.top, [(d, x * c) for d, x in self.terms], self.denom)

    def tensor_id(self, n: int = 1) -> TLElement:
        return TLElement.build(self.bottom + n, self.top + n,
                               [(tl_tensor(d, tl_identity(n)), c) for d, c in self.terms], self.denom)

    def reduced(self) -> TLElement:
        """Cancel quantum-integer factors of the denominator that divide every coefficient."""
        fac = qint_factors(self.denom)
        if fac is None:
            return self
        n, js = fac
        unit = LaurentHalf.monomial(-n, -1 if -1 in js else 1)
        terms = [(x, c * unit) for x, c in self.terms]
        keep = []
        for j in sorted((j for j in js if j > 1), reverse=True):
            f = qint(j)
            if all(f.divides(c) for _, c in terms):
                terms = [(x, c.exact_div(f)) for x, c in terms]
            else:
                keep.append(j)
        d = ONE
        for j in keep:
            d = d * qint(j)
        return TLElement.build(self.bottom, self.top, terms, d)


def tl_embed(d: TLDiagram | TLElement) -> WebMorphism:
    """Turn a TL diagram (or combination) into a web on 1-labeled strands."""
    if isinstance(d, TLElement):
        out = WebMorphism.zero((1,) * d.bottom, (1,) * d.top)
        for x, c in d.terms:
            m = tl_embed(x).scale(c)
            out = m if out.is_zero() else out + m
        return out.divide(d.denom) if d.denom != 1 else out
    partner = d.partner()
    # caps on the bottom, innermost first
    live = list(range(d.bottom))
    out = identity(*([1] * d.bottom))
    progress = True
    while progress:
        progress = False
        for p in range(len(live) - 1):
            if partner[("b", live[p])] == ("b", live[p + 1]):
                out = compose(at(Cap(1), (1,) * len(live), p), out)
                del live[p:p + 2]
                progress = True
                break
    # cups on the top: record removals, then replay them backwards
    live_t = list(range(d.top))
    removals = []
    progress = True
    while progress:
        progress = False
        for p in range(len(live_t) - 1):
            if partner[("t", live_t[p])] == ("t", live_t[p + 1]):
                removals.append(p)
                del live_t[p:p + 2]
                progress = True
                break
    if len(live) != len(live_t):
        raise ValueError("malformed TL diagram")
    n = len(live)
    for p in reversed(removals):
        out = compose(at(Cup(1), (1,) * n, p), out)
        n += 2
    return out


def random_tl(rng: random.Random, bottom: int, top: int) -> TLDiagram:
    """Uniform-ish random planar matching on ``bottom + top`` boundary points."""
    n = bottom + top
    if n % 2:
        raise ValueError("bottom + top must be even")
    pts = [("b", i) for i in range(bottom)] + [("t", j) for j in reversed(range(top))]
    pairs = []
    stack: list[Point] = []
    # random balanced bracket sequence along the boundary circle
    opens, closes = n // 2, n // 2
    for p in pts:
        if stack and (opens == 0 or rng.random() < closes / (opens + closes)) and closes > 0:
            pairs.append((stack.pop(), p))
            closes -= 1
        else:
            stack.append(p)
            opens -= 1
    return TLDiagram.from_pairs(bottom, top, pairs)


# -- projectors ------------------------------------------------------------------------


def jw_word(k: int) -> WebMorphism:
    """Explode after assemble, over [k]!, as an endomorphism of (1,...,1)."""
    if k < 1:
        raise ValueError("jw_word expects k >= 1")
    if k == 1:
        return identity(1)
    return compose(explode(k), assemble(k)).divide(qfact(k))


@lru_cache(maxsize=None)
def jw_tl(k: int) -> TLElement:
    """Recursion JW_k = JW_{k-1}(x)1 + [k-1]/[k] (JW_{k-1}(x)1) e_{k-1} (JW_{k-1}(x)1)."""
    if k < 1:
        raise ValueError("jw_tl expects k >= 1")
    if k == 1:
        return TLElement.diagram(tl_identity(1))
    prev = jw_tl(k - 1).tensor_id(1)
    e = TLElement.diagram(tl_e(k, k - 2))
    turn = prev.compose(e).compose(prev).scale(qint(k - 1))
    turn = TLElement.build(turn.bottom, turn.top, turn.terms, turn.denom * qint(k))
    return (prev + turn).reduced()


def jw_recursive(k: int) -> WebMorphism:
    return tl_embed(jw_tl(k))


@lru_cache(maxsize=None)
def jw_matrix(k: int) -> IntertwinerMatrix:
    return evaluate(jw_word(k))


def cap_kills(k: int) -> bool:
    """Every adjacent 1-cap, on top or (as a cup) below, annihilates JW_k."""
    jw = jw_word(k)
    ones = (1,) * k
    for i in range(k - 1):
        if not evaluate(compose(at(Cap(1), ones, i), jw)).is_zero():
            return False
        if not evaluate(compose(jw, at(Cup(1), (1,) * (k - 2), i))).is_zero():
            return False
    return True


def verify(k: int) -> dict[str, bool]:
    m = jw_matrix(k)
    return {
        "idempotent": m @ m == m,
        "cap-kill": cap_kills(k) if k > 1 else True,
        "recursion": evaluate(jw_recursive(k)) == m,
    }
