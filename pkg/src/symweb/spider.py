"""Objects and morphisms of the symmetric sl2-spider.

A morphism is a formal linear combination of words. A word is a bottom-to-top
sequence of slices, and each slice is one generator padded by passive strands.
Edges of thickness zero never appear: ladder constructors erase them.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .qpoly import ONE, ZERO, LaurentHalf, Scalar

KINDS = ("id", "cap", "cup", "merge", "split")


@dataclass(frozen=True)
class WebObject:
    """A tuple of positive edge labels, or the zero object."""

    labels: tuple[int, ...] = ()
    zero: bool = False

    def __post_init__(self):
        labels = tuple(int(x) for x in self.labels)
        if any(x <= 0 for x in labels):
            raise ValueError(f"web object labels must be positive, got {labels}")
        object.__setattr__(self, "labels", labels)

    @classmethod
    def of(cls, labels: Iterable[int] | WebObject) -> WebObject:
        if isinstance(labels, WebObject):
            return labels
        return cls(tuple(labels))

    @classmethod
    def zero_object(cls) -> WebObject:
        return cls((), True)

    def tensor(self, other: WebObject) -> WebObject:
        if self.zero or other.zero:
            return WebObject.zero_object()
        return WebObject(self.labels + other.labels)

    def __len__(self) -> int:
        return len(self.labels)

    def __iter__(self):
        return iter(self.labels)

    def __str__(self) -> str:
        if self.zero:
            return "0"
        return "(" + ",".join(map(str, self.labels)) + ")"


@dataclass(frozen=True)
class Generator:
    kind: str
    params: tuple[int, ...]

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown generator kind {self.kind!r}")
        want = 2 if self.kind in ("merge", "split") else 1
        if len(self.params) != want or any(p <= 0 for p in self.params):
            raise ValueError(f"bad parameters {self.params} for {self.kind}")

    @property
    def domain(self) -> tuple[int, ...]:
        k = self.params[0]
        if self.kind == "id":
            return (k,)
        if self.kind == "cap":
            return (k, k)
        if self.kind == "cup":
            return ()
        if self.kind == "merge":
            return self.params
        return (sum(self.params),)

    @property
    def codomain(self) -> tuple[int, ...]:
        k = self.params[0]
        if self.kind == "id":
            return (k,)
        if self.kind == "cap":
            return ()
        if self.kind == "cup":
            return (k, k)
        if self.kind == "merge":
            return (sum(self.params),)
        return self.params

    def dsl(self) -> str:
        name = {"merge": "m", "split": "s"}.get(self.kind, self.kind)
        return f"{name}({','.join(map(str, self.params))})"

    def __str__(self) -> str:
        return self.dsl()


def Identity(k: int) -> Generator:
    return Generator("id", (k,))


def Cap(k: int) -> Generator:
    return Generator("cap", (k,))


def Cup(k: int) -> Generator:
    return Generator("cup", (k,))


def Merge(k: int, l: int) -> Generator:
    return Generator("merge", (k, l))


def Split(k: int, l: int) -> Generator:
    return Generator("split", (k, l))


@dataclass(frozen=True)
class Slice:
    """A generator with passive strands ``left`` and ``right`` beside it."""

    generator: Generator
    left: tuple[int, ...] = ()
    right: tuple[int, ...] = ()

    @property
    def position(self) -> int:
        return len(self.left)

    @property
    def domain(self) -> tuple[int, ...]:
        return self.left + self.generator.domain + self.right

    @property
    def codomain(self) -> tuple[int, ...]:
        return self.left + self.generator.codomain + self.right

    def padded(self, left: tuple[int, ...], right: tuple[int, ...]) -> Slice:
        return Slice(self.generator, left + self.left, self.right + right)


def slice_at(gen: Generator, ambient: Sequence[int], position: int) -> Slice:
    """Place ``gen`` at ``position`` inside the ambient domain labels."""
    ambient = tuple(ambient)
    n = len(gen.domain)
    if ambient[position:position + n] != gen.domain:
        raise ValueError(f"{gen} does not fit at position {position} of {ambient}")
    return Slice(gen, ambient[:position], ambient[position + n:])


@dataclass(frozen=True)
class WebWord:
    """Bottom-to-top sequence of slices; empty means the identity on ``domain``."""

    domain: tuple[int, ...]
    slices: tuple[Slice, ...] = ()

    def __post_init__(self):
        cur = tuple(self.domain)
        for s in self.slices:
            if s.domain != cur:
                raise ValueError(f"slice {s.generator} expects {s.domain}, got {cur}")
            cur = s.codomain
        object.__setattr__(self, "domain", tuple(self.domain))
        object.__setattr__(self, "_codomain", cur)

    @property
    def codomain(self) -> tuple[int, ...]:
        return self._codomain  # type: ignore[attr-defined]

    def then(self, other: WebWord) -> WebWord:
        """``other`` stacked on top of ``self``."""
        return WebWord(self.domain, self.slices + other.slices)

    def tensor(self, other: WebWord) -> WebWord:
        lower = tuple(s.padded((), other.domain) for s in self.slices)
        upper = tuple(s.padded(self.codomain, ()) for s in other.slices)
        return WebWord(self.domain + other.domain, lower + upper)

    def label_sum(self) -> int:
        return sum(sum(s.generator.domain) + sum(s.generator.codomain) for s in self.slices)

    def __len__(self) -> int:
        return len(self.slices)

    def dsl(self) -> str:
        """Render in the web DSL, top slice first."""
        if not self.slices:
            return _ids(self.domain) or "id()"
        out = []
        for s in reversed(self.slices):
            parts = [f"id({x})" for x in s.left] + [s.generator.dsl()] + [f"id({x})" for x in s.right]
            out.append(" x ".join(parts))
        return " ; ".join(f"({p})" if " x " in p and len(out) > 1 else p for p in out)


def _ids(labels: Sequence[int]) -> str:
    return " x ".join(f"id({x})" for x in labels)


@dataclass(frozen=True)
class WebMorphism:
    """Formal combination ``(1/denom) * sum(coeff * word)``.

    The denominator stays formal and is divided out exactly when matrices
    are computed, so scalars never leave the Laurent ring.
    """

    domain: WebObject
    codomain: WebObject
    terms: tuple[tuple[WebWord, LaurentHalf], ...] = ()
    denom: LaurentHalf = field(default=ONE)

    # -- constructors -------------------------------------------------------

    @classmethod
    def build(cls, domain, codomain, terms: Iterable[tuple[WebWord, Scalar]], denom: Scalar = 1) -> WebMorphism:
        dom, cod = WebObject.of(domain), WebObject.of(codomain)
        acc: dict[WebWord, LaurentHalf] = {}
        for w, c in terms:
            if w.domain != dom.labels or w.codomain != cod.labels:
                raise ValueError(f"word {w.domain}->{w.codomain} does not match {dom}->{cod}")
            acc[w] = acc.get(w, ZERO) + LaurentHalf.coerce(c)
        items = tuple((w, c) for w, c in acc.items() if c)
        d = LaurentHalf.coerce(denom)
        if d.is_zero():
            raise ZeroDivisionError("zero denominator")
        if not items:
            d = ONE
        return cls(dom, cod, items, d)

    @classmethod
    def from_word(cls, word: WebWord, coeff: Scalar = 1) -> WebMorphism:
        return cls.build(word.domain, word.codomain, [(word, coeff)])

    @classmethod
    def identity(cls, labels) -> WebMorphism:
        obj = WebObject.of(labels)
        if obj.zero:
            return cls.zero(obj, obj)
        return cls.from_word(WebWord(obj.labels))

    @classmethod
    def zero(cls, domain, codomain) -> WebMorphism:
        return cls(WebObject.of(domain), WebObject.of(codomain))

    @classmethod
    def gen(cls, g: Generator) -> WebMorphism:
        return cls.from_word(WebWord(g.domain, (Slice(g),)))

    # -- inspection ---------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_closed(self) -> bool:
        return not self.domain.labels and not self.codomain.labels and not self.domain.zero

    def words(self) -> list[WebWord]:
        return [w for w, _ in self.terms]

    def __len__(self) -> int:
        return len(self.terms)

    # -- linear structure ---------------------------------------------------

    def _check_same(self, other: WebMorphism):
        if (self.domain, self.codomain) != (other.domain, other.codomain):
            raise ValueError(
                f"cannot add morphisms {self.domain}->{self.codomain} and {other.domain}->{other.codomain}"
            )

    def __add__(self, other: WebMorphism) -> WebMorphism:
        if not isinstance(other, WebMorphism):
            return NotImplemented
        self._check_same(other)
        if other.is_zero():
            return self
        if self.is_zero():
            return other
        if self.denom == other.denom:
            return WebMorphism.build(self.domain, self.codomain, self.terms + other.terms, self.denom)
        a = [(w, c * other.denom) for w, c in self.terms]
        b = [(w, c * self.denom) for w, c in other.terms]
        return WebMorphism.build(self.domain, self.codomain, a + b, self.denom * other.denom)

    def __neg__(self) -> WebMorphism:
        return self.scale(-1)

    def __sub__(self, other: WebMorphism) -> WebMorphism:
        return self + (-other)

    def scale(self, c: Scalar) -> WebMorphism:
        c = LaurentHalf.coerce(c)
        return WebMorphism.build(self.domain, self.codomain, [(w, x * c) for w, x in self.terms], self.denom)

    def divide(self, d: Scalar) -> WebMorphism:
        """Multiply the formal denominator by ``d``."""
        return WebMorphism.build(self.domain, self.codomain, self.terms, self.denom * LaurentHalf.coerce(d))

    def __mul__(self, c: Scalar) -> WebMorphism:
        if isinstance(c, (int, LaurentHalf)):
            return self.scale(c)
        return NotImplemented

    __rmul__ = __mul__

    # -- monoidal structure -------------------------------------------------

    def __matmul__(self, other: WebMorphism) -> WebMorphism:
        """``self @ other`` is ``self`` composed after ``other``."""
        return compose(self, other)

    def tensor(self, other: WebMorphism) -> WebMorphism:
        return tensor(self, other)

    def then(self, other: WebMorphism) -> WebMorphism:
        return compose(other, self)

    def __str__(self) -> str:
        if self.is_zero():
            return f"0 : {self.domain} -> {self.codomain}"
        body = " + ".join(f"({c}) {w.dsl()}" if c != 1 else w.dsl() for w, c in self.terms)
        if self.denom != 1:
            body = f"1/({self.denom}) * [{body}]"
        return body


def compose(v: WebMorphism, u: WebMorphism) -> WebMorphism:
    """``v`` after ``u``. Mismatched boundaries give the zero morphism."""
    if u.codomain != v.domain or u.codomain.zero:
        return WebMorphism.zero(u.domain, v.codomain)
    terms = [(a.then(b), ca * cb) for a, ca in u.terms for b, cb in v.terms]
    if not terms:
        return WebMorphism.zero(u.domain, v.codomain)
    return WebMorphism.build(u.domain, v.codomain, terms, u.denom * v.denom)


def compose_all(*ms: WebMorphism) -> WebMorphism:
    """``compose_all(a, b, c)`` is ``a ∘ b ∘ c`` (``c`` at the bottom)."""
    out = ms[-1]
    for m in reversed(ms[:-1]):
        out = compose(m, out)
    return out


def tensor(u: WebMorphism, v: WebMorphism) -> WebMorphism:
    dom = u.domain.tensor(v.domain)
    cod = u.codomain.tensor(v.codomain)
    if dom.zero or cod.zero:
        return WebMorphism.zero(dom, cod)
    terms = [(a.tensor(b), ca * cb) for a, ca in u.terms for b, cb in v.terms]
    if not terms:
        return WebMorphism.zero(dom, cod)
    return WebMorphism.build(dom, cod, terms, u.denom * v.denom)


def tensor_all(*ms: WebMorphism) -> WebMorphism:
    out = ms[0]
    for m in ms[1:]:
        out = tensor(out, m)
    return out


def identity(*labels: int) -> WebMorphism:
    return WebMorphism.identity(labels)


def gen(g: Generator) -> WebMorphism:
    return WebMorphism.gen(g)


def at(g: Generator, ambient: Sequence[int], position: int) -> WebMorphism:
    """Single-slice morphism placing ``g`` at ``position`` of ``ambient``."""
    s = slice_at(g, ambient, position)
    return WebMorphism.from_word(WebWord(s.domain, (s,)))


def circle(k: int) -> WebMorphism:
    return compose(gen(Cap(k)), gen(Cup(k)))


# -- ladders -----------------------------------------------------------------


def _pos(labels: Sequence[int], index: int) -> int:
    # index into the zero-erased object
    return sum(1 for x in labels[:index] if x)


def _erase(labels: Sequence[int]) -> tuple[int, ...]:
    return tuple(x for x in labels if x)


def _ladder(weight: Sequence[int], i: int, j: int, upward: bool) -> WebMorphism:
    w = [int(x) for x in weight]
    if any(x < 0 for x in w):
        raise ValueError(f"ladder weights must be nonnegative, got {w}")
    if not 0 <= i < len(w) - 1:
        raise ValueError(f"ladder index {i + 1} out of range for {len(w)} strands")
    if j < 0:
        raise ValueError("ladder rung thickness must be nonnegative")
    dom = _erase(w)
    if j == 0:
        return WebMorphism.identity(dom)
    src, dst = (i, i + 1) if upward else (i + 1, i)
    rest = w[src] - j
    if rest < 0:
        return WebMorphism.zero(dom, WebObject.zero_object())
    out = WebMorphism.identity(dom)
    # split j off the source strand, keeping it on the side facing dst
    if upward:
        mid = w[:src] + [rest, j] + w[src + 1:]
        if rest:
            out = compose(at(Split(rest, j), dom, _pos(w, src)), out)
        final = w[:i] + [rest, j + w[i + 1]] + w[i + 2:]
        if w[i + 1]:
            out = compose(at(Merge(j, w[i + 1]), _erase(mid), _pos(mid, i + 1)), out)
    else:
        mid = w[:src] + [j, rest] + w[src + 1:]
        if rest:
            out = compose(at(Split(j, rest), dom, _pos(w, src)), out)
        final = w[:i] + [w[i] + j, rest] + w[i + 2:]
        if w[i]:
            out = compose(at(Merge(w[i], j), _erase(mid), _pos(mid, i)), out)
    assert out.codomain.labels == _erase(final)
    return out


def f_ladder(m: int, i: int, j: int, weight: Sequence[int]) -> WebMorphism:
    """Move thickness ``j`` from strand ``i`` to strand ``i+1`` (1-based)."""
    if len(weight) != m:
        raise ValueError(f"weight {tuple(weight)} does not have {m} entries")
    return _ladder(weight, i - 1, j, True)


def e_ladder(m: int, i: int, j: int, weight: Sequence[int]) -> WebMorphism:
    """Move thickness ``j`` from strand ``i+1`` to strand ``i`` (1-based)."""
    if len(weight) != m:
        raise ValueError(f"weight {tuple(weight)} does not have {m} entries")
    return _ladder(weight, i - 1, j, False)


def ladder_codomain(weight: Sequence[int], i: int, j: int, upward: bool) -> list[int]:
    """Weight after an F (``upward``) or E ladder at 1-based strand ``i``."""
    w = list(weight)
    d = j if upward else -j
    w[i - 1] -= d
    w[i] += d
    return w


def explode(k: int) -> WebMorphism:
    """Left-nested splits (k) -> (k-1,1) -> ... -> (1,...,1)."""
    if k < 1:
        raise ValueError("explode expects k >= 1")
    out = identity(k)
    for a in range(k - 1, 0, -1):
        cur = (a + 1,) + (1,) * (k - a - 1)
        out = compose(at(Split(a, 1), cur, 0), out)
    return out


def assemble(k: int) -> WebMorphism:
    """Left-nested merges (1,...,1) -> (2,1,...) -> ... -> (k)."""
    if k < 1:
        raise ValueError("assemble expects k >= 1")
    out = identity(*([1] * k))
    for a in range(1, k):
        cur = (a,) + (1,) * (k - a)
        out = compose(at(Merge(a, 1), cur, 0), out)
    return out


def nested_caps(labels: Sequence[int]) -> WebMorphism:
    """Close ``labels ++ reversed(labels)`` with nested caps, innermost first."""
    labels = tuple(labels)
    n = len(labels)
    full = labels + labels[::-1]
    out = WebMorphism.identity(full)
    for i in range(n - 1, -1, -1):
        cur = labels[: i + 1] + labels[: i + 1][::-1]
        out = compose(at(Cap(labels[i]), cur, i), out)
    return out


def nested_cups(labels: Sequence[int]) -> WebMorphism:
    """Create ``labels ++ reversed(labels)`` with nested cups, outermost first."""
    labels = tuple(labels)
    out = WebMorphism.identity(())
    for i in range(len(labels)):
        cur = labels[:i] + labels[:i][::-1]
        out = compose(at(Cup(labels[i]), cur, i), out)
    return out


def ladders(weight: Sequence[int], steps: Iterable[tuple[str, int, int]]) -> WebMorphism:
    """Stack ladders bottom to top; each step is ``("F"|"E", i, j)`` with 1-based ``i``.

    Intermediate weights with a negative entry make the whole word zero.
    """
    w = [int(x) for x in weight]
    dom = _erase(w)
    out = WebMorphism.identity(dom)
    dead = False
    for kind, i, j in steps:
        if kind not in ("F", "E"):
            raise ValueError(f"unknown ladder kind {kind!r}")
        nxt = ladder_codomain(w, i, j, kind == "F")
        if dead or min(w) < 0 or min(nxt) < 0:
            dead = True
        else:
            rung = _ladder(w, i - 1, j, kind == "F")
            out = compose(rung, out)
        w = nxt
    if dead:
        cod = WebObject.zero_object() if min(w) < 0 else WebObject(_erase(w))
        return WebMorphism.zero(dom, cod)
    return out
