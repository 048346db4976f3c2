"""Crossings as ladder sums, colored braid words and their trace closures."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence

from .qpoly import ONE, LaurentHalf
from .repbackend import IntertwinerMatrix, evaluate
from .spider import (
    WebMorphism,
    WebObject,
    compose,
    identity,
    ladders,
    nested_caps,
    nested_cups,
    tensor_all,
)

MODES = ("framed", "paper", "self-writhe", "ribbon")


def _sign_unit(k: int) -> int:
    return -1 if k % 2 else 1


@dataclass(frozen=True)
class CrossingTerm:
    j1: int
    j2: int
    coeff: LaurentHalf


@dataclass(frozen=True)
class CrossingExpansion:
    """Ladder sum of one crossing; each term is rung ``j1`` below rung ``j2``."""

    colors: tuple[int, int]
    sign: int
    terms: tuple[CrossingTerm, ...]
    lower: str
    upper: str

    def morphism(self, weight: Sequence[int] | None = None, i: int = 1) -> WebMorphism:
        w = list(weight) if weight is not None else list(self.colors)
        out = None
        for t in self.terms:
            m = ladders(w, [(self.lower, i, t.j1), (self.upper, i, t.j2)])
            if m.is_zero():
                continue
            m = m.scale(t.coeff)
            out = m if out is None else out + m
        if out is None:
            raise ValueError(f"empty crossing expansion for {self.colors}")
        return out


@lru_cache(maxsize=None)
def expansion(k: int, l: int, sign: int) -> CrossingExpansion:
    """Coefficients of the crossing with bottom colors (k, l).

    Positive: (-1)^k q^(-k-kl/2) sum (-q)^j1 E^(j2) F^(j1), j1 - j2 = k - l.
    Negative: the inverse of the positive crossing with colors (l, k),
    (-1)^l q^(l+kl/2) sum (-q)^(-j1) F^(j2) E^(j1), j1 - j2 = l - k.
    """
    if k < 0 or l < 0:
        raise ValueError("crossing colors must be nonnegative")
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    terms = []
    if sign == 1:
        pre = LaurentHalf.monomial(-2 * k - k * l, _sign_unit(k))
        for j1 in range(max(0, k - l), k + 1):
            j2 = j1 - (k - l)
            terms.append(CrossingTerm(j1, j2, pre * LaurentHalf.monomial(2 * j1, _sign_unit(j1))))
        return CrossingExpansion((k, l), 1, tuple(terms), "F", "E")
    pre = LaurentHalf.monomial(2 * l + k * l, _sign_unit(l))
    for j1 in range(max(0, l - k), l + 1):
        j2 = j1 - (l - k)
        terms.append(CrossingTerm(j1, j2, pre * LaurentHalf.monomial(-2 * j1, _sign_unit(j1))))
    return CrossingExpansion((k, l), -1, tuple(terms), "E", "F")


def crossing(k: int, l: int, sign: int = 1) -> WebMorphism:
    """Crossing from colors (k, l) to (l, k); the over-strand starts on the left for ``sign=+1``."""
    if k < 1 or l < 1:
        raise ValueError("crossing colors must be positive")
    return expansion(k, l, sign).morphism()


def braiding_inverse(k: int, l: int) -> WebMorphism:
    """Inverse of the positive crossing (k, l) -> (l, k), so from (l, k) to (k, l)."""
    return crossing(l, k, -1)


def lusztig_T(m: int, i: int, weight: Sequence[int], sign: int = 1) -> WebMorphism:
    """Crossing expansion acting on strands ``i, i+1`` (1-based) of an m-strand weight."""
    if len(weight) != m:
        raise ValueError(f"weight {tuple(weight)} does not have {m} entries")
    if not 1 <= i < m:
        raise ValueError(f"index {i} out of range for {m} strands")
    if any(x < 0 for x in weight):
        raise ValueError("weights must be nonnegative")
    k, l = weight[i - 1], weight[i]
    if k == 0 or l == 0:
        return WebMorphism.identity([x for x in weight if x])
    return expansion(k, l, sign).morphism(weight, i)


@dataclass(frozen=True)
class ColoredBraidWord:
    colors: tuple[int, ...]
    word: tuple[tuple[int, int], ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "colors", tuple(int(c) for c in self.colors))
        object.__setattr__(self, "word", tuple((int(i), int(s)) for i, s in self.word))
        if not self.colors or any(c < 1 for c in self.colors):
            raise ValueError("colors must be positive integers")
        for i, s in self.word:
            if not 1 <= i < len(self.colors):
                raise ValueError(f"generator s{i} out of range for {len(self.colors)} strands")
            if s not in (1, -1):
                raise ValueError("letter signs must be +1 or -1")

    @property
    def m(self) -> int:
        return len(self.colors)

    @classmethod
    def parse(cls, text: str, colors: Iterable[int]) -> ColoredBraidWord:
        """Tokens like ``s1 s2 S1``; a capital ``S`` is the inverse generator."""
        word = []
        for tok in text.replace(",", " ").split():
            if len(tok) < 2 or tok[0] not in "sS" or not tok[1:].isdigit():
                raise ValueError(f"bad braid token {tok!r}")
            word.append((int(tok[1:]), 1 if tok[0] == "s" else -1))
        return cls(tuple(colors), tuple(word))

    def text(self) -> str:
        return " ".join(("s" if s > 0 else "S") + str(i) for i, s in self.word)

    def permutation(self) -> list[int]:
        """``perm[p]`` is the bottom strand that ends at top position ``p``."""
        perm = list(range(self.m))
        for i, _ in self.word:
            perm[i - 1], perm[i] = perm[i], perm[i - 1]
        return perm

    def components(self) -> list[list[int]]:
        perm = self.permutation()
        seen, out = set(), []
        for p in range(self.m):
            if p in seen:
                continue
            cyc, x = [], p
            while x not in seen:
                seen.add(x)
                cyc.append(x)
                x = perm[x]
            out.append(sorted(cyc))
        return out

    def top_colors(self) -> tuple[int, ...]:
        return tuple(self.colors[p] for p in self.permutation())

    def check_closable(self):
        if self.top_colors() != self.colors:
            raise ValueError("colors must be constant along each component of the closure")

    def mirror(self) -> ColoredBraidWord:
        return ColoredBraidWord(self.colors, tuple((i, -s) for i, s in self.word))


def _letter(colors: Sequence[int], i: int, sign: int) -> WebMorphism:
    k, l = colors[i - 1], colors[i]
    parts = [identity(*colors[: i - 1]), crossing(k, l, sign), identity(*colors[i + 1:])]
    return tensor_all(*parts)


def braid_to_morphism(b: ColoredBraidWord) -> WebMorphism:
    colors = list(b.colors)
    out = WebMorphism.identity(colors)
    for i, s in b.word:
        out = compose(_letter(colors, i, s), out)
        colors[i - 1], colors[i] = colors[i], colors[i - 1]
    return out


def braid_matrix(b: ColoredBraidWord) -> IntertwinerMatrix:
    """Matrix of the braid, multiplying one letter at a time."""
    colors = list(b.colors)
    out = IntertwinerMatrix.identity(colors)
    for i, s in b.word:
        out = _letter_matrix(tuple(colors), i, s) @ out
        colors[i - 1], colors[i] = colors[i], colors[i - 1]
    return out


@lru_cache(maxsize=None)
def _letter_matrix(colors: tuple[int, ...], i: int, sign: int) -> IntertwinerMatrix:
    k, l = colors[i - 1], colors[i]
    m = evaluate(crossing(k, l, sign))
    left = IntertwinerMatrix.identity(colors[: i - 1])
    right = IntertwinerMatrix.identity(colors[i + 1:])
    return left.kron(m).kron(right)


@lru_cache(maxsize=None)
def _closure_ends(colors: tuple[int, ...]) -> tuple[IntertwinerMatrix, IntertwinerMatrix]:
    caps = evaluate(nested_caps(colors))
    cups = evaluate(nested_cups(colors))
    return caps, cups


def trace_closure_matrix(m: IntertwinerMatrix) -> LaurentHalf:
    if m.domain != m.codomain:
        raise ValueError(f"trace closure needs equal boundaries, got {m.domain} -> {m.codomain}")
    colors = m.domain
    if not colors:
        return m.scalar()
    caps, cups = _closure_ends(colors)
    rest = IntertwinerMatrix.identity(colors[::-1])
    return (caps @ m.kron(rest) @ cups).scalar()


def trace_closure(u: WebMorphism) -> LaurentHalf:
    """Close every strand to the right with nested arcs and evaluate."""
    if u.domain != u.codomain:
        raise ValueError(f"trace closure needs equal boundaries, got {u.domain} -> {u.codomain}")
    return trace_closure_matrix(evaluate(u))


def closed_web(u: WebMorphism) -> WebMorphism:
    """The closure as a web, for use with the simplifier or DSL printing."""
    colors = u.domain.labels
    body = tensor_all(u, WebMorphism.identity(colors[::-1])) if colors else u
    return compose(nested_caps(colors), compose(body, nested_cups(colors)))


def casimir_twist(c: int) -> LaurentHalf:
    """-q^C with C = (c^2 + 2c)/2."""
    return LaurentHalf.monomial(c * c + 2 * c, -1)


def kink_eigenvalue(c: int) -> LaurentHalf:
    """What a positive curl on a c-colored strand multiplies by: (-1)^c q^C."""
    return LaurentHalf.monomial(c * c + 2 * c, -1 if c % 2 else 1)


def _twist_power(c: int, w: int) -> LaurentHalf:
    # (-q^C)^(-w)
    return LaurentHalf.monomial(-w * (c * c + 2 * c), -1 if w % 2 else 1)


def _kink_power(c: int, w: int) -> LaurentHalf:
    # ((-1)^c q^C)^(-w)
    return LaurentHalf.monomial(-w * (c * c + 2 * c), -1 if (w * c) % 2 else 1)


def writhes(b: ColoredBraidWord) -> dict[int, int]:
    """Self-writhe of each component, keyed by its smallest bottom position."""
    comp_of = {}
    for cyc in b.components():
        for p in cyc:
            comp_of[p] = cyc[0]
    pos = list(range(b.m))
    out = {cyc[0]: 0 for cyc in b.components()}
    for i, s in b.word:
        a, c = pos[i - 1], pos[i]
        if comp_of[a] == comp_of[c]:
            out[comp_of[a]] += s
        pos[i - 1], pos[i] = c, a
    return out


def normalization(b: ColoredBraidWord, mode: str) -> LaurentHalf:
    """Framing correction.

    ``paper`` and ``self-writhe`` use (-q^C)^(-w), which cancels curls only
    for odd colors; ``ribbon`` divides by the actual curl eigenvalue and is
    an isotopy invariant for every coloring.
    """
    if mode == "framed":
        return ONE
    if mode == "paper":
        colors = list(b.colors)
        out = ONE
        for i, s in b.word:
            k, l = colors[i - 1], colors[i]
            if k != l:
                raise ValueError("mode 'paper' is only defined when crossing strands share a color")
            out = out * _twist_power(k, s)
            colors[i - 1], colors[i] = l, k
        return out
    if mode in ("self-writhe", "ribbon"):
        power = _twist_power if mode == "self-writhe" else _kink_power
        out = ONE
        for start, w in writhes(b).items():
            out = out * power(b.colors[start], w)
        return out
    raise ValueError(f"unknown normalization mode {mode!r}; choose from {', '.join(MODES)}")


def colored_jones(b: ColoredBraidWord, mode: str = "paper") -> LaurentHalf:
    if mode not in MODES:
        raise ValueError(f"unknown normalization mode {mode!r}; choose from {', '.join(MODES)}")
    b.check_closable()
    factor = normalization(b, mode)
    return trace_closure_matrix(braid_matrix(b)) * factor


def unknot(c: int) -> ColoredBraidWord:
    return ColoredBraidWord((c,), ())
