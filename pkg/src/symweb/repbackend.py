"""Evaluate webs as exact intertwiners between tensor products of quantum symmetric powers.

Sym^k of the 2-dimensional module has basis v_0..v_k, where v_j is the image
of the word 1...12...2 with j twos. Words project to this basis through
x2 x1 = q x1 x2, so a word w maps to q^inv(w) times its sorted version.
Tensor bases are enumerated lexicographically in the per-factor indices.
"""

from __future__ import annotations

import itertools
from functools import lru_cache
from typing import Iterable, Sequence

from .qpoly import ONE, ZERO, LaurentHalf, qbinom, qint, qint_factors
from .spider import (
    Cap,
    Cup,
    Generator,
    Merge,
    Split,
    WebMorphism,
    WebObject,
    WebWord,
    assemble,
    compose,
    explode,
    gen,
    identity,
    nested_caps,
    nested_cups,
    tensor,
)

Index = tuple[int, ...]


def basis(labels: Sequence[int]) -> list[Index]:
    return list(itertools.product(*(range(k + 1) for k in labels)))


def qpow(half: int) -> LaurentHalf:
    return LaurentHalf.monomial(half)


class IntertwinerMatrix:
    """Sparse matrix over LaurentHalf with rows indexed by the codomain basis.

    ``den`` is a tuple of Laurent factors whose product divides the whole
    matrix. It stays empty unless a thick cup or a formal denominator is
    involved; thick cups carry 1/[k]! and are not Laurent in this basis.
    """

    __slots__ = ("domain", "codomain", "entries", "den")

    def __init__(self, domain: Sequence[int], codomain: Sequence[int], entries: dict | None = None,
                 den: Iterable[LaurentHalf] = ()):
        self.domain = tuple(domain)
        self.codomain = tuple(codomain)
        self.entries: dict[tuple[Index, Index], LaurentHalf] = {
            k: v for k, v in (entries or {}).items() if v
        }
        self.den: tuple[LaurentHalf, ...] = ()
        if den:
            self._absorb(den)

    def _absorb(self, factors: Iterable[LaurentHalf]):
        # split each factor into a unit and quantum integers where possible
        pieces = list(self.den)
        for f in factors:
            f = LaurentHalf.coerce(f)
            fac = qint_factors(f)
            if fac is None:
                pieces.append(f)
                continue
            n, js = fac
            sign = -1 if -1 in js else 1
            if n or sign < 0:
                unit = LaurentHalf.monomial(-n, sign)
                self.entries = {k: v * unit for k, v in self.entries.items()}
            pieces.extend(qint(j) for j in js if j > 1)
        if not self.entries:
            self.den = ()
            return
        keep = []
        for f in sorted(pieces, key=lambda x: (len(x.terms), x.to_json()), reverse=True):
            trial = {}
            for k, v in self.entries.items():
                quo, rem = v.divmod(f)
                if rem:
                    break
                trial[k] = quo
            else:
                self.entries = trial
                continue
            keep.append(f)
        self.den = tuple(sorted(keep, key=lambda x: x.to_json()))

    @classmethod
    def identity(cls, labels: Sequence[int]) -> IntertwinerMatrix:
        return cls(labels, labels, {(b, b): ONE for b in basis(labels)})

    @classmethod
    def from_columns(cls, domain, codomain, cols: dict[Index, dict[Index, LaurentHalf]],
                     den: Iterable[int] = ()) -> IntertwinerMatrix:
        return cls(domain, codomain, {(r, c): v for c, vec in cols.items() for r, v in vec.items()}, den)

    def denominator(self) -> LaurentHalf:
        out = ONE
        for f in self.den:
            out = out * f
        return out

    def is_integral(self) -> bool:
        return not self.den

    def columns(self) -> dict[Index, dict[Index, LaurentHalf]]:
        out: dict[Index, dict[Index, LaurentHalf]] = {}
        for (r, c), v in self.entries.items():
            out.setdefault(c, {})[r] = v
        return out

    def __getitem__(self, key: tuple[Index, Index]) -> LaurentHalf:
        """Exact entry; raises InexactDivisionError for a genuinely fractional one."""
        v = self.entries.get(key, ZERO)
        return v.exact_div(self.denominator()) if self.den else v

    def fraction(self, key: tuple[Index, Index]) -> tuple[LaurentHalf, LaurentHalf]:
        return self.entries.get(key, ZERO), self.denominator()

    def shape(self) -> tuple[int, int]:
        return len(basis(self.codomain)), len(basis(self.domain))

    def is_zero(self) -> bool:
        return not self.entries

    def _lifted(self, den: tuple[LaurentHalf, ...]) -> dict:
        # numerators rescaled to the common denominator ``den``
        extra = list(den)
        for f in self.den:
            extra.remove(f)
        g = ONE
        for f in extra:
            g = g * f
        if g == 1:
            return self.entries
        return {k: v * g for k, v in self.entries.items()}

    def _common(self, other: IntertwinerMatrix) -> tuple[LaurentHalf, ...]:
        rest = list(other.den)
        for f in self.den:
            if f in rest:
                rest.remove(f)
        return tuple(self.den) + tuple(rest)

    def __eq__(self, other) -> bool:
        if not isinstance(other, IntertwinerMatrix):
            return NotImplemented
        if (self.domain, self.codomain) != (other.domain, other.codomain):
            return False
        if self.den == other.den:
            return self.entries == other.entries
        d = self._common(other)
        return self._lifted(d) == other._lifted(d)

    def __hash__(self):
        return hash((self.domain, self.codomain))

    def _same(self, other: IntertwinerMatrix):
        if (self.domain, self.codomain) != (other.domain, other.codomain):
            raise ValueError(f"shape mismatch {self.domain}->{self.codomain} vs {other.domain}->{other.codomain}")

    def __add__(self, other: IntertwinerMatrix) -> IntertwinerMatrix:
        self._same(other)
        d = self._common(other)
        out = dict(self._lifted(d))
        for k, v in other._lifted(d).items():
            out[k] = out.get(k, ZERO) + v
        return IntertwinerMatrix(self.domain, self.codomain, out, d)

    def __neg__(self) -> IntertwinerMatrix:
        return self.scale(-1)

    def __sub__(self, other: IntertwinerMatrix) -> IntertwinerMatrix:
        return self + (-other)

    def scale(self, c) -> IntertwinerMatrix:
        c = LaurentHalf.coerce(c)
        return IntertwinerMatrix(self.domain, self.codomain, {k: v * c for k, v in self.entries.items()}, self.den)

    def __rmul__(self, c) -> IntertwinerMatrix:
        return self.scale(c)

    def exact_div(self, d) -> IntertwinerMatrix:
        d = LaurentHalf.coerce(d)
        if d == 1:
            return self
        return IntertwinerMatrix(self.domain, self.codomain,
                                 {k: v.exact_div(d) for k, v in self.entries.items()}, self.den)

    def divide_by(self, factors: Iterable) -> IntertwinerMatrix:
        """Divide by a product of Laurent factors, keeping a formal denominator if needed."""
        return IntertwinerMatrix(self.domain, self.codomain, self.entries,
                                 self.den + tuple(LaurentHalf.coerce(f) for f in factors))

    def __matmul__(self, other: IntertwinerMatrix) -> IntertwinerMatrix:
        """Matrix product: ``self`` after ``other``."""
        if other.codomain != self.domain:
            raise ValueError(f"cannot compose {self.domain}->{self.codomain} after {other.domain}->{other.codomain}")
        rows_of: dict[Index, list[tuple[Index, LaurentHalf]]] = {}
        for (r, c), v in self.entries.items():
            rows_of.setdefault(c, []).append((r, v))
        out: dict[tuple[Index, Index], LaurentHalf] = {}
        for (m, c), v in other.entries.items():
            for r, w in rows_of.get(m, ()):
                key = (r, c)
                out[key] = out.get(key, ZERO) + w * v
        return IntertwinerMatrix(other.domain, self.codomain, out, self.den + other.den)

    def kron(self, other: IntertwinerMatrix) -> IntertwinerMatrix:
        out = {}
        for (r1, c1), a in self.entries.items():
            for (r2, c2), b in other.entries.items():
                out[(r1 + r2, c1 + c2)] = a * b
        return IntertwinerMatrix(self.domain + other.domain, self.codomain + other.codomain, out,
                                 self.den + other.den)

    def trace(self) -> LaurentHalf:
        if self.domain != self.codomain:
            raise ValueError("trace of a non-square intertwiner")
        out = ZERO
        for (r, c), v in self.entries.items():
            if r == c:
                out = out + v
        return out.exact_div(self.denominator()) if self.den else out

    def scalar(self) -> LaurentHalf:
        if self.domain or self.codomain:
            raise ValueError(f"not a closed value: {self.domain}->{self.codomain}")
        return self[((), ())]

    def to_rows(self) -> list[list[LaurentHalf]]:
        rows, cols = basis(self.codomain), basis(self.domain)
        return [[self[(r, c)] for c in cols] for r in rows]

    def to_json(self) -> dict:
        return {
            "schema": 1,
            "domain": list(self.domain),
            "codomain": list(self.codomain),
            "rows": [list(b) for b in basis(self.codomain)],
            "cols": [list(b) for b in basis(self.domain)],
            "denominator": self.denominator().to_json(),
            "entries": [
                [list(r), list(c), v.to_json()]
                for (r, c), v in sorted(self.entries.items())
            ],
        }

    def __str__(self) -> str:
        head = f"{WebObject(self.domain)} -> {WebObject(self.codomain)}"
        if self.den:
            head += f"  (all entries divided by {self.denominator()})"
        lines = [head]
        for (r, c), v in sorted(self.entries.items()):
            lines.append(f"  {list(r)} <- {list(c)} : {v}")
        return "\n".join(lines)

    __repr__ = __str__


# -- generator matrices ---------------------------------------------------------

Local = dict[Index, list[tuple[Index, LaurentHalf]]]


def _local_from_matrix(m: IntertwinerMatrix) -> Local:
    out: Local = {}
    for (r, c), v in m.entries.items():
        out.setdefault(c, []).append((r, v))
    return out


def _merge(k: int, l: int) -> IntertwinerMatrix:
    # project the concatenation 1^(k-a) 2^a 1^(l-b) 2^b
    ent = {((a + b,), (a, b)): qpow(2 * a * (l - b)) for a in range(k + 1) for b in range(l + 1)}
    return IntertwinerMatrix((k, l), (k + l,), ent)


def _split(k: int, l: int) -> IntertwinerMatrix:
    ent = {}
    for n in range(k + l + 1):
        for a in range(max(0, n - l), min(k, n) + 1):
            b = n - a
            ent[((a, b), (n,))] = qpow(-2 * b * (k - a)) * qbinom(n, a) * qbinom(k + l - n, k - a)
    return IntertwinerMatrix((k + l,), (k, l), ent)


_CAP1 = IntertwinerMatrix((1, 1), (), {((), (0, 1)): -LaurentHalf.q(1), ((), (1, 0)): ONE})
_CUP1 = IntertwinerMatrix((), (1, 1), {((0, 1), ()): ONE, ((1, 0), ()): -LaurentHalf.q(-1)})


class InconsistentGeneratorError(RuntimeError):
    pass


@lru_cache(maxsize=None)
def gen_matrix(g: Generator) -> IntertwinerMatrix:
    """Matrix of a single generator, memoized."""
    kind, p = g.kind, g.params
    if kind == "id":
        return IntertwinerMatrix.identity(p)
    if kind == "merge":
        return _merge(*p)
    if kind == "split":
        k, l = p
        s = _split(k, l)
        if _merge(k, l) @ s != IntertwinerMatrix.identity((k + l,)).scale(qbinom(k + l, l)):
            raise InconsistentGeneratorError(f"digon removal fails for split({k},{l})")
        return s
    k = p[0]
    if kind == "cap":
        if k == 1:
            return _CAP1
        # peel one 1-strand off each side; equal to the full cascade by coassociativity
        word = compose(
            gen(Cap(k - 1)),
            compose(
                tensor(tensor(identity(k - 1), gen(Cap(1))), identity(k - 1)),
                tensor(gen(Split(k - 1, 1)), gen(Split(1, k - 1))),
            ),
        )
        return evaluate(word).divide_by([qint(k)])
    if kind == "cup":
        if k == 1:
            return _CUP1
        word = compose(
            tensor(gen(Merge(k - 1, 1)), gen(Merge(1, k - 1))),
            compose(tensor(tensor(identity(k - 1), gen(Cup(1))), identity(k - 1)), gen(Cup(k - 1))),
        )
        return evaluate(word).divide_by([qint(k)])
    raise ValueError(kind)


def thick_cap_by_cascade(k: int) -> IntertwinerMatrix:
    """Cap(k) straight from its definition: 1-caps on exploded strands, over [k]!."""
    word = compose(nested_caps((1,) * k), tensor(explode(k), explode(k)))
    return evaluate(word).divide_by(qint(j) for j in range(2, k + 1))


def thick_cup_by_cascade(k: int) -> IntertwinerMatrix:
    word = compose(tensor(assemble(k), assemble(k)), nested_cups((1,) * k))
    return evaluate(word).divide_by(qint(j) for j in range(2, k + 1))


@lru_cache(maxsize=None)
def _local(g: Generator) -> tuple[Local, tuple[LaurentHalf, ...]]:
    m = gen_matrix(g)
    return _local_from_matrix(m), m.den


# -- evaluation -------------------------------------------------------------------


def _word_den(word: WebWord) -> tuple[LaurentHalf, ...]:
    out: list[LaurentHalf] = []
    for s in word.slices:
        if s.generator.kind != "id":
            out.extend(_local(s.generator)[1])
    return tuple(out)


def _apply_word(word: WebWord, vec: dict[Index, LaurentHalf]) -> dict[Index, LaurentHalf]:
    """Numerator of the word applied to ``vec``; see ``_word_den`` for the denominator."""
    for s in word.slices:
        g = s.generator
        if g.kind == "id":
            continue
        loc = _local(g)[0]
        p = len(s.left)
        n = len(g.domain)
        new: dict[Index, LaurentHalf] = {}
        for idx, c in vec.items():
            for row, d in loc.get(idx[p:p + n], ()):
                key = idx[:p] + row + idx[p + n:]
                v = new.get(key, ZERO) + c * d
                if v:
                    new[key] = v
                else:
                    new.pop(key, None)
        vec = new
        if not vec:
            break
    return vec


@lru_cache(maxsize=8192)
def word_matrix(word: WebWord) -> IntertwinerMatrix:
    cols = {b: _apply_word(word, {b: ONE}) for b in basis(word.domain)}
    return IntertwinerMatrix.from_columns(word.domain, word.codomain, cols, _word_den(word))


def evaluate(u: WebMorphism) -> IntertwinerMatrix:
    """Exact matrix of a web morphism; the formal denominator must divide every entry."""
    if u.domain.zero or u.codomain.zero:
        raise ValueError("cannot evaluate a morphism with a zero-object boundary")
    m = IntertwinerMatrix(u.domain.labels, u.codomain.labels)
    for w, c in u.terms:
        m = m + word_matrix(w).scale(c)
    if u.denom == 1:
        return m
    return m.divide_by([u.denom])


eval_morphism = evaluate


def eval_closed(u: WebMorphism) -> LaurentHalf:
    if not u.is_closed():
        raise ValueError(f"closed web expected, got {u.domain} -> {u.codomain}")
    return evaluate(u).scalar()


def equal(u: WebMorphism, v: WebMorphism) -> bool:
    """Semantic equality; zero morphisms compare by matrix."""
    if u.is_zero() and v.is_zero():
        return True
    if u.is_zero() or v.is_zero():
        other = v if u.is_zero() else u
        if other.domain.zero or other.codomain.zero:
            return False
        return evaluate(other).is_zero()
    return evaluate(u) == evaluate(v)


def zero_matrix(domain: Sequence[int], codomain: Sequence[int]) -> IntertwinerMatrix:
    return IntertwinerMatrix(domain, codomain)


# -- quantum group action -------------------------------------------------------------


def _word_action(word: Index, op: str) -> list[tuple[Index, int]]:
    """Iterated coproduct of E or F on a word in letters 1/2; returns (word, half exponent)."""
    wt = [1 if x == 1 else -1 for x in word]
    out = []
    for p, x in enumerate(word):
        if op == "E" and x == 2:
            # E at p, K on everything to its right
            out.append((word[:p] + (1,) + word[p + 1:], 2 * sum(wt[p + 1:])))
        elif op == "F" and x == 1:
            # F at p, K^-1 on everything to its left
            out.append((word[:p] + (2,) + word[p + 1:], -2 * sum(wt[:p])))
    return out


def _project(word: Index) -> tuple[int, int]:
    inv = sum(1 for i in range(len(word)) for j in range(i + 1, len(word)) if word[i] == 2 and word[j] == 1)
    return word.count(2), 2 * inv


@lru_cache(maxsize=None)
def sym_action(k: int) -> dict[str, IntertwinerMatrix]:
    """E, F, K, K^-1 on Sym^k, pushed through the projection from words."""
    mats: dict[str, dict] = {"E": {}, "F": {}, "K": {}, "Kinv": {}}
    for j in range(k + 1):
        lift = (1,) * (k - j) + (2,) * j
        mats["K"][((j,), (j,))] = qpow(2 * (k - 2 * j))
        mats["Kinv"][((j,), (j,))] = qpow(-2 * (k - 2 * j))
        for op in ("E", "F"):
            for w, e in _word_action(lift, op):
                jj, inv = _project(w)
                key = ((jj,), (j,))
                mats[op][key] = mats[op].get(key, ZERO) + qpow(e + inv)
    return {n: IntertwinerMatrix((k,), (k,), m) for n, m in mats.items()}


def word_projection(k: int) -> IntertwinerMatrix:
    """Projection from (1,...,1) words onto Sym^k, as a matrix."""
    ent = {}
    for w in itertools.product((0, 1), repeat=k):
        j, inv = _project(tuple(x + 1 for x in w))
        ent[((j,), w)] = qpow(inv)
    return IntertwinerMatrix((1,) * k, (k,), ent)


def tensor_action(labels: Sequence[int]) -> dict[str, IntertwinerMatrix]:
    """Action on a tensor product via Delta(E)=E(x)K+1(x)E, Delta(F)=F(x)1+K^-1(x)F."""
    labels = tuple(labels)
    if not labels:
        one = IntertwinerMatrix.identity(())
        return {"E": zero_matrix((), ()), "F": zero_matrix((), ()), "K": one, "Kinv": one}
    acc = sym_action(labels[0])
    for k in labels[1:]:
        b = sym_action(k)
        ida, idb = IntertwinerMatrix.identity(acc["K"].domain), IntertwinerMatrix.identity((k,))
        acc = {
            "E": acc["E"].kron(b["K"]) + ida.kron(b["E"]),
            "F": acc["F"].kron(idb) + acc["Kinv"].kron(b["F"]),
            "K": acc["K"].kron(b["K"]),
            "Kinv": acc["Kinv"].kron(b["Kinv"]),
        }
    return acc


def is_intertwiner(m: IntertwinerMatrix) -> bool:
    src, dst = tensor_action(m.domain), tensor_action(m.codomain)
    return all(m @ src[x] == dst[x] @ m for x in ("E", "F", "K"))


def matrices_equal(pairs: Iterable[tuple[WebMorphism, WebMorphism]]) -> bool:
    return all(equal(a, b) for a, b in pairs)
