"""Exact Laurent polynomials in q^(1/2) with integer coefficients.

Exponents are stored in half-units: the key ``n`` stands for ``q^(n/2)``.
"""

from __future__ import annotations

import re
from functools import lru_cache
from typing import Iterable, Mapping, Union


class InexactDivisionError(ArithmeticError):
    """Raised when an exact Laurent division leaves a remainder."""


Scalar = Union["LaurentHalf", int]


class LaurentHalf:
    """Immutable element of Z[q^(1/2), q^(-1/2)].

    >>> q = LaurentHalf.q()
    >>> print((q + q**-1) * (q + q**-1))
    q^2 + 2 + q^-2
    >>> print(LaurentHalf.monomial(3))
    q^{3/2}
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[int, int] | None = None):
        clean = {}
        if terms:
            for n, c in terms.items():
                if c:
                    clean[int(n)] = int(c)
        self._terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, terms: dict) -> LaurentHalf:
        # terms already canonical
        obj = cls.__new__(cls)
        obj._terms = terms
        obj._hash = None
        return obj

    # -- constructors -------------------------------------------------------

    @classmethod
    def monomial(cls, half_exp: int, coeff: int = 1) -> LaurentHalf:
        """``coeff * q^(half_exp/2)``."""
        return cls({half_exp: coeff})

    @classmethod
    def q(cls, power: int = 1) -> LaurentHalf:
        """``q^power`` for an integer power."""
        return cls({2 * power: 1})

    @classmethod
    def const(cls, c: int) -> LaurentHalf:
        return cls({0: c})

    @classmethod
    def coerce(cls, x: Scalar) -> LaurentHalf:
        if isinstance(x, LaurentHalf):
            return x
        if isinstance(x, int):
            return cls({0: x})
        raise TypeError(f"cannot coerce {type(x).__name__} to LaurentHalf")

    # -- inspection ---------------------------------------------------------

    @property
    def terms(self) -> dict[int, int]:
        return dict(self._terms)

    def items(self) -> list[tuple[int, int]]:
        """Terms sorted by descending half-exponent."""
        return sorted(self._terms.items(), reverse=True)

    def is_zero(self) -> bool:
        return not self._terms

    def is_integral(self) -> bool:
        """True when every exponent is a whole power of q."""
        return all(n % 2 == 0 for n in self._terms)

    def is_monomial(self) -> bool:
        return len(self._terms) == 1

    def top(self) -> int:
        return max(self._terms)

    def bottom(self) -> int:
        return min(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = LaurentHalf.const(other)
        if not isinstance(other, LaurentHalf):
            return NotImplemented
        return self._terms == other._terms

    # -- ring operations ----------------------------------------------------

    def __add__(self, other: Scalar) -> LaurentHalf:
        if isinstance(other, int):
            other = LaurentHalf.const(other)
        elif not isinstance(other, LaurentHalf):
            return NotImplemented
        if not other._terms:
            return self
        if not self._terms:
            return other
        out = dict(self._terms)
        for n, c in other._terms.items():
            s = out.get(n, 0) + c
            if s:
                out[n] = s
            else:
                out.pop(n, None)
        return LaurentHalf._raw(out)

    __radd__ = __add__

    def __neg__(self) -> LaurentHalf:
        return LaurentHalf._raw({n: -c for n, c in self._terms.items()})

    def __sub__(self, other: Scalar) -> LaurentHalf:
        if isinstance(other, int):
            other = LaurentHalf.const(other)
        elif not isinstance(other, LaurentHalf):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other: Scalar) -> LaurentHalf:
        return LaurentHalf.coerce(other) - self

    def __mul__(self, other: Scalar) -> LaurentHalf:
        if isinstance(other, int):
            if other == 0:
                return ZERO
            return LaurentHalf._raw({n: c * other for n, c in self._terms.items()})
        if not isinstance(other, LaurentHalf):
            return NotImplemented
        a, b = self._terms, other._terms
        if not a or not b:
            return ZERO
        if len(a) < len(b):
            a, b = b, a
        out: dict[int, int] = {}
        for m, d in b.items():
            for n, c in a.items():
                k = n + m
                out[k] = out.get(k, 0) + c * d
        return LaurentHalf._raw({k: v for k, v in out.items() if v})

    __rmul__ = __mul__

    def __pow__(self, e: int) -> LaurentHalf:
        if e < 0:
            if not self.is_monomial() or abs(next(iter(self._terms.values()))) != 1:
                raise InexactDivisionError("only unit monomials have negative powers")
            (n, c), = self._terms.items()
            return LaurentHalf({n * e: c ** (-e)})
        result = ONE
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def shift(self, half_exp: int) -> LaurentHalf:
        """Multiply by ``q^(half_exp/2)``."""
        return LaurentHalf._raw({n + half_exp: c for n, c in self._terms.items()})

    def bar(self) -> LaurentHalf:
        """The involution q^(1/2) -> q^(-1/2)."""
        return LaurentHalf._raw({-n: c for n, c in self._terms.items()})

    # -- division -----------------------------------------------------------

    def divmod(self, other: Scalar) -> tuple[LaurentHalf, LaurentHalf]:
        """Long division by the top term of ``other``.

        Both operands are shifted to honest polynomials in q^(1/2); the
        quotient is shifted back. The remainder is zero iff ``other``
        divides ``self`` in the Laurent ring.
        """
        other = LaurentHalf.coerce(other)
        if other.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        if self.is_zero():
            return ZERO, ZERO
        lo_a, lo_b = self.bottom(), other.bottom()
        rem = {n - lo_a: c for n, c in self._terms.items()}
        div = {n - lo_b: c for n, c in other._terms.items()}
        db = max(div)
        lead = div[db]
        quot: dict[int, int] = {}
        while rem:
            da = max(rem)
            if da < db:
                break
            c = rem[da]
            if c % lead:
                break
            t = c // lead
            shift = da - db
            quot[shift] = t
            for n, d in div.items():
                k = n + shift
                v = rem.get(k, 0) - t * d
                if v:
                    rem[k] = v
                else:
                    rem.pop(k, None)
        q_ = LaurentHalf._raw({n + lo_a - lo_b: c for n, c in quot.items()})
        r_ = LaurentHalf._raw({n + lo_a: c for n, c in rem.items()})
        return q_, r_

    def exact_div(self, other: Scalar) -> LaurentHalf:
        quo, rem = self.divmod(other)
        if rem:
            raise InexactDivisionError(f"({self}) is not divisible by ({LaurentHalf.coerce(other)})")
        return quo

    def divides(self, other: Scalar) -> bool:
        """True when ``self`` divides ``other`` exactly."""
        return not LaurentHalf.coerce(other).divmod(self)[1]

    # -- evaluation & formats -----------------------------------------------

    def evaluate(self, q: float) -> float:
        return sum(c * q ** (n / 2) for n, c in self._terms.items())

    def __repr__(self) -> str:
        return f"LaurentHalf('{self}')"

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for i, (n, c) in enumerate(self.items()):
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            mono = _format_power(n)
            if mono == "":
                body = str(mag)
            elif mag == 1:
                body = mono
            else:
                body = f"{mag}*{mono}"
            if i == 0:
                parts.append(("-" if sign == "-" else "") + body)
            else:
                parts.append(f" {sign} {body}")
        return "".join(parts)

    def to_json(self) -> list[list[int]]:
        """List of ``[half_exponent, coefficient]`` pairs, descending."""
        return [[n, c] for n, c in self.items()]

    @classmethod
    def from_json(cls, data: Iterable) -> LaurentHalf:
        out: dict[int, int] = {}
        for n, c in data:
            out[int(n)] = out.get(int(n), 0) + int(c)
        return cls(out)

    @classmethod
    def parse(cls, text: str) -> LaurentHalf:
        """Inverse of ``str``; also accepts ``2q``, ``q^(1/2)`` and ``q^{-1}``."""
        return parse_laurent(text)


def _format_power(n: int) -> str:
    if n == 0:
        return ""
    if n % 2:
        return f"q^{{{n}/2}}"
    e = n // 2
    return "q" if e == 1 else f"q^{e}"


_TERM = re.compile(
    r"""\s*(?P<sign>[+-])?\s*
        (?P<coeff>\d+)?\s*\*?\s*
        (?P<q>q(?:\s*\^\s*(?P<exp>
            [{(]\s*-?\s*\d+\s*(?:/\s*2\s*)?[})]
            | -?\d+
        ))?)?\s*""",
    re.VERBOSE,
)


def parse_laurent(text: str) -> LaurentHalf:
    s = text.strip()
    if not s:
        raise ValueError("empty polynomial")
    if s == "0":
        return ZERO
    pos = 0
    out: dict[int, int] = {}
    first = True
    while pos < len(s):
        m = _TERM.match(s, pos)
        if not m or m.end() == pos or (m.group("coeff") is None and m.group("q") is None):
            raise ValueError(f"cannot parse polynomial at column {pos + 1}: {text!r}")
        if not first and m.group("sign") is None:
            raise ValueError(f"missing '+' or '-' at column {pos + 1}: {text!r}")
        first = False
        sign = -1 if m.group("sign") == "-" else 1
        coeff = int(m.group("coeff")) if m.group("coeff") else 1
        half = 0
        if m.group("q"):
            exp = m.group("exp")
            if exp is None:
                half = 2
            else:
                body = exp.strip("{}() ").replace(" ", "")
                if body.endswith("/2"):
                    half = int(body[:-2])
                else:
                    half = 2 * int(body)
        out[half] = out.get(half, 0) + sign * coeff
        pos = m.end()
    return LaurentHalf(out)


ZERO = LaurentHalf()
ONE = LaurentHalf({0: 1})
Q = LaurentHalf({2: 1})
QINV = LaurentHalf({-2: 1})


@lru_cache(maxsize=None)
def qint(a: int) -> LaurentHalf:
    """Quantum integer [a] = q^(a-1) + q^(a-3) + ... + q^(1-a) for a >= 0.

    >>> print(qint(3))
    q^2 + 1 + q^-2
    """
    if a < 0:
        raise ValueError("qint expects a >= 0; use -qint(-a) for negative arguments")
    return LaurentHalf({2 * (a - 1 - 2 * i): 1 for i in range(a)})


def qint_signed(a: int) -> LaurentHalf:
    """[a] for any integer a, using [-a] = -[a]."""
    return qint(a) if a >= 0 else -qint(-a)


@lru_cache(maxsize=None)
def qfact(b: int) -> LaurentHalf:
    """[b]! = [1][2]...[b], with [0]! = 1."""
    if b < 0:
        raise ValueError("qfact expects b >= 0")
    out = ONE
    for i in range(1, b + 1):
        out = out * qint(i)
    return out


@lru_cache(maxsize=None)
def qbinom(a: int, b: int) -> LaurentHalf:
    """Quantum binomial [a][a-1]...[a-b+1] / [b]! for integer a and b >= 0."""
    if b < 0:
        raise ValueError("qbinom expects b >= 0")
    num = ONE
    for i in range(b):
        num = num * qint_signed(a - i)
    return num.exact_div(qfact(b))


def bar(a: Scalar) -> LaurentHalf:
    return LaurentHalf.coerce(a).bar()


def qint_factors(d: Scalar, limit: int = 40) -> tuple[int, list[int]] | None:
    """Write ``d`` as ``±q^(n/2) * [j1][j2]...`` by trial division.

    Returns ``(n, js)`` where ``js`` holds the quantum integers and a ``-1``
    entry marks a negative sign, or None when ``d`` has another factor.
    """
    d = LaurentHalf.coerce(d)
    if d.is_zero():
        return None
    js: list[int] = []
    for j in range(limit, 1, -1):
        f = qint(j)
        while True:
            quo, rem = d.divmod(f)
            if rem:
                break
            d = quo
            js.append(j)
    if not d.is_monomial() or abs(next(iter(d.terms.values()))) != 1:
        return None
    (n, c), = d.terms.items()
    if c < 0:
        js.append(-1)
    return n, js
