"""A small text syntax for webs.

    expr    := term (('+' | '-') term)*
    term    := ['-'] scalar* [factor (';' factor)*]
    factor  := primary ('x' primary)*
    primary := atom | '(' expr ')'
    atom    := id(k, ...) | cap(k) | cup(k) | m(k,l) | s(k,l)
    scalar  := [k] | [k]! | q | q^n | q^{n/2} | integer

``a ; b`` is ``a`` stacked on top of ``b``, so ``cap(1) ; cup(1)`` is a
circle. Tensor binds tighter than ``;``, which binds tighter than ``+``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Union

from .qpoly import ONE, LaurentHalf, qfact, qint
from .spider import Cap, Cup, Merge, Split, WebMorphism, compose, gen, identity, tensor


class DslSyntaxError(ValueError):
    def __init__(self, message: str, line: int, col: int):
        super().__init__(f"line {line}, column {col}: {message}")
        self.line, self.col = line, col


class DslBoundaryError(ValueError):
    pass


# -- AST ---------------------------------------------------------------------


@dataclass(frozen=True)
class Atom:
    name: str
    args: tuple[int, ...]


@dataclass(frozen=True)
class ScalarLit:
    kind: str  # "int", "qint", "qfact", "qpow"
    value: int  # qpow stores the half-exponent


@dataclass(frozen=True)
class Tensor:
    parts: tuple["Node", ...]


@dataclass(frozen=True)
class Compose:
    parts: tuple["Node", ...]  # top first


@dataclass(frozen=True)
class Scaled:
    scalars: tuple[ScalarLit, ...]
    body: "Node"


@dataclass(frozen=True)
class Sum:
    terms: tuple[tuple[int, "Node"], ...]


Node = Union[Atom, Tensor, Compose, Scaled, Sum]

ARITY = {"id": None, "cap": 1, "cup": 1, "m": 2, "s": 2}


# -- tokenizer ---------------------------------------------------------------------

_TOKEN = re.compile(
    r"""(?P<ws>[ \t\r]+)
      | (?P<nl>\n)
      | (?P<qpow>q\s*\^\s*(?:\{\s*-?\d+\s*(?:/\s*2\s*)?\}|\(\s*-?\d+\s*(?:/\s*2\s*)?\)|-?\d+))
      | (?P<name>[A-Za-z_]+)
      | (?P<int>\d+)
      | (?P<op>[-+;()\[\]!,*])""",
    re.VERBOSE,
)


@dataclass
class Tok:
    kind: str
    text: str
    line: int
    col: int


def tokenize(src: str) -> list[Tok]:
    out, pos, line, lstart = [], 0, 1, 0
    while pos < len(src):
        m = _TOKEN.match(src, pos)
        if not m:
            raise DslSyntaxError(f"unexpected character {src[pos]!r}", line, pos - lstart + 1)
        kind = m.lastgroup
        if kind == "nl":
            line, lstart = line + 1, m.end()
        elif kind != "ws":
            out.append(Tok(kind, m.group(), line, m.start() - lstart + 1))
        pos = m.end()
    out.append(Tok("eof", "", line, pos - lstart + 1))
    return out


class _Parser:
    def __init__(self, src: str):
        self.toks = tokenize(src)
        self.i = 0

    def peek(self) -> Tok:
        return self.toks[self.i]

    def take(self) -> Tok:
        t = self.toks[self.i]
        self.i += 1
        return t

    def error(self, msg: str, tok: Tok | None = None):
        tok = tok or self.peek()
        raise DslSyntaxError(msg, tok.line, tok.col)

    def expect(self, text: str) -> Tok:
        t = self.peek()
        if t.text != text:
            self.error(f"expected {text!r}, found {t.text or 'end of input'!r}")
        return self.take()

    def parse(self) -> Node:
        node = self.expr()
        if self.peek().kind != "eof":
            self.error(f"unexpected {self.peek().text!r}")
        return node

    def expr(self) -> Node:
        terms = []
        sign = 1
        if self.peek().text == "-":
            self.take()
            sign = -1
        terms.append((sign, self.term()))
        while self.peek().text in ("+", "-"):
            sign = 1 if self.take().text == "+" else -1
            terms.append((sign, self.term()))
        if len(terms) == 1 and terms[0][0] == 1:
            return terms[0][1]
        return Sum(tuple(terms))

    def _starts_scalar(self) -> bool:
        t = self.peek()
        return t.kind in ("int", "qpow") or t.text == "[" or (t.kind == "name" and t.text == "q")

    def scalar(self) -> ScalarLit:
        t = self.take()
        if t.kind == "int":
            return ScalarLit("int", int(t.text))
        if t.kind == "qpow":
            body = re.sub(r"\s", "", t.text.split("^", 1)[1]).strip("{}()")
            if body.endswith("/2"):
                return ScalarLit("qpow", int(body[:-2]))
            return ScalarLit("qpow", 2 * int(body))
        if t.text == "q":
            return ScalarLit("qpow", 2)
        # [k] or [k]!
        n = self.take()
        if n.kind != "int":
            self.error("expected an integer inside [ ]", n)
        self.expect("]")
        if self.peek().text == "!":
            self.take()
            return ScalarLit("qfact", int(n.text))
        return ScalarLit("qint", int(n.text))

    def term(self) -> Node:
        scalars = []
        while self._starts_scalar():
            scalars.append(self.scalar())
            if self.peek().text == "*":
                self.take()
        if self.peek().kind == "name" or self.peek().text == "(":
            parts = [self.factor()]
            while self.peek().text == ";":
                self.take()
                parts.append(self.factor())
            body = parts[0] if len(parts) == 1 else Compose(tuple(parts))
        elif scalars:
            body = Atom("id", ())
        else:
            self.error(f"expected a web, found {self.peek().text or 'end of input'!r}")
        return Scaled(tuple(scalars), body) if scalars else body

    def factor(self) -> Node:
        parts = [self.primary()]
        while self.peek().kind == "name" and self.peek().text == "x":
            self.take()
            parts.append(self.primary())
        return parts[0] if len(parts) == 1 else Tensor(tuple(parts))

    def primary(self) -> Node:
        t = self.peek()
        if t.text == "(":
            self.take()
            node = self.expr()
            self.expect(")")
            return node
        if t.kind != "name":
            self.error(f"expected a generator, found {t.text or 'end of input'!r}")
        if t.text not in ARITY:
            self.error(f"unknown generator {t.text!r}")
        self.take()
        self.expect("(")
        args = []
        if self.peek().kind == "int":
            args.append(int(self.take().text))
            while self.peek().text == ",":
                self.take()
                n = self.take()
                if n.kind != "int":
                    self.error("expected an integer argument", n)
                args.append(int(n.text))
        self.expect(")")
        want = ARITY[t.text]
        if want is not None and len(args) != want:
            self.error(f"{t.text} takes {want} argument(s), got {len(args)}", t)
        if any(a <= 0 for a in args):
            self.error("thickness arguments must be positive", t)
        return Atom(t.text, tuple(args))


def parse_web(src: str) -> Node:
    return _Parser(src).parse()


# -- printing ---------------------------------------------------------------------


def _scalar_text(s: ScalarLit) -> str:
    if s.kind == "int":
        return str(s.value)
    if s.kind == "qint":
        return f"[{s.value}]"
    if s.kind == "qfact":
        return f"[{s.value}]!"
    if s.value % 2:
        return f"q^{{{s.value}/2}}"
    return "q" if s.value == 2 else f"q^{s.value // 2}"


def to_text(node: Node) -> str:
    """Print with just enough parentheses that ``parse_web`` rebuilds the same tree."""
    if isinstance(node, Atom):
        return f"{node.name}({','.join(map(str, node.args))})"
    if isinstance(node, Tensor):
        return " x ".join(
            f"({to_text(p)})" if isinstance(p, (Tensor, Compose, Sum, Scaled)) else to_text(p) for p in node.parts
        )
    if isinstance(node, Compose):
        return " ; ".join(
            f"({to_text(p)})" if isinstance(p, (Sum, Scaled, Compose)) else to_text(p) for p in node.parts
        )
    if isinstance(node, Scaled):
        body = to_text(node.body)
        if isinstance(node.body, Sum) or (isinstance(node.body, Scaled)):
            body = f"({body})"
        return " ".join(_scalar_text(s) for s in node.scalars) + " " + body
    if isinstance(node, Sum):
        out = []
        for n, (sign, t) in enumerate(node.terms):
            txt = to_text(t)
            if isinstance(t, Sum):
                txt = f"({txt})"
            if n == 0:
                out.append(("- " if sign < 0 else "") + txt)
            else:
                out.append(("- " if sign < 0 else "+ ") + txt)
        return " ".join(out)
    raise TypeError(node)


# -- elaboration -----------------------------------------------------------------------


def scalar_value(s: ScalarLit) -> LaurentHalf:
    if s.kind == "int":
        return LaurentHalf.const(s.value)
    if s.kind == "qint":
        return qint(s.value)
    if s.kind == "qfact":
        return qfact(s.value)
    return LaurentHalf.monomial(s.value)


def elaborate(node: Node, warnings: list[str] | None = None) -> WebMorphism:
    """Build the morphism; mismatched compositions become zero with a warning."""
    warn = warnings if warnings is not None else []
    if isinstance(node, Atom):
        a = node.args
        if node.name == "id":
            return identity(*a)
        if node.name == "cap":
            return gen(Cap(a[0]))
        if node.name == "cup":
            return gen(Cup(a[0]))
        if node.name == "m":
            return gen(Merge(*a))
        return gen(Split(*a))
    if isinstance(node, Tensor):
        out = elaborate(node.parts[0], warn)
        for p in node.parts[1:]:
            out = tensor(out, elaborate(p, warn))
        return out
    if isinstance(node, Compose):
        ms = [elaborate(p, warn) for p in node.parts]
        out = ms[-1]
        for upper in reversed(ms[:-1]):
            if out.codomain != upper.domain:
                warn.append(f"boundary mismatch: {out.codomain} does not meet {upper.domain}; result is zero")
            out = compose(upper, out)
        return out
    if isinstance(node, Scaled):
        c = ONE
        for s in node.scalars:
            c = c * scalar_value(s)
        return elaborate(node.body, warn).scale(c)
    if isinstance(node, Sum):
        parts = [elaborate(t, warn).scale(sign) for sign, t in node.terms]
        out = parts[0]
        for p in parts[1:]:
            if (p.domain, p.codomain) != (out.domain, out.codomain):
                raise DslBoundaryError(
                    f"cannot add terms {out.domain}->{out.codomain} and {p.domain}->{p.codomain}"
                )
            out = out + p
        return out
    raise TypeError(node)


def parse_and_elaborate(src: str) -> tuple[WebMorphism, list[str]]:
    warnings: list[str] = []
    return elaborate(parse_web(src), warnings), warnings
