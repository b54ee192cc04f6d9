"""Quandle terms, presentations, and the ``.qdl`` presentation language.

Grammar (whitespace insignificant, ``#`` starts a comment)::

    presentation := '<' gens '|' rels '>'
    gens         := ident (',' ident)*
    rels         := [rel (',' rel)*]
    rel          := expr '=' expr
    expr         := term (op term)*
    op           := '*' | '/' | '*^' int | '/^' int
    term         := ident | '(' expr ')'

``/`` is the inverse operation. Operators share one precedence level and
associate to the left; ``x *^n y`` is ``x`` acted on ``n`` times by ``y``.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterator, Mapping, Sequence


class PresentationSyntaxError(ValueError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at position {position}")
        self.position = position


class UnknownGenerator(PresentationSyntaxError):
    pass


class Term:
    """Base class for ground terms over the generators."""

    __slots__ = ()

    def __mul__(self, other: Term) -> Term:
        return Op(self, other, False)

    def __truediv__(self, other: Term) -> Term:
        return Op(self, other, True)

    def power(self, other: Term, n: int) -> Term:
        """``self *^n other``; negative ``n`` iterates ``/``."""
        out = self
        for _ in range(abs(n)):
            out = Op(out, other, n < 0)
        return out


@dataclass(frozen=True)
class Gen(Term):
    name: str

    def symbols(self) -> set[str]:
        return {self.name}

    @property
    def base(self) -> str:
        return self.name

    @property
    def size(self) -> int:
        return 1

    def evaluate(self, q, assign: Mapping[str, int]) -> int:
        return assign[self.name]

    def substitute(self, mapping: Mapping[str, Term]) -> Term:
        return mapping.get(self.name, self)

    def __str__(self):
        return self.name


@dataclass(frozen=True)
class Op(Term):
    left: Term
    right: Term
    inverse: bool = False

    def symbols(self) -> set[str]:
        return self.left.symbols() | self.right.symbols()

    @property
    def base(self) -> str:
        return self.left.base

    @property
    def size(self) -> int:
        return self.left.size + self.right.size

    def evaluate(self, q, assign: Mapping[str, int]) -> int:
        x = self.left.evaluate(q, assign)
        y = self.right.evaluate(q, assign)
        return q.inv_op(x, y) if self.inverse else q.op(x, y)

    def substitute(self, mapping: Mapping[str, Term]) -> Term:
        return Op(self.left.substitute(mapping), self.right.substitute(mapping), self.inverse)

    def __str__(self):
        right = str(self.right)
        if isinstance(self.right, Op):
            right = f"({right})"
        return f"{self.left}{'/' if self.inverse else '*'}{right}"


@dataclass(frozen=True)
class Relation:
    lhs: Term
    rhs: Term

    def symbols(self) -> set[str]:
        return self.lhs.symbols() | self.rhs.symbols()

    def __str__(self):
        return f"{self.lhs} = {self.rhs}"


@dataclass(frozen=True)
class Presentation:
    generators: tuple[str, ...]
    relations: tuple[Relation, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "generators", tuple(self.generators))
        object.__setattr__(self, "relations", tuple(self.relations))
        if not self.generators:
            raise ValueError("a presentation needs at least one generator")
        if len(set(self.generators)) != len(self.generators):
            raise ValueError("duplicate generator")
        known = set(self.generators)
        for rel in self.relations:
            unknown = rel.symbols() - known
            if unknown:
                raise ValueError(f"relation {rel} uses unknown generator(s) {sorted(unknown)}")

    @classmethod
    def parse(cls, text: str) -> Presentation:
        return parse_presentation(text)

    def add_relation(self, rel: Relation) -> Presentation:
        return Presentation(self.generators, self.relations + (rel,))

    def __str__(self):
        return f"< {', '.join(self.generators)} | {', '.join(str(r) for r in self.relations)} >"


_TOKEN = re.compile(r"\s*(?:(#[^\n]*)|([A-Za-z_][A-Za-z0-9_']*)|(\d+)|(.))", re.S)


def _tokens(text: str) -> Iterator[tuple[str, str, int]]:
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None or m.end() == pos:
            break
        pos = m.end()
        comment, ident, number, char = m.groups()
        if comment is not None:
            continue
        start = m.start(m.lastindex)
        if ident is not None:
            yield ("ident", ident, start)
        elif number is not None:
            yield ("int", number, start)
        elif char is not None and not char.isspace():
            yield ("sym", char, start)
    yield ("end", "", len(text))


class _Parser:
    def __init__(self, text: str, generators: Sequence[str] | None = None):
        self.toks = list(_tokens(text))
        self.i = 0
        self.generators = None if generators is None else set(generators)

    @property
    def peek(self):
        return self.toks[self.i]

    def take(self, kind: str | None = None, value: str | None = None):
        tok = self.peek
        if (kind and tok[0] != kind) or (value and tok[1] != value):
            want = value or kind
            got = tok[1] or "end of input"
            raise PresentationSyntaxError(f"expected {want!r}, got {got!r}", tok[2])
        self.i += 1
        return tok

    def presentation(self) -> Presentation:
        self.take("sym", "<")
        gens = [self.take("ident")[1]]
        while self.peek[:2] == ("sym", ","):
            self.take()
            gens.append(self.take("ident")[1])
        if len(set(gens)) != len(gens):
            raise PresentationSyntaxError("duplicate generator", self.peek[2])
        self.generators = set(gens)
        self.take("sym", "|")
        rels = []
        if self.peek[:2] != ("sym", ">"):
            rels.append(self.relation())
            while self.peek[:2] == ("sym", ","):
                self.take()
                rels.append(self.relation())
        self.take("sym", ">")
        self.take("end")
        return Presentation(tuple(gens), tuple(rels))

    def relation(self) -> Relation:
        lhs = self.expr()
        self.take("sym", "=")
        return Relation(lhs, self.expr())

    def expr(self) -> Term:
        out = self.term()
        while self.peek[0] == "sym" and self.peek[1] in "*/":
            inverse = self.take()[1] == "/"
            n = 1
            if self.peek[:2] == ("sym", "^"):
                self.take()
                if self.peek[:2] == ("sym", "-"):
                    raise PresentationSyntaxError("negative iteration count", self.peek[2])
                n = int(self.take("int")[1])
            acting = self.term()
            for _ in range(n):
                out = Op(out, acting, inverse)
        return out

    def term(self) -> Term:
        tok = self.peek
        if tok[:2] == ("sym", "("):
            self.take()
            inner = self.expr()
            self.take("sym", ")")
            return inner
        name = self.take("ident")[1]
        if self.generators is not None and name not in self.generators:
            raise UnknownGenerator(f"unknown generator {name!r}", tok[2])
        return Gen(name)


def parse_presentation(text: str) -> Presentation:
    return _Parser(text).presentation()


def parse_term(text: str, generators: Sequence[str] | None = None) -> Term:
    p = _Parser(text, generators)
    t = p.expr()
    p.take("end")
    return t


def parse_relation(text: str, generators: Sequence[str] | None = None) -> Relation:
    p = _Parser(text, generators)
    r = p.relation()
    p.take("end")
    return r
