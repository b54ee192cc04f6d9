"""The free quandle: conjugates ``g^-1 s g`` of generators in a free group."""
from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Mapping, Sequence

from .terms import Gen, Op, Term

Letter = tuple[str, int]
Word = tuple[Letter, ...]


def reduce_word(word) -> Word:
    out: list[Letter] = []
    for letter in word:
        if out and out[-1][0] == letter[0] and out[-1][1] == -letter[1]:
            out.pop()
        else:
            out.append(letter)
    return tuple(out)


def invert_word(word: Word) -> Word:
    return tuple((s, -e) for s, e in reversed(word))


@dataclass(frozen=True, order=True)
class FreeQuandleElement:
    """``conjugator^-1 * base * conjugator`` in normal form: the conjugator
    is freely reduced and does not start with ``base`` or its inverse."""

    base: str
    conjugator: Word = ()

    @classmethod
    def normal(cls, base: str, conjugator) -> FreeQuandleElement:
        g = list(reduce_word(conjugator))
        # s^k g and g conjugate s to the same element
        i = 0
        while i < len(g) and g[i][0] == base:
            i += 1
        return cls(base, tuple(g[i:]))

    def star(self, other: FreeQuandleElement) -> FreeQuandleElement:
        return free_quandle_op(self, other)

    def bar(self, other: FreeQuandleElement) -> FreeQuandleElement:
        return free_quandle_op(self, other, inverse=True)

    __mul__ = star
    __truediv__ = bar

    def group_word(self) -> Word:
        """The element as a reduced word in the free group."""
        return reduce_word(invert_word(self.conjugator) + ((self.base, 1),) + self.conjugator)

    def symbols(self) -> set[str]:
        return {self.base} | {s for s, _ in self.conjugator}

    def evaluate(self, q, assign: Mapping[str, int]) -> int:
        x = assign[self.base]
        for s, e in self.conjugator:
            x = q.op(x, assign[s]) if e > 0 else q.inv_op(x, assign[s])
        return x

    def to_term(self) -> Term:
        out: Term = Gen(self.base)
        for s, e in self.conjugator:
            out = Op(out, Gen(s), e < 0)
        return out

    def __str__(self):
        if not self.conjugator:
            return self.base
        g = "".join(s if e > 0 else s + "^-1" for s, e in self.conjugator)
        return f"({g})^-1 {self.base} ({g})"


def free_quandle_op(x: FreeQuandleElement, y: FreeQuandleElement, inverse: bool = False) -> FreeQuandleElement:
    """``(g^-1 s g) * (h^-1 t h) = (g h^-1 t h)^-1 s (g h^-1 t h)``; the
    inverse operation uses ``t^-1`` in the middle."""
    middle = ((y.base, -1 if inverse else 1),)
    return FreeQuandleElement.normal(x.base, x.conjugator + invert_word(y.conjugator) + middle + y.conjugator)


def free_generator(name: str) -> FreeQuandleElement:
    return FreeQuandleElement(name, ())


def term_to_free(term: Term) -> FreeQuandleElement:
    if isinstance(term, Gen):
        return free_generator(term.name)
    return free_quandle_op(term_to_free(term.left), term_to_free(term.right), term.inverse)


def random_free_element(generators: Sequence[str], max_length: int, rng: random.Random) -> FreeQuandleElement:
    base = rng.choice(generators)
    word = [(rng.choice(generators), rng.choice((1, -1))) for _ in range(rng.randint(0, max_length))]
    return FreeQuandleElement.normal(base, word)
