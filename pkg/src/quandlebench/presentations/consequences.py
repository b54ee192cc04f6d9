"""Deduction moves on relation sets in the free quandle, and a bounded
search for consequences."""
from __future__ import annotations

from enum import Enum
from typing import Iterable, Sequence

from .free import FreeQuandleElement, free_generator, term_to_free
from .terms import Presentation, Relation

Pair = tuple[FreeQuandleElement, FreeQuandleElement]


class MalformedMove(ValueError):
    pass


class Verdict(str, Enum):
    YES = "yes"
    UNKNOWN = "unknown"


def relation_pairs(pres: Presentation) -> tuple[Pair, ...]:
    return tuple((term_to_free(r.lhs), term_to_free(r.rhs)) for r in pres.relations)


def _extend(R: Sequence[Pair], new: Iterable[Pair]) -> tuple[Pair, ...]:
    out = list(R)
    seen = set(out)
    for p in new:
        if p not in seen:
            seen.add(p)
            out.append(p)
    return tuple(out)


def _member(R, pair):
    if pair not in R:
        raise MalformedMove(f"{pair[0]} = {pair[1]} is not in the relation set")


def consequence_step(R: Sequence[Pair], move: str, *args, generators: Sequence[str] = ()) -> tuple[Pair, ...]:
    """Apply one of the moves ``a``-``e`` and return the enlarged set.

    a: ``x``                 adds (x, x)
    b: ``(x, y)``            adds (y, x)
    c: ``(x, y), (y, z)``    adds (x, z)
    d: ``(x, y), s``         adds (x*s, y*s) and (x/s, y/s), s a generator
    e: ``(x, y), z``         adds (z*x, z*y) and (z/x, z/y)
    """
    R = tuple(R)
    if move == "a":
        (x,) = args
        return _extend(R, [(x, x)])
    if move == "b":
        (pair,) = args
        _member(R, pair)
        return _extend(R, [(pair[1], pair[0])])
    if move == "c":
        p1, p2 = args
        _member(R, p1)
        _member(R, p2)
        if p1[1] != p2[0]:
            raise MalformedMove("pairs do not chain")
        return _extend(R, [(p1[0], p2[1])])
    if move == "d":
        pair, s = args
        _member(R, pair)
        if isinstance(s, str):
            s = free_generator(s)
        if s.conjugator or (generators and s.base not in generators):
            raise MalformedMove(f"{s} is not a generator")
        x, y = pair
        return _extend(R, [(x.star(s), y.star(s)), (x.bar(s), y.bar(s))])
    if move == "e":
        pair, z = args
        _member(R, pair)
        x, y = pair
        return _extend(R, [(z.star(x), z.star(y)), (z.bar(x), z.bar(y))])
    raise MalformedMove(f"unknown move {move!r}")


class _UnionFind:
    def __init__(self):
        self.parent: dict = {}

    def find(self, x):
        self.parent.setdefault(x, x)
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, x, y):
        rx, ry = self.find(x), self.find(y)
        if rx != ry:
            self.parent[ry] = rx


def is_consequence_bounded(R: Sequence[Pair], pair: Pair, depth: int, generators: Sequence[str] | None = None,
                           pool: Iterable[FreeQuandleElement] = (), max_pairs: int = 200_000) -> Verdict:
    """``YES`` if ``pair`` follows from ``R`` using at most ``depth`` rounds
    of the compatibility moves d and e; never answers no.

    Moves a-c (reflexivity, symmetry, transitivity) are free at every
    depth. Move e draws its ``z`` from the generators, the goal's two
    sides, and ``pool``.
    """
    if depth < 0:
        raise ValueError("depth must be non-negative")
    x, y = pair
    if generators is None:
        names = set()
        for a, b in list(R) + [pair]:
            names |= a.symbols() | b.symbols()
        generators = sorted(names)
    actors = [free_generator(g) for g in generators]
    zs = list(dict.fromkeys(actors + [x, y] + list(pool)))
    uf = _UnionFind()
    for a, b in R:
        uf.union(a, b)
    if x == y or uf.find(x) == uf.find(y):
        return Verdict.YES
    frontier = list(R)
    total = len(frontier)
    for _ in range(depth):
        nxt = []
        for a, b in frontier:
            for s in actors:
                nxt.append((a.star(s), b.star(s)))
                nxt.append((a.bar(s), b.bar(s)))
            for z in zs:
                nxt.append((z.star(a), z.star(b)))
                nxt.append((z.bar(a), z.bar(b)))
        fresh = []
        for a, b in nxt:
            if uf.find(a) != uf.find(b):
                uf.union(a, b)
                fresh.append((a, b))
        if uf.find(x) == uf.find(y):
            return Verdict.YES
        frontier = fresh
        total += len(fresh)
        if not frontier or total > max_pairs:
            break
    return Verdict.UNKNOWN


def relation_is_consequence(pres: Presentation, rel: Relation, depth: int = 4) -> Verdict:
    return is_consequence_bounded(relation_pairs(pres), (term_to_free(rel.lhs), term_to_free(rel.rhs)), depth,
                                  pres.generators)
