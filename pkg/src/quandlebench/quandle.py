"""Finite quandles stored as operation tables.

Convention: ``table[i, j]`` is ``x_i * x_j``; column ``j`` is the right
translation ``*x_j`` and must be a permutation.
"""
from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass, field
from itertools import product
from typing import Iterable, Mapping, Sequence

import numpy as np


class MalformedTable(ValueError):
    pass


class FiniteQuandle:
    """An immutable finite quandle (or, before :func:`check_axioms`, a magma)."""

    def __init__(self, table, labels: Sequence[str] | None = None, name: str = "",
                 generators: Sequence[int] | None = None):
        try:
            arr = np.array(table, dtype=np.int64)
        except (ValueError, TypeError) as exc:
            raise MalformedTable(f"operation table is not a square integer array: {exc}") from None
        if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
            raise MalformedTable("operation table must be square")
        n = arr.shape[0]
        if n == 0:
            raise MalformedTable("empty quandle")
        if arr.min() < 0 or arr.max() >= n:
            raise MalformedTable("table entry out of range")
        arr.setflags(write=False)
        self.table = arr
        self.labels = tuple(labels) if labels is not None else tuple(str(i) for i in range(n))
        if len(self.labels) != n:
            raise MalformedTable("label count does not match order")
        self.name = name
        self.generators = tuple(int(g) for g in generators) if generators is not None else None
        if self.generators is not None and any(not 0 <= g < n for g in self.generators):
            raise MalformedTable("generator index out of range")
        self._rdiv = None

    @property
    def order(self) -> int:
        return self.table.shape[0]

    def __len__(self):
        return self.order

    def op(self, x: int, y: int) -> int:
        return int(self.table[x, y])

    @property
    def rdiv(self) -> np.ndarray:
        """``rdiv[i, j]`` is ``x_i /* x_j``, the preimage of ``x_i`` under ``*x_j``."""
        if self._rdiv is None:
            n = self.order
            inv = np.full((n, n), -1, dtype=np.int64)
            cols = np.arange(n)
            for j in range(n):
                col = self.table[:, j]
                if len(np.unique(col)) != n:
                    raise ValueError(f"right translation by {j} is not a bijection")
                inv[col, j] = cols
            inv.setflags(write=False)
            self._rdiv = inv
        return self._rdiv

    def inv_op(self, x: int, y: int) -> int:
        return int(self.rdiv[x, y])

    def power(self, x: int, y: int, k: int) -> int:
        """``x *^k y``; negative ``k`` uses the inverse operation."""
        for _ in range(abs(k)):
            x = self.op(x, y) if k > 0 else self.inv_op(x, y)
        return x

    def right_translation(self, y: int) -> np.ndarray:
        return self.table[:, y]

    def with_generators(self, generators: Sequence[int], name: str | None = None) -> FiniteQuandle:
        return FiniteQuandle(self.table, self.labels, self.name if name is None else name, generators)

    def __eq__(self, other):
        return (isinstance(other, FiniteQuandle) and self.name == other.name
                and self.labels == other.labels and self.generators == other.generators
                and np.array_equal(self.table, other.table))

    def __hash__(self):
        return hash((self.name, self.order, self.table.tobytes()))

    def __repr__(self):
        return f"FiniteQuandle({self.name or 'unnamed'}, order={self.order})"

    # -- serialization -------------------------------------------------
    def to_dict(self) -> dict:
        d = {
            "name": self.name,
            "order": self.order,
            "elements": list(self.labels),
            "table": self.table.tolist(),
        }
        if self.generators is not None:
            d["generators"] = list(self.generators)
        return d

    @classmethod
    def from_dict(cls, d: Mapping) -> FiniteQuandle:
        try:
            table = d["table"]
            q = cls(table, d["elements"], d.get("name", ""), d.get("generators"))
        except KeyError as exc:
            raise MalformedTable(f"missing field {exc}") from None
        if "order" in d and d["order"] != q.order:
            raise MalformedTable("order field does not match table")
        return q

    def dumps(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def loads(cls, text: str) -> FiniteQuandle:
        return cls.from_dict(json.loads(text))

    def render(self) -> str:
        """Aligned Cayley table with header row and column."""
        labels = self.labels
        width = max(len(s) for s in labels)
        head = " " * width + " | " + " ".join(s.rjust(width) for s in labels)
        lines = [head, "-" * len(head)]
        for i, row in enumerate(self.table):
            lines.append(labels[i].rjust(width) + " | " + " ".join(labels[k].rjust(width) for k in row))
        return "\n".join(lines)


# -- axioms ---------------------------------------------------------------

@dataclass(frozen=True)
class AxiomReport:
    ok: bool
    axiom: str | None = None
    witness: tuple[int, ...] = ()

    def __bool__(self):
        return self.ok


def check_axioms(q: FiniteQuandle) -> AxiomReport:
    """Idempotence, bijective right translations, right self-distributivity.

    Failures carry the lexicographically first offending element/triple.
    """
    t = q.table
    n = q.order
    diag = t[np.arange(n), np.arange(n)]
    bad = np.nonzero(diag != np.arange(n))[0]
    if len(bad):
        return AxiomReport(False, "idempotence", (int(bad[0]),))
    for j in range(n):
        col = t[:, j]
        if len(np.unique(col)) != n:
            seen = {}
            for i, v in enumerate(col):
                if v in seen:
                    return AxiomReport(False, "right-invertibility", (seen[v], i, j))
                seen[v] = i
    # (x*y)*z == (x*z)*(y*z), indexed [x, y, z]
    lhs = t[t[:, :, None], np.arange(n)[None, None, :]]
    xz = t[:, None, :]  # [x, 1, z]
    yz = t[None, :, :]  # [1, y, z]
    rhs = t[np.broadcast_to(xz, (n, n, n)), np.broadcast_to(yz, (n, n, n))]
    bad = np.argwhere(lhs != rhs)
    if len(bad):
        return AxiomReport(False, "right-distributivity", tuple(int(v) for v in bad[0]))
    return AxiomReport(True)


def is_involutory(q: FiniteQuandle) -> bool:
    t = q.table
    return bool(np.all(t[t, np.arange(q.order)[None, :]] == np.arange(q.order)[:, None]))


# -- constructors ---------------------------------------------------------

def dihedral_quandle(n: int) -> FiniteQuandle:
    """``x * y = 2y - x (mod n)``."""
    if n < 1:
        raise ValueError("n must be positive")
    x = np.arange(n)
    return FiniteQuandle((2 * x[None, :] - x[:, None]) % n, name=f"R{n}")


def trivial_quandle(n: int) -> FiniteQuandle:
    if n < 1:
        raise ValueError("n must be positive")
    return FiniteQuandle(np.repeat(np.arange(n)[:, None], n, axis=1), name=f"T{n}")


def _group_structure(table: np.ndarray) -> tuple[int, np.ndarray]:
    n = table.shape[0]
    ar = np.arange(n)
    idents = [e for e in range(n) if np.array_equal(table[e], ar) and np.array_equal(table[:, e], ar)]
    if not idents:
        raise ValueError("group table has no identity")
    e = idents[0]
    inv = np.full(n, -1)
    for x in range(n):
        hits = np.nonzero(table[x] == e)[0]
        if len(hits) != 1 or table[hits[0], x] != e:
            raise ValueError("group table lacks inverses")
        inv[x] = hits[0]
    # associativity
    lhs = table[table[:, :, None], ar[None, None, :]]
    rhs = table[ar[:, None, None], table[None, :, :]]
    if not np.array_equal(lhs, rhs):
        raise ValueError("group table is not associative")
    return e, inv


def generalized_alexander(group_table, phi: Sequence[int], name: str = "") -> FiniteQuandle:
    """Quandle on a finite group with ``x * y = phi(x y^-1) y``."""
    g = np.array(group_table, dtype=np.int64)
    phi = np.array(phi, dtype=np.int64)
    n = g.shape[0]
    _, inv = _group_structure(g)
    if sorted(phi.tolist()) != list(range(n)):
        raise ValueError("phi is not a bijection")
    if not np.array_equal(phi[g], g[phi[:, None], phi[None, :]]):
        raise ValueError("phi is not a homomorphism")
    xy_inv = g[np.arange(n)[:, None], inv[None, :]]
    table = g[phi[xy_inv], np.arange(n)[None, :]]
    return FiniteQuandle(table, name=name or f"GAlex{n}")


def cyclic_group_table(n: int) -> np.ndarray:
    x = np.arange(n)
    return (x[:, None] + x[None, :]) % n


def product_group_table(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    na, nb = len(a), len(b)
    idx = np.arange(na * nb)
    ia, ib = idx // nb, idx % nb
    return a[ia[:, None], ia[None, :]] * nb + b[ib[:, None], ib[None, :]]


# -- inner automorphisms --------------------------------------------------

@dataclass(frozen=True)
class InnerPermutation:
    """A product of right translations; ``word`` lists ``(element, +-1)``
    applied left to right."""

    perm: tuple[int, ...]
    word: tuple[tuple[int, int], ...] = ()

    def __call__(self, x: int) -> int:
        return self.perm[x]

    def then(self, other: InnerPermutation) -> InnerPermutation:
        """Apply ``self`` first, then ``other``."""
        return InnerPermutation(tuple(other.perm[i] for i in self.perm), self.word + other.word)

    def inverse(self) -> InnerPermutation:
        inv = [0] * len(self.perm)
        for i, p in enumerate(self.perm):
            inv[p] = i
        return InnerPermutation(tuple(inv), tuple((x, -s) for x, s in reversed(self.word)))

    def order(self) -> int:
        return permutation_order(self.perm)

    def replay(self, q: FiniteQuandle) -> tuple[int, ...]:
        """Recompute the permutation from the word."""
        out = []
        for x in range(q.order):
            for y, s in self.word:
                x = q.op(x, y) if s > 0 else q.inv_op(x, y)
            out.append(x)
        return tuple(out)


def permutation_order(perm: Sequence[int]) -> int:
    from math import lcm
    seen = [False] * len(perm)
    result = 1
    for start in range(len(perm)):
        if seen[start]:
            continue
        length, x = 0, start
        while not seen[x]:
            seen[x] = True
            x = perm[x]
            length += 1
        result = lcm(result, length)
    return result


def cycle_type(perm: Sequence[int]) -> tuple[int, ...]:
    seen = [False] * len(perm)
    lengths = []
    for start in range(len(perm)):
        if seen[start]:
            continue
        length, x = 0, start
        while not seen[x]:
            seen[x] = True
            x = perm[x]
            length += 1
        lengths.append(length)
    return tuple(sorted(lengths))


@dataclass
class InnerGroup:
    quandle: FiniteQuandle
    elements: list[InnerPermutation]

    @property
    def order(self) -> int:
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __len__(self):
        return len(self.elements)


def inner_group(q: FiniteQuandle, limit: int = 200_000) -> InnerGroup:
    """Closure of the right translations under composition."""
    n = q.order
    ident = InnerPermutation(tuple(range(n)))
    gens: dict[tuple[int, ...], InnerPermutation] = {}
    for y in range(n):
        p = tuple(int(v) for v in q.table[:, y])
        gens.setdefault(p, InnerPermutation(p, ((y, 1),)))
    gen_list = [g for p, g in gens.items() if p != ident.perm]
    # finite group: positive words suffice
    seen = {ident.perm: ident}
    queue = deque([ident])
    while queue:
        g = queue.popleft()
        for s in gen_list:
            h = g.then(s)
            if h.perm not in seen:
                seen[h.perm] = h
                queue.append(h)
                if len(seen) > limit:
                    raise RuntimeError(f"inner group larger than {limit}")
    return InnerGroup(q, list(seen.values()))


def orbits(q: FiniteQuandle) -> list[list[int]]:
    """Orbits of the inner group."""
    n = q.order
    comp = [-1] * n
    out = []
    for start in range(n):
        if comp[start] >= 0:
            continue
        comp[start] = len(out)
        members = [start]
        queue = deque([start])
        while queue:
            x = queue.popleft()
            for y in range(n):
                for z in (q.table[x, y], q.rdiv[x, y]):
                    z = int(z)
                    if comp[z] < 0:
                        comp[z] = len(out)
                        members.append(z)
                        queue.append(z)
        out.append(sorted(members))
    return out


def is_connected(q: FiniteQuandle) -> bool:
    return len(orbits(q)) == 1


def generated_closure(q: FiniteQuandle, gens: Iterable[int]) -> list[int]:
    """Underlying set of the subquandle generated by ``gens``."""
    gens = sorted(set(int(g) for g in gens))
    seen = set(gens)
    queue = deque(gens)
    while queue:
        x = queue.popleft()
        for g in gens:
            for z in (q.table[x, g], q.rdiv[x, g]):
                z = int(z)
                if z not in seen:
                    seen.add(z)
                    queue.append(z)
    return sorted(seen)


def greedy_generating_set(q: FiniteQuandle) -> list[int]:
    """Smallest-index-first generating set: next generator is the least
    element not yet generated."""
    gens: list[int] = []
    covered: set[int] = set()
    for x in range(q.order):
        if x not in covered:
            gens.append(x)
            covered = set(generated_closure(q, gens))
            if len(covered) == q.order:
                break
    return gens


# -- homomorphisms --------------------------------------------------------

@dataclass
class QuandleHom:
    source: FiniteQuandle
    target: FiniteQuandle
    mapping: tuple[int, ...]

    def __call__(self, x: int) -> int:
        return self.mapping[x]

    def is_homomorphism(self) -> bool:
        f = np.array(self.mapping)
        if len(f) != self.source.order:
            return False
        return bool(np.array_equal(self.target.table[f[:, None], f[None, :]], f[self.source.table]))

    def is_surjective(self) -> bool:
        return len(set(self.mapping)) == self.target.order

    def is_injective(self) -> bool:
        return len(set(self.mapping)) == len(self.mapping)

    def is_bijective(self) -> bool:
        return self.is_injective() and self.is_surjective()

    def fibers(self) -> dict[int, list[int]]:
        out: dict[int, list[int]] = {}
        for x, y in enumerate(self.mapping):
            out.setdefault(y, []).append(x)
        return out

    def to_dict(self) -> dict:
        return {"source": self.source.name, "target": self.target.name, "mapping": list(self.mapping)}


class _Schedule:
    """BFS spanning tree of the orbit of ``roots`` under right translation
    by ``actors`` (default: the actors themselves, which then span the
    subquandle they generate). Each new element is ``parent *^sign actors[k]``."""

    def __init__(self, q: FiniteQuandle, actors: Sequence[int], roots: Sequence[int] | None = None):
        self.gens = list(actors)
        roots = self.gens if roots is None else list(roots)
        self.steps: list[tuple[int, int, int, int]] = []
        seen = set(roots)
        queue = deque(dict.fromkeys(roots))
        while queue:
            x = queue.popleft()
            for k, g in enumerate(self.gens):
                for sign, z in ((1, q.table[x, g]), (-1, q.rdiv[x, g])):
                    z = int(z)
                    if z not in seen:
                        seen.add(z)
                        queue.append(z)
                        self.steps.append((z, x, k, sign))
        self.support = sorted(seen)


def _extend(schedule: _Schedule, images: Sequence[int], target: FiniteQuandle, n: int) -> np.ndarray:
    f = np.full(n, -1, dtype=np.int64)
    for g, y in zip(schedule.gens, images):
        if f[g] >= 0 and f[g] != y:
            return None
        f[g] = y
    t, r = target.table, target.rdiv
    for z, x, k, sign in schedule.steps:
        y = images[k]
        f[z] = t[f[x], y] if sign > 0 else r[f[x], y]
    return f


def hom_from_generators(source: FiniteQuandle, gens: Sequence[int], images: Sequence[int],
                        target: FiniteQuandle) -> QuandleHom | None:
    """The homomorphism with ``gens[k] -> images[k]`` if one exists.

    ``gens`` must generate ``source``.
    """
    schedule = _Schedule(source, gens)
    if len(schedule.support) != source.order:
        raise ValueError("given elements do not generate the source quandle")
    f = _extend(schedule, images, target, source.order)
    if f is None:
        return None
    hom = QuandleHom(source, target, tuple(int(v) for v in f))
    return hom if hom.is_homomorphism() else None


def element_invariants(q: FiniteQuandle) -> list[tuple]:
    """Per-element isomorphism invariants: cycle type of ``*x``, fixed
    points and image size of ``y -> x * y``."""
    out = []
    for x in range(q.order):
        row = q.table[x]
        out.append((cycle_type(q.table[:, x].tolist()),
                    int(np.sum(row == np.arange(q.order))),
                    len(np.unique(row))))
    return out


def find_isomorphism(q1: FiniteQuandle, q2: FiniteQuandle) -> QuandleHom | None:
    """Lexicographically smallest isomorphism ``q1 -> q2``, or None."""
    if q1.order != q2.order:
        return None
    inv1, inv2 = element_invariants(q1), element_invariants(q2)
    if sorted(inv1) != sorted(inv2):
        return None
    gens = greedy_generating_set(q1)
    schedule = _Schedule(q1, gens)
    by_inv: dict[tuple, list[int]] = {}
    for y, key in enumerate(inv2):
        by_inv.setdefault(key, []).append(y)
    candidates = [by_inv[inv1[g]] for g in gens]
    # orbit length of g_j under *g_i is an invariant of the generator pair
    def pair_profile(q, xs):
        return [[len(_orbit_of(q, a, b)) for b in xs] for a in xs]
    want = pair_profile(q1, gens)
    for images in _backtrack(candidates, lambda partial: pair_profile(q2, partial) == [r[:len(partial)] for r in want[:len(partial)]]):
        if len(set(images)) != len(images):
            continue
        f = _extend(schedule, images, q2, q1.order)
        if f is None or len(np.unique(f)) != q1.order:
            continue
        hom = QuandleHom(q1, q2, tuple(int(v) for v in f))
        if hom.is_homomorphism():
            return hom
    return None


def _orbit_of(q: FiniteQuandle, x: int, y: int) -> list[int]:
    out = [x]
    z = q.op(x, y)
    while z != x:
        out.append(z)
        z = q.op(z, y)
    return out


def _backtrack(candidates, accept):
    def rec(prefix):
        if len(prefix) == len(candidates):
            yield tuple(prefix)
            return
        for c in candidates[len(prefix)]:
            nxt = prefix + [c]
            if accept(nxt):
                yield from rec(nxt)
    yield from rec([])


def is_isomorphic(q1: FiniteQuandle, q2: FiniteQuandle) -> bool:
    return find_isomorphism(q1, q2) is not None


# -- words and presentations ------------------------------------------------

class UnassignedGenerator(KeyError):
    pass


def evaluate_word(word, assign: Mapping[str, int], q: FiniteQuandle) -> int:
    """Value of a term or free-quandle element under a generator assignment."""
    missing = set(word.symbols()) - set(assign)
    if missing:
        raise UnassignedGenerator(", ".join(sorted(missing)))
    return word.evaluate(q, assign)


@dataclass
class InducedHom:
    """The homomorphism from a presented quandle into ``target`` fixed by
    generator images; ``image`` is the generated subquandle."""

    presentation: object
    assign: dict
    target: FiniteQuandle
    image: list[int] = field(default_factory=list)

    @property
    def surjective(self) -> bool:
        return len(self.image) == self.target.order

    def __bool__(self):
        return True


@dataclass
class RelationFailure:
    index: int
    relation: object
    values: tuple[int, int]

    def __bool__(self):
        return False


def check_induced_hom(presentation, assign: Mapping[str, int], q: FiniteQuandle) -> InducedHom | RelationFailure:
    missing = set(presentation.generators) - set(assign)
    if missing:
        raise UnassignedGenerator(", ".join(sorted(missing)))
    for k, rel in enumerate(presentation.relations):
        lhs, rhs = rel.lhs.evaluate(q, assign), rel.rhs.evaluate(q, assign)
        if lhs != rhs:
            return RelationFailure(k, rel, (lhs, rhs))
    image = generated_closure(q, [assign[g] for g in presentation.generators])
    return InducedHom(presentation, dict(assign), q, image)


# -- triangles ------------------------------------------------------------

def triangle_check(q: FiniteQuandle, x: int, y: int, z: int) -> bool:
    """``x * z = y``, ``z * y = x`` and ``y * x = z``."""
    return q.op(x, z) == y and q.op(z, y) == x and q.op(y, x) == z


def triangles_around(q: FiniteQuandle, x: int) -> int:
    """Number of oriented triangles through ``x`` with distinct corners.

    The predicate is invariant under cyclic rotation, so counting ordered
    pairs ``(y, z)`` with ``x`` in front counts each rotation class once.
    Two faces sharing all three corners (as in {3,2}) are told apart by
    orientation.
    """
    count = 0
    for z in range(q.order):
        if z == x:
            continue
        y = q.op(x, z)
        if y != x and y != z and q.op(z, y) == x and q.op(y, x) == z:
            count += 1
    return count
