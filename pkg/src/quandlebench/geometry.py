"""Exact regular polytopes and their Schlafli quandles.

An element of a Schlafli quandle is a vertex ``v`` paired with a rotation
``r_v`` fixing it; ``(u, r_u) * (v, r_v) = (r_v(u), r_v r_u r_v^-1)``.
Since ``v -> r_v`` is equivariant, an element is determined by its vertex
and the operation is just ``u * v = r_v(u)``.

3D models {3,m}: ``r_v`` is the right-handed rotation by ``2 pi/m`` about
the axis through ``v``.

4D models: vertices are read as quaternions ``x0 + x1 i + x2 j + x3 k``.
With a fixed unit quaternion ``e`` of order ``2m``, ``r_v(x) = (v e v^-1) x e^-1``.
This is the simple rotation fixing the great circle ``v * span(1, e)``
(a Hopf fibre through ``v``) pointwise and turning its orthogonal plane by
twice the angle of ``e``. The choice of ``e`` per model is recorded in
:data:`HOPF_ELEMENT`.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import permutations, product
from typing import Sequence

from .exact import (ONE, PHI, PHI_INV, ZERO, ZETA, Eisenstein, ExactMatrix, QSqrt5, Vector, dot, sub,
                    vector)
from .quandle import FiniteQuandle, dihedral_quandle

HALF = QSqrt5(Fraction(1, 2))

SYMBOLS = ("{3,3}", "{3,4}", "{3,5}", "{3,3,4}", "{3,4,3}", "{3,3,5}")
CELLS = {16: "{3,3,4}", 24: "{3,4,3}", 600: "{3,3,5}"}
# m with w *^m v = w at the designated pair
TWIST = {"{3,2}": 2, "{3,3}": 3, "{3,4}": 4, "{3,5}": 5, "{3,3,4}": 3, "{3,4,3}": 4, "{3,3,5}": 5}


class UnsupportedSymbol(ValueError):
    pass


def normalize_symbol(symbol) -> str:
    if isinstance(symbol, (tuple, list)):
        symbol = "{" + ",".join(str(int(p)) for p in symbol) + "}"
    s = str(symbol).replace(" ", "")
    if not s.startswith("{"):
        s = "{" + s + "}"
    if s not in SYMBOLS and s != "{3,2}":
        raise UnsupportedSymbol(f"unsupported Schlafli symbol {symbol!r}")
    return s


# -- quaternions over Q(sqrt 5) ---------------------------------------------

def qmul(p: Vector, q: Vector) -> Vector:
    a1, b1, c1, d1 = p
    a2, b2, c2, d2 = q
    return (a1 * a2 - b1 * b2 - c1 * c2 - d1 * d2,
            a1 * b2 + b1 * a2 + c1 * d2 - d1 * c2,
            a1 * c2 - b1 * d2 + c1 * a2 + d1 * b2,
            a1 * d2 + b1 * c2 - c1 * b2 + d1 * a2)


def qconj(p: Vector) -> Vector:
    return (p[0], -p[1], -p[2], -p[3])


def left_mult_matrix(p: Vector) -> ExactMatrix:
    """Matrix of ``x -> p x``."""
    basis = [tuple(ONE if i == j else ZERO for j in range(4)) for i in range(4)]
    cols = [qmul(p, e) for e in basis]
    return ExactMatrix([[cols[j][i] for j in range(4)] for i in range(4)])


def right_mult_matrix(q: Vector) -> ExactMatrix:
    """Matrix of ``x -> x q``."""
    basis = [tuple(ONE if i == j else ZERO for j in range(4)) for i in range(4)]
    cols = [qmul(e, q) for e in basis]
    return ExactMatrix([[cols[j][i] for j in range(4)] for i in range(4)])


# unnormalized e for each 4D model; the unit element is e / |e|
HOPF_ELEMENT = {
    "{3,3,4}": vector([1, -1, -1, -1]),                  # angle pi/3 about -(i+j+k)
    "{3,4,3}": vector([1, -1, 0, 0]),                    # angle pi/4 about -i
    "{3,3,5}": vector([PHI_INV * HALF, -PHI * HALF, HALF, 0]),  # angle 2pi/5; pi/5 fails at the pair
}


# -- polytopes --------------------------------------------------------------

@dataclass(frozen=True)
class PolytopeModel:
    symbol: str
    vertices: tuple[Vector, ...]
    adjacency: frozenset[tuple[int, int]]

    @property
    def dim(self) -> int:
        return len(self.vertices[0])

    def index(self, v: Sequence) -> int:
        v = vector(v)
        try:
            return self._index[v]
        except AttributeError:
            object.__setattr__(self, "_index", {u: i for i, u in enumerate(self.vertices)})
            return self._index[v]

    def __contains__(self, v) -> bool:
        try:
            self.index(v)
        except KeyError:
            return False
        return True

    def neighbors(self, i: int) -> list[int]:
        return sorted({b for a, b in self.adjacency if a == i} | {a for a, b in self.adjacency if b == i})

    def is_adjacent(self, i: int, j: int) -> bool:
        return (min(i, j), max(i, j)) in self.adjacency


def _signed(values, signs_for):
    return [tuple(s * x for s, x in zip(signs, values)) for signs in signs_for]


def _is_even(p) -> bool:
    inv = sum(1 for a in range(len(p)) for b in range(a + 1, len(p)) if p[a] > p[b])
    return inv % 2 == 0


def _raw_vertices(symbol: str) -> list[Vector]:
    if symbol == "{3,3}":
        return [vector(s) for s in product((1, -1), repeat=3) if s[0] * s[1] * s[2] == 1]
    if symbol in ("{3,4}", "{3,3,4}"):
        n = 3 if symbol == "{3,4}" else 4
        out = []
        for i in range(n):
            for s in (1, -1):
                out.append(vector(s if k == i else 0 for k in range(n)))
        return out
    if symbol == "{3,5}":
        out = []
        for s1, s2 in product((1, -1), repeat=2):
            base = (ZERO, QSqrt5(s1), PHI * s2)
            for r in range(3):
                out.append(tuple(base[(k - r) % 3] for k in range(3)))
        return out
    if symbol == "{3,4,3}":
        out = []
        for i in range(4):
            for j in range(i + 1, 4):
                for s, t in product((1, -1), repeat=2):
                    out.append(vector(s if k == i else t if k == j else 0 for k in range(4)))
        return out
    if symbol == "{3,3,5}":
        out = []
        for i in range(4):
            for s in (1, -1):
                out.append(vector(s if k == i else 0 for k in range(4)))
        for signs in product((1, -1), repeat=4):
            out.append(tuple(HALF * s for s in signs))
        base = (PHI * HALF, HALF, PHI_INV * HALF, ZERO)
        for perm in permutations(range(4)):
            if not _is_even(perm):
                continue
            for signs in product((1, -1), repeat=3):
                vals = [base[0] * signs[0], base[1] * signs[1], base[2] * signs[2], ZERO]
                v = [ZERO] * 4
                for k in range(4):
                    v[perm[k]] = vals[k]
                out.append(tuple(v))
        return out
    raise UnsupportedSymbol(symbol)


@lru_cache(maxsize=None)
def build_polytope(symbol) -> PolytopeModel:
    """Exact vertex set and minimal-distance edge set of a regular polytope."""
    symbol = normalize_symbol(symbol)
    if symbol == "{3,2}":
        raise UnsupportedSymbol("{3,2} is built algebraically as the dihedral quandle of order 3")
    verts = sorted(set(_raw_vertices(symbol)), key=lambda v: [(-x.sign(), x) for x in v])
    # deterministic order: lexicographic, positive coordinates first
    dists = {}
    for i in range(len(verts)):
        for j in range(i + 1, len(verts)):
            d = sub(verts[i], verts[j])
            dists[(i, j)] = dot(d, d)
    dmin = min(dists.values())
    adj = frozenset(pair for pair, d in dists.items() if d == dmin)
    return PolytopeModel(symbol, tuple(verts), adj)


# -- rotations --------------------------------------------------------------

@dataclass(frozen=True)
class PointedRotation:
    vertex: Vector
    rotation: ExactMatrix

    def __call__(self, u: Vector) -> Vector:
        return self.rotation @ u


_COS = {3: -HALF, 4: ZERO, 5: PHI_INV * HALF}


def axis_rotation(v: Vector, m: int) -> ExactMatrix:
    """Rotation by ``2 pi/m`` about the axis through ``v``, clockwise seen
    from ``v``: for ``v = (1,1,1)`` this is ``(x,y,z) -> (y,z,x)``."""
    c = _COS[m]
    n2 = dot(v, v)
    k = ((ONE - c * c) / n2).sqrt()  # sin(2pi/m) / |v|
    x, y, z = v
    cross = ExactMatrix([[ZERO, -z, y], [z, ZERO, -x], [-y, x, ZERO]])
    outer = ExactMatrix([[a * b for b in v] for a in v])
    return ExactMatrix.identity(3) * c + cross * (-k) + outer * ((ONE - c) / n2)


def hopf_rotation(v: Vector, e: Vector) -> ExactMatrix:
    """``x -> (v e v^-1) x e^-1`` with ``e`` given up to scale."""
    scale = dot(v, v) * dot(e, e)
    left = qmul(qmul(v, e), qconj(v))
    return (left_mult_matrix(left) @ right_mult_matrix(qconj(e))) * (ONE / scale)


def vertex_rotation(model: PolytopeModel, index: int) -> PointedRotation:
    if not 0 <= index < len(model.vertices):
        raise IndexError(f"vertex index {index} out of range")
    v = model.vertices[index]
    if model.dim == 3:
        r = axis_rotation(v, TWIST[model.symbol])
    else:
        r = hopf_rotation(v, HOPF_ELEMENT[model.symbol])
    return PointedRotation(v, r)


# -- quandles ---------------------------------------------------------------

def _fmt(v: Vector) -> str:
    return "(" + ",".join(str(x) for x in v) + ")"


@dataclass
class SchlafliQuandle:
    """A geometric Schlafli quandle: the table plus the pointed rotations
    behind it."""

    model: PolytopeModel
    rotations: tuple[PointedRotation, ...]
    quandle: FiniteQuandle

    @property
    def generators(self) -> tuple[int, int]:
        return self.quandle.generators


def _lemma_relations_hold(q: FiniteQuandle, v: int, w: int, m: int, both: bool = True) -> bool:
    ok = q.op(q.op(v, w), v) == w and q.power(w, v, m) == w
    if both:
        ok = ok and q.op(q.op(w, v), w) == v
    return ok


# designated generator pairs for the 4D models
CELL_PAIRS = {
    "{3,3,4}": (vector([1, 0, 0, 0]), vector([0, 1, 0, 0])),
    "{3,4,3}": (vector([1, 1, 0, 0]), vector([0, 1, 0, 1])),
    "{3,3,5}": (vector([1, 0, 0, 0]),
                tuple(-HALF * x for x in vector([PHI_INV, 0, PHI, -1]))),
}


@lru_cache(maxsize=None)
def build_geometric(symbol) -> SchlafliQuandle:
    symbol = normalize_symbol(symbol)
    model = build_polytope(symbol)
    rots = tuple(vertex_rotation(model, i) for i in range(len(model.vertices)))
    n = len(model.vertices)
    table = [[model.index(rots[j](model.vertices[i])) for j in range(n)] for i in range(n)]
    q = FiniteQuandle(table, [_fmt(v) for v in model.vertices], name=symbol)
    m = TWIST[symbol]
    if symbol in CELL_PAIRS:
        v, w = (model.index(u) for u in CELL_PAIRS[symbol])
        if not _lemma_relations_hold(q, v, w, m, both=False):
            raise AssertionError(f"designated pair fails the relations in {symbol}")
    else:
        pair = next(((i, j) for i, j in sorted(model.adjacency) for i, j in ((i, j), (j, i))
                     if _lemma_relations_hold(q, i, j, m)), None)
        if pair is None:
            raise AssertionError(f"no adjacent pair satisfies the relations in {symbol}")
        v, w = pair
    return SchlafliQuandle(model, rots, q.with_generators((v, w)))


def build_schlafli_quandle(symbol, model: str = "geometric") -> FiniteQuandle:
    """Schlafli quandle with designated generator pair ``(v, w)``.

    ``{3,2}`` exists only algebraically, as the dihedral quandle of order 3.
    """
    symbol = normalize_symbol(symbol)
    if model not in ("geometric", "algebraic"):
        raise ValueError(f"unknown model {model!r}")
    if symbol == "{3,2}":
        return dihedral_quandle(3).with_generators((0, 1), name="{3,2}")
    if model == "algebraic":
        raise UnsupportedSymbol(f"{symbol} has no algebraic model here")
    return build_geometric(symbol).quandle


def schlafli_quandle(m: int, model: str = "geometric") -> FiniteQuandle:
    """The {3,m} quandle for ``2 <= m <= 5``."""
    if not 2 <= m <= 5:
        raise UnsupportedSymbol(f"finite {{3,m}} needs 2 <= m <= 5, got {m}")
    return build_schlafli_quandle(f"{{3,{m}}}", model)


def cell_quandle(cells: int) -> FiniteQuandle:
    """The 16-, 24- or 600-cell quandle."""
    if cells not in CELLS:
        raise UnsupportedSymbol(f"no {cells}-cell model")
    return build_schlafli_quandle(CELLS[cells])


# -- the {3,6} tiling -------------------------------------------------------

class EisensteinQuandle:
    """The {3,6} quandle on the Eisenstein integers:
    ``x * y = y + zeta (x - y)``."""

    name = "{3,6}"
    generators = (Eisenstein(0, 0), Eisenstein(1, 0))
    order = None

    @staticmethod
    def op(x: Eisenstein, y: Eisenstein) -> Eisenstein:
        return y + ZETA * (x - y)

    @staticmethod
    def inv_op(x: Eisenstein, y: Eisenstein) -> Eisenstein:
        return y + ZETA.conjugate() * (x - y)

    def power(self, x, y, k: int):
        for _ in range(abs(k)):
            x = self.op(x, y) if k > 0 else self.inv_op(x, y)
        return x

    def describe(self) -> dict:
        return {
            "name": self.name,
            "order": None,
            "carrier": "Eisenstein integers a+b*zeta, zeta^2 = zeta-1",
            "operation": "x*y = y + zeta*(x-y)",
            "generators": [str(g) for g in self.generators],
        }


def eisenstein_quandle() -> EisensteinQuandle:
    return EisensteinQuandle()


@dataclass(frozen=True)
class AffineMap:
    """``u -> linear * u + translation`` over the Eisenstein integers."""

    linear: Eisenstein
    translation: Eisenstein

    def __call__(self, u: Eisenstein) -> Eisenstein:
        return self.linear * u + self.translation

    def then(self, other: AffineMap) -> AffineMap:
        return AffineMap(other.linear * self.linear, other.linear * self.translation + other.translation)

    @property
    def is_translation(self) -> bool:
        return self.linear == Eisenstein(1, 0)


def right_translation_map(x: Eisenstein) -> AffineMap:
    """``*x`` as an affine map: ``u -> zeta u + (1 - zeta) x``."""
    return AffineMap(ZETA, (1 - ZETA) * x)


def translation_certificate(L: EisensteinQuandle, v: Eisenstein, w: Eisenstein) -> AffineMap:
    """The inner map ``(*w)^3 o (*v)^3`` in closed form.

    When it is a nonzero translation, ``v + k t`` (``k`` in Z) are pairwise
    distinct elements of the subquandle generated by ``v`` and ``w``.
    """
    if v == w:
        raise ValueError("certificate needs v != w")
    f = AffineMap(Eisenstein(1, 0), Eisenstein(0, 0))
    for x in (v, v, v, w, w, w):
        f = f.then(right_translation_map(x))
    return f
