"""Knot quandles of twist-spun trefoils and their projections onto
Schlafli quandles.

``Q_m = < a, c | (a*c)*a = c, c *^m a = c >``. For ``m >= 3`` the
projection ``a -> v, c -> w`` onto the {3,m} quandle is a central extension
whose structure group is computed here as the group of deck
transformations: fibre-preserving permutations commuting with every right
translation.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .geometry import EisensteinQuandle, eisenstein_quandle, schlafli_quandle, translation_certificate
from .exact import Eisenstein
from .presentations import (DEFAULT_BUDGET, EnumerationResult, Presentation, enumerate_presentation,
                            parse_presentation, parse_relation)
from .quandle import (FiniteQuandle, InnerPermutation, QuandleHom, _Schedule, find_isomorphism,
                      greedy_generating_set, hom_from_generators, permutation_order)

MAX_M = 6


class OutOfScope(ValueError):
    pass


class ProjectionError(ValueError):
    pass


def _check_m(m: int, lo: int = 1, hi: int = MAX_M) -> None:
    if m < 1:
        raise ValueError(f"m must be positive, got {m}")
    if not lo <= m <= hi:
        raise OutOfScope(f"m = {m} is outside the supported range {lo}..{hi}")


def twist_spun_presentation(m: int) -> Presentation:
    if m < 1:
        raise ValueError(f"m must be positive, got {m}")
    return parse_presentation(f"< a, c | (a*c)*a = c, c *^{m} a = c >")


COLLAPSE_RELATION = "(((a*c)*a)*a)*c = a"


@dataclass
class TwistSpunQuandle:
    m: int
    realization: EnumerationResult

    @property
    def finite(self) -> bool:
        return self.realization.finite

    @property
    def quandle(self) -> FiniteQuandle:
        if not self.finite:
            raise ValueError(f"Q_{self.m} was not realized within budget")
        return self.realization.quandle

    @property
    def a(self) -> int:
        return self.realization.generator_images["a"]

    @property
    def c(self) -> int:
        return self.realization.generator_images["c"]


def build_Qm(m: int, budget: int = DEFAULT_BUDGET) -> TwistSpunQuandle:
    """Enumerate ``Q_m``; for ``m = 6`` this runs into the budget."""
    _check_m(m)
    res = enumerate_presentation(twist_spun_presentation(m), budget, name=f"Q_{m}")
    return TwistSpunQuandle(m, res)


def projection_to_schlafli(Q: TwistSpunQuandle, X: FiniteQuandle | None = None) -> QuandleHom:
    """The epimorphism ``Q_m -> X`` with ``a -> v`` and ``c -> w``."""
    if X is None:
        X = schlafli_quandle(Q.m)
    v, w = X.generators
    if X.op(X.op(v, w), v) != w or X.power(w, v, Q.m) != w:
        raise ProjectionError(f"relations of Q_{Q.m} fail at the designated pair of {X.name}")
    hom = hom_from_generators(Q.quandle, [Q.a, Q.c], [v, w], X)
    if hom is None:
        raise ProjectionError("generator assignment does not extend to a homomorphism")
    if not hom.is_surjective():
        raise ProjectionError("projection is not onto")
    return hom


def hat_automorphism(Q: FiniteQuandle, a: int, c: int, g: InnerPermutation | None = None) -> InnerPermutation:
    """``(*g(c)) o (*g(a)) o (*g(a)) o (*g(c))``: ``x -> (((x*c')*a')*a')*c'``."""
    if g is not None:
        a, c = g(a), g(c)
    word = ((c, 1), (a, 1), (a, 1), (c, 1))
    perm = []
    t = Q.table
    for x in range(Q.order):
        for y, _ in word:
            x = int(t[x, y])
        perm.append(x)
    return InnerPermutation(tuple(perm), word)


def orbit(perm, x: int) -> list[int]:
    perm = getattr(perm, "perm", perm)
    out = [x]
    y = perm[x]
    while y != x:
        out.append(y)
        y = perm[y]
    return out


@dataclass(frozen=True)
class DeckTransformation:
    perm: tuple[int, ...]

    def __call__(self, x: int) -> int:
        return self.perm[x]

    def compose(self, other: DeckTransformation) -> DeckTransformation:
        """``self o other``."""
        return DeckTransformation(tuple(self.perm[i] for i in other.perm))

    def order(self) -> int:
        return permutation_order(self.perm)


@dataclass
class DeckGroup:
    elements: list[DeckTransformation]

    @property
    def order(self) -> int:
        return len(self.elements)

    @property
    def is_abelian(self) -> bool:
        return all(x.compose(y) == y.compose(x) for x in self.elements for y in self.elements)

    @property
    def generator(self) -> DeckTransformation | None:
        """An element of full order, if the group is cyclic."""
        for x in self.elements:
            if x.order() == self.order:
                return x
        return None

    @property
    def is_cyclic(self) -> bool:
        return self.generator is not None


def deck_group(Q: FiniteQuandle, p: QuandleHom, base: int = 0) -> DeckGroup:
    """All fibre-preserving permutations commuting with right translations.

    On a connected quandle such a map is fixed by where it sends ``base``,
    so each candidate image in the base fibre is propagated and checked.
    """
    gens = list(Q.generators) if Q.generators else greedy_generating_set(Q)
    schedule = _Schedule(Q, gens, roots=[base])
    if len(schedule.support) != Q.order:
        raise ValueError("quandle is not generated by the given elements")
    proj = np.array(p.mapping)
    fiber = [x for x in range(Q.order) if proj[x] == proj[base]]
    t, r = Q.table, Q.rdiv
    out = []
    for b in fiber:
        alpha = np.full(Q.order, -1, dtype=np.int64)
        alpha[base] = b
        # alpha(x *^s y) = alpha(x) *^s y, propagated along a spanning tree
        for z, x, k, sign in schedule.steps:
            y = schedule.gens[k]
            alpha[z] = t[alpha[x], y] if sign > 0 else r[alpha[x], y]
        if (len(np.unique(alpha)) == Q.order and np.array_equal(alpha[t], t[alpha, :])
                and np.array_equal(proj[alpha], proj)):
            out.append(DeckTransformation(tuple(int(v) for v in alpha)))
    return DeckGroup(out)


@dataclass
class ConditionResult:
    ok: bool
    counterexample: tuple[int, ...] | None = None

    def __bool__(self):
        return self.ok

    def to_dict(self) -> dict:
        return {"ok": self.ok, "counterexample": list(self.counterexample) if self.counterexample else None}


@dataclass
class ExtensionReport:
    projection: QuandleHom
    deck: DeckGroup
    e0: ConditionResult
    e1: ConditionResult
    e2: ConditionResult
    fiber_sizes: list[int] = field(default_factory=list)

    @property
    def deck_order(self) -> int:
        return self.deck.order

    @property
    def cyclic(self) -> bool:
        return self.deck.is_cyclic

    @property
    def abelian(self) -> bool:
        return self.deck.is_abelian

    @property
    def verdict(self) -> bool:
        return self.e0.ok and self.e1.ok and self.e2.ok and self.abelian and self.deck_order > 1

    @property
    def reason(self) -> str:
        if not (self.e0.ok and self.e1.ok and self.e2.ok):
            failed = [n for n, c in (("E0", self.e0), ("E1", self.e1), ("E2", self.e2)) if not c.ok]
            return "condition(s) " + ", ".join(failed) + " fail"
        if self.deck_order == 1:
            return "not a central extension (trivial A)"
        if not self.abelian:
            return "deck group is not abelian"
        return "central extension"

    def to_dict(self) -> dict:
        gen = self.deck.generator
        return {
            "source": self.projection.source.name,
            "target": self.projection.target.name,
            "projection": list(self.projection.mapping),
            "deck_order": self.deck_order,
            "deck_generator": list(gen.perm) if gen else None,
            "cyclic": self.cyclic,
            "abelian": self.abelian,
            "E0": self.e0.to_dict(),
            "E1": self.e1.to_dict(),
            "E2": self.e2.to_dict(),
            "fiber_sizes": sorted(set(self.fiber_sizes)),
            "verdict": self.verdict,
            "reason": self.reason,
        }


def check_e0(Q: FiniteQuandle, p: QuandleHom) -> ConditionResult:
    """``p(x) == p(y)`` implies ``w * x == w * y`` for all ``w``."""
    t = Q.table
    for fiber in sorted(p.fibers().values()):
        x = fiber[0]
        for y in fiber[1:]:
            bad = np.nonzero(t[:, x] != t[:, y])[0]
            if len(bad):
                return ConditionResult(False, (int(bad[0]), x, y))
    return ConditionResult(True)


def check_e1(Q: FiniteQuandle, A: DeckGroup) -> ConditionResult:
    """``(alpha x) * y == alpha (x * y)`` and ``x * (alpha y) == x * y``."""
    t = Q.table
    for k, alpha in enumerate(A.elements):
        al = np.array(alpha.perm)
        bad = np.argwhere(t[al, :] != al[t])
        if len(bad):
            return ConditionResult(False, (k, int(bad[0][0]), int(bad[0][1])))
        bad = np.argwhere(t[:, al] != t)
        if len(bad):
            return ConditionResult(False, (k, int(bad[0][0]), int(bad[0][1])))
    return ConditionResult(True)


def check_e2(p: QuandleHom, A: DeckGroup) -> ConditionResult:
    """``A`` acts freely and transitively on every fibre."""
    for y, fiber in sorted(p.fibers().items()):
        for x in fiber:
            images = [alpha(x) for alpha in A.elements]
            if len(set(images)) != len(images) or sorted(images) != sorted(fiber):
                return ConditionResult(False, (y, x))
    return ConditionResult(True)


def verify_central_extension(Q: FiniteQuandle, X: FiniteQuandle, p: QuandleHom, base: int = 0) -> ExtensionReport:
    if not (p.is_homomorphism() and p.is_surjective()):
        raise ProjectionError("p must be an epimorphism")
    A = deck_group(Q, p, base)
    return ExtensionReport(p, A, check_e0(Q, p), check_e1(Q, A), check_e2(p, A),
                           [len(f) for f in p.fibers().values()])


def verify_main2(m: int, budget: int = DEFAULT_BUDGET) -> ExtensionReport:
    _check_m(m, 2, 5)
    Q = build_Qm(m, budget)
    X = schlafli_quandle(m)
    p = projection_to_schlafli(Q, X)
    return verify_central_extension(Q.quandle, X, p, base=Q.a)


@dataclass
class CollapseReport:
    m: int
    order: int
    target_order: int
    isomorphism: QuandleHom | None

    @property
    def isomorphic(self) -> bool:
        return self.isomorphism is not None


def collapse_relation_check(m: int, budget: int = DEFAULT_BUDGET) -> CollapseReport:
    """Enumerate ``Q_m`` plus ``(((a*c)*a)*a)*c = a`` and compare with {3,m}."""
    _check_m(m, 2, 5)
    pres = twist_spun_presentation(m).add_relation(parse_relation(COLLAPSE_RELATION))
    res = enumerate_presentation(pres, budget)
    if not res.finite:
        raise RuntimeError("augmented presentation did not close within budget")
    X = schlafli_quandle(m)
    return CollapseReport(m, res.order, X.order, find_isomorphism(res.quandle, X))


@dataclass
class InfinityCertificate:
    m: int
    relations_hold: list[bool]
    linear: Eisenstein
    translation: Eisenstein
    orbit_sample: list[Eisenstein]

    @property
    def valid(self) -> bool:
        return (all(self.relations_hold) and self.linear == Eisenstein(1, 0)
                and bool(self.translation) and len(set(self.orbit_sample)) == len(self.orbit_sample))

    def to_dict(self) -> dict:
        return {
            "m": self.m,
            "model": EisensteinQuandle().describe(),
            "relations_hold": self.relations_hold,
            "inner_map": "(*w)^3 o (*v)^3",
            "linear": str(self.linear),
            "translation": str(self.translation),
            "orbit_sample": [str(z) for z in self.orbit_sample],
            "valid": self.valid,
            "conclusion": "Q_6 maps onto an infinite subquandle of {3,6}, so Q_6 is infinite" if self.valid else None,
        }


def certify_Q6_infinite(samples: int = 4) -> InfinityCertificate:
    """Infinite image of ``Q_6`` in the {3,6} quandle, certified exactly."""
    L = eisenstein_quandle()
    v, w = L.generators
    pres = twist_spun_presentation(6)
    assign = {"a": v, "c": w}
    holds = [r.lhs.evaluate(L, assign) == r.rhs.evaluate(L, assign) for r in pres.relations]
    cert = translation_certificate(L, v, w)
    # iterate the inner map with quandle operations, not the closed form
    pts, x = [], v
    for _ in range(samples):
        pts.append(x)
        for y in (v, v, v, w, w, w):
            x = L.op(x, y)
    result = InfinityCertificate(6, holds, cert.linear, cert.translation, pts)
    expected = [v + k * cert.translation for k in range(samples)]
    if pts != expected or not result.valid:
        raise ArithmeticError("infinity certificate failed to validate")
    return result


def certify_infinite(m: int) -> InfinityCertificate:
    if m != 6:
        raise OutOfScope("infinity certificates are implemented for m = 6 only")
    return certify_Q6_infinite()


@dataclass
class Main1Result:
    m: int
    cells: int
    isomorphism: QuandleHom | None

    @property
    def verified(self) -> bool:
        return self.isomorphism is not None and self.isomorphism.is_homomorphism() and self.isomorphism.is_bijective()


CELLS_FOR_M = {3: 16, 4: 24, 5: 600}


def verify_main1(m: int, budget: int = DEFAULT_BUDGET) -> Main1Result:
    """Isomorphism ``Q_m -> `` 16-, 24- or 600-cell quandle for m = 3, 4, 5."""
    from .geometry import cell_quandle
    if m not in CELLS_FOR_M:
        raise OutOfScope("main1 is stated for m = 3, 4, 5")
    Q = build_Qm(m, budget)
    X = cell_quandle(CELLS_FOR_M[m])
    return Main1Result(m, CELLS_FOR_M[m], find_isomorphism(Q.quandle, X))
