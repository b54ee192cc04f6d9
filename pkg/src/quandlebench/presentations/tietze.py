"""Tietze moves on quandle presentations.

T1 adds a consequence of the relations, T2 adds a generator ``s`` with a
defining relation ``s = x``; T1^-1 and T2^-1 undo them. A relation is only
added or dropped once it is certified as a consequence, first by bounded
search, then by checking it in the enumerated quandle when that is finite.
"""
from __future__ import annotations

from ..quandle import check_induced_hom
from .consequences import Verdict, relation_is_consequence
from .enumerate import DEFAULT_BUDGET, enumerate_presentation
from .terms import Gen, Presentation, Relation, Term

SEARCH_DEPTH = 4


class TietzeError(ValueError):
    pass


def certify_consequence(pres: Presentation, rel: Relation, depth: int = SEARCH_DEPTH,
                        budget: int = DEFAULT_BUDGET) -> str | None:
    """How ``rel`` was certified to follow from ``pres``, or None."""
    if relation_is_consequence(pres, rel, depth) is Verdict.YES:
        return "bounded-search"
    res = enumerate_presentation(pres, budget)
    if res.finite:
        # the finite table is the presented quandle itself
        check = check_induced_hom(Presentation(pres.generators, (rel,)), res.generator_images, res.quandle)
        if check:
            return "model-check"
    return None


def tietze_apply(pres: Presentation, move: str, *args, depth: int = SEARCH_DEPTH,
                 budget: int = DEFAULT_BUDGET) -> Presentation:
    """``move`` is one of ``T1``, ``T1^-1``, ``T2``, ``T2^-1``.

    T1: ``relation``; T1^-1: ``relation`` (or its index); T2: ``name, term``;
    T2^-1: ``name``.
    """
    if move == "T1":
        (rel,) = args
        if certify_consequence(pres, rel, depth, budget) is None:
            raise TietzeError(f"could not certify {rel} as a consequence")
        return pres.add_relation(rel)
    if move == "T1^-1":
        (rel,) = args
        idx = rel if isinstance(rel, int) else pres.relations.index(rel)
        rest = Presentation(pres.generators, pres.relations[:idx] + pres.relations[idx + 1:])
        if certify_consequence(rest, pres.relations[idx], depth, budget) is None:
            raise TietzeError(f"could not certify {pres.relations[idx]} as redundant")
        return rest
    if move == "T2":
        name, term = args
        if name in pres.generators:
            raise TietzeError(f"generator {name!r} already present")
        if not isinstance(term, Term) or term.symbols() - set(pres.generators):
            raise TietzeError("defining term must be over the existing generators")
        return Presentation(pres.generators + (name,), pres.relations + (Relation(Gen(name), term),))
    if move == "T2^-1":
        (name,) = args
        if name not in pres.generators:
            raise TietzeError(f"no generator {name!r}")
        defining = [k for k, r in enumerate(pres.relations)
                    if (r.lhs == Gen(name) and name not in r.rhs.symbols())
                    or (r.rhs == Gen(name) and name not in r.lhs.symbols())]
        if len(defining) != 1:
            raise TietzeError(f"{name!r} needs exactly one defining relation {name} = x")
        k = defining[0]
        r = pres.relations[k]
        value = r.rhs if r.lhs == Gen(name) else r.lhs
        rels = tuple(Relation(q.lhs.substitute({name: value}), q.rhs.substitute({name: value}))
                     for i, q in enumerate(pres.relations) if i != k)
        gens = tuple(g for g in pres.generators if g != name)
        return Presentation(gens, rels)
    raise TietzeError(f"unknown Tietze move {move!r}")
