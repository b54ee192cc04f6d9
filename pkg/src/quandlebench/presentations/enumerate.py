"""Realize a finitely presented quandle as a finite operation table.

Points are equivalence classes of ground terms, kept in a union-find.
Every point carries a row of right translations by the generators and
their inverses (``x * g``, ``x / g``); rows are filled breadth-first by
scanning the relation instances at every point, coset-enumeration style.
Merges happen only through deductions:

* ``g * g = g`` for every generator (idempotence);
* ``lhs = rhs`` at the generator points, for every relation;
* ``z * lhs = z * rhs`` and ``z / lhs = z / rhs`` for every point ``z``,
  where acting by a term is unfolded into generator translations via
  ``z * (x * g) = ((z / g) * x) * g``;
* compatibility of the table with those unfoldings: every table entry
  ``y = x * g`` forces ``*y`` and ``(*x)`` conjugated by ``*g`` to agree
  at every point (right self-distributivity).

Because no merge happens without a deduction, a closed table is exactly
the presented quandle.
"""
from __future__ import annotations

import logging
import time
from dataclasses import dataclass, field

import numpy as np

from ..quandle import FiniteQuandle
from .terms import Gen, Op, Presentation, Term

log = logging.getLogger(__name__)

DEFAULT_BUDGET = 20000

# partial consistency passes run at these live-point counts
_PASS_THRESHOLDS = (256, 512, 1024, 2048)


class BudgetExceeded(RuntimeError):
    pass


@dataclass
class EnumerationResult:
    """``outcome`` is ``"finite"`` or ``"budget_exceeded"``.

    A budget overrun says nothing about infiniteness.
    """

    outcome: str
    presentation: Presentation
    quandle: FiniteQuandle | None = None
    generator_images: dict[str, int] = field(default_factory=dict)
    classes_seen: int = 0
    stats: dict = field(default_factory=dict)

    @property
    def finite(self) -> bool:
        return self.outcome == "finite"

    @property
    def order(self) -> int | None:
        return self.quandle.order if self.quandle is not None else None


def _reduce(word: list[int]) -> list[int]:
    out: list[int] = []
    for c in word:
        if out and out[-1] == c ^ 1:
            out.pop()
        else:
            out.append(c)
    return out


def _inv(word: list[int]) -> list[int]:
    return [c ^ 1 for c in reversed(word)]


class _Enumerator:
    def __init__(self, pres: Presentation, budget: int):
        self.pres = pres
        self.budget = budget
        self.gindex = {g: k for k, g in enumerate(pres.generators)}
        self.ncols = 2 * len(pres.generators)
        self.rows: list[list[int]] = []
        self.parent: list[int] = []
        self.live = 0
        self.stats = {"defined": 0, "deductions": 0, "merges": 0, "consistency_passes": 0}
        self._translation_cache: dict[Term, list[int]] = {}

    # -- words ----------------------------------------------------------
    def translation(self, t: Term) -> list[int]:
        """Generator word of the right translation ``*t``."""
        w = self._translation_cache.get(t)
        if w is None:
            if isinstance(t, Gen):
                w = [2 * self.gindex[t.name]]
            else:
                inner, act = self.translation(t.left), self.translation(t.right)
                if t.inverse:
                    w = _reduce(act + inner + _inv(act))
                else:
                    w = _reduce(_inv(act) + inner + act)
            self._translation_cache[t] = w
        return w

    def path(self, t: Term) -> list[int]:
        """Word carrying the base generator's point to the value of ``t``."""
        if isinstance(t, Gen):
            return []
        act = self.translation(t.right)
        return _reduce(self.path(t.left) + (_inv(act) if t.inverse else act))

    # -- table ------------------------------------------------------------
    def new_point(self) -> int:
        if self.live >= self.budget:
            raise BudgetExceeded
        self.rows.append([-1] * self.ncols)
        self.parent.append(len(self.parent))
        self.live += 1
        self.stats["defined"] += 1
        return len(self.rows) - 1

    def define(self, p: int, c: int) -> int:
        q = self.new_point()
        self.rows[p][c] = q
        self.rows[q][c ^ 1] = p
        return q

    def find(self, p: int) -> int:
        parent = self.parent
        root = p
        while parent[root] != root:
            root = parent[root]
        while parent[p] != root:
            parent[p], p = root, parent[p]
        return root

    def alive(self, p: int) -> bool:
        return self.parent[p] == p

    def coincidence(self, a: int, b: int) -> None:
        rows = self.rows
        queue: list[int] = []

        def merge(k, l):
            k, l = self.find(k), self.find(l)
            if k != l:
                lo, hi = min(k, l), max(k, l)
                self.parent[hi] = lo
                queue.append(hi)
                self.live -= 1
                self.stats["merges"] += 1

        merge(a, b)
        i = 0
        while i < len(queue):
            g = queue[i]
            i += 1
            for c in range(self.ncols):
                d = rows[g][c]
                if d < 0:
                    continue
                if rows[d][c ^ 1] == g:
                    rows[d][c ^ 1] = -1
                mu, nu = self.find(g), self.find(d)
                if rows[mu][c] >= 0:
                    merge(nu, rows[mu][c])
                elif rows[nu][c ^ 1] >= 0:
                    merge(mu, rows[nu][c ^ 1])
                else:
                    rows[mu][c] = nu
                    rows[nu][c ^ 1] = mu

    def scan_and_fill(self, start: int, word: list[int], end: int | None = None) -> None:
        """Enforce ``start . word == end`` (``end`` defaults to ``start``)."""
        rows = self.rows
        f = start
        b = start if end is None else end
        i, j = 0, len(word) - 1
        while True:
            while i <= j and rows[f][word[i]] >= 0:
                f = rows[f][word[i]]
                i += 1
            if i > j:
                if f != b:
                    self.coincidence(f, b)
                return
            while j >= i and rows[b][word[j] ^ 1] >= 0:
                b = rows[b][word[j] ^ 1]
                j -= 1
            if j < i:
                self.coincidence(f, b)
                return
            if i == j:
                rows[f][word[i]] = b
                rows[b][word[i] ^ 1] = f
                self.stats["deductions"] += 1
                return
            self.define(f, word[i])

    # -- distributivity ---------------------------------------------------
    def operator_matrix(self):
        """Compact live points and compute ``M[z, x] = z * x`` wherever the
        partial table determines it (sentinel ``n`` otherwise)."""
        live = [p for p in range(len(self.rows)) if self.alive(p)]
        index = {p: k for k, p in enumerate(live)}
        n = len(live)
        sigma = np.full((self.ncols, n + 1), n, dtype=np.int64)
        for k, p in enumerate(live):
            row = self.rows[p]
            for c in range(self.ncols):
                if row[c] >= 0:
                    sigma[c, k] = index[self.find(row[c])]
        M = np.full((n + 1, n + 1), n, dtype=np.int64)
        done = np.zeros(n, dtype=bool)
        order = []
        roots = []
        for gk in range(len(self.pres.generators)):
            r = index[self.find(self.gen_points[gk])]
            roots.append((r, gk))
        conflicts = []
        for r, gk in roots:
            col = sigma[2 * gk]
            if done[r]:
                conflicts.append((M[:, r], col))
                continue
            M[:, r] = col
            done[r] = True
            order.append(r)
        head = 0
        while head < len(order):
            x = order[head]
            head += 1
            for c in range(self.ncols):
                y = sigma[c, x]
                if y == n or done[y]:
                    continue
                # z * y = ((z . c^-1) * x) . c
                M[:, y] = sigma[c][M[sigma[c ^ 1], x]]
                done[y] = True
                order.append(y)
        return live, sigma, M, conflicts

    def consistency_pass(self) -> int:
        """Merge points forced equal by right self-distributivity.

        Returns the number of coincidences found.
        """
        self.stats["consistency_passes"] += 1
        live, sigma, M, conflicts = self.operator_matrix()
        n = len(live)
        pairs = []
        for lhs, rhs in conflicts:
            bad = np.nonzero((lhs != rhs) & (lhs != n) & (rhs != n))[0]
            pairs.extend(zip(lhs[bad].tolist(), rhs[bad].tolist()))
        for gk in range(len(self.pres.generators)):
            c = 2 * gk
            # M[z, x*g] against ((z / g) * x) * g, over all (z, x)
            lhs = M[:, sigma[c]]
            rhs = sigma[c][M[sigma[c ^ 1]]]
            bad = np.argwhere((lhs != rhs) & (lhs != n) & (rhs != n))
            if len(bad):
                pairs.extend(zip(lhs[bad[:, 0], bad[:, 1]].tolist(), rhs[bad[:, 0], bad[:, 1]].tolist()))
        found = 0
        for u, v in pairs:
            pu, pv = self.find(live[u]), self.find(live[v])
            if pu != pv:
                self.coincidence(pu, pv)
                found += 1
        return found

    # -- driver -------------------------------------------------------------
    def run(self) -> None:
        ng = len(self.pres.generators)
        self.gen_points = [self.new_point() for _ in range(ng)]
        for k, p in enumerate(self.gen_points):
            self.rows[p][2 * k] = p
            self.rows[p][2 * k + 1] = p
        relators = []
        for rel in self.pres.relations:
            r = _reduce(self.translation(rel.lhs) + _inv(self.translation(rel.rhs)))
            if r:
                relators.append(r)
        for rel in self.pres.relations:
            a = self.find(self.gen_points[self.gindex[rel.lhs.base]])
            b = self.find(self.gen_points[self.gindex[rel.rhs.base]])
            self.scan_and_fill(a, _reduce(self.path(rel.lhs) + _inv(self.path(rel.rhs))), b)
        thresholds = list(_PASS_THRESHOLDS)
        p = 0
        while p < len(self.rows):
            if self.alive(p):
                for r in relators:
                    self.scan_and_fill(p, r)
                    if not self.alive(p):
                        break
                if self.alive(p):
                    for c in range(self.ncols):
                        if self.rows[p][c] < 0:
                            self.define(p, c)
            p += 1
            if thresholds and self.live >= thresholds[0]:
                thresholds.pop(0)
                self.consistency_pass()
        while self.consistency_pass():
            pass

    def result(self) -> tuple[FiniteQuandle, dict[str, int]]:
        live, sigma, M, _ = self.operator_matrix()
        n = len(live)
        # relabel in breadth-first order from the generator points
        labels: dict[int, str] = {}
        order: list[int] = []
        for gk, g in enumerate(self.pres.generators):
            r = live.index(self.find(self.gen_points[gk]))
            if r not in labels:
                labels[r] = g
                order.append(r)
        head = 0
        while head < len(order):
            x = order[head]
            head += 1
            for gk, g in enumerate(self.pres.generators):
                for c, sym in ((2 * gk, "*"), (2 * gk + 1, "/")):
                    y = int(sigma[c, x])
                    if y not in labels:
                        labels[y] = f"{labels[x]}{sym}{g}"
                        order.append(y)
        assert len(order) == n
        pos = np.empty(n, dtype=np.int64)
        pos[order] = np.arange(n)
        perm = np.array(order)
        table = pos[M[np.ix_(perm, perm)]]
        images = {g: int(pos[live.index(self.find(self.gen_points[k]))])
                  for k, g in enumerate(self.pres.generators)}
        q = FiniteQuandle(table, [labels[x] for x in order], generators=[images[g] for g in self.pres.generators])
        return q, images


def enumerate_presentation(pres: Presentation, budget: int = DEFAULT_BUDGET, name: str = "") -> EnumerationResult:
    """Saturate ``pres`` into a finite quandle, or give up after ``budget``
    simultaneously live classes."""
    if budget < 1:
        raise ValueError("budget must be at least 1")
    t0 = time.perf_counter()
    e = _Enumerator(pres, budget)
    try:
        e.run()
    except BudgetExceeded:
        e.stats["elapsed_s"] = time.perf_counter() - t0
        log.info("budget of %d classes exceeded after %d definitions", budget, e.stats["defined"])
        return EnumerationResult("budget_exceeded", pres, classes_seen=e.stats["defined"], stats=e.stats)
    q, images = e.result()
    q = FiniteQuandle(q.table, q.labels, name or str(pres), q.generators)
    e.stats["elapsed_s"] = time.perf_counter() - t0
    return EnumerationResult("finite", pres, q, images, classes_seen=e.stats["defined"], stats=e.stats)
