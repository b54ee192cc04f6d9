# Q_3, Q_4, Q_5 are the vertex quandles of the 16-, 24- and 600-cells.
import time

from quandlebench.exact import dot
from quandlebench.geometry import build_geometric, cell_quandle
from quandlebench.quandle import find_isomorphism, hom_from_generators
from quandlebench.twist_spun import CELLS_FOR_M, build_Qm

for m, cells in CELLS_FOR_M.items():
    t0 = time.perf_counter()
    Q = build_Qm(m)
    X = cell_quandle(cells)
    verts = build_geometric(X.name).model.vertices
    v, w = X.generators
    # a -> v, c -> w already extends to a bijection; the search finds its own witness
    p = hom_from_generators(Q.quandle, [Q.a, Q.c], [v, w], X)
    iso = find_isomorphism(Q.quandle, X)
    print(f"m={m}: |Q_m| = {Q.quandle.order:>3}   {cells}-cell: {X.order:>3} vertices   "
          f"a,c -> v,w bijective: {p.is_bijective()}   search witness: {iso is not None}   "
          f"({time.perf_counter() - t0:.2f} s)")
    print(f"      v = {X.labels[v]}  w = {X.labels[w]}  <v,w> = {dot(verts[v], verts[w])}")
