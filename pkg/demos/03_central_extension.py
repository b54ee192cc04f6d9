"""Q_m over the {3,m} quandle: fibres, the deck group and the inner map
x -> (((x*c)*a)*a)*c that walks around a fibre.
"""
from quandlebench.twist_spun import hat_automorphism, orbit, verify_main2

for m in range(2, 6):
    rep = verify_main2(m)
    Q = rep.projection.source
    a, c = Q.generators
    g = hat_automorphism(Q, a, c)
    print(f"m={m}: |Q_m|={Q.order:>3} -> |X|={rep.projection.target.order:>2}  "
          f"fibre {sorted(set(rep.fiber_sizes))}  |A|={rep.deck_order:>2}  "
          f"orbit of a: {len(orbit(g, a)):>2}  E0/E1/E2: {rep.e0.ok}/{rep.e1.ok}/{rep.e2.ok}  "
          f"-> {rep.reason}")
