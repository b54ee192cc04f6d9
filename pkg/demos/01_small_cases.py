"""Q_1 and Q_2 from their presentations.

Q_1 collapses to a point, Q_2 is the dihedral quandle of order 3.
"""
from quandlebench.presentations import enumerate_presentation
from quandlebench.quandle import dihedral_quandle, find_isomorphism
from quandlebench.twist_spun import twist_spun_presentation

for m in (1, 2):
    pres = twist_spun_presentation(m)
    res = enumerate_presentation(pres, name=f"Q_{m}")
    print(pres)
    print(f"  -> {res.order} element(s)")

q2 = enumerate_presentation(twist_spun_presentation(2), name="Q_2").quandle
print()
print(q2.render())
iso = find_isomorphism(q2, dihedral_quandle(3))
print("\nQ_2 -> R_3:", dict(zip(q2.labels, iso.mapping)))
