"""At m = 6 the enumeration runs away. The {3,6} tiling explains why:
Q_6 maps onto a subquandle of the Eisenstein lattice containing the
infinite orbit v + 2k(w - v).
"""
from quandlebench.twist_spun import build_Qm, certify_infinite

Q6 = build_Qm(6, budget=20000)
print("Q_6 enumeration:", Q6.realization.outcome, "after defining", Q6.realization.classes_seen, "classes")

cert = certify_infinite(6)
for key, value in cert.to_dict().items():
    print(f"  {key}: {value}")
