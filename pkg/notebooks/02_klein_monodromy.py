# Numerical monodromy of the Klein family, and its Schlesinger flow.
from fractions import Fraction

import numpy as np

from painleve6.fuchsian import klein_family
from painleve6.monodromy import group_closure, is_pseudo_reflection, monodromy_rep
from painleve6.pvi import klein_curve
from painleve6.schlesinger import FlowState, flow_samples, jet_from_state, verify_isomonodromy

family = klein_family(Fraction(2))
print("t =", family.t)
for i, b in enumerate(family.residues, 1):
    print(f"B{i} =\n{np.array(b, dtype=float).round(4)}")

rep = monodromy_rep(family.numeric())
print("product defect:", f"{rep.defect:.2e}")
for i, m in enumerate(rep.matrices[:3], 1):
    ev = np.sort_complex(np.linalg.eigvals(m)).round(10)
    print(f"M{i} eigenvalues {ev}, pseudo-reflection {is_pseudo_reflection(m)}")

gt = group_closure(rep.matrices[:3])
print("group order:", gt.order)

# The traces do not see the move from s = 2 to s = 5/4...
report = verify_isomonodromy([family, klein_family(Fraction(5, 4))])
print("invariant deviation between s = 2 and 5/4:", f"{report.max_deviation:.2e}")

# ...and neither does the Schlesinger flow, which follows the algebraic branch.
curve = klein_curve()
t_end = complex(curve.t(Fraction(5, 4)))
samples = flow_samples(FlowState(family.numeric()), t_end, 8)
for smp in samples[1::2]:
    print(f"t = {smp.t.real:.6f}  y from flow = {jet_from_state(smp).y.real:+.10f}")
print("exact y at s = 5/4:", float(curve.y(Fraction(5, 4))))
