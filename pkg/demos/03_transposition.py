"""
The transposition map
=====================

X -> X^T is positive but not completely positive, and it is not a generator
of a CP semigroup.  It still splits as K(.) + (.)K^* + Phi with Phi positive,
but only for weights with tr(B conj(B)) <= 0.
"""

import numpy as np

from cpsplit import validate_cp_wedge
from cpsplit.casework import transpose_criterion, transpose_decomposition
from cpsplit.superop import transpose_map

rep = validate_cp_wedge(transpose_map(2))
print("transpose in the CP wedge?", rep.member, " conditional-CP min eigenvalue:", rep.cond_cp_min_eig)

for name, B in [
    ("identity", np.eye(2)),
    ("[[1, i], [-i, 1]]", np.array([[1, 1j], [-1j, 1]])),
    ("diag(1.1, -1) + 1.2 i offdiag", np.array([[1.1, 1.2j], [-1.2j, -1.0]])),
]:
    t = transpose_decomposition(B)
    print(f"\nB = {name}: tr(B conj B) = {t.criterion.real:+.3f}  split exists: {t.exists}")
    if t.exists:
        print("  K =", np.round(np.diag(t.K), 4), "* 1")
        print("  tr Phi(B^* . B) =", f"{abs(t.weighted_trace):.1e}",
              "  min eigenvalue on sampled PSD inputs:", f"{t.min_sampled_eig:.3f}")

# |0><1| has tr B = 0, outside the hypothesis; only the criterion is reported.
B = np.array([[0, 1], [0, 0]])
print("\n|0><1|: criterion", transpose_criterion(B), "(Re tr B = 0, no decomposition attempted)")
