"""
When are the Hamiltonian and dissipative parts orthogonal?
==========================================================

Under the weighted inner product tr(Phi^dagger o (B . B) o Psi), the map
K(.) + (.)K^* is always orthogonal to CP_B.  The finer split into -i[H,.] and
the dissipator is orthogonal only when B is a multiple of the identity.
"""

import numpy as np

from cpsplit import b_inner
from cpsplit.casework import dissipator_of, orthogonality_counterexample
from cpsplit.sampling import ginibre, kraus_set, pd_weight
from cpsplit.superop import from_kraus, hamiltonian_part, left_right

rng = np.random.default_rng(11)
B = pd_weight(3, rng)
ops = [v - np.vdot(B, v) / np.conj(np.trace(B)) * np.eye(3) for v in kraus_set(3, 2, rng)]
print("<K(.) + (.)K^*, Phi>_B =", f"{abs(b_inner(left_right(ginibre(3, rng)), from_kraus(ops), B)):.1e}")

for diag, (j, k) in [((2.0, 1.0), (0, 1)), ((3.0, 1.0, 1.0), (0, 2)), ((0.5, 2.0, 1.0), (1, 2))]:
    B = np.diag(diag)
    H, V, value = orthogonality_counterexample(B, j, k)
    b = np.array(diag)
    print(f"B = diag{diag}, j={j}, k={k}: <i[H,.], Phi - {{Phi*(1)/2,.}}>_B = {value.real:+.6f}"
          f"   (b_j - b_k)(tr B - b_j) = {(b[j] - b[k]) * (b.sum() - b[j]):+.6f}")

# At B = 1 any traceless H is orthogonal to any dissipator with traceless Kraus operators.
h = ginibre(3, rng)
h = 0.5 * (h + h.conj().T)
h -= np.trace(h) / 3 * np.eye(3)
ops = [v - np.trace(v) / 3 * np.eye(3) for v in kraus_set(3, 2, rng)]
val = b_inner(-1 * hamiltonian_part(h), -1 * dissipator_of(from_kraus(ops)), np.eye(3))
print("B = 1:", f"{abs(val):.1e}")
