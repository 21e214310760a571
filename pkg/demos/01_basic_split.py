"""
Splitting a generator against a weight
======================================

Build a generator of the form K(.) + (.)K^* + Phi from random pieces, pick a
weight B, and recover the unique pair with Phi in CP_B and Im tr(B^* K) = 0.
"""

import numpy as np

from cpsplit import KWedge, build_generator, decompose, decompose_constructive, recompose, weighted_trace
from cpsplit.sampling import ginibre, kraus_set, weight

rng = np.random.default_rng(7)
n = 3

# A generator in the CP wedge: arbitrary K0 plus a CP map with two Kraus operators.
K0 = ginibre(n, rng)
ops = kraus_set(n, 2, rng)
L = build_generator(KWedge(K0, ops))
print("generator acts on", n, "x", n, "matrices; superoperator shape", L.mat.shape)

# Any B with nonzero real trace works.
B = weight(n, rng)
print("tr B =", np.round(np.trace(B), 4))

d = decompose(L, B)
print("\nK =\n", np.round(d.K, 4))
print("Kraus rank of Phi:", len(d.phi_kraus), "(input had", len(ops), ")")

# The defining conditions.
print("\nIm tr(B^* K)        ", f"{abs(np.vdot(B, d.K).imag):.1e}")
print("tr Phi(B^* . B)     ", f"{abs(weighted_trace(d.phi, B)):.1e}")
print("|C(Phi) vec B|      ", f"{d.diagnostics.kernel_residual:.1e}")
print("recomposition error ", f"{np.linalg.norm((recompose(d) - L).mat):.1e}")

# The constructive route shifts each Kraus operator by a multiple of 1
# and lands on the same pair.
d2 = decompose_constructive(K0, ops, B)
print("\nclosed form vs constructive: |dK| =", f"{np.linalg.norm(d.K - d2.K):.1e}",
      " |dC(Phi)| =", f"{np.linalg.norm(d.phi_choi - d2.phi_choi):.1e}")

# K is only determined up to i*lambda*1 by L itself; the weight removes that slack.
d3 = decompose(build_generator(KWedge(K0 + 2.5j * np.eye(n), ops)), B)
print("shifting K0 by 2.5i changes K by", f"{np.linalg.norm(d.K - d3.K):.1e}")
