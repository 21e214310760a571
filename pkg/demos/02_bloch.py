"""
The Bloch equations
===================

The qubit generator with Hamiltonian omega/2 sigma_z, decay, excitation and
dephasing.  With B = 1 the split returns the textbook Hamiltonian; other
weights move part of the dissipator into the Hamiltonian.
"""

import numpy as np

from cpsplit import decompose_cptp
from cpsplit.casework import (
    BlochParams,
    bloch_gamma_hermitian,
    bloch_generator,
    bloch_reference_parts,
    bloch_spec,
    dissipator_of,
)
from cpsplit.decompose import build_generator
from cpsplit.superop import hamiltonian_part

p = BlochParams(omega=1.0, gamma1=1.0, gamma2=2.0, gamma3=0.5)
L = bloch_generator(p)
np.set_printoptions(precision=3, suppress=True)
print("superoperator matrix of L:\n", L.mat)

# Same matrix from H and the three Lindblad operators.
print("\nentrywise match with the GKSL construction:",
      np.abs(L.mat - build_generator(bloch_spec(p)).mat).max())

# B = 1: traceless Hamiltonian, Phi is the usual jump part.
d = decompose_cptp(L, np.eye(2))
print("\nB = 1  ->  H =\n", d.H)

# A Hermitian weight with off-diagonal entries.
sx = np.array([[0, 1], [1, 0]])
B = np.eye(2) + 0.25 * sx
d = decompose_cptp(L, B)
print("\nB = 1 + sigma_x/4  ->  H =\n", d.H)
print("tr(B H) =", np.round(np.trace(B @ d.H), 12))

# Compare with the closed forms written in beta_jk = b_jk / tr B.
ham, gam = bloch_reference_parts(p, B)
print("\nHamiltonian part vs closed form:", f"{np.abs(ham.mat - hamiltonian_part(d.H).mat).max():.1e}")
print("dissipator vs closed form:      ", f"{np.abs(gam.mat - dissipator_of(d.phi).mat).max():.1e}")
print("dissipator vs Hermitian-B form: ", f"{np.abs(bloch_gamma_hermitian(p, B).mat - gam.mat).max():.1e}")
