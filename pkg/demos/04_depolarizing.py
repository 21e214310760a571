"""
The depolarizing channel is never in CP_B
=========================================

D(X) = tr(X) 1/n has Choi matrix 1/n, so no nonzero vec B lies in its kernel.
"""

import numpy as np

from cpsplit.casework import depolarizing_exclusion

rng = np.random.default_rng(3)
for n in (2, 3):
    for label, B in [("sigma_z" if n == 2 else "diag(1,-1,0)", np.diag([1.0, -1.0] + [0.0] * (n - 2))),
                     ("random", rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n)))]:
        r = depolarizing_exclusion(B)
        print(f"n={n} B={label:14s} Choi rank {r.choi_rank:2d}  |C(D) vec B| = {r.kernel_residual:.4f}"
              f" (|B|_F/n = {np.linalg.norm(B) / n:.4f})  excluded: {r.excluded}")
