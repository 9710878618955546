"""Admissible subspaces W of the exterior square of S^n U.

A valid W is a sum of hyperplanes W_k of the weight spaces E_k (3 <= k <= 2n-3)
avoiding every basis vector z_{p,k-p}. The script samples one per n, checks its
dimension, and shows how a functional with a zero entry lets a decomposable
vector in.
"""

from tango_workbench import WSpace, sample_wspace, wspace_validate
from tango_workbench.weights import clebsch_gordan_wedge2, grade_dim, wspace_no_decomposable_check

for n in (3, 4, 5, 6):
    w = sample_wspace(n, seed=n)
    rep = wspace_validate(w)
    ev = wspace_no_decomposable_check(w, trials=50, seed=n)
    dims = [grade_dim(n, k) for k in range(1, 2 * n)]
    print(f"n={n}: grade dims {dims}, SL2 summands {clebsch_gordan_wedge2(n)}")
    print(f"  dim W = {rep.dim} (expected {rep.expected_dim}), valid={rep.valid}, "
          f"random squares nonzero={ev.random_ok}")

bad = WSpace(4, {3: [1, 0], 4: [1, 1], 5: [2, -1]})
rep = wspace_validate(bad)
print("\nphi_3 = (1, 0) for n=4:", "valid" if rep.valid else "invalid",
      "witnesses", [f"z_{{{p},{q}}} in W_{k}" for k, (p, q) in rep.decomposable_witnesses])
