"""Deformation bookkeeping for the classical and a weighted Tango bundle.

Prints every quantity of the deformation report and the status of each
identity. In the classical case everything closes up exactly; for the weighted
bundle the flanking term h^2(Q(-gamma) (x) T*) is nonzero, which breaks one
identity and leaves h^1(End F) only bracketed.
"""

from tango_workbench import TangoParams, smoothness_report

for p in (TangoParams(3, 1, 0, 0), TangoParams(4, 1, 0, 0), TangoParams(3, 7, 1, 0)):
    rep = smoothness_report(p)
    print(f"\n{p}")
    for k in rep.QUANTITIES:
        print(f"  {k:16s} {getattr(rep, k)}")
    for name, status in rep.identities:
        print(f"  [{status}] {name}")
