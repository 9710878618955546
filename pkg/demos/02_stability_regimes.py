"""Stability of the weighted Tango bundle across the gamma range.

For each gamma the script prints the analytic threshold, the h^0 of the
normalized exterior powers (Hoppe's test) and, in the window
n*alpha < gamma <= 2n*alpha + beta - alpha, the destabilizing-section attempt.
"""

from tango_workbench import TangoParams, analyze_stability, hoppe_verify
from tango_workbench.params import is_valid
from tango_workbench.stability import instability_attempt, threshold_check


def show(n, alpha, beta, gammas):
    print(f"\nn={n}, alpha={alpha}, beta={beta}")
    for g in gammas:
        if not is_valid(n, g, alpha, beta):
            continue
        p = TangoParams(n, g, alpha, beta)
        th = threshold_check(p)
        h0 = [str(e.h0) for e in hoppe_verify(p)]
        attempt = instability_attempt(p)
        note = "" if attempt is None else f"  section attempt: h0(F({attempt.twist}))={attempt.h0_f}"
        print(f"  gamma={g:2d} threshold={'yes' if th.sufficient else 'no ':3s} "
              f"hoppe h0={h0}  verdict={analyze_stability(p).verdict}{note}")


show(3, 1, 0, range(1, 9))      # alpha + beta > 0: no destabilizing section in the window
show(3, 2, -2, range(1, 13))    # Cascini's case: sections appear below the threshold
show(4, 1, -1, range(1, 11))
