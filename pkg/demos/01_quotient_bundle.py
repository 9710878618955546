"""Cohomology of the weighted quotient bundle Q and its twists.

Q is the cokernel of O(-gamma) -> sum_i O(n*alpha + i*(beta - alpha)). Its
middle cohomology vanishes, and h^(n-1) is a Hilbert function of the complete
intersection cut out by the defining forms. The engine reproduces both.
"""

from tango_workbench import Engine, QBundle, TangoParams, parse
from tango_workbench.bundles import quotient_middle
from tango_workbench.combinatorics import ci_hilbert_function, h_line

p = TangoParams(3, 7, 1, 0)
eng = Engine(p)
print(f"parameters {p}; middle degrees {quotient_middle(p)}; form degrees {p.form_degrees()}")

print("\nline bundles by Bott's formula")
for d in (-7, -4, 0, 3):
    print(f"  O({d}): {eng.cohomology(parse(f'O({d})'))}")

print("\ntwists of Q, with h^2 predicted by the Hilbert function of the forms")
for m in range(-8, 3, 2):
    t = eng.cohomology(QBundle(), m)
    hf = ci_hilbert_function(p.form_degrees(), p.gamma - m - 4)
    print(f"  Q({m:+d}): {t}   HF prediction for h^2: {hf}")

print("\nh^0(Q) from the defining sequence:",
      sum(h_line(3, d, 0) for d in quotient_middle(p)) - h_line(3, -7, 0))

for text in ("Q ⊗ Q*", "SymQ[2](-3)", "WedgeQ[2]* ⊗ O(4)", "F(7)", "F ⊗ F*"):
    print(f"  {text:>18}: {eng.cohomology(parse(text))}")
