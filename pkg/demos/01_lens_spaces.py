"""Surgeries on the unknot and the trefoil.

n-surgery on the unknot is a lens space, so every spin^c class carries a
single generator whose grading is its d-invariant.  Staircase knots of genus
g behave the same way once n >= 2g - 1; the left-handed trefoil and the
figure eight never do.
"""

from fractions import Fraction

from floercone import fmt_rat, hf_hat_surgery, load

unknot = load("unknot")
for n in range(1, 6):
    dims = hf_hat_surgery(unknot, n)
    grades = [fmt_rat(m) for _, _, m, _ in dims.rows()]
    expected = [fmt_rat(Fraction((2 * i - n) ** 2 - n, 4 * n)) for i in range(n)]
    print(f"unknot n={n}: d = {grades}  (closed form {expected})")

print()
for name in ("trefoil_rh", "trefoil_lh", "figure_eight", "t25_rh"):
    cx = load(name)
    totals = [hf_hat_surgery(cx, n).total() for n in range(1, 7)]
    print(f"{name:13s} total rank for n = 1..6: {totals}")
