"""Contact surgery plans and tightness certificates.

A contact r-surgery is rewritten as push-offs with contact +1 and a chain of
stabilized push-offs with contact -1.  The smooth coefficient of the
resulting link is recovered independently by handle slides and slam dunks.
"""

from fractions import Fraction

from floercone import certify_tight, dgs_plan, fmt_rat, load, smooth_roundtrip, top_alexander

for r in (Fraction(3), Fraction(4, 3), Fraction(1, 2), Fraction(-7, 5), Fraction(-4)):
    plan = dgs_plan(r)
    tb = Fraction(-1)
    print(f"contact {fmt_rat(r):>5s}: +1 push-offs {plan.pushoff_plus_count}, "
          f"stabilizations {list(plan.stabilizations)}, "
          f"smooth coefficient on tb=-1 unknot {fmt_rat(smooth_roundtrip(plan, tb))}")

print()
for g, name in ((1, "trefoil_rh"), (2, "t25_rh"), (3, "t34_rh")):
    cert = certify_tight(g, Fraction(7, 5), name)
    cone_top = top_alexander(load(name), cert.n_effective)
    print(f"{name}: -7/5 surgery, first surgery on tb {fmt_rat(cert.first_surgery_legendrian.tb)}, "
          f"n_eff {cert.n_effective}, spin^c {cert.spinc_label}, "
          f"grading {fmt_rat(cert.loss_alexander)} (cone says {fmt_rat(cone_top)})")
