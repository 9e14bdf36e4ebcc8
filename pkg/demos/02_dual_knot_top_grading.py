"""The dual knot of n-surgery and its top Alexander grading.

In spin^c class g mod n the dual knot's minus-flavor homology starts at
(2g+n-1)/(2n), and the U map out of the top level is injective there.
"""

from floercone import check_top_injectivity, fmt_rat, hfk_dual, load, top_alexander

cx = load("t25_rh")
g = cx.genus
for n in range(1, 7):
    top = top_alexander(cx, n)
    verdict = check_top_injectivity(cx, n)
    print(f"n={n}: top grading {fmt_rat(top):>5s}   injective: {verdict.injective}")

# the whole hat-flavor picture in one class
print()
dims = hfk_dual(cx, 3, g, "hat")
for s, a, m, d in dims.rows():
    print(f"  spin^c {s}  A = {fmt_rat(a):>5s}  M = {fmt_rat(m):>5s}  dim {d}")
