from fractions import Fraction

import pytest

from floercone.bifilt import gf2_homology
from floercone.cone import (
    ConeParams,
    block_indices,
    build_cone,
    check_top_injectivity,
    hf_hat_surgery,
    hfk_dual,
    j_offset,
    min_depth,
    top_alexander,
    top_arrow_verdict,
)
from floercone.errors import DepthError, PreconditionError
from floercone.knot import parse_knot_complex
from floercone.library import ENTRIES, load
from oracles import total_homology_by_maslov

F = Fraction


def lens_d(n, i):
    return F((2 * i - n) ** 2 - n, 4 * n)


@pytest.mark.parametrize("n", range(1, 8))
def test_unknot_matches_lens_space_d_invariants(n):
    dims = hf_hat_surgery(load("unknot"), n)
    assert dims.rows() == [(i, None, lens_d(n, i), 1) for i in range(n)]


def test_known_small_surgeries():
    assert hf_hat_surgery(load("trefoil_rh"), 1).rows() == [(0, None, F(-2), 1)]
    fig8 = hf_hat_surgery(load("figure_eight"), 1)
    assert fig8.by_maslov() == {F(-1): 1, F(0): 2}


def test_block_indices():
    assert block_indices(3, 0, 2) == ([0], [])
    assert block_indices(3, 2, 2) == ([-1, 2], [2])
    # n > 2g: every class still gets exactly one A-block
    for s in range(7):
        a_idx, _ = block_indices(7, s, 2)
        assert len(a_idx) == 1


def test_cone_structure():
    c = build_cone(load("t25_rh"), ConeParams(3, 2))
    assert c.block_sizes() == {("A", -1): 5, ("A", 2): 5, ("B", 2): 5}
    assert sorted(c.edges) == [("h", -1, 2), ("v", 2, 2)]
    assert c.underlying.violations() == []
    assert all(g.I == 0 for g in c.underlying.generators)


def test_params_validation():
    with pytest.raises(PreconditionError):
        ConeParams(0, 0)
    with pytest.raises(PreconditionError):
        ConeParams(2, 0, flavor="plus")
    assert ConeParams(3, -1).spinc == 2


def test_dual_knot_unknot_two_classes():
    u = load("unknot")
    assert hfk_dual(u, 2, 0).rows() == [(0, F(1, 4), F(1, 4), 1)]
    assert hfk_dual(u, 2, 1).rows() == [(1, F(-1, 4), F(-1, 4), 1)]


def signed(by_maslov, base):
    return sum(d if (m - base) % 2 == 0 else -d for m, d in by_maslov.items())


def test_dual_knot_hat_bounds_surgery():
    # the J-filtration spectral sequence: rank can only drop, Euler characteristic is kept
    for name in ENTRIES:
        cx = load(name)
        for n in range(1, 5):
            for s in range(n):
                hfk, hf = hfk_dual(cx, n, s), hf_hat_surgery(cx, n, s)
                assert hfk.total() >= hf.total()
                base = min(hf.by_maslov())
                assert signed(hfk.by_maslov(), base) == signed(hf.by_maslov(), base)


def test_minus_flavor_reports_u_ranks():
    dims = hfk_dual(load("trefoil_rh"), 1, 0, "minus")
    top = max(dims.alexanders())
    assert top == 1
    assert dims[(0, F(1), F(0))] == 1
    assert dims.u_ranks and all(r == 1 for r in dims.u_ranks.values())
    assert dims.note


def test_minus_depth_guard():
    cx = load("trefoil_rh")
    with pytest.raises(DepthError):
        hfk_dual(cx, 2, 0, "minus", u_depth=min_depth(1, 2) - 1)


def test_minus_deeper_truncation_agrees():
    cx = load("t25_rh")
    d = min_depth(2, 3)
    shallow = hfk_dual(cx, 3, 2, "minus", u_depth=d)
    deep = hfk_dual(cx, 3, 2, "minus", u_depth=d + 2)
    for key in shallow:
        assert deep[key] == shallow[key]
    for key, r in shallow.u_ranks.items():
        assert deep.u_ranks[key] == r


def test_missing_flip_is_an_error():
    text = ("knot t genus 1\ngen a A=1 M=0\ngen b A=0 M=-1\ngen c A=-1 M=-2\n"
            "d b -> U^1 a\nd b -> c\n")
    with pytest.raises(PreconditionError, match="flip"):
        hf_hat_surgery(parse_knot_complex(text), 1)


def test_invalid_complex_rejected():
    bad = parse_knot_complex("knot bad\ngen y A=1 M=0\ngen x A=0 M=-1\nd x -> U^1 y\nflip y -> y\n"
                             "flip x -> x\n")
    with pytest.raises(PreconditionError):
        check_top_injectivity(bad, 3)


def test_verdict_false_branch():
    bad = parse_knot_complex("knot bad\ngen y A=1 M=0\ngen x A=0 M=-1\nd x -> U^1 y\n"
                             "flip y -> y\nflip x -> x\n")
    v = top_arrow_verdict(bad, 3)
    assert not v.injective
    assert v.witness == ("A1:x@1", "A1:y@0")


def test_top_alexander_needs_genus():
    with pytest.raises(PreconditionError):
        top_alexander(load("unknot"), 2)


def test_verdict_reports_top_grading():
    v = check_top_injectivity(load("t34_rh"), 4)
    assert v.injective and v.witness is None
    assert v.top == F(9, 8) == j_offset(3, 4)


@pytest.mark.parametrize("name", sorted(ENTRIES))
def test_unreduced_cone_matches_reduced(name):
    cx = load(name)
    for n in range(1, 5):
        for s in range(n):
            cone = build_cone(cx, ConeParams(n, s))
            direct = total_homology_by_maslov(cone.underlying)
            assert hf_hat_surgery(cx, n, s).by_maslov(s) == direct
            assert gf2_homology(cone.underlying).by_maslov() == direct
