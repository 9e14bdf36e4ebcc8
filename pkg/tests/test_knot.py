import pytest

from floercone.errors import ParseError
from floercone.knot import dump_knot_complex, parse_knot_complex, validate
from floercone.library import load

TREFOIL = """
# right-handed trefoil staircase
knot t genus 1
gen a A=1 M=0
gen b A=0 M=-1
gen c A=-1 M=-2
d b -> U^1 a
d b -> c
flip a -> c
flip b -> b
flip c -> a
"""


def codes(cx):
    return {v.code for v in validate(cx)}


def test_parse_trefoil():
    cx = parse_knot_complex(TREFOIL)
    assert cx.name == "t" and cx.genus_hint == 1
    assert [g.label for g in cx.generators] == ["a", "b", "c"]
    assert {(a.source, a.target, a.u_power) for a in cx.differential} == {
        ("b", "a", 1), ("b", "c", 0)}
    assert cx.comments == ("right-handed trefoil staircase",)
    assert validate(cx) == []


def test_dump_roundtrip():
    cx = parse_knot_complex(TREFOIL)
    again = parse_knot_complex(dump_knot_complex(cx))
    assert again.generators == cx.generators
    assert again.differential == cx.differential
    assert again.flip == cx.flip


def test_hat_hfk_and_genus():
    cx = parse_knot_complex(TREFOIL)
    assert cx.hat_hfk == {(1, 0): 1, (0, -1): 1, (-1, -2): 1}
    assert cx.genus == 1
    assert cx.hat_homology() == {0: 1}


@pytest.mark.parametrize("text, fragment", [
    ("gen a A=0 M=0", "missing"),
    ("knot k\n", "no generators"),
    ("knot k\ngen a A=0 M=0\ngen a A=0 M=0", "duplicate generator"),
    ("knot k\ngen a A=0 M=0\nd a -> U^-1 a", "negative U-power"),
    ("knot k\ngen a A=0 M=0\nd a -> b", "unknown generator"),
    ("knot k\ngen a A=0 M=0\nwat", "unknown directive"),
    ("knot k\ngen a A=x M=0", "bad generator"),
    ("knot k\ngen a A=0 M=0\nd a -> a\nd a -> a", "duplicate differential"),
    ("knot k\nknot j\ngen a A=0 M=0", "repeated header"),
])
def test_parse_errors(text, fragment):
    with pytest.raises(ParseError, match=fragment):
        parse_knot_complex(text)


def test_flip_entries_cancel_mod_two():
    cx = parse_knot_complex("knot u\ngen x A=0 M=0\nflip x -> x\nflip x -> x + x")
    assert cx.flip == (("x", "x"),)


def test_d_squared_witness():
    cx = parse_knot_complex("knot k\ngen a A=0 M=0\ngen b A=0 M=-1\ngen c A=0 M=-2\n"
                            "d a -> b\nd b -> c")
    bad = [v for v in validate(cx) if v.code == "d-squared"]
    assert len(bad) == 1
    assert bad[0].witness == ("a", "c")
    assert "∂²≠0: a -> U^0 c" in str(bad[0])


def test_filtration_and_maslov_violations():
    cx = parse_knot_complex("knot k\ngen a A=0 M=0\ngen b A=1 M=0\nd a -> b")
    assert {"filtration", "maslov"} <= codes(cx)


def test_hat_rank_violation():
    cx = parse_knot_complex("knot k\ngen a A=0 M=0\ngen b A=0 M=0")
    assert "hat-rank" in codes(cx)


def test_symmetry_uses_grading_shift():
    # dims at (A, M) must match (-A, M - 2A); plain A -> -A with equal M is not enough
    ok = parse_knot_complex(TREFOIL)
    assert "symmetry" not in codes(ok)
    skew = parse_knot_complex("knot k\ngen a A=1 M=0\ngen b A=0 M=-1\ngen c A=-1 M=0\n"
                              "d b -> U^1 a\nd b -> c")
    assert "symmetry" in codes(skew)


def test_genus_header_mismatch():
    cx = parse_knot_complex(TREFOIL.replace("genus 1", "genus 2"))
    assert "genus" in codes(cx)


def test_flip_violations():
    base = TREFOIL.split("flip")[0]
    parity = parse_knot_complex(base + "flip a -> b\nflip b -> b\nflip c -> a")
    assert "flip-grading" in codes(parity)
    singular = parse_knot_complex(base + "flip a -> c\nflip b -> b\nflip c -> c")
    assert "flip-invertible" in codes(singular)
    not_chain = parse_knot_complex(base + "flip a -> a\nflip b -> b\nflip c -> c")
    assert codes(not_chain) & {"flip-filtration", "flip-chain"}


def test_bundled_windows_are_legal():
    cx = load("figure_eight")
    assert cx.window(-2, 1).violations() == []
    assert cx.hat_slice().violations() == []
