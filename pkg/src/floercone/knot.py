"""Finite models of the full knot Floer complex CFK^infinity over GF(2)[U, U^-1].

A model has a basis of generators ``x`` with Alexander grading ``A(x)`` and
Maslov grading ``M(x)``.  The element ``[x, i, j]`` (with ``j = i + A(x)``) is
``U^{-i} x`` and has Maslov grading ``M(x) + 2i``.  A differential entry
``x -> U^k y`` sends ``[x, i, j]`` to ``[y, i - k, i - k + A(y)]``.

A flip entry ``x -> y`` describes the symmetry map exchanging the two
filtrations; it sends ``[x, i, j]`` to ``[y, i + d, i + d + A(y)]`` with
``d = (M(x) - M(y)) / 2`` so that Maslov gradings are preserved.

Text format (one directive per line, ``#`` starts a comment)::

    knot <name> [genus <g>]
    gen <label> A=<int> M=<int>
    d <src> -> U^<k> <dst>        # "U^<k>" may be omitted for k = 0
    flip <src> -> <dst> [+ <dst2> ...]
"""

from __future__ import annotations

import re
from collections import Counter, defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from pathlib import Path
from typing import Optional

from . import gf2
from .bifilt import BifiltComplex, BifiltGenerator
from .errors import ParseError


@dataclass(frozen=True)
class KnotGenerator:
    label: str
    alexander: int
    maslov: int


@dataclass(frozen=True)
class Arrow:
    source: str
    target: str
    u_power: int


@dataclass(frozen=True)
class Violation:
    code: str
    message: str
    witness: tuple[str, ...] = ()

    def __str__(self) -> str:
        return f"[{self.code}] {self.message}"


@dataclass(frozen=True, eq=False)
class KnotComplex:
    name: str
    generators: tuple[KnotGenerator, ...]
    differential: tuple[Arrow, ...]
    flip: Optional[tuple[tuple[str, str], ...]] = None
    genus_hint: Optional[int] = None
    comments: tuple[str, ...] = field(default=(), repr=False)

    @cached_property
    def index(self) -> dict[str, int]:
        return {g.label: k for k, g in enumerate(self.generators)}

    def gen(self, label: str) -> KnotGenerator:
        return self.generators[self.index[label]]

    def __len__(self) -> int:
        return len(self.generators)

    @cached_property
    def arrows_from(self) -> dict[str, list[tuple[str, int]]]:
        out: dict[str, list[tuple[str, int]]] = defaultdict(list)
        for a in self.differential:
            out[a.source].append((a.target, a.u_power))
        return dict(out)

    @cached_property
    def flip_from(self) -> dict[str, list[tuple[str, int]]]:
        """Flip entries as ``source -> [(target, i-shift)]``."""
        out: dict[str, list[tuple[str, int]]] = defaultdict(list)
        for src, dst in self.flip or ():
            diff = self.gen(src).maslov - self.gen(dst).maslov
            out[src].append((dst, diff // 2))
        return dict(out)

    def hat_slice(self) -> BifiltComplex:
        """The ``{i = 0}`` slice (U set to zero) with I = 0, J = A."""
        gens = [
            BifiltGenerator(g.label, 0, Fraction(g.alexander), Fraction(g.maslov))
            for g in self.generators
        ]
        arrows = [(a.source, a.target) for a in self.differential if a.u_power == 0]
        return BifiltComplex.from_arrows(gens, arrows)

    def window(self, i_min: int, i_max: int) -> BifiltComplex:
        """The subquotient ``{i_min <= i <= i_max}`` of CFK^infinity, with I = i, J = j."""
        gens = []
        for i in range(i_min, i_max + 1):
            for g in self.generators:
                gens.append(
                    BifiltGenerator(
                        f"{g.label}@{i}", i, Fraction(i + g.alexander), Fraction(g.maslov + 2 * i)
                    )
                )
        arrows = [
            (f"{a.source}@{i}", f"{a.target}@{i - a.u_power}")
            for i in range(i_min, i_max + 1)
            for a in self.differential
            if i - a.u_power >= i_min
        ]
        return BifiltComplex.from_arrows(gens, arrows)

    @cached_property
    def hat_hfk(self) -> dict[tuple[int, int], int]:
        """Hat knot Floer homology: dims keyed by (Alexander, Maslov)."""
        by_level: dict[int, list[str]] = defaultdict(list)
        for g in self.generators:
            by_level[g.alexander].append(g.label)
        out: dict[tuple[int, int], int] = {}
        for a, labels in by_level.items():
            pos = {lab: p for p, lab in enumerate(labels)}
            cols = []
            for lab in labels:
                col = 0
                for tgt, k in self.arrows_from.get(lab, ()):
                    if k == 0 and tgt in pos:
                        col ^= 1 << pos[tgt]
                cols.append(col)
            for m, d in _dims_by_grade(cols, [self.gen(lab).maslov for lab in labels]).items():
                if d:
                    out[(a, m)] = d
        return out

    @cached_property
    def genus(self) -> int:
        """Largest Alexander grading carrying nonzero hat knot Floer homology."""
        levels = [a for (a, _), d in self.hat_hfk.items() if d]
        return max(levels) if levels else 0

    def hat_homology(self) -> dict[int, int]:
        """Homology of the ``{i = 0}`` slice, keyed by Maslov grading."""
        labels = [g.label for g in self.generators]
        cols = []
        for lab in labels:
            col = 0
            for tgt, k in self.arrows_from.get(lab, ()):
                if k == 0:
                    col ^= 1 << self.index[tgt]
            cols.append(col)
        return {
            m: d
            for m, d in _dims_by_grade(cols, [g.maslov for g in self.generators]).items()
            if d
        }


def _dims_by_grade(cols: list[int], grades: list[int]) -> dict[int, int]:
    """Rank-nullity homology of a graded complex, per grade of the source."""
    by_grade: dict[int, list[int]] = defaultdict(list)
    for k, m in enumerate(grades):
        by_grade[m].append(k)
    out = {}
    for m, members in by_grade.items():
        rank_out = gf2.rank(cols[k] for k in members)
        rank_in = gf2.rank(cols[k] for k in by_grade.get(m + 1, ()))
        out[m] = len(members) - rank_out - rank_in
    return out


# ---------------------------------------------------------------------------
# parsing

_GEN_RE = re.compile(r"^gen\s+(\S+)\s+A=(-?\d+)\s+M=(-?\d+)$")
_D_RE = re.compile(r"^d\s+(\S+)\s*->\s*(?:U\^(-?\d+)\s+)?(\S+)$")
_FLIP_RE = re.compile(r"^flip\s+(\S+)\s*->\s*(.+)$")
_KNOT_RE = re.compile(r"^knot\s+(\S+)(?:\s+genus\s+(\d+))?$")


def parse_knot_complex(document: str) -> KnotComplex:
    name = None
    genus_hint = None
    gens: list[KnotGenerator] = []
    arrows: list[Arrow] = []
    flips: list[tuple[str, str]] | None = None
    comments = []
    seen_arrows = set()

    for lineno, raw in enumerate(document.splitlines(), 1):
        line, _, comment = raw.partition("#")
        if comment.strip():
            comments.append(comment.strip())
        line = line.strip()
        if not line:
            continue
        directive = line.split()[0]
        if directive == "knot":
            m = _KNOT_RE.match(line)
            if m is None or name is not None:
                raise ParseError(f"line {lineno}: bad or repeated header: {line!r}")
            name = m.group(1)
            genus_hint = int(m.group(2)) if m.group(2) is not None else None
        elif directive == "gen":
            m = _GEN_RE.match(line)
            if m is None:
                raise ParseError(f"line {lineno}: bad generator line: {line!r}")
            gens.append(KnotGenerator(m.group(1), int(m.group(2)), int(m.group(3))))
        elif directive == "d":
            m = _D_RE.match(line)
            if m is None:
                raise ParseError(f"line {lineno}: bad differential line: {line!r}")
            k = int(m.group(2)) if m.group(2) is not None else 0
            if k < 0:
                raise ParseError(f"line {lineno}: negative U-power in {line!r}")
            key = (m.group(1), m.group(3), k)
            if key in seen_arrows:
                raise ParseError(f"line {lineno}: duplicate differential entry {line!r}")
            seen_arrows.add(key)
            arrows.append(Arrow(*key))
        elif directive == "flip":
            m = _FLIP_RE.match(line)
            if m is None:
                raise ParseError(f"line {lineno}: bad flip line: {line!r}")
            targets = [t.strip() for t in m.group(2).split("+")]
            if any(not t or " " in t for t in targets):
                raise ParseError(f"line {lineno}: bad flip targets in {line!r}")
            flips = flips if flips is not None else []
            for t in targets:
                flips.append((m.group(1), t))
        else:
            raise ParseError(f"line {lineno}: unknown directive {directive!r}")

    if name is None:
        raise ParseError("missing 'knot <name>' header")
    if not gens:
        raise ParseError("no generators")
    labels = [g.label for g in gens]
    dup = [lab for lab, c in Counter(labels).items() if c > 1]
    if dup:
        raise ParseError(f"duplicate generator labels: {', '.join(sorted(dup))}")
    known = set(labels)
    for a in arrows:
        for lab in (a.source, a.target):
            if lab not in known:
                raise ParseError(f"differential refers to unknown generator {lab!r}")
    if flips is not None:
        for src, dst in flips:
            for lab in (src, dst):
                if lab not in known:
                    raise ParseError(f"flip refers to unknown generator {lab!r}")
        counts = Counter(flips)
        flips = [pair for pair in dict.fromkeys(flips) if counts[pair] % 2]

    return KnotComplex(
        name=name,
        generators=tuple(gens),
        differential=tuple(arrows),
        flip=tuple(flips) if flips is not None else None,
        genus_hint=genus_hint,
        comments=tuple(comments),
    )


def load_knot_file(path: str | Path) -> KnotComplex:
    return parse_knot_complex(Path(path).read_text(encoding="utf-8"))


def dump_knot_complex(cx: KnotComplex) -> str:
    head = f"knot {cx.name}"
    if cx.genus_hint is not None:
        head += f" genus {cx.genus_hint}"
    lines = [head]
    lines += [f"gen {g.label} A={g.alexander} M={g.maslov}" for g in cx.generators]
    lines += [f"d {a.source} -> U^{a.u_power} {a.target}" for a in cx.differential]
    lines += [f"flip {s} -> {t}" for s, t in cx.flip or ()]
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# validation


def validate(cx: KnotComplex) -> list[Violation]:
    """Every violated KnotComplex invariant, each with a witness.  Empty iff valid."""
    out: list[Violation] = []
    gen = cx.gen

    for a in cx.differential:
        x, y = gen(a.source), gen(a.target)
        if a.u_power < 0:
            out.append(Violation("u-power", f"negative U-power on {a.source} -> {a.target}",
                                 (a.source, a.target)))
        elif y.alexander - x.alexander > a.u_power:
            out.append(Violation(
                "filtration",
                f"{a.source} -> U^{a.u_power} {a.target} raises the j-filtration "
                f"(A({a.target}) - A({a.source}) = {y.alexander - x.alexander} > {a.u_power})",
                (a.source, a.target)))
        if y.maslov != x.maslov - 1 + 2 * a.u_power:
            out.append(Violation(
                "maslov",
                f"{a.source} -> U^{a.u_power} {a.target}: expected M({a.target}) = "
                f"{x.maslov - 1 + 2 * a.u_power}, found {y.maslov}",
                (a.source, a.target)))

    square: Counter[tuple[str, str, int]] = Counter()
    for a in cx.differential:
        for tgt, k in cx.arrows_from.get(a.target, ()):
            square[(a.source, tgt, a.u_power + k)] += 1
    for (src, tgt, k), c in sorted(square.items()):
        if c % 2:
            out.append(Violation("d-squared", f"∂²≠0: {src} -> U^{k} {tgt}", (src, tgt)))

    hat = cx.hat_homology()
    if hat != {0: 1}:
        shown = ", ".join(f"M={m}: {d}" for m, d in sorted(hat.items())) or "zero"
        out.append(Violation(
            "hat-rank", f"hat homology rank ≠ 1 at Maslov 0 (found {shown})",
            tuple(str(m) for m in sorted(hat))))

    hfk = cx.hat_hfk
    for (a, m), d in sorted(hfk.items()):
        mirror = hfk.get((-a, m - 2 * a), 0)
        if mirror != d:
            out.append(Violation(
                "symmetry",
                f"hat HFK dim {d} at (A={a}, M={m}) but {mirror} at (A={-a}, M={m - 2 * a})",
                (str(a), str(m))))

    if cx.genus_hint is not None and cx.genus_hint != cx.genus:
        out.append(Violation(
            "genus", f"genus header says {cx.genus_hint}, hat knot Floer homology gives {cx.genus}",
            (str(cx.genus_hint),)))

    if cx.flip is not None:
        out.extend(_flip_violations(cx))
    return out


def _flip_violations(cx: KnotComplex) -> list[Violation]:
    out = []
    gen = cx.gen
    parity_ok = True
    for src, dst in cx.flip or ():
        x, y = gen(src), gen(dst)
        diff = x.maslov - y.maslov
        if diff % 2:
            parity_ok = False
            out.append(Violation("flip-grading",
                                 f"flip {src} -> {dst} joins Maslov gradings of different parity",
                                 (src, dst)))
            continue
        shift = diff // 2
        # [x, i, j] -> [y, i + shift, i + shift + A(y)] must satisfy i' <= j and j' <= i
        if shift > x.alexander or shift + y.alexander > 0:
            out.append(Violation("flip-filtration",
                                 f"flip {src} -> {dst} does not exchange the two filtrations",
                                 (src, dst)))
    if not parity_ok:
        return out

    labels = [g.label for g in cx.generators]
    cols = [0] * len(labels)
    for src, dst in cx.flip or ():
        cols[cx.index[src]] ^= 1 << cx.index[dst]
    if not gf2.is_invertible(cols):
        out.append(Violation("flip-invertible", "flip matrix is not invertible over GF(2)"))

    # chain map: compare d∘flip and flip∘d with their i-shifts
    lhs: Counter[tuple[str, str, int]] = Counter()
    for src, targets in cx.flip_from.items():
        for mid, s1 in targets:
            for tgt, k in cx.arrows_from.get(mid, ()):
                lhs[(src, tgt, s1 - k)] += 1
    for a in cx.differential:
        for tgt, s2 in cx.flip_from.get(a.target, ()):
            lhs[(a.source, tgt, s2 - a.u_power)] += 1
    for (src, tgt, shift), c in sorted(lhs.items()):
        if c % 2:
            out.append(Violation("flip-chain",
                                 f"flip does not commute with ∂ at {src} -> {tgt}",
                                 (src, tgt)))
    return out
