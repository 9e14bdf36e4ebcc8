"""Finite GF(2) complexes with an (I, J) double filtration and rational Maslov grading."""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Iterator, Optional

from . import gf2
from .errors import SliceError

Key = tuple[int, Optional[Fraction], Fraction]
SlicePredicate = Callable[[int, Fraction], bool]


@dataclass
class GradedDims:
    """Homology dimensions keyed by ``(spinc, alexander, maslov)``.

    ``alexander`` is ``None`` when the computation forgets the second
    filtration (e.g. Floer homology of the surgered manifold).  Absent keys
    mean dimension zero; zero entries are never stored.

    ``u_ranks`` maps ``(spinc, alexander)`` to the rank of the U-action from
    that Alexander level to the level one below (minus flavor only).
    """

    dims: dict[Key, int] = field(default_factory=dict)
    u_ranks: dict[tuple[int, Fraction], int] = field(default_factory=dict)
    note: str | None = None

    def add(self, key: Key, dim: int) -> None:
        if dim < 0:
            raise ValueError("negative dimension")
        if dim:
            self.dims[key] = self.dims.get(key, 0) + dim

    def update(self, other: "GradedDims") -> None:
        for key, dim in other.dims.items():
            self.add(key, dim)
        self.u_ranks.update(other.u_ranks)

    def __getitem__(self, key: Key) -> int:
        return self.dims.get(key, 0)

    def __iter__(self) -> Iterator[Key]:
        return iter(sorted(self.dims, key=_sort_key))

    def __len__(self) -> int:
        return len(self.dims)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, GradedDims):
            return NotImplemented
        return self.dims == other.dims and self.u_ranks == other.u_ranks

    def total(self, spinc: int | None = None) -> int:
        return sum(d for (s, _, _), d in self.dims.items() if spinc is None or s == spinc)

    def spincs(self) -> list[int]:
        return sorted({s for s, _, _ in self.dims})

    def alexanders(self, spinc: int | None = None) -> list[Fraction]:
        return sorted(
            {a for s, a, _ in self.dims if a is not None and (spinc is None or s == spinc)}
        )

    def restrict(self, spinc: int) -> "GradedDims":
        out = GradedDims(note=self.note)
        out.dims = {k: d for k, d in self.dims.items() if k[0] == spinc}
        out.u_ranks = {k: r for k, r in self.u_ranks.items() if k[0] == spinc}
        return out

    def by_maslov(self, spinc: int | None = None) -> dict[Fraction, int]:
        out: dict[Fraction, int] = defaultdict(int)
        for (s, _, m), d in self.dims.items():
            if spinc is None or s == spinc:
                out[m] += d
        return dict(out)

    def euler(self, spinc: int) -> int:
        """Euler characteristic in one spin^c summand.

        Maslov gradings within a summand differ by integers; signs are taken
        relative to the smallest grading present.
        """
        grades = self.by_maslov(spinc)
        if not grades:
            return 0
        base = min(grades)
        chi = 0
        for m, d in grades.items():
            step = m - base
            if step.denominator != 1:
                raise ValueError("Maslov gradings in one spin^c summand must differ by integers")
            chi += d if step.numerator % 2 == 0 else -d
        return chi

    def rows(self) -> list[tuple[int, Optional[Fraction], Fraction, int]]:
        return [(s, a, m, self.dims[(s, a, m)]) for s, a, m in self]


def _sort_key(key: Key):
    s, a, m = key
    return (s, a is not None, a if a is not None else 0, m)


@dataclass(frozen=True)
class BifiltGenerator:
    label: str
    I: int
    J: Fraction
    maslov: Fraction


@dataclass(frozen=True, eq=False)
class BifiltComplex:
    """GF(2) complex; ``boundary[k]`` is the bitset of targets of generator ``k``."""

    generators: tuple[BifiltGenerator, ...]
    boundary: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.generators) != len(self.boundary):
            raise ValueError("one boundary column per generator")
        n = len(self.generators)
        if any(col >> n for col in self.boundary):
            raise ValueError("boundary refers to a generator out of range")

    def __len__(self) -> int:
        return len(self.generators)

    @classmethod
    def from_arrows(
        cls, generators: Iterable[BifiltGenerator], arrows: Iterable[tuple[str, str]]
    ) -> "BifiltComplex":
        gens = tuple(generators)
        index = {g.label: k for k, g in enumerate(gens)}
        if len(index) != len(gens):
            raise ValueError("duplicate generator labels")
        cols = [0] * len(gens)
        for src, dst in arrows:
            cols[index[src]] ^= 1 << index[dst]
        return cls(gens, tuple(cols))

    def labels(self) -> list[str]:
        return [g.label for g in self.generators]

    def arrows(self) -> list[tuple[str, str]]:
        gens = self.generators
        return [
            (gens[x].label, gens[y].label)
            for x, col in enumerate(self.boundary)
            for y in gf2.bits(col)
        ]

    def violations(self) -> list[str]:
        """Every failed BifiltComplex invariant, one message per witness."""
        out = []
        gens = self.generators
        for x, col in enumerate(self.boundary):
            gx = gens[x]
            for y in gf2.bits(col):
                gy = gens[y]
                if gy.I > gx.I or gy.J > gx.J:
                    out.append(f"arrow {gx.label} -> {gy.label} raises a filtration level")
                if gy.maslov != gx.maslov - 1:
                    out.append(f"arrow {gx.label} -> {gy.label} does not lower Maslov grading by 1")
            sq = gf2.apply(self.boundary, col)
            for z in gf2.bits(sq):
                out.append(f"boundary squared nonzero: {gx.label} -> {gens[z].label}")
        return out

    def restrict(self, indices: Iterable[int]) -> "BifiltComplex":
        """Induced complex on a subset of generators (caller ensures it is a subquotient)."""
        keep = sorted(set(indices))
        pos = {k: p for p, k in enumerate(keep)}
        cols = []
        for k in keep:
            col = 0
            for t in gf2.bits(self.boundary[k]):
                p = pos.get(t)
                if p is not None:
                    col |= 1 << p
            cols.append(col)
        return BifiltComplex(tuple(self.generators[k] for k in keep), tuple(cols))

    def select(self, slice: SlicePredicate | None) -> list[int]:
        return [
            k for k, g in enumerate(self.generators) if slice is None or slice(g.I, g.J)
        ]

    def is_subquotient(self, indices: Iterable[int]) -> bool:
        """True iff no boundary path leaves the selection and comes back."""
        sel = 0
        for k in indices:
            sel |= 1 << k
        below = _closure(self.boundary, sel)
        outside = below & ~sel
        return _closure(self.boundary, outside) & sel == 0


def _closure(boundary: tuple[int, ...], mask: int) -> int:
    """All generators reachable from ``mask`` by boundary arrows, including ``mask``."""
    seen = mask
    frontier = mask
    while frontier:
        nxt = 0
        for k in gf2.bits(frontier):
            nxt |= boundary[k]
        frontier = nxt & ~seen
        seen |= frontier
    return seen


def reduce(complex: BifiltComplex) -> BifiltComplex:
    """Cancel arrows that preserve both filtration levels until none remain.

    At each step the arrow whose (source label, target label) pair is
    lexicographically smallest is cancelled.  Surviving generators keep their
    labels and relative order.
    """
    gens = complex.generators
    n = len(gens)
    bd = list(complex.boundary)
    order = {lab: r for r, lab in enumerate(sorted(g.label for g in gens))}
    rank_of = [order[g.label] for g in gens]
    level = [(g.I, g.J) for g in gens]
    alive = (1 << n) - 1

    while True:
        best = None
        for x in gf2.bits(alive):
            for y in gf2.bits(bd[x]):
                if level[x] == level[y]:
                    key = (rank_of[x], rank_of[y])
                    if best is None or key < best[0]:
                        best = (key, x, y)
        if best is None:
            break
        _, x, y = best
        dx = bd[x]
        ybit = 1 << y
        for z in gf2.bits(alive):
            if z != x and bd[z] & ybit:
                bd[z] ^= dx
        alive &= ~((1 << x) | ybit)
        xbit = 1 << x
        for z in gf2.bits(alive):
            bd[z] &= ~xbit

    keep = gf2.bits(alive)
    pos = {k: p for p, k in enumerate(keep)}
    cols = []
    for k in keep:
        col = 0
        for t in gf2.bits(bd[k]):
            col |= 1 << pos[t]
        cols.append(col)
    return BifiltComplex(tuple(gens[k] for k in keep), tuple(cols))


def is_reduced(complex: BifiltComplex) -> bool:
    gens = complex.generators
    return all(
        (gens[x].I, gens[x].J) != (gens[y].I, gens[y].J)
        for x, col in enumerate(complex.boundary)
        for y in gf2.bits(col)
    )


def gf2_homology(
    complex: BifiltComplex, slice: SlicePredicate | None = None, spinc: int = 0
) -> GradedDims:
    """Homology of a subquotient, graded by (J filtration level, Maslov).

    A homology class is assigned the lowest J level at which it has a
    representative, so the dimensions are those of the associated graded of
    the J-filtration on homology; their sum is the ordinary homology.
    """
    sel = complex.select(slice)
    if not complex.is_subquotient(sel):
        raise SliceError("slice is not closed under the boundary (not a subquotient)")
    gens = complex.generators
    order = sorted(sel, key=lambda k: (gens[k].J, gens[k].maslov, gens[k].I, k))
    pos = {k: p for p, k in enumerate(order)}
    columns = []
    for p, k in enumerate(order):
        col = 0
        for t in gf2.bits(complex.boundary[k]):
            q = pos.get(t)
            if q is not None:
                col |= 1 << q
        if col >> p:
            raise SliceError(f"boundary of {gens[k].label} does not lower (J, Maslov)")
        columns.append(col)
    _, essential = gf2.persistence_pairs(columns)
    out = GradedDims()
    for p in essential:
        g = gens[order[p]]
        out.add((spinc, g.J, g.maslov), 1)
    return out


def homology_total(complex: BifiltComplex, slice: SlicePredicate | None = None) -> int:
    return gf2_homology(complex, slice).total()
