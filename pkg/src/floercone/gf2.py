"""GF(2) linear algebra on int bitsets.

A vector is a Python int whose bit ``k`` is the coefficient of basis
element ``k``.  A matrix is a sequence of such ints, one per column
(the image of a basis vector).
"""

from __future__ import annotations

from typing import Iterable, Sequence


def bits(mask: int) -> list[int]:
    """Indices of the set bits of ``mask``, ascending."""
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


def rank(vectors: Iterable[int]) -> int:
    """Dimension of the span of ``vectors``."""
    pivots: dict[int, int] = {}
    r = 0
    for v in vectors:
        while v:
            top = v.bit_length() - 1
            p = pivots.get(top)
            if p is None:
                pivots[top] = v
                r += 1
                break
            v ^= p
    return r


def kernel(columns: Sequence[int]) -> list[int]:
    """Basis of the kernel of the map sending basis vector ``k`` to ``columns[k]``.

    Kernel vectors are returned as bitsets over the column indices.
    """
    pivots: dict[int, tuple[int, int]] = {}
    out = []
    for k, v in enumerate(columns):
        combo = 1 << k
        while v:
            top = v.bit_length() - 1
            hit = pivots.get(top)
            if hit is None:
                pivots[top] = (v, combo)
                break
            v ^= hit[0]
            combo ^= hit[1]
        if not v:
            out.append(combo)
    return out


def apply(columns: Sequence[int], vector: int) -> int:
    """Image of ``vector`` under the matrix with the given columns."""
    out = 0
    for k in bits(vector):
        out ^= columns[k]
    return out


def compose(outer: Sequence[int], inner: Sequence[int]) -> list[int]:
    """Columns of ``outer @ inner``."""
    return [apply(outer, col) for col in inner]


def is_invertible(columns: Sequence[int]) -> bool:
    n = len(columns)
    return rank(columns) == n and all(c >> n == 0 for c in columns)


def persistence_pairs(columns: Sequence[int]) -> tuple[dict[int, int], list[int]]:
    """Standard column reduction of a filtered boundary matrix.

    ``columns[k]`` is the boundary of the ``k``-th basis element and may only
    involve indices ``< k`` (every prefix spans a subcomplex).  Returns the
    pairing ``{killed: killer}`` and the list of essential indices, i.e. the
    cycles that survive to the homology of the whole complex.
    """
    low_owner: dict[int, int] = {}
    reduced: dict[int, int] = {}
    positive = []
    for k, col in enumerate(columns):
        while col:
            low = col.bit_length() - 1
            owner = low_owner.get(low)
            if owner is None:
                break
            col ^= reduced[owner]
        if col:
            low = col.bit_length() - 1
            low_owner[low] = k
            reduced[k] = col
        else:
            positive.append(k)
    pairs = {low: k for low, k in low_owner.items()}
    essential = [k for k in positive if k not in pairs]
    return pairs, essential
