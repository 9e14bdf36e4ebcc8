"""Bundled model complexes.

The directory can be overridden with the ``FLOERCONE_DATA`` environment
variable; it must contain ``<name>.kfc`` files.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from functools import lru_cache
from pathlib import Path

from .errors import FloerconeError, PreconditionError
from .knot import KnotComplex, load_knot_file, validate

DATA_VERSION = "v1"
ENV_VAR = "FLOERCONE_DATA"


@dataclass(frozen=True)
class BundledEntry:
    name: str
    file: str
    genus: int
    klass: str  # staircase | thin | mixed
    flip_included: bool


ENTRIES: dict[str, BundledEntry] = {
    e.name: e
    for e in (
        BundledEntry("unknot", "unknot.kfc", 0, "staircase", True),
        BundledEntry("trefoil_rh", "trefoil_rh.kfc", 1, "staircase", True),
        BundledEntry("trefoil_lh", "trefoil_lh.kfc", 1, "thin", True),
        BundledEntry("figure_eight", "figure_eight.kfc", 1, "thin", True),
        BundledEntry("t25_rh", "t25_rh.kfc", 2, "staircase", True),
        BundledEntry("t34_rh", "t34_rh.kfc", 3, "staircase", True),
        BundledEntry("thin_52", "thin_52.kfc", 1, "thin", True),
    )
}


def data_dir() -> Path:
    override = os.environ.get(ENV_VAR)
    if override:
        return Path(override)
    return Path(__file__).resolve().parent / "data" / DATA_VERSION


def list_knots() -> list[str]:
    """Names available in the active data directory."""
    return sorted(p.stem for p in data_dir().glob("*.kfc"))


def load(name: str) -> KnotComplex:
    """Load and validate a bundled complex by name."""
    return _load(str(data_dir()), name)


@lru_cache(maxsize=None)
def _load(directory: str, name: str) -> KnotComplex:
    path = Path(directory) / f"{name}.kfc"
    if not path.is_file():
        raise FloerconeError(f"unknown knot {name!r}; available: {', '.join(list_knots())}")
    cx = load_knot_file(path)
    problems = validate(cx)
    if problems:
        raise PreconditionError(
            f"bundled complex {name!r} is invalid: " + "; ".join(map(str, problems))
        )
    return cx


def by_genus(genus: int) -> list[str]:
    return [e.name for e in ENTRIES.values() if e.genus == genus]
