"""Contact-surgery bookkeeping: continued fractions, surgery plans and certificates.

Plans follow the all-negative-stabilization convention.  A plan for a
positive contact coefficient consists of ``e`` Legendrian push-offs with
contact coefficient +1 followed by a chain of stabilized push-offs with
contact coefficient -1; a plan for a negative coefficient is a chain only.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from .cone import top_grading
from .errors import FloerconeError, PreconditionError
from .rational import fmt_rat

STRICT = "strict"
LEAD_MINUS_ONE = "lead_minus_one"
LEGENDRIAN_SURGERY = "legendrian_surgery"
POSITIVE_CONTACT_SURGERY = "positive_contact_surgery"


class PlanError(FloerconeError):
    pass


@dataclass(frozen=True)
class LegendrianData:
    knot_name: str
    genus: int
    tb: Fraction
    rot: Fraction
    order: int = 1

    def __post_init__(self) -> None:
        object.__setattr__(self, "tb", Fraction(self.tb))
        object.__setattr__(self, "rot", Fraction(self.rot))

    @property
    def admissible(self) -> bool:
        return self.tb != 1 and self.tb - self.rot == 2 * self.genus - 1

    def to_dict(self) -> dict:
        return {
            "knot": self.knot_name,
            "genus": self.genus,
            "tb": fmt_rat(self.tb),
            "rot": fmt_rat(self.rot),
            "order": self.order,
            "admissible": self.admissible,
        }


@dataclass(frozen=True)
class SurgeryPlan:
    contact_coefficient: Fraction
    pushoff_plus_count: int
    chain: tuple[tuple[int, int], ...]  # (stabilizations, contact coefficient)
    cf_expansion: tuple[int, ...]
    degenerate: bool = False

    @property
    def stabilizations(self) -> tuple[int, ...]:
        return tuple(s for s, _ in self.chain)

    def to_dict(self) -> dict:
        return {
            "contact_coefficient": fmt_rat(self.contact_coefficient),
            "pushoff_plus_count": self.pushoff_plus_count,
            "cf_expansion": list(self.cf_expansion),
            "stabilizations": list(self.stabilizations),
            "chain": [{"stabilizations": s, "contact_coefficient": c} for s, c in self.chain],
            "degenerate": self.degenerate,
        }


def evaluate_cf(entries: Sequence[int]) -> Fraction:
    """Value of ``a_1 - 1/(a_2 - 1/(... - 1/a_m))``."""
    if not entries:
        raise ValueError("empty continued fraction")
    value = Fraction(entries[-1])
    for a in reversed(entries[:-1]):
        value = a - 1 / value
    return value


def neg_cf(q: Fraction, mode: str = STRICT) -> list[int]:
    """Negative continued fraction of ``q < 0`` with every entry after the first ``<= -2``.

    In ``strict`` mode the first entry is also ``<= -2`` (needs ``q < -1``);
    ``lead_minus_one`` additionally admits ``-1 <= q < 0`` with first entry -1.
    """
    q = Fraction(q)
    if mode not in (STRICT, LEAD_MINUS_ONE):
        raise ValueError(f"unknown mode {mode!r}")
    if q >= 0:
        raise ValueError(f"continued fraction needs q < 0, got {q}")
    if mode == STRICT and q >= -1:
        raise ValueError(f"strict expansion needs q < -1, got {q}")
    out = []
    if q >= -1:
        out.append(-1)
        if q == -1:
            return out
        q = -1 / (1 + q)
    while True:
        a = math.floor(q)
        out.append(a)
        if a == q:
            return out
        q = 1 / (a - q)


def dgs_positive(r: Fraction) -> SurgeryPlan:
    """Plan for contact ``r``-surgery with ``r > 0``."""
    r = Fraction(r)
    if r <= 0:
        raise ValueError(f"positive plan needs r > 0, got {r}")
    x, y = r.numerator, r.denominator
    e = y // x + 1  # minimal positive e with y - e x < 0
    if x == 1:
        # r = 1/k: k push-offs with +1 and nothing else
        return SurgeryPlan(r, y, (), (), degenerate=True)
    q = Fraction(x, y - e * x)
    cf = neg_cf(q, STRICT)
    stabs = [abs(cf[0] + 1)] + [abs(a + 2) for a in cf[1:]]
    return SurgeryPlan(r, e, tuple((s, -1) for s in stabs), tuple(cf))


def dgs_negative(r: Fraction) -> SurgeryPlan:
    """Plan for contact ``r``-surgery with ``r < 0``: a chain of Legendrian surgeries."""
    r = Fraction(r)
    if r >= 0:
        raise ValueError(f"negative plan needs r < 0, got {r}")
    cf = neg_cf(r, LEAD_MINUS_ONE)
    stabs = [abs(cf[0] + 1)] + [abs(a + 2) for a in cf[1:]]
    return SurgeryPlan(r, 0, tuple((s, -1) for s in stabs), tuple(cf))


def dgs_plan(r: Fraction) -> SurgeryPlan:
    r = Fraction(r)
    if r == 0:
        raise ValueError("contact 0-surgery has no plan")
    return dgs_positive(r) if r > 0 else dgs_negative(r)


def _link_of(plan: SurgeryPlan, tb: Fraction) -> tuple[list[Fraction], list[Fraction]]:
    """Thurston-Bennequin numbers and smooth framings of every link component."""
    tbs: list[Fraction] = []
    framings: list[Fraction] = []
    for _ in range(plan.pushoff_plus_count):
        tbs.append(tb)
        framings.append(tb + 1)
    current = tb
    for stabs, coeff in plan.chain:
        if stabs < 0 or coeff not in (1, -1):
            raise PlanError(f"malformed chain entry {(stabs, coeff)!r}")
        current = current - stabs
        tbs.append(current)
        framings.append(current + coeff)
    return tbs, framings


def smooth_roundtrip(plan: SurgeryPlan, tb: Fraction) -> Fraction:
    """Smooth surgery coefficient on the knot realised by the plan's link.

    Every component is a (stabilized) Legendrian push-off of its predecessor,
    so two components link ``tb`` of the less stabilized one.  Sliding each
    component over its predecessor turns the link into a framed linear chain,
    which is slam-dunked from the far end.
    """
    tb = Fraction(tb)
    tbs, framings = _link_of(plan, tb)
    m = len(tbs)
    if m == 0:
        raise PlanError("plan has no components")
    lk = [[framings[a] if a == b else max(tbs[a], tbs[b]) for b in range(m)] for a in range(m)]
    # basis v_0 = e_0, v_k = e_k - e_{k-1}
    def entry(a, b):
        return lk[a][b] if a >= 0 and b >= 0 else 0

    slid = [[entry(a, b) - entry(a - 1, b) - entry(a, b - 1) + entry(a - 1, b - 1)
             for b in range(m)] for a in range(m)]
    for a in range(m):
        for b in range(m):
            if abs(a - b) > 1 and slid[a][b]:
                raise PlanError("handle slides did not produce a linear chain")
            if abs(a - b) == 1 and abs(slid[a][b]) != 1:
                raise PlanError("chain components must link once")
    # projective slam dunk from the far end: value = p / q
    p, q = slid[-1][-1], Fraction(1)
    for k in range(m - 2, -1, -1):
        p, q = slid[k][k] * p - slid[k][k + 1] ** 2 * q, p
    if q == 0:
        raise PlanError("plan realises an infinite surgery coefficient")
    return p / q


def slam_dunk(framing: Fraction, meridian_coefficient: Fraction) -> Fraction:
    """Coefficient on a knot after absorbing a surgered meridian."""
    return Fraction(framing) - 1 / Fraction(meridian_coefficient)


def stabilize(leg: LegendrianData, sign: str, count: int) -> LegendrianData:
    if count < 0:
        raise ValueError("stabilization count must be non-negative")
    if sign not in ("+", "-"):
        raise ValueError(f"sign must be '+' or '-', got {sign!r}")
    step = count if sign == "+" else -count
    return LegendrianData(leg.knot_name, leg.genus, leg.tb - count, leg.rot + step, leg.order)


def pushoff_after_surgery(leg: LegendrianData) -> tuple[Fraction, Fraction]:
    """Rational tb and rot of the Legendrian push-off after Legendrian surgery on ``leg``."""
    t = leg.tb
    if t == 1:
        raise PreconditionError("tb = 1: Legendrian surgery does not give a rational homology sphere")
    tb_q = t + (-t * t) / (t - 1)
    rot_q = leg.rot - leg.rot * t / (t - 1)
    return tb_q, rot_q


def loss_alexander(tb_q: Fraction, rot_q: Fraction) -> Fraction:
    """Alexander grading forced on the LOSS invariant by rational tb and rot."""
    return (Fraction(tb_q) - Fraction(rot_q) + 1) / 2


def spinc_label(rot: Fraction, n: int, pairing: str = LEGENDRIAN_SURGERY, order: int = 1) -> int:
    """Spin^c label ``i`` in Z/n with ``<c_1, F> - n = 2i (mod 2n)``."""
    if n < 1:
        raise ValueError("n must be positive")
    if pairing == LEGENDRIAN_SURGERY:
        value = order * Fraction(rot)
    elif pairing == POSITIVE_CONTACT_SURGERY:
        value = order * (Fraction(rot) + n - 1)
    else:
        raise ValueError(f"unknown pairing {pairing!r}")
    if value.denominator != 1 or (value.numerator - n) % 2:
        raise ValueError(f"c_1 pairing {value} has the wrong parity for n = {n}")
    return ((value.numerator - n) // 2) % n


@dataclass(frozen=True)
class TightnessCertificate:
    knot_name: str
    genus: int
    r: Fraction
    base_legendrian: LegendrianData
    plan: SurgeryPlan
    first_surgery_legendrian: LegendrianData
    admissibility: bool
    n_effective: int
    spinc_label: int
    loss_alexander: Fraction
    smooth_coefficient: Fraction
    notes: tuple[str, ...] = field(default=())

    def to_dict(self) -> dict:
        return {
            "knot": self.knot_name,
            "genus": self.genus,
            "r": fmt_rat(self.r),
            "contact_coefficient": fmt_rat(-self.r),
            "smooth_coefficient": fmt_rat(self.smooth_coefficient),
            "base_legendrian": self.base_legendrian.to_dict(),
            "plan": self.plan.to_dict(),
            "first_surgery_legendrian": self.first_surgery_legendrian.to_dict(),
            "admissibility": self.admissibility,
            "n_effective": self.n_effective,
            "spinc_label": self.spinc_label,
            "loss_alexander": fmt_rat(self.loss_alexander),
            "notes": list(self.notes),
        }


def certify_tight(genus: int, r: Fraction, knot_name: Optional[str] = None) -> TightnessCertificate:
    """Record the Legendrian-surgery route to a tight structure on smooth (-r)-surgery."""
    r = Fraction(r)
    if genus < 0:
        raise ValueError("genus must be non-negative")
    if r == 0:
        raise ValueError(
            "r = 0 is not handled here: 0-surgery carries a taut foliation and hence "
            "admits at least one tight contact structure")
    if r < 0:
        raise ValueError(f"certificate needs r > 0, got {r}")
    name = knot_name or f"genus-{genus} knot"
    base = LegendrianData(name, genus, Fraction(0), Fraction(1 - 2 * genus))
    plan = dgs_negative(-r)
    first = stabilize(base, "-", plan.chain[0][0])
    n_eff = 1 - int(first.tb)
    label = spinc_label(first.rot, n_eff, LEGENDRIAN_SURGERY, first.order)
    grading = loss_alexander(*pushoff_after_surgery(first))
    if grading != top_grading(genus, n_eff):
        raise FloerconeError("LOSS grading disagrees with the top Alexander grading")
    if label != (1 - genus) % n_eff:
        raise FloerconeError("spin^c label disagrees with 1 - g")
    smooth = smooth_roundtrip(plan, base.tb)
    if smooth != -r:
        raise FloerconeError(f"plan realises smooth coefficient {smooth}, expected {-r}")
    notes = []
    if genus == 0:
        notes.append("genus 0: top-grading and injectivity statements assume g >= 1")
    return TightnessCertificate(
        knot_name=name,
        genus=genus,
        r=r,
        base_legendrian=base,
        plan=plan,
        first_surgery_legendrian=first,
        admissibility=first.admissible,
        n_effective=n_eff,
        spinc_label=label,
        loss_alexander=grading,
        smooth_coefficient=smooth,
        notes=tuple(notes),
    )
