"""Bounds on the multiplicity of a codimension 3 level algebra read off its h-vector.

With ``t, i, j, m`` taken from the f-profile of ``h`` the candidate bounds are

    t * i * (c+3) / 6  <=  e  <=  m * j * (c+3) / 6.

A positive ``f(n)`` forces a degree-``n`` shift in the second syzygy module of
any algebra with this h-vector; for a level algebra a negative ``f(n)`` with
``n < c+3`` forces a degree-``n`` generator.  The lower bound is therefore at
least the Multiplicity Conjecture lower bound for every codimension 3 algebra,
and the upper bound dominates the Multiplicity Conjecture upper bound for
level ones.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from math import prod
from typing import Iterable, Mapping, Optional

from .compressed import fl_numbers, recover_socle
from .hilbert_core import HVector, InvariantSet, invariants

__all__ = [
    "Verdict",
    "Tag",
    "BoundReport",
    "conjecture_bounds",
    "check_bounds",
    "classify_37",
    "forced_shifts",
    "mc_bounds_from_shifts",
    "format_fraction",
]


class Verdict(str, enum.Enum):
    HOLDS = "holds"
    FAILS = "fails"
    INAPPLICABLE = "inapplicable"


class Tag(str, enum.Enum):
    COMPRESSED = "COMPRESSED"
    ENDS_3_2 = "ENDS_3_2"
    H2_LE_4 = "H2_LE_4"
    TAIL_IV = "TAIL_IV"
    BEGINS_1345 = "BEGINS_1345"
    EXTREME_NONLEVEL = "EXTREME_NONLEVEL"
    # the upper bound only has its Betti-number meaning for level algebras
    UPPER_LEVEL_ONLY = "UPPER_LEVEL_ONLY"
    # TAIL_IV with h_{c-1} = h_c + 1, h_{c-2} <= 3 outside the finite list of known level cases
    CONJECTURAL = "CONJECTURAL"


# h_{c-1} = h_c + 1 and h_{c-2} <= 3: the level h-vectors besides (1,3,3,...,3,2)
_TAIL_IV_LIST = {(1, 3, 4, 3), (1, 3, 5, 4), (1, 3, 6, 5)}


def format_fraction(x: Optional[Fraction]) -> Optional[str]:
    if x is None:
        return None
    return f"{x.numerator}/{x.denominator}"


def _require_codim3(h: HVector) -> None:
    if h.c < 1 or h[1] != 3:
        raise ValueError(f"expected a codimension 3 h-vector (h_1 = 3), got {h}")


def conjecture_bounds(h: HVector) -> tuple[Optional[Fraction], Optional[Fraction]]:
    """``(t*i*(c+3)/6, m*j*(c+3)/6)``; ``None`` where an invariant is absent."""
    _require_codim3(h)
    inv = invariants(h)
    return _bounds_from(inv, h.c)


def _bounds_from(inv: InvariantSet, c: int) -> tuple[Optional[Fraction], Optional[Fraction]]:
    lower = upper = None
    if inv.i is not None:
        lower = Fraction(inv.t * inv.i * (c + 3), 6)
    if inv.m is not None and inv.j is not None:
        upper = Fraction(inv.m * inv.j * (c + 3), 6)
    return lower, upper


def _verdict(ok: Optional[bool]) -> Verdict:
    if ok is None:
        return Verdict.INAPPLICABLE
    return Verdict.HOLDS if ok else Verdict.FAILS


@dataclass(frozen=True)
class BoundReport:
    h: HVector
    inv: InvariantSet
    lower: Optional[Fraction]
    upper: Optional[Fraction]
    lower_holds: Verdict
    upper_holds: Verdict
    lower_sharp: bool
    upper_sharp: bool
    mc_lower_implied: bool
    mc_upper_implied: bool
    case_tags: frozenset

    @property
    def e(self) -> int:
        return self.h.e

    @property
    def failed(self) -> bool:
        return Verdict.FAILS in (self.lower_holds, self.upper_holds)

    @property
    def sharp(self) -> bool:
        return self.lower_sharp or self.upper_sharp

    def sorted_tags(self) -> list[str]:
        return sorted(tag.value for tag in self.case_tags)

    def to_json(self) -> dict:
        return {
            "h": list(self.h),
            "e": self.e,
            **self.inv.as_dict(),
            "lower": format_fraction(self.lower),
            "upper": format_fraction(self.upper),
            "lower_holds": self.lower_holds.value,
            "upper_holds": self.upper_holds.value,
            "lower_sharp": self.lower_sharp,
            "upper_sharp": self.upper_sharp,
            "mc_lower_implied": self.mc_lower_implied,
            "mc_upper_implied": self.mc_upper_implied,
            "tags": self.sorted_tags(),
        }

    def csv_row(self) -> list:
        flags = [
            f"lower={self.lower_holds.value}",
            f"upper={self.upper_holds.value}",
        ]
        if self.lower_sharp:
            flags.append("lower_sharp")
        if self.upper_sharp:
            flags.append("upper_sharp")
        if self.mc_lower_implied:
            flags.append("mc_lower_implied")
        if self.mc_upper_implied:
            flags.append("mc_upper_implied")
        inv = self.inv
        return [
            str(self.h),
            self.e,
            inv.t,
            "" if inv.i is None else inv.i,
            "" if inv.j is None else inv.j,
            "" if inv.m is None else inv.m,
            format_fraction(self.lower) or "",
            format_fraction(self.upper) or "",
            " ".join(flags),
            " ".join(self.sorted_tags()),
        ]


CSV_HEADER = ["h", "e", "t", "i", "j", "m", "lower", "upper", "flags", "tags"]


def classify_37(h: HVector) -> frozenset:
    """Which of the proven cases (compressed, ``...,3,2`` tail, ``h_2 <= 4``,
    ``h_{c-1} <= h_c + 1``) and related patterns apply to ``h``."""
    _require_codim3(h)
    c = h.c
    tags = set()
    socle = recover_socle(h)
    if socle is not None:
        if socle.is_level:
            tags.add(Tag.COMPRESSED)
        elif fl_numbers(3, socle).extremely_compressed:
            tags.add(Tag.EXTREME_NONLEVEL)
    if c >= 2 and h[c - 1] == 3 and h[c] == 2:
        tags.add(Tag.ENDS_3_2)
    if c >= 2 and h[2] <= 4:
        tags.add(Tag.H2_LE_4)
    if h.at(c - 1) <= h[c] + 1:
        tags.add(Tag.TAIL_IV)
        if h.at(c - 1) == h[c] + 1 and h.at(c - 2) <= 3 and not _in_tail_iv_list(h):
            tags.add(Tag.CONJECTURAL)
    if h.startswith((1, 3, 4, 5)):
        tags.add(Tag.BEGINS_1345)
    return frozenset(tags)


def _in_tail_iv_list(h: HVector) -> bool:
    e = h.entries
    if e in _TAIL_IV_LIST:
        return True
    return len(e) >= 3 and e[-1] == 2 and all(x == 3 for x in e[1:-1])


def check_bounds(h: HVector, assume_level: bool = True) -> BoundReport:
    """Evaluate both bounds exactly and record what they imply.

    ``assume_level`` is the caller's assertion that the algebra is level;
    without it the upper bound is still evaluated but tagged
    ``UPPER_LEVEL_ONLY``.
    """
    _require_codim3(h)
    inv = invariants(h)
    lower, upper = _bounds_from(inv, h.c)
    e = h.e
    lower_holds = _verdict(None if lower is None else lower <= e)
    upper_holds = _verdict(None if upper is None else e <= upper)
    tags = set(classify_37(h))
    if not assume_level:
        tags.add(Tag.UPPER_LEVEL_ONLY)
    return BoundReport(
        h=h,
        inv=inv,
        lower=lower,
        upper=upper,
        lower_holds=lower_holds,
        upper_holds=upper_holds,
        lower_sharp=lower is not None and lower == e,
        upper_sharp=upper is not None and upper == e,
        mc_lower_implied=lower_holds is Verdict.HOLDS,
        mc_upper_implied=assume_level and upper_holds is Verdict.HOLDS,
        case_tags=frozenset(tags),
    )


def forced_shifts(h: HVector, assume_level: bool = True) -> dict[int, set[int]]:
    """Shifts of the minimal free resolution that the h-vector alone forces.

    Module 2 always gets every ``n`` with ``f(n) > 0``.  Modules 1 and 3 are
    only determined for level algebras: ``n < c+3`` with ``f(n) < 0`` in
    module 1 and ``c+3`` in module 3.
    """
    _require_codim3(h)
    prof = invariants(h).profile
    shifts = {1: set(), 2: {n for n, v in prof.items() if v > 0}, 3: set()}
    if assume_level:
        shifts[1] = {n for n, v in prof.items() if v < 0 and n < h.c + 3}
        shifts[3] = {h.c + 3}
    return shifts


def mc_bounds_from_shifts(shifts: Mapping[int, Iterable[int]]) -> tuple[Fraction, Fraction]:
    """Multiplicity Conjecture bounds ``prod(min shifts)/r!`` and ``prod(max shifts)/r!``."""
    modules = [sorted(set(shifts[k])) for k in sorted(shifts)]
    if not modules or any(not mod for mod in modules):
        raise ValueError("every module needs at least one shift")
    r = len(modules)
    fact = prod(range(1, r + 1))
    return (
        Fraction(prod(mod[0] for mod in modules), fact),
        Fraction(prod(mod[-1] for mod in modules), fact),
    )
