"""Compressed h-vectors in the sense of Iarrobino and Froberg-Laksov.

For a codimension ``r`` and socle vector ``s`` the numbers

    r_d = N(r, d) - sum_{i=0}^{c-d} N(r, i) s_{d+i}

change sign exactly once, at the pivot ``b``.  The entrywise maximal h-vector
for the data ``(r, s)`` is ``H_d = N(r, d) - max(r_d, 0)``.  In codimension 3
the pivot data force enough of the resolution to bound the multiplicity.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Optional

from .hilbert_core import HVector, SocleVector, dim_n

__all__ = [
    "CompressedProfile",
    "BettiEdge",
    "McCase",
    "McBoundPair",
    "NotCompressedError",
    "fl_numbers",
    "recover_socle",
    "betti_edge",
    "compressed_mc_bounds",
    "multiplicity_formula",
    "iter_socle_vectors",
    "compressed_grid",
]


class NotCompressedError(ValueError):
    """Socle vector has socle below the pivot, so no compressed algebra exists."""


class McCase(str, enum.Enum):
    EXTREME = "EXTREME"
    D_NEG = "D_NEG"
    D_POS = "D_POS"
    D_ZERO = "D_ZERO"


@dataclass(frozen=True)
class CompressedProfile:
    r: int
    s: SocleVector
    r_values: tuple[int, ...]
    b: int
    t: int
    extremely_compressed: bool
    H: HVector

    @property
    def c(self) -> int:
        return self.s.c

    @property
    def q(self) -> int:
        return self.s.q


@dataclass(frozen=True)
class BettiEdge:
    beta_2_t_plus_2: int
    D: int


@dataclass(frozen=True)
class McBoundPair:
    lower: Fraction
    upper: Fraction
    case_tag: McCase

    def brackets(self, e: int) -> bool:
        return self.lower <= e <= self.upper


def fl_numbers(r: int, s: SocleVector, require_compressed: bool = True) -> CompressedProfile:
    """Froberg-Laksov numbers, pivot, initial degree and the upper bound ``H``.

    With ``require_compressed`` (the default) a socle vector with socle in
    some degree below the pivot raises :class:`NotCompressedError`.
    """
    if r < 1:
        raise ValueError("codimension must be at least 1")
    c = s.c
    r_values = tuple(
        dim_n(r, d) - sum(dim_n(r, i) * s.at(d + i) for i in range(c - d + 1))
        for d in range(c + 1)
    )
    b = next((d for d in range(1, c + 1) if r_values[d] >= 0 and r_values[d - 1] < 0), None)
    if b is None:
        raise ValueError(f"no pivot index for r={r}, s={s}: socle exceeds the ambient ring")
    if require_compressed and s.q < b:
        raise NotCompressedError(f"s={s} has socle in degree {s.q} below the pivot b={b}")
    H = HVector(tuple(dim_n(r, d) - max(r_values[d], 0) for d in range(c + 1)))
    extreme = r_values[b] == 0
    return CompressedProfile(
        r=r,
        s=s,
        r_values=r_values,
        b=b,
        t=b + 1 if extreme else b,
        extremely_compressed=extreme,
        H=H,
    )


def recover_socle(h: HVector, r: int = 3) -> Optional[SocleVector]:
    """Socle vector of the compressed algebra with h-vector ``h``, if any.

    Runs the descending induction ``s_d = h_d - sum_{i>=1} N(r, i) s_{d+i}``
    (clipped at 0) and certifies the result by regenerating ``H``.  Returns
    ``None`` when ``h`` is not a compressed h-vector in codimension ``r``.
    """
    if h.c < 1:
        return None
    c = h.c
    s = [0] * (c + 1)
    for d in range(c, -1, -1):
        covered = sum(dim_n(r, i) * s[d + i] for i in range(1, c - d + 1))
        s[d] = max(0, h[d] - covered)
    if s[0] != 0:
        return None
    socle = SocleVector(tuple(s))
    try:
        prof = fl_numbers(r, socle)
    except ValueError:
        return None
    return socle if prof.H == h else None


def _require_codim3(p: CompressedProfile) -> None:
    if p.r != 3:
        raise ValueError(f"only codimension 3 is supported here, got r={p.r}")


def betti_edge(p: CompressedProfile) -> BettiEdge:
    _require_codim3(p)
    t = p.t
    D = t * (t + 2) - sum(
        p.s.at(j) * (j - t + 1) * (j - t + 3) for j in range(p.q, p.c + 1)
    )
    return BettiEdge(beta_2_t_plus_2=-p.r_values[t - 1], D=D)


def _n4(d: int) -> int:
    return dim_n(4, d) if d >= 0 else 0


def multiplicity_formula(p: CompressedProfile) -> int:
    """Multiplicity from the socle data alone: ``N(4,t-1) + sum N(4,j-t) s_j``."""
    _require_codim3(p)
    t = p.t
    e = _n4(t - 1) + sum(_n4(j - t) * p.s.at(j) for j in range(p.q, p.c + 1))
    if e != p.H.e:
        raise AssertionError(f"multiplicity formula {e} != entry sum {p.H.e} for s={p.s}")
    return e


def compressed_mc_bounds(p: CompressedProfile) -> McBoundPair:
    """Multiplicity Conjecture bounds built from the shifts a compressed resolution forces."""
    _require_codim3(p)
    t, q, c = p.t, p.q, p.c
    if p.extremely_compressed:
        pair = McBoundPair(
            Fraction(t * (t + 1) * (q + 3), 6), Fraction(t * (t + 1) * (c + 3), 6), McCase.EXTREME
        )
    else:
        D = betti_edge(p).D
        if D < 0:
            pair = McBoundPair(
                Fraction(t * (t + 2) * (q + 3), 6),
                Fraction((t + 1) * (t + 2) * (c + 3), 6),
                McCase.D_NEG,
            )
        elif D > 0:
            pair = McBoundPair(
                Fraction(t * (t + 1) * (q + 3), 6), Fraction(t * (t + 2) * (c + 3), 6), McCase.D_POS
            )
        else:
            pair = McBoundPair(
                Fraction(t * (t + 2) * (q + 3), 6), Fraction(t * (t + 2) * (c + 3), 6), McCase.D_ZERO
            )
    e = p.H.e
    if not pair.brackets(e):
        raise AssertionError(f"bounds {pair} do not bracket e={e} for s={p.s}")
    return pair



def iter_socle_vectors(max_c: int, max_type: int) -> Iterator[SocleVector]:
    """Every socle vector with ``1 <= c <= max_c`` and type at most ``max_type``."""
    for c in range(1, max_c + 1):
        for body in itertools.product(range(max_type + 1), repeat=c - 1):
            rest = max_type - sum(body)
            for top in range(1, rest + 1):
                yield SocleVector((0, *body, top))


def compressed_grid(max_c: int, max_type: int, r: int = 3) -> Iterator[CompressedProfile]:
    """Profiles of every compressed socle vector in the grid.

    Vectors with socle below the pivot, or with no pivot at all (socle larger
    than the ambient ring in the top degree), are skipped.
    """
    for s in iter_socle_vectors(max_c, max_type):
        try:
            yield fl_numbers(r, s)
        except ValueError:
            continue
