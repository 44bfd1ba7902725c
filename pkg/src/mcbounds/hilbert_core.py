"""h-vectors, socle vectors, Macaulay growth and the f-profile invariants.

Everything here is integer arithmetic.  An h-vector ``h = (1, h_1, ..., h_c)``
is extended by zero outside ``0..c``; its f-profile is the coefficient list of
``h(z)(1 - z)^3`` with the constant term dropped, read at ``n = 1 .. c+3``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from math import comb
from typing import Iterable, Iterator, Optional, Sequence, Union

__all__ = [
    "HVector",
    "SocleVector",
    "FProfile",
    "InvariantSet",
    "parse_vector",
    "binom",
    "dim_n",
    "macaulay_rep",
    "macaulay_growth",
    "is_o_sequence",
    "f_profile",
    "invariants",
    "multiplicity",
    "multiplicity_from_profile",
]

_VECTOR_RE = re.compile(r"^\s*\(?\s*(-?\d+(?:\s*,\s*-?\d+)*)\s*,?\s*\)?\s*$")


def parse_vector(text: str) -> tuple[int, ...]:
    """Parse ``"1,3,4,4,3,1"`` or ``"(1, 3, 4)"`` into a tuple of ints."""
    m = _VECTOR_RE.match(text)
    if m is None:
        raise ValueError(f"cannot parse integer vector: {text!r}")
    return tuple(int(tok) for tok in m.group(1).split(","))


def _strip_trailing_zeros(entries: Sequence[int]) -> tuple[int, ...]:
    entries = tuple(int(x) for x in entries)
    end = len(entries)
    while end > 1 and entries[end - 1] == 0:
        end -= 1
    return entries[:end]


@dataclass(frozen=True)
class HVector:
    """Hilbert function of a standard graded artinian algebra.

    Trailing zeros are dropped on construction, so ``HVector((1, 3, 0))`` is
    ``(1, 3)``.  A zero followed by a positive entry is rejected.
    """

    entries: tuple[int, ...]
    e: int = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        entries = _strip_trailing_zeros(self.entries)
        if not entries or entries[0] != 1:
            raise ValueError(f"h-vector must start with 1: {entries}")
        if any(x < 0 for x in entries):
            raise ValueError(f"h-vector entries must be nonnegative: {entries}")
        if 0 in entries:
            raise ValueError(f"h-vector has an internal zero: {entries}")
        object.__setattr__(self, "entries", entries)
        object.__setattr__(self, "e", sum(entries))

    @classmethod
    def parse(cls, text: str) -> "HVector":
        return cls(parse_vector(text))

    @property
    def c(self) -> int:
        """Socle degree."""
        return len(self.entries) - 1

    def at(self, d: int) -> int:
        """Entry in degree ``d``, zero outside ``0..c``."""
        if 0 <= d < len(self.entries):
            return self.entries[d]
        return 0

    def startswith(self, prefix: Sequence[int]) -> bool:
        return self.entries[: len(prefix)] == tuple(prefix)

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self) -> Iterator[int]:
        return iter(self.entries)

    def __getitem__(self, d):
        return self.entries[d]

    def __str__(self) -> str:
        return ",".join(map(str, self.entries))


@dataclass(frozen=True)
class SocleVector:
    entries: tuple[int, ...]

    def __post_init__(self) -> None:
        entries = _strip_trailing_zeros(self.entries)
        if any(x < 0 for x in entries):
            raise ValueError(f"socle vector entries must be nonnegative: {entries}")
        if len(entries) < 2 or entries[0] != 0 or entries[-1] <= 0:
            raise ValueError(
                f"socle vector needs s_0 = 0 and a positive entry in degree >= 1: {entries}"
            )
        object.__setattr__(self, "entries", entries)

    @classmethod
    def parse(cls, text: str) -> "SocleVector":
        return cls(parse_vector(text))

    @property
    def c(self) -> int:
        return len(self.entries) - 1

    @property
    def q(self) -> int:
        """Smallest degree carrying socle."""
        return next(d for d, x in enumerate(self.entries) if x > 0)

    @property
    def type(self) -> int:
        return sum(self.entries)

    @property
    def is_level(self) -> bool:
        return self.q == self.c

    def at(self, d: int) -> int:
        if 0 <= d < len(self.entries):
            return self.entries[d]
        return 0

    def __iter__(self) -> Iterator[int]:
        return iter(self.entries)

    def __str__(self) -> str:
        return ",".join(map(str, self.entries))


@dataclass(frozen=True)
class FProfile:
    """Values ``f(1) .. f(c+3)``; ``f(n)`` is 0 for any other positive ``n``."""

    c: int
    values: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.values) != self.c + 3:
            raise ValueError("profile must cover n = 1 .. c+3")

    def __getitem__(self, n: int) -> int:
        if 1 <= n <= self.c + 3:
            return self.values[n - 1]
        return 0

    def items(self) -> Iterator[tuple[int, int]]:
        return enumerate(self.values, start=1)

    def moment(self, k: int) -> int:
        """``sum_n n(n-1)...(n-k+1) f(n)``, the k-th derivative of h(z)(1-z)^3 at 1."""
        total = 0
        for n, v in self.items():
            fall = 1
            for r in range(k):
                fall *= n - r
            total += fall * v
        return total


@dataclass(frozen=True)
class InvariantSet:
    t: int
    i: Optional[int]
    j: Optional[int]
    m: Optional[int]
    profile: FProfile

    def as_dict(self) -> dict:
        return {"t": self.t, "i": self.i, "j": self.j, "m": self.m}


def binom(n: int, k: int) -> int:
    if n < 0 or k < 0:
        raise ValueError("binom takes nonnegative arguments")
    return comb(n, k)


def dim_n(r: int, d: int) -> int:
    """Dimension of the degree-``d`` part of a polynomial ring in ``r`` variables."""
    if r < 1:
        raise ValueError("codimension must be at least 1")
    if d < 0:
        raise ValueError("degree must be nonnegative")
    return comb(r - 1 + d, d)


def macaulay_rep(a: int, d: int) -> list[int]:
    """The d-th Macaulay representation of ``a``.

    Returns ``[k_d, k_{d-1}, ..., k_s]`` with ``a = sum C(k_idx, idx)`` where
    ``idx`` runs down from ``d``; the list stops as soon as the remainder is 0.
    """
    if a < 1 or d < 1:
        raise ValueError("macaulay_rep needs a >= 1 and d >= 1")
    rep = []
    idx = d
    while a > 0:
        k = idx
        while comb(k + 1, idx) <= a:
            k += 1
        rep.append(k)
        a -= comb(k, idx)
        idx -= 1
    return rep


def macaulay_growth(a: int, d: int) -> int:
    """Macaulay's bound ``a^<d>`` on the next value of a Hilbert function."""
    if d < 1:
        raise ValueError("growth is only bounded from degree 1 on")
    if a < 0:
        raise ValueError("a must be nonnegative")
    if a == 0:
        return 0
    return sum(comb(k + 1, d - pos + 1) for pos, k in enumerate(macaulay_rep(a, d)))


def _as_hvector(h: Union[HVector, Iterable[int]]) -> HVector:
    return h if isinstance(h, HVector) else HVector(tuple(h))


def is_o_sequence(h: Union[HVector, Iterable[int]]) -> bool:
    try:
        h = _as_hvector(h)
    except ValueError:
        return False
    return all(h[d + 1] <= macaulay_growth(h[d], d) for d in range(1, h.c))


def f_profile(h: HVector) -> FProfile:
    h = _as_hvector(h)
    vals = tuple(
        h.at(n) - 3 * h.at(n - 1) + 3 * h.at(n - 2) - h.at(n - 3)
        for n in range(1, h.c + 4)
    )
    return FProfile(h.c, vals)


def invariants(h: HVector) -> InvariantSet:
    p = f_profile(h)
    top = p.c + 3
    neg = [n for n, v in p.items() if v < 0]
    pos = [n for n, v in p.items() if v > 0]
    below_top = [n for n in neg if n < top]
    return InvariantSet(
        t=neg[0],
        i=pos[0] if pos else None,
        j=pos[-1] if pos else None,
        m=below_top[-1] if below_top else None,
        profile=p,
    )


def multiplicity(h: HVector) -> int:
    return _as_hvector(h).e


def multiplicity_from_profile(p: FProfile) -> int:
    """Recover ``e`` as ``-(1/6) sum n(n-1)(n-2) f(n)``."""
    num = -p.moment(3)
    if num % 6 or num <= 0:
        raise ValueError(f"corrupted profile: weighted sum {-num} is not -6e for e > 0")
    return num // 6
