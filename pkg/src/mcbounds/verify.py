"""h-vector families, O-sequence enumeration and batch bound checking."""

from __future__ import annotations

import enum
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Iterator, Optional, Sequence, Union

from .compressed import fl_numbers
from .hilbert_core import (
    HVector,
    SocleVector,
    dim_n,
    is_o_sequence,
    macaulay_growth,
    parse_vector,
)
from .level_bounds import BoundReport, Verdict, check_bounds

__all__ = [
    "FamilyKind",
    "FamilySpec",
    "IIIPattern",
    "BatchResult",
    "family_type2",
    "type2_grid",
    "family_iii_list",
    "enumerate_osequences",
    "compressed_level_family",
    "read_hvector_file",
    "run_batch",
]


class FamilyKind(str, enum.Enum):
    TYPE2 = "TYPE2"
    III_LIST = "III_LIST"
    COMPRESSED_LEVEL = "COMPRESSED_LEVEL"


@dataclass(frozen=True)
class FamilySpec:
    kind: FamilyKind
    p: Optional[int] = None
    c: Optional[int] = None
    type: Optional[int] = None
    max_c: Optional[int] = None

    def __post_init__(self) -> None:
        if self.kind is FamilyKind.TYPE2:
            _check_type2(self.p, self.c)
        elif self.kind is FamilyKind.III_LIST and self.max_c is None:
            raise ValueError("the h_2 <= 4 list needs a max socle degree")
        elif self.kind is FamilyKind.COMPRESSED_LEVEL and (self.c is None or self.type is None):
            raise ValueError("compressed level family needs c and type")

    def members(self) -> Iterator[HVector]:
        if self.kind is FamilyKind.TYPE2:
            yield family_type2(self.p, self.c)
        elif self.kind is FamilyKind.III_LIST:
            for pat in family_iii_list():
                yield from pat.instantiate(self.max_c)
        else:
            yield compressed_level_family(self.c, self.type)


def _check_type2(p, c) -> None:
    if p is None or c is None or c < 2 or not 3 <= p <= (c + 4) / 2:
        raise ValueError(f"type 2 family needs c >= 2 and 3 <= p <= (c+4)/2, got p={p}, c={c}")


def family_type2(p: int, c: int) -> HVector:
    """Level type-2 h-vector ``(1,3,4,...,p,...,p,p-1,...,3,2)`` of socle degree ``c``.

    ``p = 3`` gives ``(1,3,...,3,2)``.  The plateau at ``p`` has length
    ``c - 2p + 5``.
    """
    _check_type2(p, c)
    return HVector((1, *range(3, p), *[p] * (c - 2 * p + 5), *range(p - 1, 1, -1)))


def type2_grid(ps: Iterable[int], max_c: int) -> Iterator[HVector]:
    for p in ps:
        for c in range(max(2, 2 * p - 4), max_c + 1):
            yield family_type2(p, c)


@dataclass(frozen=True)
class IIIPattern:
    """One entry of the list of level h-vectors with ``h_2 <= 4``.

    ``tail`` is ``"fixed"`` for a single h-vector, ``"threes"`` for
    ``(1,3,3,...,3,h_c)`` with ``h_c`` in ``{1,2,3}``, and ``"open"`` for a
    prefix followed by any O-sequence continuation.
    """

    prefix: tuple[int, ...]
    tail: str = "fixed"

    def instantiate(self, max_c: int) -> Iterator[HVector]:
        if self.tail == "fixed":
            if len(self.prefix) - 1 <= max_c:
                yield HVector(self.prefix)
        elif self.tail == "threes":
            if max_c >= 2:
                yield HVector((1, 3, 3))
            for c in range(3, max_c + 1):
                for last in (1, 2, 3):
                    yield HVector((1,) + (3,) * (c - 1) + (last,))
        elif self.tail == "open":
            bound = dim_n(3, max_c)
            yield from enumerate_osequences(max_c, bound, self.prefix)
        else:
            raise ValueError(f"unknown tail kind {self.tail!r}")


def family_iii_list() -> list[IIIPattern]:
    fixed = [
        (1, 3, 1),
        (1, 3, 2),
        (1, 3, 4, 4, 3, 2),
        (1, 3, 4, 4, 3, 1),
        (1, 3, 4, 4, 3),
        (1, 3, 4, 4, 2),
        (1, 3, 4, 4),
        (1, 3, 4, 3, 2),
        (1, 3, 4, 3, 1),
        (1, 3, 4, 3),
        (1, 3, 4, 2),
        (1, 3, 4),
    ]
    return [
        IIIPattern(fixed[0]),
        IIIPattern(fixed[1]),
        IIIPattern((1, 3, 3), "threes"),
        IIIPattern((1, 3, 4, 5), "open"),
        # (1,3,4,4,4,u,...) with u <= 4: growth from 4 in degree 4 caps u anyway
        IIIPattern((1, 3, 4, 4, 4), "open"),
        *(IIIPattern(p) for p in fixed[2:]),
    ]


def enumerate_osequences(
    max_c: int,
    max_entry: int,
    prefix: Union[HVector, Sequence[int], None] = None,
) -> Iterator[HVector]:
    """Every O-sequence with socle degree ``<= max_c`` and entries ``<= max_entry``
    extending ``prefix``, ordered by socle degree and then lexicographically."""
    prefix = tuple(prefix) if prefix is not None else (1,)
    if not prefix or not is_o_sequence(prefix) or len(prefix) != len(HVector(prefix)):
        return
    if any(x > max_entry for x in prefix[1:]):
        return
    for c in range(len(prefix) - 1, max_c + 1):
        yield from _extend(list(prefix), c, max_entry)


def _extend(seq: list[int], c: int, max_entry: int) -> Iterator[HVector]:
    d = len(seq) - 1
    if d == c:
        yield HVector(tuple(seq))
        return
    cap = max_entry if d == 0 else min(max_entry, macaulay_growth(seq[d], d))
    for v in range(1, cap + 1):
        seq.append(v)
        yield from _extend(seq, c, max_entry)
        seq.pop()


def compressed_level_family(c: int, type: int) -> HVector:
    """Compressed level h-vector of socle degree ``c`` and type ``type`` in codimension 3."""
    s = SocleVector((0,) * c + (type,))
    return fl_numbers(3, s).H


@dataclass
class BatchResult:
    total: int = 0
    holds: dict = field(default_factory=lambda: {"lower": 0, "upper": 0})
    fails: dict = field(default_factory=lambda: {"lower": 0, "upper": 0})
    inapplicable: dict = field(default_factory=lambda: {"lower": 0, "upper": 0})
    failures: list = field(default_factory=list)
    sharp_hits: list = field(default_factory=list)
    reports: list = field(default_factory=list)
    errors: list = field(default_factory=list)

    def add(self, report: BoundReport) -> None:
        self.total += 1
        for name, verdict in (("lower", report.lower_holds), ("upper", report.upper_holds)):
            bucket = {
                Verdict.HOLDS: self.holds,
                Verdict.FAILS: self.fails,
                Verdict.INAPPLICABLE: self.inapplicable,
            }[verdict]
            bucket[name] += 1
        if report.failed:
            self.failures.append((report.h, report))
        if report.sharp:
            self.sharp_hits.append(report.h)
        self.reports.append(report)

    @property
    def any_failure(self) -> bool:
        return bool(self.failures)

    def to_json(self) -> dict:
        return {
            "total": self.total,
            "holds": dict(self.holds),
            "fails": dict(self.fails),
            "inapplicable": dict(self.inapplicable),
            "failures": [{"h": list(h), "report": rep.to_json()} for h, rep in self.failures],
            "sharp_hits": [list(h) for h in self.sharp_hits],
            "errors": [{"line": line, "message": msg} for line, msg in self.errors],
        }


def read_hvector_file(path: Union[str, Path]) -> tuple[list[HVector], list[tuple[int, str]]]:
    """Read one h-vector per line; bad lines are collected, not fatal."""
    vectors, errors = [], []
    text = Path(path).read_text()
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        try:
            h = HVector(parse_vector(line))
            if h.c < 1 or h[1] != 3:
                raise ValueError(f"not a codimension 3 h-vector: {h}")
        except ValueError as exc:
            errors.append((lineno, str(exc)))
            continue
        vectors.append(h)
    return vectors, errors


def _check_chunk(args: tuple[list[tuple[int, ...]], bool]) -> list[BoundReport]:
    entries, assume_level = args
    return [check_bounds(HVector(e), assume_level) for e in entries]


def run_batch(
    source: Iterable[HVector],
    assume_level: bool = True,
    jobs: int = 1,
    chunk_size: int = 256,
    keep_reports: bool = False,
) -> BatchResult:
    """Check both bounds for every h-vector in ``source``.

    With ``jobs > 1`` chunks are checked in worker processes; results are
    merged in input order, so the outcome does not depend on ``jobs``.
    """
    result = BatchResult()
    if isinstance(source, (str, Path)):
        vectors, result.errors = read_hvector_file(source)
        source = vectors
    if jobs <= 1:
        for h in source:
            result.add(check_bounds(h, assume_level))
    else:
        chunks = _chunked(source, chunk_size, assume_level)
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            for reports in pool.map(_check_chunk, chunks):
                for rep in reports:
                    result.add(rep)
    if not keep_reports:
        result.reports = []
    return result


def _chunked(source: Iterable[HVector], size: int, assume_level: bool):
    chunk = []
    for h in source:
        chunk.append(h.entries)
        if len(chunk) == size:
            yield chunk, assume_level
            chunk = []
    if chunk:
        yield chunk, assume_level
