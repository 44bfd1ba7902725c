"""Macaulay inverse systems in three dual variables ``y1, y2, y3``.

``x_k`` acts on ``k[y1, y2, y3]`` as ``d/dy_k``.  The h-vector of the algebra
whose inverse system is generated by homogeneous forms ``g`` has ``h_d`` equal
to the dimension of the span of all degree-``d`` partial derivatives of the
generators.  Ranks are computed exactly by fraction-free elimination.
"""

from __future__ import annotations

import random
import re
from dataclasses import dataclass
from fractions import Fraction
from math import factorial, lcm
from typing import Iterable, Iterator, Mapping, Optional, Sequence

from .hilbert_core import HVector, dim_n

__all__ = [
    "NUM_VARS",
    "Monomial",
    "Poly",
    "PolySet",
    "PolySyntaxError",
    "GenericityError",
    "monomials",
    "parse_poly",
    "parse_polys",
    "apply_derivative",
    "bareiss_rank",
    "derivative_matrix",
    "hvector_from_invsys",
    "random_linear_form",
    "random_power_instance",
    "generic_power_hvector",
    "power_hvector_with_retry",
]

NUM_VARS = 3

Monomial = tuple  # exponent vector, one entry per variable


def monomials(d: int, n: int = NUM_VARS) -> list[tuple[int, ...]]:
    """All exponent vectors of degree ``d`` in ``n`` variables, graded-lex descending."""
    if n == 1:
        return [(d,)]
    out = []
    for a in range(d, -1, -1):
        out.extend((a,) + rest for rest in monomials(d - a, n - 1))
    return out


class Poly:
    """Polynomial in ``y1..yn`` with exact rational coefficients."""

    __slots__ = ("terms", "num_vars")

    def __init__(self, terms: Optional[Mapping[tuple, object]] = None, num_vars: int = NUM_VARS):
        self.num_vars = num_vars
        self.terms: dict[tuple[int, ...], Fraction] = {}
        for mono, coef in (terms or {}).items():
            mono = tuple(mono)
            if len(mono) != num_vars or any(a < 0 for a in mono):
                raise ValueError(f"bad exponent vector {mono}")
            coef = Fraction(coef)
            if coef:
                self.terms[mono] = self.terms.get(mono, Fraction(0)) + coef
                if not self.terms[mono]:
                    del self.terms[mono]

    @property
    def degree(self) -> int:
        if not self.terms:
            return -1
        return max(sum(m) for m in self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def is_homogeneous(self) -> bool:
        return len({sum(m) for m in self.terms}) <= 1

    def coefficient(self, mono: Sequence[int]) -> Fraction:
        return self.terms.get(tuple(mono), Fraction(0))

    def __add__(self, other: "Poly") -> "Poly":
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out.get(m, Fraction(0)) + c
        return Poly(out, self.num_vars)

    def __neg__(self) -> "Poly":
        return Poly({m: -c for m, c in self.terms.items()}, self.num_vars)

    def __sub__(self, other: "Poly") -> "Poly":
        return self + (-other)

    def __mul__(self, other: "Poly") -> "Poly":
        out: dict = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = tuple(a + b for a, b in zip(m1, m2))
                out[m] = out.get(m, Fraction(0)) + c1 * c2
        return Poly(out, self.num_vars)

    def scale(self, k) -> "Poly":
        return Poly({m: c * k for m, c in self.terms.items()}, self.num_vars)

    def __eq__(self, other) -> bool:
        return isinstance(other, Poly) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def sorted_terms(self) -> list[tuple[tuple[int, ...], Fraction]]:
        # graded lex, highest first
        return sorted(self.terms.items(), key=lambda mc: (-sum(mc[0]), [-a for a in mc[0]]))

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for mono, coef in self.sorted_terms():
            powers = [
                f"y{k + 1}" if a == 1 else f"y{k + 1}^{a}" for k, a in enumerate(mono) if a
            ]
            mag = abs(coef)
            if not powers:
                body = str(mag)
            elif mag == 1:
                body = "*".join(powers)
            else:
                body = f"{mag}*" + "*".join(powers)
            sign = "-" if coef < 0 else "+"
            if not parts:
                parts.append(body if sign == "+" else f"-{body}")
            else:
                parts.append(f"{sign} {body}")
        return " ".join(parts)

    __repr__ = __str__


@dataclass(frozen=True)
class PolySet:
    generators: tuple[Poly, ...]
    num_vars: int = NUM_VARS

    def __post_init__(self) -> None:
        if self.num_vars != NUM_VARS:
            raise ValueError(f"only {NUM_VARS} variables are supported")
        for g in self.generators:
            if g.is_zero():
                raise ValueError("inverse system generators must be nonzero")
            if g.num_vars != self.num_vars:
                raise ValueError("generator has the wrong number of variables")

    def __len__(self) -> int:
        return len(self.generators)

    def __iter__(self) -> Iterator[Poly]:
        return iter(self.generators)


class PolySyntaxError(ValueError):
    def __init__(self, msg: str, line: int, col: int):
        super().__init__(f"line {line}, column {col}: {msg}")
        self.line = line
        self.col = col


_TOKEN_RE = re.compile(
    r"\s*(?:(?P<num>\d+(?:\s*/\s*\d+)?)|(?P<var>y(?P<idx>\d+))|(?P<op>[-+*^]))"
)


def _tokenize(text: str, lineno: int) -> list[tuple[str, str, int]]:
    toks = []
    pos = 0
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None or m.end() == pos:
            col = pos + 1 + (len(text[pos:]) - len(text[pos:].lstrip()))
            raise PolySyntaxError(f"unexpected character {text[col - 1]!r}", lineno, col)
        col = pos + len(m.group(0)) - len(m.group(0).lstrip()) + 1
        if m.group("num") is not None:
            toks.append(("num", m.group("num").replace(" ", ""), col))
        elif m.group("var") is not None:
            toks.append(("var", m.group("idx"), col))
        else:
            toks.append(("op", m.group("op"), col))
        pos = m.end()
    return toks


def parse_poly(text: str, lineno: int = 1) -> Poly:
    """Parse one polynomial, e.g. ``"2/3*y1^2 - y2*y3"``."""
    toks = _tokenize(text, lineno)
    if not toks:
        raise PolySyntaxError("empty polynomial", lineno, 1)
    pos = 0
    end_col = len(text.rstrip()) + 1

    def peek():
        return toks[pos] if pos < len(toks) else None

    def expect(kind, value=None):
        nonlocal pos
        tok = peek()
        if tok is None:
            raise PolySyntaxError(f"unexpected end of input, expected {value or kind}", lineno, end_col)
        if tok[0] != kind or (value is not None and tok[1] != value):
            raise PolySyntaxError(f"expected {value or kind}, found {tok[1]!r}", lineno, tok[2])
        pos += 1
        return tok

    def factor(exps: list[int]) -> None:
        nonlocal pos
        _, idx, col = expect("var")
        k = int(idx)
        if not 1 <= k <= NUM_VARS:
            raise PolySyntaxError(f"variable y{k} out of range y1..y{NUM_VARS}", lineno, col)
        power = 1
        tok = peek()
        if tok is not None and tok[:2] == ("op", "^"):
            pos += 1
            _, num, ncol = expect("num")
            if "/" in num or int(num) < 1:
                raise PolySyntaxError(f"exponent must be a positive integer, got {num}", lineno, ncol)
            power = int(num)
        exps[k - 1] += power

    terms: dict[tuple[int, ...], Fraction] = {}
    first = True
    while pos < len(toks):
        sign = 1
        tok = peek()
        if tok[0] == "op" and tok[1] in "+-":
            sign = -1 if tok[1] == "-" else 1
            pos += 1
        elif not first:
            raise PolySyntaxError(f"expected + or -, found {tok[1]!r}", lineno, tok[2])
        first = False
        coef = Fraction(sign)
        exps = [0] * NUM_VARS
        tok = peek()
        if tok is None:
            raise PolySyntaxError("dangling sign", lineno, end_col)
        if tok[0] == "num":
            num, ncol = tok[1], tok[2]
            pos += 1
            try:
                coef *= Fraction(num)
            except ZeroDivisionError:
                raise PolySyntaxError("zero denominator", lineno, ncol) from None
            tok = peek()
            if tok is not None and tok[:2] == ("op", "*"):
                pos += 1
                factor(exps)
        else:
            factor(exps)
        while (tok := peek()) is not None and tok[:2] == ("op", "*"):
            pos += 1
            factor(exps)
        mono = tuple(exps)
        terms[mono] = terms.get(mono, Fraction(0)) + coef
    return Poly(terms)


def parse_polys(text: str) -> PolySet:
    """One polynomial per line; blank lines and ``#`` comments are skipped."""
    gens = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        g = parse_poly(line, lineno)
        if g.is_zero():
            raise PolySyntaxError("polynomial is identically zero", lineno, 1)
        gens.append(g)
    return PolySet(tuple(gens))


def apply_derivative(op: Sequence[int], g: Poly) -> Poly:
    """Apply ``x1^a1 x2^a2 x3^a3``, i.e. differentiate ``a_k`` times in ``y_k``."""
    out = {}
    for mono, coef in g.terms.items():
        if any(e < a for e, a in zip(mono, op)):
            continue
        k = coef
        for e, a in zip(mono, op):
            k *= factorial(e) // factorial(e - a)
        out[tuple(e - a for e, a in zip(mono, op))] = k
    return Poly(out, g.num_vars)


def bareiss_rank(rows: Sequence[Sequence[int]]) -> int:
    """Rank of an integer matrix by Bareiss fraction-free elimination."""
    m = [list(r) for r in rows if any(r)]
    if not m:
        return 0
    ncols = len(m[0])
    rank = 0
    prev = 1
    for col in range(ncols):
        piv = next((r for r in range(rank, len(m)) if m[r][col]), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        p = m[rank][col]
        for r in range(rank + 1, len(m)):
            a = m[r][col]
            row_r, row_p = m[r], m[rank]
            for k in range(col + 1, ncols):
                row_r[k] = (p * row_r[k] - a * row_p[k]) // prev
            row_r[col] = 0
        prev = p
        rank += 1
        if rank == len(m):
            break
    return rank


def _integer_row(p: Poly, cols: Sequence[tuple]) -> list[int]:
    coefs = [p.coefficient(mono) for mono in cols]
    den = lcm(*(c.denominator for c in coefs)) if coefs else 1
    return [int(c * den) for c in coefs]


def derivative_matrix(M: PolySet, d: int) -> list[list[int]]:
    """Rows are degree-``d`` derivatives of the generators, scaled to integers;
    columns are degree-``d`` monomials in graded-lex order."""
    cols = monomials(d)
    rows = []
    for g in M:
        k = g.degree - d
        if k < 0:
            continue
        for op in monomials(k):
            deriv = apply_derivative(op, g)
            if not deriv.is_zero():
                rows.append(_integer_row(deriv, cols))
    return rows


def hvector_from_invsys(M: PolySet) -> HVector:
    if len(M) == 0:
        raise ValueError("empty generator set")
    for g in M:
        if not g.is_homogeneous():
            raise ValueError(f"generator is not homogeneous: {g}")
    c = max(g.degree for g in M)
    return HVector(tuple(bareiss_rank(derivative_matrix(M, d)) for d in range(c + 1)))


class GenericityError(RuntimeError):
    """No tried seed produced linear forms generic enough for the requested degrees."""


def random_linear_form(rng: random.Random, bound: int = 30) -> Poly:
    coefs = [0] * NUM_VARS
    while not any(coefs):
        coefs = [Fraction(rng.randint(-bound, bound), rng.randint(1, bound)) for _ in range(NUM_VARS)]
    return Poly({tuple(int(k == v) for k in range(NUM_VARS)): c for v, c in enumerate(coefs)})


def _power(L: Poly, d: int) -> Poly:
    # multinomial expansion of (a y1 + b y2 + c y3)^d
    a = [L.coefficient(tuple(int(k == v) for k in range(NUM_VARS))) for v in range(NUM_VARS)]
    terms = {}
    for mono in monomials(d):
        coef = Fraction(factorial(d))
        for ak, ek in zip(a, mono):
            coef = coef / factorial(ek) * ak**ek
        terms[mono] = coef
    return Poly(terms)


def random_power_instance(degrees: Iterable[int], seed: int) -> PolySet:
    """``{L_i^{d_i}}`` for pseudo-random rational linear forms ``L_i`` drawn from ``seed``.

    The forms are generic only with high probability; see
    :func:`power_hvector_with_retry`.
    """
    degrees = list(degrees)
    if not degrees:
        raise ValueError("need at least one degree")
    rng = random.Random(seed)
    return PolySet(tuple(_power(random_linear_form(rng), d) for d in degrees))


def generic_power_hvector(degrees: Iterable[int]) -> HVector:
    """h-vector for powers of general linear forms: ``min(N(3,d), #{i : d_i >= d})``."""
    degrees = list(degrees)
    c = max(degrees)
    return HVector(
        tuple(min(dim_n(NUM_VARS, d), sum(1 for k in degrees if k >= d)) for d in range(c + 1))
    )


def power_hvector_with_retry(
    degrees: Iterable[int], seed: int = 0, attempts: int = 3
) -> tuple[HVector, int]:
    """Compute the h-vector of a random power instance, retrying on rank shortfall.

    Seeds ``seed, seed+1, ...`` are tried up to ``attempts`` times.  Returns
    the h-vector and the seed that produced it; raises
    :class:`GenericityError` if every attempt falls short of the general value.
    """
    degrees = list(degrees)
    target = generic_power_hvector(degrees)
    last = None
    for k in range(attempts):
        h = hvector_from_invsys(random_power_instance(degrees, seed + k))
        if h == target:
            return h, seed + k
        last = h
    raise GenericityError(
        f"rank shortfall on seeds {seed}..{seed + attempts - 1}: got {last}, expected {target}"
    )
