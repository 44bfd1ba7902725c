import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mcbounds.hilbert_core import HVector, dim_n, is_o_sequence
from mcbounds.invsys import (
    GenericityError,
    Poly,
    PolySet,
    PolySyntaxError,
    apply_derivative,
    bareiss_rank,
    derivative_matrix,
    generic_power_hvector,
    hvector_from_invsys,
    monomials,
    parse_poly,
    parse_polys,
    power_hvector_with_retry,
    random_power_instance,
)

EX33_F = "y1^5 - y1*y3^4 - y2^2*y3^3"
EX28_DEGREES = [8, 8, 7, 7, 7, 7, 6, 6, 6, 6, 6, 6] + [5] * 8


def naive_rank(rows):
    """Row reduction over Q with Fractions; the reference for bareiss_rank."""
    m = [[Fraction(x) for x in row] for row in rows]
    rank = 0
    ncols = len(m[0]) if m else 0
    for col in range(ncols):
        piv = next((r for r in range(rank, len(m)) if m[r][col] != 0), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        for r in range(len(m)):
            if r != rank and m[r][col] != 0:
                k = m[r][col] / m[rank][col]
                m[r] = [a - k * b for a, b in zip(m[r], m[rank])]
        rank += 1
    return rank


def y(*exps, coef=1):
    return Poly({tuple(exps): coef})


def random_form(rng, d, bound=9):
    return Poly({m: Fraction(rng.randint(-bound, bound), rng.randint(1, 4)) for m in monomials(d)})


# -- parsing -------------------------------------------------------------------


def test_parse_ex33():
    F = parse_poly(EX33_F)
    assert F == y(5, 0, 0) + y(1, 0, 4, coef=-1) + y(0, 2, 3, coef=-1)
    assert F.degree == 5 and F.is_homogeneous()


def test_parse_misc():
    assert parse_poly("y1") == y(1, 0, 0)
    q = parse_poly("2/3*y1^2 + y2*y3")
    assert q.coefficient((2, 0, 0)) == Fraction(2, 3)
    assert q.coefficient((0, 1, 1)) == 1
    assert parse_poly("  -3 * y2 ^ 2*y2 + 3*y2^3 ").is_zero()
    assert parse_poly("y1*y1^1") == y(2, 0, 0)


@pytest.mark.parametrize(
    "text, col",
    [("y1 +", 5), ("y4^2", 1), ("y1 y2", 4), ("y1^0", 4), ("2/0*y1", 1), ("y1 + %", 6), ("", 1)],
)
def test_parse_errors(text, col):
    with pytest.raises(PolySyntaxError) as err:
        parse_poly(text, lineno=3)
    assert err.value.line == 3
    assert err.value.col == col


def test_parse_polys_file():
    text = "# Example\n\ny1^2\n  # indented comment\ny2^2 - y3^2\n"
    M = parse_polys(text)
    assert len(M) == 2
    with pytest.raises(PolySyntaxError) as err:
        parse_polys("y1\ny1 - y1\n")
    assert err.value.line == 2


def test_polyset_rejects():
    with pytest.raises(ValueError):
        PolySet((Poly(),))
    with pytest.raises(ValueError):
        PolySet((y(1, 0, 0),), num_vars=4)


def test_poly_str_round_trip():
    p = parse_poly("-2/3*y1^2*y3 + y2^3 - 5*y1*y2*y3")
    assert parse_poly(str(p)) == p


# -- differentiation -----------------------------------------------------------


def test_apply_derivative():
    assert apply_derivative((1, 0, 0), y(5, 0, 0)) == y(4, 0, 0, coef=5)
    assert apply_derivative((0, 2, 0), y(5, 0, 0)).is_zero()
    F = parse_poly(EX33_F)
    assert apply_derivative((0, 0, 1), F) == parse_poly("-4*y1*y3^3 - 3*y2^2*y3^2")


@settings(max_examples=100)
@given(
    st.tuples(st.integers(0, 3), st.integers(0, 3), st.integers(0, 3)),
    st.tuples(st.integers(0, 3), st.integers(0, 3), st.integers(0, 3)),
)
def test_derivatives_commute(a, b):
    rng = random.Random(sum(a) * 31 + sum(b))
    g = random_form(rng, 7)
    ab = tuple(x + z for x, z in zip(a, b))
    assert apply_derivative(a, apply_derivative(b, g)) == apply_derivative(ab, g)


# -- rank ----------------------------------------------------------------------


@settings(max_examples=200)
@given(
    st.lists(
        st.lists(st.integers(-5, 5), min_size=6, max_size=6), min_size=1, max_size=9
    )
)
def test_bareiss_matches_naive(rows):
    assert bareiss_rank(rows) == naive_rank(rows)


def test_bareiss_low_rank():
    rows = [[1, 2, 3], [2, 4, 6], [0, 0, 0], [1, 0, 1], [2, 2, 4]]
    assert bareiss_rank(rows) == naive_rank(rows) == 2
    assert bareiss_rank([]) == 0


def test_derivative_matrices_against_naive_rank():
    fixtures = [
        parse_polys(EX33_F),
        parse_polys("y1^2\ny2^2\ny3^2\ny1*y2\ny1*y3\ny2*y3"),
        random_power_instance([4, 3, 3], seed=5),
    ]
    for M in fixtures:
        c = max(g.degree for g in M)
        for d in range(c + 1):
            rows = derivative_matrix(M, d)
            assert bareiss_rank(rows) == naive_rank(rows)


# -- h-vectors -----------------------------------------------------------------


def test_hvector_examples():
    assert hvector_from_invsys(parse_polys(EX33_F)) == HVector((1, 3, 4, 4, 3, 1))
    assert hvector_from_invsys(parse_polys("y1")) == HVector((1, 1))
    quadrics = parse_polys("y1^2\ny2^2\ny3^2\ny1*y2\ny1*y3\ny2*y3")
    assert hvector_from_invsys(quadrics) == HVector((1, 3, 6))


def test_hvector_rejects():
    with pytest.raises(ValueError):
        hvector_from_invsys(PolySet(()))
    with pytest.raises(ValueError):
        hvector_from_invsys(parse_polys("y1^2 + y2"))


def test_random_power_instances():
    assert hvector_from_invsys(random_power_instance([5], seed=1)) == HVector((1,) * 6)
    assert hvector_from_invsys(random_power_instance([2, 2, 2], seed=1)) == HVector((1, 3, 3))
    # same seed, same forms
    assert random_power_instance([3, 2], 9).generators == random_power_instance([3, 2], 9).generators


def test_generic_power_hvector():
    assert generic_power_hvector(EX28_DEGREES) == HVector((1, 3, 6, 10, 15, 20, 12, 6, 2))


def test_power_retry_first_seed():
    # seven squares of general linear forms fill all of R_2
    h, seed = power_hvector_with_retry([2] * 7, seed=0)
    assert h == HVector((1, 3, 6)) and seed == 0


def test_power_retry_exhausted(monkeypatch):
    import mcbounds.invsys as invsys

    monkeypatch.setattr(invsys, "random_linear_form", lambda rng, bound=30: y(1, 0, 0))
    with pytest.raises(GenericityError):
        invsys.power_hvector_with_retry([2, 2], seed=0, attempts=3)


def _check_symmetric(g):
    h = hvector_from_invsys(PolySet((g,)))
    c = g.degree
    assert h.c == c
    assert all(h[d] == h[c - d] for d in range(c + 1))
    return h


def test_single_generator_symmetry_random():
    rng = random.Random(1984)
    for _ in range(40):
        d = rng.randint(1, 6)
        nterms = rng.randint(1, dim_n(3, d))
        mons = rng.sample(monomials(d), nterms)
        g = Poly({m: Fraction(rng.randint(-7, 7) or 1, rng.randint(1, 3)) for m in mons})
        h = _check_symmetric(g)
        assert is_o_sequence(h)


def test_counting_upper_bound():
    rng = random.Random(3)
    for _ in range(20):
        degs = [rng.randint(1, 5) for _ in range(rng.randint(1, 3))]
        M = PolySet(tuple(random_form(rng, d) for d in degs))
        h = hvector_from_invsys(M)
        for d in range(h.c + 1):
            assert h[d] <= dim_n(3, d)
            assert h[d] <= sum(dim_n(3, k - d) for k in degs if k >= d)
        assert is_o_sequence(h)
