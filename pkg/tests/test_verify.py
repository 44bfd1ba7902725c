import json

import pytest

from mcbounds.hilbert_core import HVector, invariants, is_o_sequence, macaulay_growth
from mcbounds.level_bounds import Verdict
from mcbounds.verify import (
    FamilyKind,
    FamilySpec,
    compressed_level_family,
    enumerate_osequences,
    family_iii_list,
    family_type2,
    read_hvector_file,
    run_batch,
    type2_grid,
)

EX35 = (1, 3, 6, 10, 15, 21, 13, 7, 3, 1)


def type2_table(p, c):
    """Invariants of the type-2 family as stated for each p."""
    if p == 3:
        return dict(t=2, i=3, j=c + 2, m=2 if c == 3 else c)
    if p == 4:
        return dict(t=2, i=5 if c == 5 else 4, j=c + 2, m=c + 1)
    return dict(t=2, i=3, j=c + 2, m=c + 1)


def legal_pairs(ps, max_c):
    for p in ps:
        for c in range(2, max_c + 1):
            if 3 <= p <= (c + 4) / 2:
                yield p, c


# -- type-2 family -------------------------------------------------------------


def test_family_type2_examples():
    assert family_type2(3, 4) == HVector((1, 3, 3, 3, 2))
    assert family_type2(3, 4).e == 12
    assert family_type2(5, 6) == HVector((1, 3, 4, 5, 4, 3, 2))
    assert family_type2(5, 6).e == 22
    assert family_type2(4, 4) == HVector((1, 3, 4, 3, 2))
    assert family_type2(4, 4).e == 13
    assert family_type2(3, 2) == HVector((1, 3, 2))


@pytest.mark.parametrize("p, c", [(2, 6), (5, 5), (4, 3), (3, 1), (8, 11)])
def test_family_type2_range(p, c):
    with pytest.raises(ValueError):
        family_type2(p, c)


def test_family_type2_closed_formula_and_table():
    for p, c in legal_pairs(range(3, 8), 20):
        h = family_type2(p, c)
        assert h.c == c
        assert h.e == p * c - (p - 3) * (p - 1)
        assert max(h) == p
        assert is_o_sequence(h)
        assert invariants(h).as_dict() == type2_table(p, c), (p, c)


def test_type2_grid_covers_legal_pairs():
    got = list(type2_grid([3, 4, 5], 12))
    expected = [family_type2(p, c) for p, c in legal_pairs([3, 4, 5], 12)]
    assert sorted(got, key=lambda h: h.entries) == sorted(expected, key=lambda h: h.entries)


def test_family_spec():
    spec = FamilySpec(FamilyKind.TYPE2, p=4, c=6)
    assert list(spec.members()) == [family_type2(4, 6)]
    with pytest.raises(ValueError):
        FamilySpec(FamilyKind.TYPE2, p=9, c=6)
    level = list(FamilySpec(FamilyKind.COMPRESSED_LEVEL, c=8, type=2).members())
    assert level == [HVector((1, 3, 6, 10, 15, 20, 12, 6, 2))]
    assert compressed_level_family(8, 2) == level[0]


# -- iii list ------------------------------------------------------------------


def test_iii_list_contents():
    fixed = set()
    for pat in family_iii_list():
        fixed.update(h.entries for h in pat.instantiate(5))
    for h in [(1, 3, 1), (1, 3, 2), (1, 3, 3), (1, 3, 3, 3, 1), (1, 3, 4, 4, 3, 1), (1, 3, 4), (1, 3, 4, 3)]:
        assert h in fixed
    assert (1, 3, 5) not in fixed


def test_iii_threes_instantiation():
    threes = next(p for p in family_iii_list() if p.tail == "threes")
    members = {h.entries for h in threes.instantiate(5)}
    assert (1, 3, 3, 3, 3, 2) in members
    assert (1, 3, 3, 3, 3, 3) in members
    assert all(h[2] == 3 for h in members)


def test_iii_instantiations_are_osequences():
    for pat in family_iii_list():
        for h in pat.instantiate(8):
            assert is_o_sequence(h)
            assert h.c <= 8
            assert h.entries[:2] == (1, 3)
            assert h.at(2) <= 4
            assert h.entries[: len(pat.prefix)] == tuple(pat.prefix)


# -- enumeration ---------------------------------------------------------------


def naive_osequences(max_c, max_entry, prefix):
    """Brute force: every tuple in the box, filtered by the O-sequence test."""
    import itertools

    out = []
    for c in range(len(prefix) - 1, max_c + 1):
        free = c + 1 - len(prefix)
        for tail in itertools.product(range(1, max_entry + 1), repeat=free):
            h = tuple(prefix) + tail
            if is_o_sequence(h):
                out.append(h)
    return out


def test_enumerate_examples():
    got = [h.entries for h in enumerate_osequences(2, 6, (1, 3))]
    assert got == [(1, 3)] + [(1, 3, k) for k in range(1, 7)]
    h2 = {h.at(2) for h in enumerate_osequences(2, 9, (1, 2))}
    assert h2 == {0, 1, 2, 3} and macaulay_growth(2, 1) == 3
    assert list(enumerate_osequences(4, 20, (1, 3, 7))) == []


def test_enumerate_matches_brute_force():
    got = [h.entries for h in enumerate_osequences(4, 7, (1, 3))]
    assert got == naive_osequences(4, 7, (1, 3))
    assert len(set(got)) == len(got)


# -- batch ---------------------------------------------------------------------


def test_run_batch_type2_no_failures():
    res = run_batch(type2_grid([3, 4, 5], 12), assume_level=True)
    assert res.total == len(list(legal_pairs([3, 4, 5], 12)))
    assert not res.any_failure
    assert res.fails == {"lower": 0, "upper": 0}
    assert res.holds["lower"] == res.holds["upper"] == res.total


def test_run_batch_ex35_nonlevel():
    res = run_batch([HVector(EX35)], assume_level=False)
    assert res.total == 1
    assert res.fails["lower"] == 1
    assert [h.entries for h, _ in res.failures] == [EX35]
    assert res.failures[0][1].lower_holds is Verdict.FAILS


def test_run_batch_counts_sum():
    res = run_batch(enumerate_osequences(5, 12, (1, 3)), assume_level=False)
    for name in ("lower", "upper"):
        assert res.holds[name] + res.fails[name] + res.inapplicable[name] == res.total


def test_read_file(tmp_path):
    empty = tmp_path / "empty.txt"
    empty.write_text("")
    res = run_batch(empty)
    assert res.total == 0 and not res.any_failure

    f = tmp_path / "mixed.txt"
    f.write_text("# header\n1,3,4,4,3,1\n1,3,x\n\n1,2,1\n(1,3,3,3,2)\n")
    vectors, errors = read_hvector_file(f)
    assert [h.entries for h in vectors] == [(1, 3, 4, 4, 3, 1), (1, 3, 3, 3, 2)]
    assert [line for line, _ in errors] == [3, 5]


def test_parallel_matches_serial():
    source = list(enumerate_osequences(5, 10, (1, 3)))
    serial = run_batch(source, assume_level=False, jobs=1, chunk_size=50)
    parallel = run_batch(source, assume_level=False, jobs=3, chunk_size=50)
    assert serial.to_json() == parallel.to_json()


def test_batch_json_schema():
    res = run_batch([HVector(EX35), HVector((1, 3, 4, 4, 3, 1))], assume_level=False)
    js = json.loads(json.dumps(res.to_json()))
    assert set(js) >= {"total", "holds", "fails", "inapplicable", "failures", "sharp_hits"}
    assert js["failures"][0]["h"] == list(EX35)
    assert js["failures"][0]["report"]["lower"] == "84/1"
    assert [1, 3, 4, 4, 3, 1] in js["sharp_hits"]
