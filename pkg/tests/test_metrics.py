import itertools

import pytest
from hypothesis import given, settings, strategies as st

from houghton import metrics
from houghton.elements import FixRay, HoughtonElement, conj_by_t, from_z, identity, t, zcycle
from houghton.metrics import (
    AlphabetSpec,
    Family,
    GeodesicOracle,
    StabilizedFixTNorm,
    evaluate_word,
    fix_t_alphabet,
    fix_t_witness,
    k_of,
    norm_fix_t,
    power_norm_profile,
    z_window,
)

from conftest import finitary


def naive_ball(alphabet, depth):
    """Plain BFS over every letter: element -> distance."""
    letters = list(alphabet.explicit)
    for f in alphabet.families:
        letters += f.letters(alphabet.n)
    e = identity(alphabet.n)
    dist = {e: 0}
    frontier = [e]
    for d in range(1, depth + 1):
        nxt = []
        for g in frontier:
            for x in letters:
                h = g * x
                if h not in dist:
                    dist[h] = d
                    nxt.append(h)
        frontier = nxt
    return dist


STABLE = StabilizedFixTNorm(2)


@pytest.fixture(scope="module")
def oracle2():
    return GeodesicOracle(fix_t_alphabet(2))


# -- closed form -------------------------------------------------------------


def test_k_of_examples():
    assert k_of(identity(2)) == 0
    assert k_of(zcycle(0, 1)) == 0
    assert k_of(zcycle(-1, 0)) == 1
    assert k_of(zcycle(-5, 2)) == 5


def test_norm_fix_t_examples():
    assert norm_fix_t(identity(2)) == 0
    assert [norm_fix_t(zcycle(-n, -n + 1)) for n in range(1, 6)] == [3, 5, 7, 9, 11]
    assert norm_fix_t(zcycle(4, 9)) == 1


def test_k_of_rejects_translations():
    with pytest.raises(ValueError):
        k_of(t(1, 2, 2))


@given(finitary(2))
def test_witness_realises_formula(g):
    word = fix_t_witness(g)
    assert evaluate_word(word, 2) == g
    assert len(word) == norm_fix_t(g)
    assert all(x in (t(1, 2, 2), t(1, 2, 2).inverse()) or FixRay(1).contains(x) for x in word)


@given(finitary(2), st.integers(0, 6))
def test_shift_law(g, s):
    # shifting towards R_2 decreases k by s, floored at 0
    if k_of(g) >= s:
        assert k_of(conj_by_t(g, s)) == k_of(g) - s


@given(finitary(2))
def test_norm_is_odd_or_zero(g):
    assert g.is_identity() or norm_fix_t(g) % 2 == 1


# -- BFS oracle vs a naive search -----------------------------------------------


@pytest.mark.parametrize("width,depth", [(1, 5), (2, 4), (3, 3)])
def test_geodesic_oracle_matches_naive_bfs(width, depth):
    alpha = fix_t_alphabet(width)
    truth = naive_ball(alpha, depth)
    oracle = GeodesicOracle(alpha)
    for g, d in truth.items():
        res = oracle.norm(g, depth)
        assert res.length == d
        assert evaluate_word(res.witness, 2) == g
    # elements outside the naive ball exceed the bound
    outside = [zcycle(-4, 3), t(1, 2, 2) ** (depth + 1)]
    for g in outside:
        if g not in truth:
            assert oracle.norm(g, depth).status == "exceeds"


def test_mixed_alphabet_matches_naive_bfs():
    alpha = AlphabetSpec(3, (t(1, 3, 3),), (Family(FixRay(3), ((1, 0), (2, 0), (2, 1))),))
    truth = naive_ball(alpha, 4)
    oracle = GeodesicOracle(alpha)
    for g, d in truth.items():
        assert oracle.norm(g, 4).length == d


def test_last_level_shortcut_finds_length_one(oracle2):
    res = oracle2.norm(zcycle(0, 2), 1)
    assert res.length == 1 and res.witness == [zcycle(0, 2)]


def test_translation_norms(oracle2):
    for j in range(1, 6):
        assert oracle2.norm(t(1, 2, 2) ** j, 6).length == j


def test_witness_independent_of_query_order():
    a, b = GeodesicOracle(fix_t_alphabet(2)), GeodesicOracle(fix_t_alphabet(2))
    g, h = zcycle(-1, 0), zcycle(-2, 1)
    wa = [a.norm(g, 5).witness, a.norm(h, 5).witness]
    wb = [b.norm(h, 5).witness, b.norm(g, 5).witness][::-1]
    assert wa == wb


def test_budget_and_bounds():
    tiny = GeodesicOracle(fix_t_alphabet(3), node_budget=50)
    assert tiny.norm(zcycle(-3, -2), 7).status == "budget"
    o = GeodesicOracle(fix_t_alphabet(2))
    assert o.norm(zcycle(-2, -1), 3).exceeds
    assert o.norm(identity(2), 0).length == 0
    with pytest.raises(ValueError):
        o.norm(identity(3), 2)


def test_empty_alphabet_rejected():
    with pytest.raises(ValueError):
        AlphabetSpec(2)
    with pytest.raises(ValueError):
        AlphabetSpec(2, (), (Family(FixRay(1), z_window(0, 0)),))


def test_stabilized_norm_examples():
    s = StabilizedFixTNorm(2)
    res, width = s.norm(zcycle(-1, 0))
    assert res.length == 3 and width >= 1
    assert s.norm(zcycle(3, 4))[0].length == 1


@settings(max_examples=25)
@given(st.permutations(list(range(-1, 4))))
def test_stabilized_norm_on_shifted_window(img):
    zs = range(-1, 4)
    g = HoughtonElement.from_images(2, (0, 0), {from_z(a): from_z(b) for a, b in zip(zs, img) if a != b})
    res, _ = STABLE.norm(g)
    assert res.length == norm_fix_t(g)


def test_power_norm_profile_finitary():
    g = zcycle(-3, 2, 5)
    assert power_norm_profile(g, 4) == [7, 7, 0, 7]


def test_power_norm_profile_translation():
    assert power_norm_profile(t(1, 2, 2), 4, alphabet=fix_t_alphabet(2), max_len=5) == [1, 2, 3, 4]
    with pytest.raises(metrics.NormBoundExceeded):
        power_norm_profile(t(1, 2, 2), 4, alphabet=fix_t_alphabet(2), max_len=2)
