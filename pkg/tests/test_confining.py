import random

import pytest
from hypothesis import given, settings, strategies as st

from houghton import confining
from houghton.confining import (
    CertificateError,
    Conjugation,
    Node,
    QLeaf,
    SeedLeaf,
    check_confining,
    closure_certify,
    confining_union,
    escape_time,
    finite_subset,
    parse_subset,
    q_norm,
    random_certificate,
    tag_subset,
    verify_certificate,
    window_family,
)
from houghton.elements import FixRay, SymInf, conj_by_t, from_z, t, zcycle
from houghton.metrics import k_of

from conftest import finitary

TAU = Conjugation(t(1, 2, 2))
SINF = tag_subset(2, SymInf())
FIX1 = tag_subset(2, FixRay(1), SymInf())
FIX2 = tag_subset(2, FixRay(2), SymInf())


def test_conjugation_matches_shift():
    g = zcycle(-3, 1)
    assert TAU(g) == conj_by_t(g, 1)
    assert TAU.power(g, 3) == zcycle(0, 4)
    assert TAU.power(g, -2) == zcycle(-5, -1)


def test_fix1_strictly_confining():
    rep = check_confining(FIX1, TAU, SINF, seed=1, count=100)
    assert rep.confining and rep.n0_found == 0
    assert rep.strict_witness == zcycle(0, 1)
    assert rep.verify(FIX1, TAU, 4, 64)


def test_fix2_counterexample_is_least():
    rep = check_confining(FIX2, TAU, SINF, seed=1, count=100)
    assert not rep.confining
    assert rep.invariance_counterexample == zcycle(-2, -1)
    assert rep.verify(FIX2, TAU, 4, 64)


def test_syminf_not_strict():
    rep = check_confining(SINF, TAU, SINF, seed=1, count=100)
    assert rep.confining and not rep.strict


def test_escape_examples():
    assert escape_time(FIX1, TAU, zcycle(-3, -2), 10) == 3
    assert escape_time(FIX1, TAU, zcycle(-1, 5), 10) == 1
    assert escape_time(FIX1, TAU, zcycle(-30, 0), 10) is None


@given(finitary(2))
def test_escape_time_is_k(g):
    assert escape_time(FIX1, TAU, g, 64) == k_of(g)


@given(finitary(2), st.integers(0, 5))
def test_invariance_on_fix1(g, s):
    if g in FIX1:
        assert TAU.power(g, s) in FIX1


def test_parse_subset():
    assert zcycle(0, 1) in parse_subset("fix:1", 2)
    assert zcycle(-1, 0) not in parse_subset("fix:1", 2)
    assert t(1, 2, 2) not in parse_subset("all", 2)
    assert t(1, 2, 3) in parse_subset("ker:3", 3, finitary=False)
    with pytest.raises(ValueError):
        parse_subset("nonsense", 2)


def test_window_family_membership():
    W = window_family(2, [from_z(z) for z in range(-2, 3)], FixRay(1))
    assert zcycle(0, 2) in W
    assert zcycle(-1, 0) not in W and zcycle(0, 5) not in W


# -- bounded unions ---------------------------------------------------------------


def test_union_with_members_has_diameter_one():
    S = finite_subset(2, [zcycle(0, 1), zcycle(2, 5)])
    v = confining_union(FIX1, S, TAU, 3)
    assert v.ok and v.diameter == 1
    assert zcycle(2, 5) in v.subset and zcycle(3, 4) in v.subset


def test_union_refuted_for_non_member_of_subgroup():
    S = finite_subset(2, [zcycle(-1, 0)])
    v = confining_union(FIX1, S, TAU, 3)
    assert not v.ok and v.refutation == zcycle(-1, 0)


def test_q_norm_over_non_subgroup():
    Q = finite_subset(2, [zcycle(0, 1), zcycle(1, 2)])
    assert q_norm(zcycle(0, 1, 2), Q, 3, pool=Q.candidates) == 2
    assert q_norm(zcycle(0, 5), Q, 3, pool=Q.candidates) is None


# -- certificates ---------------------------------------------------------------


POOL = [zcycle(0, 1), zcycle(1, 3), zcycle(0, 2, 4)]
SEEDS = (zcycle(-3, -2), zcycle(-2, 1))


def test_certificate_evaluation():
    c = Node(QLeaf(zcycle(0, 1)), SeedLeaf(1, 0), 1)
    assert verify_certificate(c, FIX1, TAU, SEEDS, 0) == zcycle(0, 1) * zcycle(-2, -1)


@pytest.mark.parametrize(
    "cert,path",
    [
        (QLeaf(zcycle(-1, 0)), "root"),
        (Node(QLeaf(zcycle(0, 1)), QLeaf(zcycle(-1, 0)), 1), "root.right"),
        (Node(QLeaf(zcycle(0, 1)), SeedLeaf(0, 7), 1), "root.right"),
        (Node(Node(QLeaf(zcycle(0, 1)), QLeaf(zcycle(0, 1)), 1), QLeaf(zcycle(0, 1)), 1), "root"),
        (QLeaf(zcycle(0, 1), level=2), "root"),
    ],
)
def test_bad_certificates_report_path(cert, path):
    with pytest.raises(CertificateError) as info:
        verify_certificate(cert, FIX1, TAU, SEEDS, 0)
    assert info.value.path == path


@settings(max_examples=100)
@given(st.integers(0, 2**32))
def test_random_certificates_verify(seed):
    rng = random.Random(seed)
    c = random_certificate(rng, POOL, len(SEEDS), 3)
    g = verify_certificate(c, FIX1, TAU, SEEDS, 1)
    assert g.is_finitary()


def test_closure_certify_round_trip():
    target = TAU.power(zcycle(0, 1) * SEEDS[0], 1)
    c = closure_certify(target, FIX1, TAU, SEEDS, 3, 1, 2, pool=POOL)
    assert c is not None
    assert verify_certificate(c, FIX1, TAU, SEEDS, 1) == target


def test_closure_certify_seed_leaf():
    c = closure_certify(zcycle(-3, -2), FIX1, TAU, SEEDS, 3, 0, 1, pool=POOL)
    assert c == SeedLeaf(0, 0)


def test_closure_certify_rejects_bad_seed():
    with pytest.raises(ValueError):
        closure_certify(zcycle(0, 1), FIX1, TAU, (zcycle(-9, -8),), 2, 0, 1)
