import random

import pytest
from hypothesis import given, settings, strategies as st

from houghton import witnesses as W
from houghton.elements import (
    FixRay,
    HoughtonElement,
    SymInf,
    SymTwoRays,
    cycle,
    from_z,
    identity,
    random_element,
    t,
    to_z,
    zcycle,
)

from conftest import random_gamma, seeds


# A separate z-permutation oracle: finitary permutations of Z as dicts.


def zdict(g, lo=-40, hi=40):
    return {z: to_z(g(from_z(z))) for z in range(lo, hi)}


def zshift(d, s):
    return {z + s: w + s for z, w in d.items()}


def zcompose(a, b):
    # (a o b)(z), identity outside the tables
    zs = set(a) | set(b)
    return {z: a.get(b.get(z, z), b.get(z, z)) for z in zs}


def oracle_pi(g, m, k, p):
    base = zdict(g)
    out = {}
    for s in range(2**p):
        out = zcompose(zshift(base, s * (m - k)), out)
    return out


def agree(g, d, lo=-20, hi=20):
    return all(to_z(g(from_z(z))) == d.get(z, z) for z in range(lo, hi))


# -- small helpers ---------------------------------------------------------------


def test_ord_at_examples():
    assert W.ord_at(identity(2), 5) == 1
    assert W.ord_at(zcycle(0, 1, 2), 0) == 3
    assert W.ord_at(zcycle(0, 1, 2), 7) == 1


def test_kappa():
    assert [W.kappa(n, 0) for n in (1, 2, 3, 4, 5, 8)] == [1, 2, 3, 3, 4, 4]


# -- doubling products ---------------------------------------------------------------


def test_pi_examples():
    g = zcycle(-2, -1)
    assert W.pi_product(g, 2, 1, 0) == g
    assert W.zimg(W.pi_product(g, 2, 1, 1), -2) == 0
    assert W.zimg(W.pi_product(g, 2, 1, 2), -2) == 2


def test_omega_examples():
    pi = zcycle(-1, -2)
    assert W.omega_product(pi, 2, 1, 0) == pi
    assert W.zimg(W.omega_product(pi, 2, 1, 1), -2) == -1


def test_pi_preconditions():
    with pytest.raises(W.PreconditionError):
        W.pi_product(zcycle(-3, -1), 2, 1, 1)  # moves a point below -2
    with pytest.raises(W.PreconditionError):
        W.pi_product(zcycle(-2, 0), 2, 1, 1)  # gamma(-2) != -1
    with pytest.raises(W.PreconditionError):
        W.pi_product(zcycle(-2, -1), 2, 2, 1)


@given(seeds, st.integers(0, 4))
def test_pi_matches_oracle(seed, p):
    g, m, k = random_gamma(random.Random(seed))
    r = W.pi_product(g, m, k, p)
    assert agree(r, oracle_pi(g, m, k, p))
    assert W.check_pi(r, g, m, k, p) == []


@given(seeds, st.integers(0, 4))
def test_omega_duality(seed, p):
    g, m, k = random_gamma(random.Random(seed))
    pi = g.inverse()
    r = W.omega_product(pi, m, k, p)
    assert r == W.pi_product(g, m, k, p).inverse()
    assert W.check_omega(r, pi, m, k, p) == []


# -- order shaping ---------------------------------------------------------------------


def test_collapse_no_run():
    e = zcycle(-2, 0, 3)
    theta, col = W.collapse_runs(e, 2)
    assert theta.is_identity() and col == e


def test_collapse_off_ray_run():
    e = cycle(from_z(-1), from_z(4), (3, 0), (3, 1), from_z(5), n=3)
    theta, col = W.collapse_runs(e, 1)
    assert col == W.zcycle_n(-1, 4, 5, n=3)
    assert col * theta.inverse() == e
    assert W.check_collapse(e, 1, theta, col) == []


def test_pad_examples():
    s = zcycle(-1, 2)
    assert W.pad_order(s, -1, 2) == s
    r = W.pad_order(s, -1, 5)
    assert r == zcycle(-1, 2, 4, 5, 6)
    assert W.ord_at(r, -1) == 5


@given(st.integers(1, 6), st.integers(0, 4), st.integers(0, 6))
def test_pad_reaches_target(n, a, extra):
    s = zcycle(-n, a, a + 2)
    target = 3 + extra
    r = W.pad_order(s, -n, target)
    assert W.ord_at(r, -n) == target
    assert W.check_pad(r, s, -n, target) == []


@given(st.integers(1, 8))
def test_eta_order(n):
    eta = W.eta_from(zcycle(-n, 0, 1), n)
    assert W.ord_at(eta, -n) == 1 + 2 ** W.kappa(n, 0)


# -- swaps -------------------------------------------------------------------------------


def test_mu_nu_example():
    a = zcycle(-2, 0, 3)
    mu, nu = W.mu_nu(a, a**2, 2, 0)
    assert W.zimg(mu, -2) == -1
    assert W.zimg(nu * mu, -2) == -2
    assert W.fixes_below(mu, 2) and W.fixes_below(nu, 2)
    assert W.check_mu_nu(mu, nu, 2) == []


def test_mu_nu_matches_oracle():
    a = zcycle(-2, 0, 3)
    mu, _ = W.mu_nu(a, a**2, 2, 0)
    A, B = zdict(a), zdict(a**2)
    want = zcompose(zcompose(zshift(B, 1), {0: 1, 1: 0}), A)
    assert agree(mu, want)


def test_sigma_swap_example():
    a = zcycle(-2, 0, 3)
    mu, nu = W.mu_nu(a, a**2, 2, 0)
    s = W.sigma_swap(mu, nu, 2, 0)
    assert W.zimg(s, -2) == -1 and W.zimg(s, -1) == -2
    assert W.fixes_below(s, 2)
    s2 = s * s
    assert W.zimg(s2, -2) == -2 and W.zimg(s2, -1) == -1


def test_mu_nu_preconditions():
    with pytest.raises(W.PreconditionError):
        W.mu_nu(zcycle(-2, -1), zcycle(-2, -1), 2)


@given(st.integers(1, 8), st.integers(0, 5), st.integers(1, 5))
def test_swap_pipeline_from_three_cycles(n, a, gap):
    s = W.swap_pipeline(zcycle(-n, a, a + gap), n, 0)
    assert W.check_swap(s, n) == []


@given(st.integers(1, 4), st.integers(1, 3))
def test_swap_pipeline_with_shift(n, a):
    # n0 = 1 lowers the level by 4: eta lives at level n + 4
    M = n + 4
    s = W.swap_pipeline(zcycle(-M, -M + M + a, -M + M + a + 1), M, 1)
    assert W.check_swap(s, n) == []


def exact_swaps(m):
    return zcycle(-m, -m + 1)


def test_fixing_base_case_delegates():
    assert W.sigma_swap_fixing(exact_swaps, 3, -1) == zcycle(-3, -2)


def test_fixing_fixed_branch():
    assert W.sigma_swap_fixing(exact_swaps, 3, 0) == zcycle(-3, -2)
    assert W.sigma_swap_fixing(exact_swaps, 3, 0, n0=2) == W.conj_by_t(zcycle(-5, -4), 2)


def test_fixing_rejects_bad_provider():
    with pytest.raises(W.PreconditionError):
        W.sigma_swap_fixing(lambda m: zcycle(-m, -m + 2), 3, 0)


@settings(max_examples=50)
@given(st.integers(1, 8), st.integers(0, 3), st.integers(0, 3), st.integers(1, 3))
def test_fixing_postconditions(n, i, da, gap):
    base = W.three_cycle_base(lambda M: (max(1, M) + da, max(1, M) + da + gap))
    s = W.SwapFamily(base, i)(n)
    assert W.check_swap(s, n, -n + 2 + i) == []


@settings(max_examples=5)
@given(st.integers(1, 3), st.integers(0, 1))
def test_fixing_with_shift(n, i):
    base = W.three_cycle_base(lambda M: (max(1, M), max(1, M) + 1), n0=1)
    s = W.SwapFamily(base, i, 1)(n)
    assert W.check_swap(s, n, -n + 2 + i) == []


# -- decompositions -----------------------------------------------------------------------


def test_decompose_trivial_case():
    xi = cycle((1, 0), (2, 3), n=3)
    assert W.decompose_two_rays(xi, 1, 2) == (identity(3), xi, identity(3))


def test_decompose_transposition():
    xi = cycle((1, 0), (3, 0), n=3)
    parts = W.decompose_two_rays(xi, 1, 2)
    assert W.check_decompose(xi, 1, 2, parts) == []


@given(seeds, st.integers(3, 5))
def test_decompose_random(seed, n):
    rng = random.Random(seed)
    xi = random_element(n, rng, (SymInf(),))
    i, j = rng.sample(range(1, n + 1), 2)
    f1, s, f2 = W.decompose_two_rays(xi, i, j)
    assert f1 * s * f2 == xi
    assert FixRay(i).contains(f1) and FixRay(i).contains(f2)
    assert SymTwoRays(i, j).contains(s)


def test_retract_examples():
    assert W.retract_to_partial(t(3, 2, 3), 1, 2).is_identity()
    h = t(1, 2, 3) * cycle((3, 0), (1, 4), n=3)
    assert W.retract_to_partial(h, 1, 2) == h
    with pytest.raises(W.PreconditionError):
        W.retract_to_partial(t(1, 2, 2), 1, 2)


@given(seeds, st.integers(3, 6))
def test_retract_properties(seed, n):
    rng = random.Random(seed)
    h = random_element(n, rng)
    i, j = rng.sample(range(1, n + 1), 2)
    r = W.retract_to_partial(h, i, j)
    assert all(r.v[k - 1] == 0 for k in range(1, n + 1) if k not in (i, j))
    assert W.retract_to_partial(r, i, j) == r
    # the correction lies in the subgroup generated by translations through j
    assert (h.inverse() * r).v[i - 1] == 0


def test_fix_ray_factor_examples():
    assert W.fix_ray_factor(t(2, 3, 3), 1) == (identity(3), [(2, 3, 1)])
    s = cycle((2, 0), (3, 5), n=3)
    assert W.fix_ray_factor(s, 1) == (s, [])
    with pytest.raises(W.PreconditionError):
        W.fix_ray_factor(t(1, 2, 3), 1)


@given(seeds, st.integers(3, 5))
def test_fix_ray_factor_random(seed, n):
    rng = random.Random(seed)
    i = rng.randint(1, n)
    g = random_element(n, rng, (FixRay(i),))
    sigma, word = W.fix_ray_factor(g, i)
    assert W.check_fix_ray_factor(g, i, sigma, word) == []
