"""Permutation combinators that build swaps, decompositions and retractions.

Permutations act on R_1 u R_2 through z-coordinates ((1, i) is -i-1 and
(2, i) is i); other rays are carried along untouched. Every combinator checks
its preconditions and has a matching ``check_*`` function listing violated
postconditions, so callers can verify results independently.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

from houghton.elements import (
    FixRay,
    HoughtonElement,
    conj_by_t,
    cycle,
    from_z,
    identity,
    lambda_vec,
    permutation,
    t,
    to_z,
)


class PreconditionError(ValueError):
    def __init__(self, message: str, point=None):
        super().__init__(message if point is None else f"{message} (at {point})")
        self.point = point


def zimg(g: HoughtonElement, z: int):
    """Image of the z-point under g: a z-coordinate, or a ray point off R_1 u R_2."""
    p = g(from_z(z))
    return to_z(p) if p[0] <= 2 else p


def in_r2(x) -> bool:
    return isinstance(x, int) and x >= 0


def _finitary(g, what="input"):
    if not g.is_finitary():
        raise PreconditionError(f"{what} must be finitely supported")


def lowest_moved(g: HoughtonElement) -> int | None:
    zs = [to_z(p) for p in g.support() if p[0] <= 2]
    return min(zs) if zs else None


def fixes_below(g: HoughtonElement, m: int) -> bool:
    """True when g fixes every z < -m."""
    low = lowest_moved(g)
    return low is None or low >= -m


def _require_fixes_below(g, m, what):
    if not fixes_below(g, m):
        raise PreconditionError(f"{what} must fix (-inf, {-m}) pointwise", lowest_moved(g))


def ord_at(sigma: HoughtonElement, x: int) -> int:
    """Least k >= 1 with sigma^k(x) = x, i.e. the length of the cycle through x."""
    _finitary(sigma)
    p0 = from_z(x)
    p, k = sigma(p0), 1
    while p != p0:
        p, k = sigma(p), k + 1
    return k


def kappa(n: int, n0: int) -> int:
    return 1 + math.ceil(math.log2(n + n0))


def zcycle_n(*zs, n):
    return cycle(*(from_z(z) for z in zs), n=n)


# -- doubling products ---------------------------------------------------------


def _check_gamma(g, m, k, inverse_side):
    _finitary(g)
    _require_fixes_below(g, m, "gamma")
    if not (1 <= k < m):
        raise PreconditionError(f"need 1 <= k < m, got k={k}, m={m}")
    h = g.inverse() if inverse_side else g
    if zimg(h, -m) != -k:
        side = "pi^-1" if inverse_side else "gamma"
        raise PreconditionError(f"{side}(-m) must equal -k = {-k}", zimg(h, -m))


def pi_product(gamma: HoughtonElement, m: int, k: int, p: int) -> HoughtonElement:
    """tau^{(2^p-1)(m-k)}(gamma) o ... o tau^{m-k}(gamma) o gamma."""
    _check_gamma(gamma, m, k, False)
    if p < 0:
        raise PreconditionError("p must be non-negative")
    d = m - k
    out = identity(gamma.n)
    for s in range(2 ** p):
        out = conj_by_t(gamma, s * d) * out
    return out


def omega_product(pi: HoughtonElement, m: int, k: int, p: int) -> HoughtonElement:
    """pi o tau^{m-k}(pi) o ... o tau^{(2^p-1)(m-k)}(pi)."""
    _check_gamma(pi, m, k, True)
    if p < 0:
        raise PreconditionError("p must be non-negative")
    d = m - k
    out = identity(pi.n)
    for s in range(2 ** p):
        out = out * conj_by_t(pi, s * d)
    return out


def check_pi(result, gamma, m, k, p) -> list:
    bad = []
    if p >= 1:
        prev = pi_product(gamma, m, k, p - 1)
        if result != conj_by_t(prev, 2 ** (p - 1) * (m - k)) * prev:
            bad.append("recursion Pi(p) = tau^{2^(p-1)(m-k)}(Pi(p-1)) o Pi(p-1) fails")
    want = (2 ** p - 1) * (m - k) - k
    if zimg(result, -m) != want:
        bad.append(f"Pi(p)(-m) = {zimg(result, -m)}, expected {want}")
    if want < 2 ** p - m:
        bad.append("image bound (2^p-1)(m-k)-k >= 2^p-m fails")
    if not fixes_below(result, m):
        bad.append("Pi(p) moves a point below -m")
    return bad


def check_omega(result, pi, m, k, p) -> list:
    bad = []
    if p >= 1:
        prev = omega_product(pi, m, k, p - 1)
        if result != prev * conj_by_t(prev, 2 ** (p - 1) * (m - k)):
            bad.append("recursion Omega(p) = Omega(p-1) o tau^{2^(p-1)(m-k)}(Omega(p-1)) fails")
    if zimg(result, -m) != zimg(pi, -m):
        bad.append("Omega(p)(-m) differs from pi(-m)")
    back = zimg(result.inverse(), -m)
    if not isinstance(back, int) or back < 2 ** p - m:
        bad.append(f"Omega(p)^-1(-m) = {back} below 2^p - m")
    if not fixes_below(result, m):
        bad.append("Omega(p) moves a point below -m")
    if result != pi_product(pi.inverse(), m, k, p).inverse():
        bad.append("Omega(p) != Pi(pi^-1, p)^-1")
    return bad


# -- order shaping -------------------------------------------------------------


def cycle_through(sigma: HoughtonElement, x: int) -> list:
    p0 = from_z(x)
    out, p = [p0], sigma(p0)
    while p != p0:
        out.append(p)
        p = sigma(p)
    return out


def collapse_runs(eps: HoughtonElement, n: int) -> tuple:
    """Shorten the cycle of -n by cutting the interior of every run of non-R_1 entries.

    Returns (theta, eps o theta); each maximal run x_i..x_j (i > 1) of entries
    off R_1 contributes the cycle (x_{j-1}, ..., x_i) to theta.
    """
    _finitary(eps)
    _require_fixes_below(eps, n, "epsilon")
    if not in_r2(zimg(eps, -n)) or not in_r2(zimg(eps.inverse(), -n)):
        raise PreconditionError("epsilon(-n) and epsilon^-1(-n) must lie in R_2")
    xs = cycle_through(eps, -n)
    theta = identity(eps.n)
    idx = 1
    while idx < len(xs):
        if xs[idx][0] == 1:
            idx += 1
            continue
        j = idx
        while j + 1 < len(xs) and xs[j + 1][0] != 1:
            j += 1
        run = xs[idx:j]  # x_i .. x_{j-1}
        if len(run) >= 2:
            theta = theta * cycle(*reversed(run), n=eps.n)
        idx = j + 1
    return theta, eps * theta


def check_collapse(eps, n, theta, collapsed) -> list:
    bad = []
    orbit = set(cycle_through(eps, -n))
    if not theta.support() <= orbit:
        bad.append("theta leaves the cycle of -n")
    if collapsed != eps * theta:
        bad.append("collapsed != eps o theta")
    cyc = cycle_through(collapsed, -n)
    for idx, p in enumerate(cyc):
        nbrs = (cyc[idx - 1], cyc[(idx + 1) % len(cyc)])
        if p[0] != 1 and all(q[0] != 1 for q in nbrs) and len(cyc) > 2:
            bad.append(f"retained entry {p} is not adjacent to R_1")
            break
    if len(cyc) > 3 * n:
        bad.append(f"ord(collapsed, -n) = {len(cyc)} > 3n")
    if zimg(collapsed, -n) != zimg(eps, -n) or zimg(collapsed.inverse(), -n) != zimg(eps.inverse(), -n):
        bad.append("collapsing changed the neighbours of -n")
    return bad


def pad_order(sigma: HoughtonElement, x: int, target: int) -> HoughtonElement:
    """sigma o (sigma(x), M+1, ..., M') with M = 1 + max z-support and M' = M + target - ord."""
    _finitary(sigma)
    cur = ord_at(sigma, x)
    if target < cur:
        raise PreconditionError(f"target order {target} below current order {cur}")
    y = zimg(sigma, x)
    if not in_r2(y):
        raise PreconditionError("sigma(x) must lie in R_2", y)
    zs = [to_z(p) for p in sigma.support() if p[0] <= 2]
    M = 1 + max(zs + [x])
    pad = [y] + list(range(M + 1, M + target - cur + 1))
    return sigma * zcycle_n(*pad, n=sigma.n)


def check_pad(result, sigma, x, target) -> list:
    bad = []
    if ord_at(result, x) != target:
        bad.append(f"ord = {ord_at(result, x)}, expected {target}")
    if zimg(result, x) != zimg(sigma, x):
        bad.append("r(x) != sigma(x)")
    if ord_at(sigma, x) >= 3 or target == ord_at(sigma, x):
        # with a 2-cycle the padding block itself closes the cycle
        if zimg(result.inverse(), x) != zimg(sigma.inverse(), x):
            bad.append("r^-1(x) != sigma^-1(x)")
    for p in sigma.support() | result.support():
        if p[0] <= 2 and to_z(p) < x and sigma(p) == p and result(p) != p:
            bad.append(f"r moves {to_z(p)} < x that sigma fixes")
            break
    return bad


def eta_from(eps: HoughtonElement, n: int, n0: int = 0) -> HoughtonElement:
    """Collapse then pad the cycle of -n to order 1 + 2^kappa(n)."""
    _, col = collapse_runs(eps, n)
    return pad_order(col, -n, 1 + 2 ** kappa(n, n0))


# -- swaps ---------------------------------------------------------------------


def alpha_beta(eta: HoughtonElement, m: int, n: int) -> tuple:
    """alpha = tau^{m-n}(eta), beta = tau^{m-n}(eta^{ord-1})."""
    _finitary(eta)
    _require_fixes_below(eta, m, "eta")
    if n > m:
        raise PreconditionError(f"level n = {n} exceeds m = {m}")
    if not in_r2(zimg(eta, -m)) or not in_r2(zimg(eta.inverse(), -m)):
        raise PreconditionError("eta(-m) and eta^-1(-m) must lie in R_2")
    L = ord_at(eta, -m)
    return conj_by_t(eta, m - n), conj_by_t(eta ** (L - 1), m - n)


def _check_ab(alpha, beta, n):
    for g, name in ((alpha, "alpha"), (beta, "beta")):
        _finitary(g, name)
        _require_fixes_below(g, n, name)
    if zimg(alpha * beta, -n) != -n or zimg(beta * alpha, -n) != -n:
        raise PreconditionError("alpha o beta and beta o alpha must fix -n")
    if not in_r2(zimg(alpha, -n)) or not in_r2(zimg(alpha.inverse(), -n)):
        raise PreconditionError("alpha(-n) and alpha^-1(-n) must lie in R_2")


def mu_nu(alpha: HoughtonElement, beta: HoughtonElement, n: int, n0: int = 0) -> tuple:
    """Level n - 2 n0 pair built from (alpha, beta) at level n."""
    _check_ab(alpha, beta, n)
    a = zimg(alpha, -n)
    sw = zcycle_n(a, a + 1, n=alpha.n)
    mu = conj_by_t(conj_by_t(beta, 1) * sw * alpha, 2 * n0)
    nu = conj_by_t(beta * sw * conj_by_t(alpha, 1), 2 * n0)
    return mu, nu


def check_mu_nu(mu, nu, level) -> list:
    bad = []
    if zimg(mu, -level) != -level + 1:
        bad.append("mu(-n') != -n'+1")
    if not in_r2(zimg(mu.inverse(), -level)):
        bad.append("mu^-1(-n') not in R_2")
    if zimg(mu * nu, -level) != -level or zimg(nu * mu, -level) != -level:
        bad.append("mu, nu do not cancel at -n'")
    if not (fixes_below(mu, level) and fixes_below(nu, level)):
        bad.append("mu or nu moves a point below -n'")
    return bad


def sigma_swap(mu: HoughtonElement, nu: HoughtonElement, n: int, n0: int = 0) -> HoughtonElement:
    """Level n - 2 n0 swap of -n', -n'+1 built from (mu, nu) at level n."""
    bad = check_mu_nu(mu, nu, n)
    if bad:
        raise PreconditionError("; ".join(bad))
    b = zimg(mu.inverse(), -n)
    return conj_by_t(conj_by_t(mu, 1) * zcycle_n(b, b + 1, n=mu.n) * nu, 2 * n0)


def check_swap(sigma, level, fixed_upto: int | None = None) -> list:
    """Swaps -m, -m+1, fixes (-inf, -m) and, if given, every z in [-m+2, fixed_upto]."""
    bad = []
    if zimg(sigma, -level) != -level + 1 or zimg(sigma, -level + 1) != -level:
        bad.append(f"does not switch {-level} and {-level + 1}")
    if not fixes_below(sigma, level):
        bad.append(f"moves a point below {-level}")
    if fixed_upto is not None:
        for z in range(-level + 2, fixed_upto + 1):
            if zimg(sigma, z) != z:
                bad.append(f"moves {z} inside the fixed window")
                break
    return bad


def swap_pipeline(eta: HoughtonElement, m: int, n0: int = 0) -> HoughtonElement:
    """eta at level m -> alpha, beta -> mu, nu -> sigma at level m - 4 n0."""
    alpha, beta = alpha_beta(eta, m, m)
    mu, nu = mu_nu(alpha, beta, m, n0)
    return sigma_swap(mu, nu, m - 2 * n0, n0)


def _r2_normalise(s, level, i):
    # send the image of -level+2+i back onto R_1 u R_2 by a transposition with
    # the least R_2 point past the fixed window
    c = -level + 2 + i
    y = s(from_z(c))
    if y[0] <= 2:
        return s
    return cycle(y, from_z(max(0, c + 1)), n=s.n) * s


def sigma_swap_fixing(provider: Callable[[int], HoughtonElement], n: int, i: int, n0: int = 0) -> HoughtonElement:
    """Swap of -n, -n+1 that is the identity on (-inf, -n) u [-n+2, -n+2+i].

    ``provider(m)`` must return the previous stage at level m: a swap of
    -m, -m+1 fixing (-inf, -m) u [-m+2, -m+1+i].
    """

    def fetch(m):
        try:
            s = provider(m)
        except PreconditionError as exc:
            raise PreconditionError(f"provider failed at level {m}: {exc}") from exc
        bad = check_swap(s, m, -m + 1 + i)
        if bad:
            raise PreconditionError(f"provider output at level {m}: " + "; ".join(bad))
        return s

    if i < -1:
        raise PreconditionError("i must be >= -1")
    if i == -1:
        return fetch(n)
    N = n + n0
    s = _r2_normalise(fetch(N), N, i)
    c = -N + 2 + i
    y = zimg(s, c)
    if y == c:
        return conj_by_t(s, n0)
    if not isinstance(y, int) or y < c:
        raise PreconditionError("previous stage sends -N+2+i off R_1 u R_2 or backwards", y)
    k = -y
    a = N - k - 3 - i
    chain = identity(s.n)
    for x in range(k + 1, N - 2 - i + 1):
        chain = fetch(a * n0 + x) * chain
    return conj_by_t(conj_by_t(chain, a * n0) * s, n0)


@dataclass
class SwapFamily:
    """Level-indexed family of stage-i swaps, memoized, grown from a base provider."""

    base: Callable[[int], HoughtonElement]
    i: int
    n0: int = 0

    def __post_init__(self):
        self.memo = {}
        self.prev = None if self.i == -1 else SwapFamily(self.base, self.i - 1, self.n0)

    def __call__(self, m: int) -> HoughtonElement:
        if m not in self.memo:
            if self.prev is None:
                self.memo[m] = self.base(m)
            else:
                self.memo[m] = sigma_swap_fixing(self.prev, m, self.i, self.n0)
        return self.memo[m]


def three_cycle_base(offsets: Callable[[int], tuple], n: int = 2, n0: int = 0) -> Callable[[int], HoughtonElement]:
    """Base provider: level m -> swap_pipeline of eta = (-M, -M+a, -M+b), M = m + 4 n0.

    ``offsets(M)`` returns (a, b) with a, b >= max(1, M) so both points sit in R_2.
    """

    def base(m):
        M = m + 4 * n0
        a, b = offsets(M)
        return swap_pipeline(zcycle_n(-M, -M + a, -M + b, n=n), M, n0)

    return base


# -- decompositions --------------------------------------------------------------


def _staging(ray, count, avoid):
    out, c = [], 0
    while len(out) < count:
        if (ray, c) not in avoid:
            out.append((ray, c))
        c += 1
    return out


def _transpositions(pairs, n):
    g = identity(n)
    for p, q in pairs:
        g = g * cycle(p, q, n=n)
    return g


def decompose_two_rays(xi: HoughtonElement, i: int, j: int) -> tuple:
    """(f1, s, f2) with xi = f1 s f2, f1, f2 in Fix(R_i) finitary, s supported in R_i u R_j."""
    _finitary(xi, "xi")
    if i == j:
        raise PreconditionError("rays must differ")
    n = xi.n
    supp = xi.support()
    if all(p[0] in (i, j) for p in supp):
        return identity(n), xi, identity(n)
    A = sorted(p for p in supp if p[0] == i and xi(p)[0] != i)
    B = sorted(p for p in supp if p[0] != i and xi(p)[0] == i)
    X = _staging(i, len(A), supp)
    Y = _staging(j, len(A), supp)
    mu_r = _transpositions(zip(A, X), n)
    mu_f = _transpositions(zip(B, Y), n)
    nu_f = _transpositions(((xi(a), y) for a, y in zip(A, Y)), n)
    nu_r = _transpositions(((xi(b), x) for b, x in zip(B, X)), n)
    P = nu_r * nu_f * xi * mu_r * mu_f
    Xs, Ys = set(X), set(Y)
    s0 = _transpositions(zip(X, Y), n)
    r = permutation({p: P(p) for p in P.support() if p[0] == i and p not in Xs}, n)
    f = permutation({p: P(p) for p in P.support() if p[0] != i and p not in Ys}, n)
    return nu_f, nu_r * s0 * r * mu_r, f * mu_f


def check_decompose(xi, i, j, parts) -> list:
    f1, s, f2 = parts
    bad = []
    if f1 * s * f2 != xi:
        bad.append("f1 s f2 != xi")
    fix = FixRay(i)
    for name, f in (("f1", f1), ("f2", f2)):
        if not (f.is_finitary() and fix.contains(f)):
            bad.append(f"{name} not in Fix(R_{i}) n S_inf")
    if not (s.is_finitary() and all(p[0] in (i, j) for p in s.support())):
        bad.append(f"s not supported in R_{i} u R_{j}")
    return bad


def retract_to_partial(h: HoughtonElement, i: int, j: int) -> HoughtonElement:
    """h . prod_{k != i,j} t_{k,j}^{lambda_k(h)} (increasing k), landing in H_n({i,j})."""
    n = h.n
    if n < 3:
        raise PreconditionError("retraction needs arity >= 3")
    if i == j or not (1 <= i <= n and 1 <= j <= n):
        raise PreconditionError(f"invalid rays {i}, {j}")
    out = h
    for k in range(1, n + 1):
        if k not in (i, j) and h.v[k - 1]:
            out = out * t(k, j, n) ** h.v[k - 1]
    return out


def fix_ray_factor(g: HoughtonElement, i: int) -> tuple:
    """(sigma, word) with g = sigma . a, where a = prod_{j != i, p} t[p, j]^{lambda_j(g)}.

    ``word`` lists factors (p, j, e) in increasing j; p is the least ray other than i.
    """
    n = g.n
    if n < 3:
        raise PreconditionError("needs arity >= 3")
    if not FixRay(i).contains(g):
        raise PreconditionError(f"element does not fix R_{i} pointwise")
    p = 1 if i != 1 else 2
    word = [(p, j, g.v[j - 1]) for j in range(1, n + 1) if j not in (i, p) and g.v[j - 1]]
    a = word_element(word, n)
    return g * a.inverse(), word


def word_element(word, n: int) -> HoughtonElement:
    g = identity(n)
    for r, s, e in word:
        g = g * t(r, s, n) ** e
    return g


def check_fix_ray_factor(g, i, sigma, word) -> list:
    bad = []
    a = word_element(word, g.n)
    if sigma * a != g:
        bad.append("sigma . a != g")
    if not (sigma.is_finitary() and FixRay(i).contains(sigma)):
        bad.append(f"sigma not a finitary element fixing R_{i}")
    if any(i in (r, s) for r, s, _ in word):
        bad.append(f"word uses a translation touching ray {i}")
    la = lambda_vec(a)
    if any(la[j] != g.v[j] for j in range(g.n) if j != i - 1):
        bad.append("lambda profile of a does not match g")
    return bad
