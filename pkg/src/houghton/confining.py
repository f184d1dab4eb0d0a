"""Sampled checks of the confining axioms, escape times and closure certificates.

Universally quantified axioms are checked on seeded samples: a passing field
means no counterexample was found, and a failing field always carries an
element that re-verifies by direct evaluation.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from typing import Callable

from houghton.elements import (
    FixRay,
    HoughtonElement,
    SymInf,
    SymTwoRays,
    cycle,
    identity,
    permutation,
    random_element,
)


@dataclass
class SubsetSpec:
    """A decidable subset of H_n with a seeded sampler.

    ``candidates`` lists small members tried before random samples when
    searching for witnesses. ``subgroup`` marks predicates closed under
    products and inverses.
    """

    n: int
    name: str
    contains: Callable[[HoughtonElement], bool]
    sample: Callable[[random.Random], HoughtonElement] | None
    candidates: tuple = ()
    subgroup: bool = False
    diameter: int | None = None

    def __contains__(self, g):
        return self.contains(g)

    def draw(self, rng: random.Random, count: int) -> list:
        if self.sample is None:
            if not self.candidates:
                raise ValueError(f"subset {self.name} has nothing to sample")
            return [rng.choice(self.candidates) for _ in range(count)]
        out = []
        for _ in range(count):
            g = self.sample(rng)
            if not self.contains(g):
                raise AssertionError(f"sampler for {self.name} produced a non-member {g!r}")
            out.append(g)
        return out


def _small_transpositions(n: int, coords: int = 3) -> list:
    pts = [(r, c) for r in range(1, n + 1) for c in range(coords)]
    return [cycle(p, q, n=n) for p, q in itertools.combinations(pts, 2)]


def tag_subset(n: int, *tags, name: str | None = None, max_coord: int = 8) -> SubsetSpec:
    """Intersection of tagged subgroups, e.g. ``tag_subset(2, FixRay(1), SymInf())``."""
    tags = tuple(tags)
    if name is None:
        name = " n ".join(str(t) for t in tags) if tags else "H_n"

    def contains(g):
        return g.n == n and all(tag.contains(g) for tag in tags)

    def sample(rng):
        return random_element(n, rng, tags, max_coord=max_coord)

    cands = tuple(g for g in _small_transpositions(n) if contains(g))
    return SubsetSpec(n, name, contains, sample, cands, subgroup=True)


def parse_subset(text: str, n: int, finitary: bool = True) -> SubsetSpec:
    """Subset from a short tag: ``syminf``, ``fix:i``, ``ker:i``, ``two:i,j``, ``all``."""
    text = text.strip().lower()
    extra = (SymInf(),) if finitary else ()
    if text in ("syminf", "sinf", "s_inf"):
        return tag_subset(n, SymInf())
    if text in ("all", "h", "hn"):
        return tag_subset(n, *extra)
    kind, _, arg = text.partition(":")
    from houghton.elements import KerLambda

    if kind == "fix":
        return tag_subset(n, FixRay(int(arg)), *extra)
    if kind == "ker":
        return tag_subset(n, KerLambda(int(arg)), *extra)
    if kind == "two":
        i, j = (int(x) for x in arg.split(","))
        return tag_subset(n, SymTwoRays(i, j))
    raise ValueError(f"unknown subset {text!r}")


def union(a: SubsetSpec, b: SubsetSpec, name: str | None = None) -> SubsetSpec:
    if a.n != b.n:
        raise ValueError("union of subsets of different arities")

    def sample(rng):
        src = a if rng.random() < 0.5 else b
        return src.draw(rng, 1)[0]

    return SubsetSpec(
        a.n,
        name or f"({a.name}) u ({b.name})",
        lambda g: a.contains(g) or b.contains(g),
        sample,
        tuple(dict.fromkeys(a.candidates + b.candidates)),
    )


def window_family(n: int, points, tag=None, name: str | None = None, enumerate_limit: int = 720) -> SubsetSpec:
    """Finitely supported elements of ``tag`` with support inside ``points`` (Sym of the window)."""
    pts = tuple(sorted(set(points)))
    permitted = pts
    if tag is not None:
        if isinstance(tag, FixRay):
            permitted = tuple(p for p in pts if p[0] != tag.i)
        elif isinstance(tag, SymTwoRays):
            permitted = tuple(p for p in pts if p[0] in (tag.i, tag.j))
    pset = frozenset(permitted)

    def contains(g):
        return g.n == n and g.is_finitary() and g.support() <= pset and (tag is None or tag.contains(g))

    def sample(rng):
        imgs = list(permitted)
        rng.shuffle(imgs)
        return permutation(dict(zip(permitted, imgs)), n)

    cands = ()
    if len(permitted) <= 6:
        cands = tuple(permutation(dict(zip(permitted, perm)), n) for perm in itertools.permutations(permitted))
        cands = tuple(sorted(cands, key=lambda g: g.sort_key()))
        if len(cands) > enumerate_limit:
            cands = cands[:enumerate_limit]
    return SubsetSpec(n, name or f"Sym({list(permitted)})", contains, sample, cands, subgroup=True)


def finite_subset(n: int, elements, name: str | None = None) -> SubsetSpec:
    elements = tuple(elements)
    keys = frozenset(elements)
    return SubsetSpec(n, name or f"finite[{len(elements)}]", lambda g: g in keys, None, elements)


@dataclass
class Conjugation:
    """The inner automorphism g -> a g a^-1 of H_n, with cached powers of a."""

    a: HoughtonElement
    _powers: dict = field(default_factory=dict, repr=False)

    def _pow(self, s):
        if s not in self._powers:
            self._powers[s] = (self.a ** s, self.a ** (-s))
        return self._powers[s]

    def power(self, g: HoughtonElement, s: int) -> HoughtonElement:
        if s == 0:
            return g
        p, q = self._pow(s)
        return p * g * q

    def __call__(self, g):
        return self.power(g, 1)


def escape_time(Q: SubsetSpec, alpha: Conjugation, g: HoughtonElement, bound: int) -> int | None:
    """Least s in [0, bound] with alpha^s(g) in Q, or None."""
    h = g
    for s in range(bound + 1):
        if Q.contains(h):
            return s
        h = alpha(h)
    return None


def _least(elements):
    elements = list(elements)
    return min(elements, key=lambda g: g.sort_key()) if elements else None


@dataclass
class ConfiningReport:
    invariance_ok: bool
    invariance_counterexample: HoughtonElement | None
    n0_found: int | None
    n0_counterexample: tuple | None
    exhaustion_ok: bool
    exhaustion_counterexample: HoughtonElement | None
    strict_witness: HoughtonElement | None
    samples: int = 0

    @property
    def confining(self) -> bool:
        return self.invariance_ok and self.n0_found is not None and self.exhaustion_ok

    @property
    def strict(self) -> bool:
        return self.confining and self.strict_witness is not None

    def verify(self, Q: SubsetSpec, alpha: Conjugation, n0_max: int, esc_max: int) -> bool:
        """Re-check every reported counterexample and witness by direct evaluation."""
        ok = True
        if self.invariance_counterexample is not None:
            g = self.invariance_counterexample
            ok &= Q.contains(g) and not Q.contains(alpha(g))
        if self.n0_found is None and self.n0_counterexample is not None:
            a, b = self.n0_counterexample
            ok &= Q.contains(a) and Q.contains(b) and not Q.contains(alpha.power(a * b, n0_max))
        if self.exhaustion_counterexample is not None:
            ok &= escape_time(Q, alpha, self.exhaustion_counterexample, esc_max) is None
        if self.strict_witness is not None:
            w = self.strict_witness
            ok &= Q.contains(w) and not Q.contains(alpha.power(w, -1))
        return bool(ok)


def check_confining(Q: SubsetSpec, alpha: Conjugation, ambient: SubsetSpec, seed: int = 0, count: int = 200, n0_max: int = 4, esc_max: int = 64) -> ConfiningReport:
    """Sampled check that alpha confines ``ambient`` into Q.

    Reported witnesses are the least failing elements in canonical order among
    the small candidates and the samples.
    """
    rng = random.Random(seed)
    qs = list(Q.candidates) + Q.draw(rng, count)
    if not qs:
        raise ValueError("sampler empty")

    bad = [q for q in qs if not Q.contains(alpha(q))]
    inv_cx = _least(bad)

    pairs = [(qs[i], qs[(i + 1) % len(qs)]) for i in range(len(qs))] + [(q, q) for q in qs[:count]]
    n0_found, n0_cx = None, None
    for n0 in range(n0_max + 1):
        failing = [(a, b) for a, b in pairs if not Q.contains(alpha.power(a * b, n0))]
        if not failing:
            n0_found = n0
            break
        n0_cx = min(failing, key=lambda ab: (ab[0] * ab[1]).sort_key())

    gs = list(ambient.candidates) + ambient.draw(rng, count)
    stuck = [g for g in gs if escape_time(Q, alpha, g, esc_max) is None]
    esc_cx = _least(stuck)

    strict = _least(q for q in qs if not Q.contains(alpha.power(q, -1)))
    return ConfiningReport(inv_cx is None, inv_cx, n0_found, n0_cx if n0_found is None else None, esc_cx is None, esc_cx, strict, len(qs))


# -- bounded unions --------------------------------------------------------------


@dataclass
class UnionVerdict:
    ok: bool
    subset: SubsetSpec | None
    diameter: int | None
    refutation: HoughtonElement | None = None
    reason: str = ""


def q_norm(g: HoughtonElement, Q: SubsetSpec, bound: int, pool=()) -> int | None:
    """Word length of g over Q if at most ``bound``, searching products of pool letters.

    Membership answers length 1 directly. For a subgroup Q a non-member has
    infinite length, so no search is needed.
    """
    if g.is_identity():
        return 0
    if Q.contains(g):
        return 1
    if Q.subgroup:
        return None
    letters = [q for q in dict.fromkeys(pool) if Q.contains(q)]
    frontier = {identity(g.n)}
    seen = set(frontier)
    for d in range(1, bound + 1):
        nxt = set()
        for h in frontier:
            for q in letters:
                x = h * q
                if x == g:
                    return d
                if x not in seen:
                    seen.add(x)
                    nxt.add(x)
        frontier = nxt
    return None


def confining_union(Q: SubsetSpec, S: SubsetSpec, alpha: Conjugation, diam_bound: int, seed: int = 0, count: int = 50) -> UnionVerdict:
    """Verify sampled members of S have Q-norm <= diam_bound; return the union when they do.

    ``alpha`` is carried for the caller's confining check on Q u S; the
    diameter bound itself concerns Q and S alone.
    """
    rng = random.Random(seed)
    members = list(S.candidates)
    if S.sample is not None:
        members += S.draw(rng, count)
    pool = list(Q.candidates) + (Q.draw(rng, count) if Q.sample is not None else [])
    worst = 0
    for s in sorted(dict.fromkeys(members), key=lambda g: g.sort_key()):
        d = q_norm(s, Q, diam_bound, pool)
        if d is None:
            why = "not in the subgroup Q" if Q.subgroup else f"no Q-word of length <= {diam_bound}"
            return UnionVerdict(False, None, None, s, why)
        worst = max(worst, d)
    worst = max(worst, 1)
    u = union(Q, S)
    u.diameter = worst
    return UnionVerdict(True, u, worst)


# -- closure certificates --------------------------------------------------------


class CertificateError(ValueError):
    def __init__(self, message: str, path: str):
        super().__init__(f"{path}: {message}")
        self.path = path


@dataclass(frozen=True)
class QLeaf:
    element: HoughtonElement
    level: int = 0


@dataclass(frozen=True)
class SeedLeaf:
    power: int
    seed: int
    level: int = 0


@dataclass(frozen=True)
class Node:
    """alpha^n0(left * right)."""

    left: object
    right: object
    level: int


def verify_certificate(c, Q: SubsetSpec, alpha: Conjugation, seeds, n0: int, path: str = "root") -> HoughtonElement:
    if isinstance(c, QLeaf):
        if c.level != 0:
            raise CertificateError("leaf level must be 0", path)
        if not Q.contains(c.element):
            raise CertificateError("leaf is not a member of Q", path)
        return c.element
    if isinstance(c, SeedLeaf):
        if c.level != 0:
            raise CertificateError("leaf level must be 0", path)
        if not (0 <= c.seed < len(seeds)):
            raise CertificateError(f"seed index {c.seed} out of range", path)
        if c.power < 0:
            raise CertificateError("negative seed power", path)
        return alpha.power(seeds[c.seed], c.power)
    if isinstance(c, Node):
        for side, child in (("left", c.left), ("right", c.right)):
            if child.level > c.level - 1:
                raise CertificateError(f"{side} child at level {child.level} under node at level {c.level}", path)
        a = verify_certificate(c.left, Q, alpha, seeds, n0, path + ".left")
        b = verify_certificate(c.right, Q, alpha, seeds, n0, path + ".right")
        return alpha.power(a * b, n0)
    raise CertificateError(f"unknown certificate node {type(c).__name__}", path)


def check_seeds(Q: SubsetSpec, alpha: Conjugation, seeds, K: int) -> None:
    for j, f in enumerate(seeds):
        if not Q.contains(alpha.power(f, K)):
            raise ValueError(f"seed {j} does not satisfy alpha^K(f) in Q for K = {K}")


@dataclass
class ClosureSearch:
    """Iterative-deepening certificate search with memoized sub-goals.

    Left factors at level L are drawn from a deterministic candidate set
    built from ``pool`` and the seed leaves, closed up to level L - 1 and
    truncated at ``width`` elements.
    """

    Q: SubsetSpec
    alpha: Conjugation
    seeds: tuple
    n0: int
    pool: tuple = ()
    max_power: int = 8
    width: int = 4000
    memo: dict = field(default_factory=dict)
    _cands: list = field(default_factory=list)

    def candidates(self, level: int) -> list:
        # (element, certificate) pairs of level <= given level
        if not self._cands:
            base = {}
            for q in self.pool:
                if self.Q.contains(q):
                    base.setdefault(q, QLeaf(q))
            for j, f in enumerate(self.seeds):
                for i in range(self.max_power + 1):
                    base.setdefault(self.alpha.power(f, i), SeedLeaf(i, j))
            self._cands.append(list(base.items())[: self.width])
        while len(self._cands) <= level:
            prev = self._cands[-1]
            have = dict(prev)
            lv = len(self._cands)
            for (a, ca), (b, cb) in itertools.product(prev, repeat=2):
                if len(have) >= self.width:
                    break
                have.setdefault(self.alpha.power(a * b, self.n0), Node(ca, cb, lv))
            self._cands.append(list(have.items()))
        return self._cands[level]

    def leaf(self, g):
        if self.Q.contains(g):
            return QLeaf(g)
        for j, f in enumerate(self.seeds):
            for i in range(self.max_power + 1):
                if self.alpha.power(f, i) == g:
                    return SeedLeaf(i, j)
        return None

    def certify(self, g, level):
        key = (g, level)
        if key in self.memo:
            return self.memo[key]
        self.memo[key] = None
        found = self.leaf(g)
        if found is None and level > 0:
            h = self.alpha.power(g, -self.n0)
            for a, ca in self.candidates(level - 1):
                cb = self.certify(a.inverse() * h, level - 1)
                if cb is not None:
                    found = Node(ca, cb, max(ca.level, cb.level) + 1)
                    break
        self.memo[key] = found
        return found


def closure_certify(g: HoughtonElement, Q: SubsetSpec, alpha: Conjugation, seeds, K: int, n0: int, depth: int, pool=(), max_power: int = 8, width: int = 4000):
    """Certificate tree of level <= depth evaluating to g, or None (semi-decision)."""
    seeds = tuple(seeds)
    check_seeds(Q, alpha, seeds, K)
    search = ClosureSearch(Q, alpha, seeds, n0, tuple(pool), max_power, width)
    for level in range(depth + 1):
        c = search.certify(g, level)
        if c is not None:
            return c
    return None


def random_certificate(rng: random.Random, pool, n_seeds: int, depth: int, max_power: int = 4):
    """Random certificate tree of level <= depth over the given Q-members and seed indices."""
    if depth == 0 or rng.random() < 0.3:
        if n_seeds and rng.random() < 0.4:
            return SeedLeaf(rng.randint(0, max_power), rng.randrange(n_seeds))
        return QLeaf(rng.choice(pool))
    left = random_certificate(rng, pool, n_seeds, depth - 1, max_power)
    right = random_certificate(rng, pool, n_seeds, depth - 1, max_power)
    return Node(left, right, max(left.level, right.level) + 1)
