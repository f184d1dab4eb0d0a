"""Word norms on Houghton groups.

Two independent routes to the norm over Fix(R_1) u {t}: the closed form
``1 + 2 k(sigma)`` and a breadth-first geodesic search over an alphabet mixing
explicit letters with window-restricted families of permutations.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from houghton.elements import (
    FixRay,
    HoughtonElement,
    SymTwoRays,
    from_z,
    identity,
    t,
    to_z,
)

DEFAULT_NODE_BUDGET = 10**7


class BudgetExceeded(RuntimeError):
    pass


class NormBoundExceeded(RuntimeError):
    pass


def k_of(sigma: HoughtonElement) -> int:
    """Least k >= 0 with sigma fixing (1, i) for every i >= k."""
    if not sigma.is_finitary():
        raise ValueError("k(sigma) is only defined for finitely supported elements")
    coords = [c for r, c in sigma.exc if r == 1]
    return max(coords) + 1 if coords else 0


def norm_fix_t(sigma: HoughtonElement) -> int:
    """Word length of a finitary sigma over Fix(R_1) u {t}."""
    if sigma.is_identity():
        return 0
    return 1 + 2 * k_of(sigma)


def fix_t_witness(sigma: HoughtonElement) -> list:
    """A geodesic t^-k . tau^k(sigma) . t^k realising ``norm_fix_t``."""
    from houghton.elements import conj_by_t

    if sigma.is_identity():
        return []
    k = k_of(sigma)
    tt = t(1, 2, sigma.n)
    return [tt.inverse()] * k + [conj_by_t(sigma, k)] + [tt] * k


# -- alphabets ---------------------------------------------------------------


def z_window(lo: int, hi: int) -> tuple:
    return tuple(from_z(z) for z in range(lo, hi + 1))


@dataclass(frozen=True)
class Family:
    """All finitary elements of a tagged subset supported in a finite window.

    For the supported tags this is Sym(P) for the admissible window points P,
    so each family is a finite group.
    """

    tag: object
    window: tuple

    def points(self) -> tuple:
        tag = self.tag
        pts = sorted(set(self.window))
        if isinstance(tag, FixRay):
            pts = [p for p in pts if p[0] != tag.i]
        elif isinstance(tag, SymTwoRays):
            pts = [p for p in pts if p[0] in (tag.i, tag.j)]
        return tuple(pts)

    def letters(self, n: int) -> list:
        pts = self.points()
        out = []
        for perm in itertools.permutations(pts):
            if perm == pts:
                continue
            images = {p: q for p, q in zip(pts, perm) if p != q}
            out.append(HoughtonElement.from_images(n, (0,) * n, images))
        return out


@dataclass(frozen=True)
class AlphabetSpec:
    n: int
    explicit: tuple = ()
    families: tuple = ()

    def __post_init__(self):
        if not self.explicit and not any(len(f.points()) >= 2 for f in self.families):
            raise ValueError("alphabet is empty")
        for x in self.explicit:
            if x.n != self.n:
                raise ValueError("explicit letter of the wrong arity")
        for f in self.families:
            for p in f.window:
                if not (1 <= p[0] <= self.n):
                    raise ValueError(f"window point {p} outside arity {self.n}")


def fix_t_alphabet(width: int, n: int = 2) -> AlphabetSpec:
    """{t, t^-1} together with Fix(R_1) restricted to z-window {0..width}."""
    tt = t(1, 2, n)
    return AlphabetSpec(n, (tt, tt.inverse()), (Family(FixRay(1), z_window(0, width)),))


@dataclass
class NormResult:
    length: int | None
    witness: list | None = None
    status: str = "ok"  # "ok" | "exceeds" | "budget"

    @property
    def exceeds(self) -> bool:
        return self.status != "ok"


# -- breadth-first geodesic search --------------------------------------------


@dataclass
class _Node:
    level: int
    rank: int
    parent: HoughtonElement | None
    letter: HoughtonElement | None
    family: int  # index of the family supplying the last letter, -1 otherwise


class GeodesicOracle:
    """Breadth-first ball growth in the Cayley graph of a fixed alphabet.

    The ball is cached, so many queries against one alphabet share the work.
    Words are extended on the right; parents are processed in discovery order
    and letters in enumeration order (explicit letters first, then each
    family in lexicographic order). A witness is therefore least in the order
    that compares words by the discovery rank of their prefix, then by the
    final letter, so it does not depend on query order.
    """

    def __init__(self, alphabet: AlphabetSpec, node_budget: int = DEFAULT_NODE_BUDGET):
        self.alphabet = alphabet
        self.node_budget = node_budget
        self.explicit = list(alphabet.explicit)
        self.explicit_inv = [x.inverse() for x in self.explicit]
        self.family_points = [f.points() for f in alphabet.families]
        self.family_sets = [frozenset(p) for p in self.family_points]
        self.family_letters = [f.letters(alphabet.n) for f in alphabet.families]
        e = identity(alphabet.n)
        self.nodes = {e: _Node(0, 0, None, None, -1)}
        self.levels = [[e]]
        self.expanded = [set() for _ in self.family_letters]
        self._first_by_coset = {}
        self.complete = False  # no new elements appear: the ball is the group

    def _coset_key(self, g, k):
        # Canonical representative of the coset g.Sym(P): the member mapping P
        # order-preservingly onto g(P). Equal keys iff equal cosets.
        pts = self.family_points[k]
        imgs = sorted(g(p) for p in pts)
        ginv = g.inverse()
        f = {p: ginv(q) for p, q in zip(pts, imgs)}
        f = {p: q for p, q in f.items() if p != q}
        if not f:
            return g
        return g * HoughtonElement.from_images(g.n, (0,) * g.n, f)

    def _grow(self):
        d = len(self.levels)
        new = []
        nodes = self.nodes
        for parent in self.levels[d - 1]:
            pnode = nodes[parent]
            for x in self.explicit:
                child = parent * x
                if child not in nodes:
                    nodes[child] = _Node(d, len(new), parent, x, -1)
                    new.append(child)
            for k, letters in enumerate(self.family_letters):
                if pnode.family == k:
                    continue
                key = self._coset_key(parent, k)
                if key in self.expanded[k]:
                    continue
                self.expanded[k].add(key)
                for f in letters:
                    child = parent * f
                    if child not in nodes:
                        nodes[child] = _Node(d, len(new), parent, f, k)
                        new.append(child)
            if len(nodes) > self.node_budget:
                raise BudgetExceeded(f"more than {self.node_budget} nodes")
        self.levels.append(new)
        if not new:
            self.complete = True

    def grow_to(self, depth: int):
        while len(self.levels) <= depth and not self.complete:
            self._grow()

    def word(self, g) -> list:
        out = []
        node = self.nodes[g]
        while node.parent is not None:
            out.append(node.letter)
            node = self.nodes[node.parent]
        return out[::-1]

    def _last_level(self, g, level):
        """Lexicographically least geodesic witness for g at exactly ``level``, or None."""
        best = None
        nodes = self.nodes
        for idx, xinv in enumerate(self.explicit_inv):
            p = g * xinv
            node = nodes.get(p)
            if node is not None and node.level == level - 1:
                cand = (node.rank, 0, idx, p, self.explicit[idx])
                if best is None or cand[:3] < best[:3]:
                    best = cand
        for k in range(len(self.family_letters)):
            index = self._first_by_coset.get((level - 1, k))
            if index is None:
                index = {}
                for par in self.levels[level - 1]:
                    index.setdefault(self._coset_key(par, k), par)
                self._first_by_coset[(level - 1, k)] = index
            par = index.get(self._coset_key(g, k))
            if par is None:
                continue
            f = par.inverse() * g
            if f.is_identity():
                continue
            cand = (nodes[par].rank, 1 + k, 0, par, f)
            if best is None or cand[:3] < best[:3]:
                best = cand
        if best is None:
            return None
        return self.word(best[3]) + [best[4]]

    def norm(self, g: HoughtonElement, max_len: int | None = None) -> NormResult:
        if g.n != self.alphabet.n:
            raise ValueError("element and alphabet have different arities")
        if max_len is not None and max_len < 0:
            raise ValueError("max_len must be non-negative")
        try:
            d = 0
            while True:
                if g in self.nodes:
                    node = self.nodes[g]
                    if max_len is None or node.level <= max_len:
                        return NormResult(node.level, self.word(g))
                    return NormResult(None, status="exceeds")
                if self.complete:
                    return NormResult(None, status="exceeds")
                if max_len is not None and d >= max_len - 1:
                    break
                d += 1
                self.grow_to(d)
            if max_len == 0:
                return NormResult(None, status="exceeds")
            self.grow_to(max_len - 1)
            if g in self.nodes:
                return self.norm(g, max_len)
            if self.complete:
                return NormResult(None, status="exceeds")
            w = self._last_level(g, max_len)
        except BudgetExceeded:
            return NormResult(None, status="budget")
        if w is None:
            return NormResult(None, status="exceeds")
        return NormResult(max_len, w)


def bfs_norm(g: HoughtonElement, alphabet: AlphabetSpec, max_len: int | None, node_budget: int = DEFAULT_NODE_BUDGET) -> NormResult:
    """Exact geodesic length of g over the alphabet when at most ``max_len``."""
    return GeodesicOracle(alphabet, node_budget).norm(g, max_len)


def evaluate_word(word, n: int) -> HoughtonElement:
    g = identity(n)
    for x in word:
        g = g * x
    return g


@dataclass
class StabilizedFixTNorm:
    """BFS norm over {t^+-1} u Fix(R_1)-window, widening the window until two widths agree.

    A geodesic t^-k rho t^k for sigma supported in z-window [-k, W] needs
    rho supported in {0..W+k}; the search starts at that width.
    """

    n: int = 2
    node_budget: int = DEFAULT_NODE_BUDGET
    max_width: int = 12
    oracles: dict = field(default_factory=dict)

    def oracle(self, width: int) -> GeodesicOracle:
        if width not in self.oracles:
            self.oracles[width] = GeodesicOracle(fix_t_alphabet(width, self.n), self.node_budget)
        return self.oracles[width]

    def start_width(self, sigma) -> int:
        zs = [to_z(p) for p in sigma.support() if p[0] <= 2]
        top = max([z for z in zs if z >= 0], default=0)
        return top + k_of(sigma)

    def norm(self, sigma: HoughtonElement, max_len: int | None = None) -> tuple:
        """Return (NormResult, width at which the value stabilised)."""
        if max_len is None:
            max_len = norm_fix_t(sigma)
        w = self.start_width(sigma)
        prev = self.oracle(w).norm(sigma, max_len)
        while w < self.max_width:
            cur = self.oracle(w + 1).norm(sigma, max_len)
            if cur.length == prev.length and cur.status == prev.status:
                return prev, w
            w, prev = w + 1, cur
        raise NormBoundExceeded(f"window did not stabilise below width {self.max_width}")


def power_norm_profile(g: HoughtonElement, j_max: int, alphabet: AlphabetSpec | None = None, max_len: int | None = None, oracle: GeodesicOracle | None = None) -> list:
    """Norms of g, g^2, ..., g^j_max.

    Finitary g use the closed form over Fix(R_1) u {t}; otherwise (or when an
    alphabet is given) the BFS oracle is used and an over-bound power raises.
    """
    if alphabet is None and oracle is None and g.is_finitary():
        out = []
        h = g
        for _ in range(j_max):
            out.append(norm_fix_t(h))
            h = h * g
        return out
    if oracle is None:
        oracle = GeodesicOracle(alphabet if alphabet is not None else fix_t_alphabet(2, g.n))
    out = []
    h = g
    for j in range(1, j_max + 1):
        res = oracle.norm(h, max_len)
        if res.exceeds:
            raise NormBoundExceeded(f"norm of g^{j} {res.status}")
        out.append(res.length)
        h = h * g
    return out
