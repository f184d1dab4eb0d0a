"""Elements of the Houghton groups H_n.

An element is a bijection of n rays {1..n} x N that eventually acts on each
ray as a translation.  Points are plain ``(ray, coord)`` tuples with 1-based
rays.  Elements are stored in a canonical form (minimal thresholds, fixed
points omitted), so equality of elements is equality of canonical data.

Sign convention: ``lambda_i(t_{i,j}) = -1`` and ``lambda_j(t_{i,j}) = +1``;
on R_1 u R_2 identified with Z, ``t = t_{1,2}`` is ``z -> z + 1``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Iterable, Mapping

Point = tuple[int, int]


class ArityError(ValueError):
    pass


class HoughtonElement:
    """Canonical eventually-translational bijection of n rays.

    ``v[i-1]`` is the eventual translation on ray i and ``thresholds[i-1]``
    the least N_i such that ``(i, p) -> (i, p + v_i)`` for all p >= N_i.
    ``exc`` holds the images of the moved points below the thresholds.
    """

    __slots__ = ("n", "v", "thresholds", "exc", "_key", "_hash")

    def __init__(self, n: int, v: tuple, thresholds: tuple, exc: dict):
        # Trusted constructor: callers guarantee canonical data.
        self.n = n
        self.v = v
        self.thresholds = thresholds
        self.exc = exc
        self._key = None
        self._hash = None

    # -- construction -----------------------------------------------------

    @classmethod
    def from_images(cls, n: int, v: Iterable[int], images: Mapping[Point, Point] = ()) -> "HoughtonElement":
        """Build an element from its translation vector and a partial image table.

        Points missing from ``images`` are fixed when below the threshold and
        follow the tail rule above it; the threshold of each ray is the least
        one consistent with the table.  Raises ValueError if the data does not
        describe a bijection.
        """
        v = tuple(int(x) for x in v)
        if n < 1 or len(v) != n:
            raise ArityError(f"translation vector of length {len(v)} for arity {n}")
        if sum(v) != 0:
            raise ValueError(f"translation vector {v} does not sum to zero")
        images = dict(images)
        low = [max(0, -v[i]) for i in range(n)]
        for src, dst in images.items():
            _check_point(src, n)
            _check_point(dst, n)
            r = src[0] - 1
            low[r] = max(low[r], src[1] + 1)
            r = dst[0] - 1
            low[r] = max(low[r], dst[1] - v[r] + 1)
        table = {}
        for i in range(n):
            for p in range(low[i]):
                pt = (i + 1, p)
                table[pt] = images.get(pt, pt)
        _check_bijective(n, v, low, table)
        return _canonical(n, v, low, table)

    @classmethod
    def identity(cls, n: int) -> "HoughtonElement":
        return cls(n, (0,) * n, (0,) * n, {})

    # -- group operations -------------------------------------------------

    def __call__(self, p: Point) -> Point:
        r, c = p
        if c >= self.thresholds[r - 1]:
            return (r, c + self.v[r - 1])
        return self.exc.get(p, p)

    def __mul__(self, other: "HoughtonElement") -> "HoughtonElement":
        return compose(self, other)

    def __pow__(self, k: int) -> "HoughtonElement":
        base = self if k >= 0 else inverse(self)
        k = abs(k)
        result = HoughtonElement.identity(self.n)
        while k:
            if k & 1:
                result = compose(result, base)
            k >>= 1
            if k:
                base = compose(base, base)
        return result

    def inverse(self) -> "HoughtonElement":
        return inverse(self)

    # -- predicates ---------------------------------------------------------

    def is_identity(self) -> bool:
        return not self.exc and not any(self.v)

    def is_finitary(self) -> bool:
        """True iff the element is a finitely supported permutation."""
        return not any(self.v)

    def support(self) -> frozenset:
        """Points moved by a finitely supported element."""
        if any(self.v):
            raise ValueError("element has infinite support")
        return frozenset(self.exc)

    # -- identity and ordering -------------------------------------------

    def key(self) -> tuple:
        if self._key is None:
            self._key = (self.n, self.v, tuple(sorted(self.exc.items())))
        return self._key

    def __eq__(self, other):
        if not isinstance(other, HoughtonElement):
            return NotImplemented
        return self.key() == other.key()

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self.key())
        return self._hash

    def sort_key(self) -> tuple:
        """Total order used for deterministic witness selection: smaller support first."""
        n, v, items = self.key()
        return (len(items), tuple(abs(x) for x in v), v, items)

    def __repr__(self):
        from houghton.dsl import format_element

        return f"HoughtonElement({format_element(self)!r}, n={self.n})"


def _check_point(p: Point, n: int) -> None:
    r, c = p
    if not (1 <= r <= n) or c < 0:
        raise ValueError(f"invalid point {p} for arity {n}")


def _check_bijective(n, v, thresholds, table) -> None:
    # The finite part must biject onto the complement of the tail images.
    seen = set()
    for src, dst in table.items():
        r, c = dst
        if c >= thresholds[r - 1] + v[r - 1]:
            raise ValueError(f"{src} -> {dst} collides with the translational tail of ray {r}")
        if dst in seen:
            raise ValueError(f"point {dst} has two preimages")
        seen.add(dst)
    expected = sum(thresholds[i] + v[i] for i in range(n))
    if len(seen) != expected:
        raise ValueError("image table is not surjective")


def _canonical(n, v, thresholds, table) -> HoughtonElement:
    """Minimise thresholds of a full finite table and drop fixed points."""
    N = list(thresholds)
    for i in range(n):
        r, vi, m = i + 1, v[i], N[i]
        while m > 0 and table[(r, m - 1)] == (r, m - 1 + vi):
            m -= 1
        N[i] = m
    exc = {}
    for src, dst in table.items():
        if src != dst and src[1] < N[src[0] - 1]:
            exc[src] = dst
    return HoughtonElement(n, v, tuple(N), exc)


def compose(a: HoughtonElement, b: HoughtonElement) -> HoughtonElement:
    """The product a*b = a o b (b applied first)."""
    n = a.n
    if b.n != n:
        raise ArityError(f"cannot compose elements of arity {a.n} and {b.n}")
    av, bv, aN, bN = a.v, b.v, a.thresholds, b.thresholds
    aexc, bexc = a.exc, b.exc
    v = tuple(av[i] + bv[i] for i in range(n))
    M = [max(bN[i], aN[i] - bv[i], 0) for i in range(n)]
    table = {}
    for i in range(n):
        r = i + 1
        bNi, bvi = bN[i], bv[i]
        for p in range(M[i]):
            pt = (r, p)
            q = (r, p + bvi) if p >= bNi else bexc.get(pt, pt)
            qr, qc = q
            table[pt] = (qr, qc + av[qr - 1]) if qc >= aN[qr - 1] else aexc.get(q, q)
    return _canonical(n, v, M, table)


def inverse(a: HoughtonElement) -> HoughtonElement:
    n = a.n
    table = {}
    for i in range(n):
        r = i + 1
        for p in range(a.thresholds[i]):
            pt = (r, p)
            table[a.exc.get(pt, pt)] = pt
    N = tuple(a.thresholds[i] + a.v[i] for i in range(n))
    return _canonical(n, tuple(-x for x in a.v), N, table)


def apply(g: HoughtonElement, p: Point) -> Point:
    _check_point(p, g.n)
    return g(p)


def lambda_vec(g: HoughtonElement) -> tuple:
    return g.v


def commutator(a: HoughtonElement, b: HoughtonElement) -> HoughtonElement:
    return a * b * a.inverse() * b.inverse()


def identity(n: int) -> HoughtonElement:
    return HoughtonElement.identity(n)


def t(i: int, j: int, n: int) -> HoughtonElement:
    """Translation t_{i,j}: (i,0) -> (j,0), (i,p) -> (i,p-1), (j,p) -> (j,p+1)."""
    if i == j or not (1 <= i <= n and 1 <= j <= n):
        raise ValueError(f"t[{i},{j}] is not defined in arity {n}")
    v = [0] * n
    v[i - 1], v[j - 1] = -1, 1
    N = [0] * n
    N[i - 1] = 1
    return HoughtonElement(n, tuple(v), tuple(N), {(i, 0): (j, 0)})


def cycle(*points: Point, n: int) -> HoughtonElement:
    """The cyclic permutation p_0 -> p_1 -> ... -> p_0."""
    if len(set(points)) != len(points):
        raise ValueError(f"repeated point in cycle {points}")
    if len(points) < 2:
        for p in points:
            _check_point(p, n)
        return identity(n)
    images = {points[k]: points[(k + 1) % len(points)] for k in range(len(points))}
    return HoughtonElement.from_images(n, (0,) * n, images)


def permutation(images: Mapping[Point, Point], n: int) -> HoughtonElement:
    """Finitely supported permutation given by an image table."""
    return HoughtonElement.from_images(n, (0,) * n, images)


def lift(g: HoughtonElement, n: int) -> HoughtonElement:
    """Embed H_m into H_n (n >= m), extra rays pointwise fixed."""
    if n < g.n:
        raise ArityError(f"cannot lift arity {g.n} to {n}")
    pad = (0,) * (n - g.n)
    return HoughtonElement(n, g.v + pad, g.thresholds + pad, dict(g.exc))


# -- the Z identification of R_1 u R_2 ---------------------------------------


def to_z(p: Point) -> int:
    r, c = p
    if r == 1:
        return -c - 1
    if r == 2:
        return c
    raise ValueError(f"point {p} is not on R_1 or R_2")


def from_z(z: int) -> Point:
    return (1, -z - 1) if z < 0 else (2, z)


def zcycle(*zs: int, n: int = 2) -> HoughtonElement:
    """Cycle written in z-coordinates."""
    return cycle(*(from_z(z) for z in zs), n=n)


def z_support(g: HoughtonElement) -> list:
    """Sorted z-coordinates of moved points lying on R_1 u R_2."""
    return sorted(to_z(p) for p in g.support() if p[0] <= 2)


def conj_by_t(g: HoughtonElement, s: int) -> HoughtonElement:
    """tau^s(g) = t^s g t^-s; shifts z-supports by +s."""
    if g.n < 2:
        raise ArityError("conjugation by t needs arity >= 2")
    if s == 0:
        return g
    ts = t(1, 2, g.n) ** s
    return ts * g * ts.inverse()


# -- subset tags ---------------------------------------------------------------


@dataclass(frozen=True)
class SymInf:
    """Finitely supported permutations."""

    def contains(self, g):
        return g.is_finitary()

    def __str__(self):
        return "S_inf"


@dataclass(frozen=True)
class FixRay:
    """Elements fixing the ray R_i pointwise."""

    i: int

    def contains(self, g):
        i = self.i
        if g.v[i - 1] != 0:
            return False
        return all(src[0] != i and dst[0] != i for src, dst in g.exc.items())

    def __str__(self):
        return f"Fix(R_{self.i})"


@dataclass(frozen=True)
class KerLambda:
    i: int

    def contains(self, g):
        return g.v[self.i - 1] == 0

    def __str__(self):
        return f"ker(lambda_{self.i})"


@dataclass(frozen=True)
class Partial:
    """Partial Houghton group H_n(I): no translation off I."""

    rays: frozenset

    def __init__(self, rays):
        object.__setattr__(self, "rays", frozenset(rays))

    def contains(self, g):
        return all(x == 0 for k, x in enumerate(g.v, 1) if k not in self.rays)

    def __str__(self):
        return "H_n({%s})" % ",".join(map(str, sorted(self.rays)))


@dataclass(frozen=True)
class SymTwoRays:
    """Finitely supported permutations supported in R_i u R_j."""

    i: int
    j: int

    def contains(self, g):
        if not g.is_finitary():
            return False
        return all(p[0] in (self.i, self.j) for p in g.exc)

    def __str__(self):
        return f"Sym(R_{self.i} u R_{self.j})"


def membership(g: HoughtonElement, tag) -> bool:
    return tag.contains(g)


# -- random sampling ---------------------------------------------------------


def _allowed(n, tags):
    rays = set(range(1, n + 1))
    moving = set(range(1, n + 1))
    finitary = False
    for tag in tags:
        if isinstance(tag, SymInf):
            finitary = True
        elif isinstance(tag, SymTwoRays):
            finitary = True
            rays &= {tag.i, tag.j}
        elif isinstance(tag, FixRay):
            rays.discard(tag.i)
            moving.discard(tag.i)
        elif isinstance(tag, KerLambda):
            moving.discard(tag.i)
        elif isinstance(tag, Partial):
            moving &= tag.rays
        else:
            raise TypeError(f"unknown subset tag {tag!r}")
    moving &= rays
    if finitary:
        moving = set()
    return sorted(rays), sorted(moving)


def random_permutation(points, rng: random.Random, n: int) -> HoughtonElement:
    points = list(points)
    images = points[:]
    rng.shuffle(images)
    return permutation(dict(zip(points, images)), n)


def random_element(n: int, rng, tags=(), max_window: int = 16, max_coord: int = 8, max_mult: int = 3) -> HoughtonElement:
    """Seeded random element lying in every tagged subset.

    Exceptions come from a random permutation of a random window of at most
    ``max_window`` points; the translation part is a product of powers of
    t_{a,b} over the rays the tags leave free to translate.
    """
    if not isinstance(rng, random.Random):
        rng = random.Random(rng)
    rays, moving = _allowed(n, tags)
    pool = [(r, c) for r in rays for c in range(max_coord)]
    size = rng.randint(0, min(max_window, len(pool)))
    g = random_permutation(rng.sample(pool, size), rng, n)
    if len(moving) >= 2:
        for _ in range(rng.randint(0, 2)):
            a, b = rng.sample(moving, 2)
            g = g * t(a, b, n) ** rng.randint(-max_mult, max_mult)
    return g


def random_finitary(n: int, rng, points=None, max_window: int = 16) -> HoughtonElement:
    """Random finitely supported permutation, optionally on a fixed point set."""
    if not isinstance(rng, random.Random):
        rng = random.Random(rng)
    if points is None:
        return random_element(n, rng, (SymInf(),), max_window=max_window)
    return random_permutation(points, rng, n)
