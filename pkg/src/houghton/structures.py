"""Symbolic poset of hyperbolic structures of H_n and H_n x| G.

Structures are descriptors only: Bounded, Lineal(character class) and
Focal(ray). Lineal classes are projective classes of characters
phi = sum a_i lambda_i, taken modulo constant vectors (sum lambda_i = 0) and
nonzero scaling.
"""

from __future__ import annotations

import hashlib
import itertools
import json
import random
import re
from dataclasses import dataclass
from fractions import Fraction

from houghton.elements import HoughtonElement, lambda_vec

SCHEMA = "houghton/1"


class InvalidDescriptor(ValueError):
    pass


# -- characters ----------------------------------------------------------------


def canonical_coeffs(coeffs) -> tuple:
    """Mean-zero representative scaled so its first nonzero entry is +1."""
    a = [Fraction(x) for x in coeffs]
    if not a:
        raise ValueError("empty character")
    mean = sum(a) / len(a)
    a = [x - mean for x in a]
    lead = next((x for x in a if x != 0), None)
    if lead is None:
        raise ValueError("zero character does not name a structure")
    return tuple(x / lead for x in a)


@dataclass(frozen=True)
class Character:
    coeffs: tuple  # canonical

    @classmethod
    def of(cls, coeffs) -> "Character":
        return cls(canonical_coeffs(coeffs))

    @classmethod
    def basis(cls, i: int, n: int) -> "Character":
        return cls.of([1 if k == i else 0 for k in range(1, n + 1)])

    @property
    def n(self) -> int:
        return len(self.coeffs)

    def __call__(self, g_or_v) -> Fraction:
        v = lambda_vec(g_or_v) if isinstance(g_or_v, HoughtonElement) else g_or_v
        return sum(a * x for a, x in zip(self.coeffs, v))

    def act(self, perm: tuple) -> "Character":
        """Transport along a ray permutation: new[g(k)] = a[k]."""
        new = [Fraction(0)] * self.n
        for k, a in enumerate(self.coeffs):
            new[perm[k] - 1] = a
        return Character.of(new)

    def __str__(self):
        return "[" + ", ".join(str(x) for x in self.coeffs) + "]"

    def digest(self) -> str:
        return hashlib.sha1(str(self).encode()).hexdigest()[:10]


def char_equiv(a, b) -> bool:
    a = a if isinstance(a, Character) else Character.of(a)
    b = b if isinstance(b, Character) else Character.of(b)
    return a.coeffs == b.coeffs


# -- permutation groups of the rays ------------------------------------------------


@dataclass(frozen=True)
class PermGroup:
    """Subgroup of Sym(degree) given by generators, each an image tuple (1-based)."""

    degree: int
    generators: tuple = ()

    def __post_init__(self):
        for g in self.generators:
            if sorted(g) != list(range(1, self.degree + 1)):
                raise ValueError(f"generator {g} is not a permutation of 1..{self.degree}")

    @classmethod
    def trivial(cls, n: int) -> "PermGroup":
        return cls(n, ())

    @classmethod
    def parse(cls, text: str, degree: int) -> "PermGroup":
        """Generators in cycle notation, separated by commas: "(4 5), (1 2 3)"."""
        gens = []
        for chunk in re.split(r"[,;]", text or ""):
            chunk = chunk.strip()
            if chunk:
                gens.append(parse_cycles(chunk, degree))
        return cls(degree, tuple(g for g in gens if g != tuple(range(1, degree + 1))))

    def orbits(self) -> list:
        seen, out = set(), []
        for p in range(1, self.degree + 1):
            if p in seen:
                continue
            orb, stack = {p}, [p]
            while stack:
                q = stack.pop()
                for g in self.generators:
                    r = g[q - 1]
                    if r not in orb:
                        orb.add(r)
                        stack.append(r)
            seen |= orb
            out.append(sorted(orb))
        return out

    def elements(self) -> list:
        if self.degree > 12:
            raise ValueError("group closure is limited to degree <= 12")
        e = tuple(range(1, self.degree + 1))
        seen = {e}
        frontier = [e]
        while frontier:
            nxt = []
            for h in frontier:
                for g in self.generators:
                    x = tuple(g[h[k] - 1] for k in range(self.degree))
                    if x not in seen:
                        seen.add(x)
                        nxt.append(x)
            frontier = nxt
        return sorted(seen)

    def __str__(self):
        return ", ".join(format_cycles(g) for g in self.generators) or "1"


def parse_cycles(text: str, degree: int) -> tuple:
    img = list(range(1, degree + 1))
    cycles = re.findall(r"\(([^()]*)\)", text)
    if re.sub(r"\([^()]*\)", "", text).strip():
        raise ValueError(f"bad cycle notation {text!r}")
    perm = tuple(img)
    for body in cycles:
        pts = [int(x) for x in body.replace(",", " ").split()]
        if len(set(pts)) != len(pts) or any(not (1 <= p <= degree) for p in pts):
            raise ValueError(f"bad cycle ({body}) for degree {degree}")
        c = list(range(1, degree + 1))
        for k, p in enumerate(pts):
            c[p - 1] = pts[(k + 1) % len(pts)]
        # cycles compose right to left, like the element DSL
        perm = tuple(perm[c[k] - 1] for k in range(degree))
    return perm


def format_cycles(perm: tuple) -> str:
    seen, out = set(), []
    for p in range(1, len(perm) + 1):
        if p in seen or perm[p - 1] == p:
            continue
        cyc, q = [p], perm[p - 1]
        seen.add(p)
        while q != p:
            cyc.append(q)
            seen.add(q)
            q = perm[q - 1]
        out.append("(" + " ".join(map(str, cyc)) + ")")
    return "".join(out) or "()"


def focal_set(n: int, G: PermGroup) -> list:
    if G.degree != n:
        raise ValueError(f"group degree {G.degree} does not match arity {n}")
    if n < 2:
        raise ValueError("needs n >= 2")
    return [i for i in range(1, n + 1) if all(g[i - 1] == i for g in G.generators)]


def fixator(n: int, k: int) -> PermGroup:
    """Pointwise fixator of {1..k} in Sym(n), generated by adjacent transpositions."""
    if k < 0 or n <= k + 1:
        raise ValueError(f"fixator needs 0 <= k and n > k + 1 (got n={n}, k={k})")
    gens = []
    for a in range(k + 1, n):
        img = list(range(1, n + 1))
        img[a - 1], img[a] = a + 1, a
        gens.append(tuple(img))
    return PermGroup(n, tuple(gens))


# -- structure descriptors ---------------------------------------------------------


@dataclass(frozen=True)
class Bounded:
    kind = "bounded"

    def node_id(self):
        return "bounded"

    def realization(self, G=None):
        return "H_n"


@dataclass(frozen=True)
class Lineal:
    char: Character
    kind = "lineal"

    def node_id(self):
        return f"lineal_{self.char.digest()}"

    def basis_ray(self):
        n = self.char.n
        for i in range(1, n + 1):
            if Character.basis(i, n) == self.char:
                return i
        return None

    def realization(self, G=None):
        i = self.basis_ray()
        g = " u G" if G is not None and G.generators else ""
        if i is not None:
            return f"ker(lambda_{i}) u T{g}"
        return f"phi^-1([-C,C]) u T{g}, phi = {self.char}"


@dataclass(frozen=True)
class Focal:
    i: int
    kind = "focal"

    def node_id(self):
        return f"focal_{self.i}"

    def realization(self, G=None):
        return f"Fix(R_{self.i}) u T" + (" u G" if G is not None and G.generators else "")


def lineal_of_ray(i: int, n: int) -> Lineal:
    return Lineal(Character.basis(i, n))


def classify_element(s, g: HoughtonElement) -> str:
    if isinstance(s, Bounded):
        return "non-loxodromic"
    if isinstance(s, Focal):
        return "loxodromic" if g.v[s.i - 1] != 0 else "non-loxodromic"
    if isinstance(s, Lineal):
        if s.char.n != g.n:
            raise ValueError("arity mismatch")
        return "loxodromic" if s.char(g) != 0 else "non-loxodromic"
    raise InvalidDescriptor(f"unknown descriptor {s!r}")


def is_invariant(s, G: PermGroup):
    """None if s is G-invariant, otherwise a violating generator."""
    for g in G.generators:
        if isinstance(s, Focal) and g[s.i - 1] != s.i:
            return g
        if isinstance(s, Lineal) and s.char.act(g) != s.char:
            return g
    return None


def validate(s, n: int, G: PermGroup | None = None):
    G = G or PermGroup.trivial(n)
    if isinstance(s, Focal) and not (1 <= s.i <= n):
        raise InvalidDescriptor(f"ray {s.i} out of range")
    if isinstance(s, Lineal) and s.char.n != n:
        raise InvalidDescriptor("character arity mismatch")
    bad = is_invariant(s, G)
    if bad is not None:
        raise InvalidDescriptor(f"{s.node_id()} is not invariant under {format_cycles(bad)}")


def _below(a, b, n) -> bool:
    """Strict order a < b."""
    if a == b:
        return False
    if isinstance(a, Bounded):
        return True
    return isinstance(a, Lineal) and isinstance(b, Focal) and a.char == Character.basis(b.i, n)


def compare(a, b, n: int, G: PermGroup | None = None) -> str:
    validate(a, n, G)
    validate(b, n, G)
    if a == b:
        return "equal"
    if _below(a, b, n):
        return "less"
    if _below(b, a, n):
        return "greater"
    return "incomparable"


@dataclass(frozen=True)
class Extended:
    base: object
    realization: str


@dataclass(frozen=True)
class Rejection:
    base: object
    generator: tuple

    def __str__(self):
        return f"{self.base.node_id()} is moved by {format_cycles(self.generator)}"


def invariant_extend(n: int, G: PermGroup, s):
    validate(s, n)
    bad = is_invariant(s, G)
    if bad is not None:
        return Rejection(s, bad)
    return Extended(s, s.realization(G))


# -- poset emission ------------------------------------------------------------------


def sample_invariant_lineals(n: int, G: PermGroup, count: int, rng: random.Random, exclude=(), max_tries: int | None = None) -> list:
    """Distinct G-invariant character classes with small random rational coefficients."""
    if count <= 0 or n < 3:
        return []
    elems = G.elements() if G.generators else [tuple(range(1, n + 1))]
    seen = set(exclude)
    out = []
    tries = max_tries if max_tries is not None else 200 * count
    for _ in range(tries):
        if len(out) >= count:
            break
        raw = [Fraction(rng.randint(-6, 6), rng.randint(1, 4)) for _ in range(n)]
        sym = [Fraction(0)] * n
        for g in elems:
            for k, a in enumerate(raw):
                sym[g[k] - 1] += a
        try:
            c = Character.of(sym)
        except ValueError:
            continue
        if c not in seen:
            seen.add(c)
            out.append(Lineal(c))
    return out


@dataclass
class Poset:
    n: int
    G: PermGroup
    nodes: list
    edges: list  # (lo, hi) node pairs, transitively reduced

    def order_violations(self) -> list:
        bad = []
        lt = {(a, b) for a in self.nodes for b in self.nodes if compare(a, b, self.n, self.G) == "less"}
        for a in self.nodes:
            if (a, a) in lt:
                bad.append(f"reflexive at {a.node_id()}")
        for a, b in lt:
            if (b, a) in lt:
                bad.append(f"symmetric pair {a.node_id()}, {b.node_id()}")
            if compare(b, a, self.n, self.G) != "greater":
                bad.append(f"compare not antisymmetric on {a.node_id()}, {b.node_id()}")
        for (a, b), c in itertools.product(lt, self.nodes):
            if (b, c) in lt and (a, c) not in lt:
                bad.append(f"not transitive {a.node_id()} < {b.node_id()} < {c.node_id()}")
        return bad

    def counts(self) -> dict:
        out = {"bounded": 0, "lineal": 0, "focal": 0}
        for s in self.nodes:
            out[s.kind] += 1
        return out

    def to_json(self) -> str:
        doc = {
            "schema": SCHEMA,
            "n": self.n,
            "group": str(self.G),
            "nodes": [
                {"id": s.node_id(), "kind": s.kind, "realization": s.realization(self.G)}
                | ({"character": str(s.char)} if isinstance(s, Lineal) else {})
                for s in self.nodes
            ],
            "edges": [[a.node_id(), b.node_id()] for a, b in self.edges],
            "metadata": {
                "lineal": "oriented character classes only; non-oriented lineal structures excluded",
                "general_type": "none",
            },
        }
        return json.dumps(doc, indent=2)

    def to_dot(self) -> str:
        lines = ["digraph hyperbolic_structures {", "  rankdir=BT;"]
        for s in self.nodes:
            label = s.realization(self.G).replace('"', "'")
            lines.append(f'  {s.node_id()} [label="{label}"];')
        for a, b in self.edges:
            lines.append(f"  {a.node_id()} -> {b.node_id()};")
        lines.append("}")
        return "\n".join(lines) + "\n"


def build_poset(n: int, G: PermGroup | None = None, lineal_sample: int = 0, seed: int = 0) -> Poset:
    G = G or PermGroup.trivial(n)
    focal = [Focal(i) for i in focal_set(n, G)]
    dominated = list(dict.fromkeys(lineal_of_ray(f.i, n) for f in focal))
    rng = random.Random(seed)
    sampled = sample_invariant_lineals(n, G, lineal_sample, rng, exclude={d.char for d in dominated})
    nodes = [Bounded()] + focal + dominated + sampled
    less = {(a, b) for a in nodes for b in nodes if _below(a, b, n)}
    edges = [(a, b) for a, b in less if not any((a, c) in less and (c, b) in less for c in nodes)]
    rank = {s: k for k, s in enumerate(nodes)}
    edges.sort(key=lambda e: (rank[e[0]], rank[e[1]]))
    return Poset(n, G, nodes, edges)


def emit_poset(n: int, G: PermGroup | None = None, lineal_sample: int = 0, fmt: str = "json", seed: int = 0) -> str:
    p = build_poset(n, G, lineal_sample, seed)
    if fmt == "json":
        return p.to_json()
    if fmt == "dot":
        return p.to_dot()
    raise ValueError(f"unknown format {fmt!r}")
