"""Text and JSON forms of Houghton group elements.

Grammar (juxtaposition composes, rightmost factor applied first)::

    elem  ::= term { ("*" | WS) term }
    term  ::= atom ["^" int]
    atom  ::= "id" | "t[" nat "," nat "]" | cycle | "(" elem ")"
    cycle ::= "(" point { WS point } ")"
    point ::= nat ":" nat | int          # bare int = z-coordinate on R_1 u R_2
"""

from __future__ import annotations

import json

from houghton.elements import HoughtonElement, cycle, from_z, identity, t, to_z


class DSLSyntaxError(ValueError):
    def __init__(self, message: str, text: str, pos: int):
        super().__init__(f"{message} at position {pos}: {text[:pos]}<HERE>{text[pos:]}")
        self.pos = pos


class _Parser:
    def __init__(self, text: str, n: int):
        self.text = text
        self.n = n
        self.pos = 0

    def error(self, msg, pos=None):
        raise DSLSyntaxError(msg, self.text, self.pos if pos is None else pos)

    def peek(self):
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def skip_ws(self):
        while self.peek().isspace():
            self.pos += 1

    def expect(self, s):
        if not self.text.startswith(s, self.pos):
            self.error(f"expected {s!r}")
        self.pos += len(s)

    def integer(self, signed=True):
        start = self.pos
        if signed and self.peek() in "+-":
            self.pos += 1
        if not self.peek().isdigit():
            self.error("expected an integer", start)
        while self.peek().isdigit():
            self.pos += 1
        return int(self.text[start:self.pos])

    def starts_term(self):
        c = self.peek()
        return c == "(" or self.text.startswith("id", self.pos) or self.text.startswith("t[", self.pos)

    def elem(self):
        self.skip_ws()
        g = self.term()
        while True:
            self.skip_ws()
            if self.peek() == "*":
                self.pos += 1
                self.skip_ws()
                g = g * self.term()
            elif self.starts_term():
                g = g * self.term()
            else:
                return g

    def term(self):
        g = self.atom()
        if self.peek() == "^":
            self.pos += 1
            g = g ** self.integer()
        return g

    def atom(self):
        if self.text.startswith("id", self.pos):
            self.pos += 2
            return identity(self.n)
        if self.text.startswith("t[", self.pos):
            start = self.pos
            self.pos += 2
            self.skip_ws()
            i = self.integer(signed=False)
            self.skip_ws()
            self.expect(",")
            self.skip_ws()
            j = self.integer(signed=False)
            self.skip_ws()
            self.expect("]")
            try:
                return t(i, j, self.n)
            except ValueError as exc:
                self.error(str(exc), start)
        if self.peek() == "(":
            start = self.pos
            self.pos += 1
            self.skip_ws()
            c = self.peek()
            if c == ")":
                self.pos += 1
                return identity(self.n)
            if c.isdigit() or c in "+-":
                return self.cycle_body(start)
            g = self.elem()
            self.skip_ws()
            self.expect(")")
            return g
        self.error("expected 'id', 't[i,j]' or '('")

    def point(self):
        start = self.pos
        a = self.integer()
        if self.peek() == ":":
            self.pos += 1
            c = self.integer(signed=False)
            if a < 1 or a > self.n:
                self.error(f"ray {a} out of range for arity {self.n}", start)
            return (a, c)
        if self.n < 2:
            self.error("z-coordinates need arity >= 2", start)
        return from_z(a)

    def cycle_body(self, start):
        points = []
        while True:
            self.skip_ws()
            if self.peek() == ")":
                self.pos += 1
                break
            if points and not self.text[self.pos - 1].isspace():
                self.error("points must be separated by whitespace")
            points.append(self.point())
        if len(set(points)) != len(points):
            self.error("cycle repeats a point", start)
        return cycle(*points, n=self.n)


def parse_element(text: str, n: int) -> HoughtonElement:
    p = _Parser(text, n)
    g = p.elem()
    p.skip_ws()
    if p.pos != len(text):
        p.error("unexpected trailing input")
    return g


def cycles_of(g: HoughtonElement) -> list:
    """Disjoint cycles of a finitely supported element, least point first, sorted."""
    seen = set()
    out = []
    for start in sorted(g.support()):
        if start in seen:
            continue
        cyc = [start]
        seen.add(start)
        p = g(start)
        while p != start:
            cyc.append(p)
            seen.add(p)
            p = g(p)
        out.append(cyc)
    return out


def _fmt_point(p, zmode):
    return str(to_z(p)) if zmode else f"{p[0]}:{p[1]}"


def translation_word(v) -> list:
    """Factors (1, j, v_j) of the word prod_j t[1,j]^{v_j} realising translation v."""
    return [(1, j, v[j - 1]) for j in range(2, len(v) + 1) if v[j - 1]]


def format_word(factors) -> str:
    parts = []
    for i, j, e in factors:
        parts.append(f"t[{i},{j}]" if e == 1 else f"t[{i},{j}]^{e}")
    return " ".join(parts) if parts else "id"


def format_element(g: HoughtonElement, zmode: bool = False) -> str:
    """DSL text for g: disjoint cycles followed by a translation word."""
    factors = translation_word(g.v)
    tw = identity(g.n)
    for i, j, e in factors:
        tw = tw * t(i, j, g.n) ** e
    sigma = g * tw.inverse()
    zmode = zmode and g.n >= 2 and all(p[0] <= 2 for p in sigma.support())
    parts = ["(" + " ".join(_fmt_point(p, zmode) for p in c) + ")" for c in cycles_of(sigma)]
    text = "".join(parts)
    if factors:
        text = (text + " " if text else "") + format_word(factors)
    return text or "id"


def to_json_dict(g: HoughtonElement) -> dict:
    exc = [[list(src), list(dst)] for src, dst in sorted(g.exc.items())]
    return {"n": g.n, "v": list(g.v), "exc": exc}


def from_json_dict(d: dict) -> HoughtonElement:
    images = {tuple(src): tuple(dst) for src, dst in d["exc"]}
    return HoughtonElement.from_images(d["n"], d["v"], images)


def dumps(g: HoughtonElement) -> str:
    return json.dumps(to_json_dict(g), separators=(",", ":"))


def loads(text: str) -> HoughtonElement:
    return from_json_dict(json.loads(text))
