"""Textual group specifications, e.g. ``A5``, ``C2 x C4``, ``EA(2,3)``, ``perm: (1 2 3), (1 2)``.

Grammar (whitespace-insensitive)::

    spec   := term ("x" term)*
    term   := NAME "(" int ("," int)* ")" | NAME int | "M11" | "perm" ["(" int ")"] ":" cycles
    cycles := cycle+ ("," cycle+)*
    cycle  := "(" int+ ")"

NAME is one of A, S, C, D, Q, EA, PSL2.  D_n has order 2n and Q_m is the
dicyclic group of order m.  ``perm(n):`` fixes the degree; otherwise the
degree is the largest point mentioned.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from . import exact, permgroup
from .permgroup import PermGroup

SYMBOLS = ("A", "S", "C", "D", "Q", "EA", "PSL2", "M11")
ARITY = {"A": 1, "S": 1, "C": 1, "D": 1, "Q": 1, "EA": 2, "PSL2": 2, "M11": 0}


class GroupSpecError(ValueError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


@dataclass(frozen=True)
class Named:
    symbol: str
    args: tuple[int, ...]


@dataclass(frozen=True)
class Generators:
    generators: tuple[tuple[tuple[int, ...], ...], ...]  # each generator is a list of cycles
    degree: int | None = None


@dataclass(frozen=True)
class Product:
    factors: tuple["Named | Generators", ...]


GroupSpec = Named | Generators | Product

_TOKEN = re.compile(r"\s*(?:(?P<int>\d+)|(?P<name>PSL|EA|perm|M11|[ASCDQ])|(?P<sym>[(),:x×]))")


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens: list[tuple[str, str, int]] = []
        pos = 0
        while True:
            while pos < len(text) and text[pos].isspace():
                pos += 1
            if pos >= len(text):
                break
            m = _TOKEN.match(text, pos)
            if not m or m.end() == pos:
                raise GroupSpecError(f"unexpected character {text[pos]!r}", pos)
            kind = m.lastgroup
            start = m.start(kind)
            self.tokens.append((kind, m.group(kind), start))
            pos = m.end()
        self.i = 0

    def peek(self) -> tuple[str, str, int] | None:
        return self.tokens[self.i] if self.i < len(self.tokens) else None

    def where(self) -> int:
        tok = self.peek()
        return tok[2] if tok else len(self.text)

    def take(self, value: str | None = None, kind: str | None = None) -> tuple[str, str, int]:
        tok = self.peek()
        if tok is None or (value is not None and tok[1] != value) or (kind is not None and tok[0] != kind):
            want = value or kind
            got = "end of input" if tok is None else repr(tok[1])
            raise GroupSpecError(f"expected {want}, found {got}", self.where())
        self.i += 1
        return tok

    def at(self, value: str) -> bool:
        tok = self.peek()
        return tok is not None and tok[1] == value

    def integer(self) -> int:
        return int(self.take(kind="int")[1])

    def spec(self) -> GroupSpec:
        if self.peek() is None:
            raise GroupSpecError("empty group specification", 0)
        terms = [self.term()]
        while self.at("x") or self.at("×"):
            self.take()
            terms.append(self.term())
        if self.peek() is not None:
            raise GroupSpecError(f"unexpected {self.peek()[1]!r}", self.where())
        return terms[0] if len(terms) == 1 else Product(tuple(terms))

    def term(self) -> Named | Generators:
        kind, value, pos = self.take(kind="name")
        if value == "perm":
            return self.perm()
        if value == "M11":
            return Named("M11", ())
        if value == "PSL":
            # accept PSL2(q), PSL2 q and PSL(2,q)
            if self.at("("):
                args = self.args()
                if len(args) != 2 or args[0] != 2:
                    raise GroupSpecError("only PSL(2, q) is supported", pos)
                return self.named("PSL2", args, pos)
            first = self.integer()
            if first != 2:
                raise GroupSpecError("only PSL2 is supported", pos)
            value = "PSL2"
        if self.at("("):
            args = self.args()
        else:
            args = (self.integer(),)
        if value == "PSL2" and len(args) == 1:
            args = (2,) + args
        return self.named(value, args, pos)

    def named(self, symbol: str, args: tuple[int, ...], pos: int) -> Named:
        if len(args) != ARITY[symbol]:
            raise GroupSpecError(f"{symbol} takes {ARITY[symbol]} argument(s), got {len(args)}", pos)
        if symbol == "PSL2" and not exact.is_prime_power(args[1]):
            raise GroupSpecError(f"PSL2 argument {args[1]} is not a prime power", pos)
        if symbol == "EA" and not exact.is_prime(args[0]):
            raise GroupSpecError(f"EA characteristic {args[0]} is not prime", pos)
        if any(a < 1 for a in args):
            raise GroupSpecError("arguments must be positive", pos)
        return Named(symbol, args)

    def args(self) -> tuple[int, ...]:
        self.take("(")
        out = [self.integer()]
        while self.at(","):
            self.take(",")
            out.append(self.integer())
        self.take(")")
        return tuple(out)

    def perm(self) -> Generators:
        degree = None
        if self.at("("):
            self.take("(")
            degree = self.integer()
            self.take(")")
        self.take(":")
        gens = [self.cycles()]
        while self.at(","):
            self.take(",")
            gens.append(self.cycles())
        return Generators(tuple(gens), degree)

    def cycles(self) -> tuple[tuple[int, ...], ...]:
        out = []
        while self.at("("):
            start = self.where()
            self.take("(")
            cyc = [self.integer()]
            while self.peek() is not None and self.peek()[0] == "int":
                cyc.append(self.integer())
            self.take(")")
            if len(set(cyc)) != len(cyc):
                raise GroupSpecError("repeated point in a cycle", start)
            if min(cyc) < 1:
                raise GroupSpecError("cycle points start at 1", start)
            out.append(tuple(cyc))
        if not out:
            raise GroupSpecError("expected a cycle", self.where())
        return tuple(out)


def parse_group_spec(text: str) -> GroupSpec:
    spec = _Parser(text).spec()
    if isinstance(spec, Product):
        flat: list = []
        for f in spec.factors:
            flat.extend(f.factors if isinstance(f, Product) else [f])
        spec = Product(tuple(flat))
    return spec


def build_group(spec: GroupSpec | str) -> PermGroup:
    if isinstance(spec, str):
        spec = parse_group_spec(spec)
    if isinstance(spec, Product):
        return permgroup.direct_product(*(build_group(f) for f in spec.factors))
    if isinstance(spec, Generators):
        top = max(p for g in spec.generators for c in g for p in c)
        degree = spec.degree if spec.degree is not None else top
        if top > degree:
            raise GroupSpecError(f"point {top} outside 1..{degree}", 0)
        return PermGroup([permgroup.from_cycles(g, degree) for g in spec.generators], degree, "perm")
    s, a = spec.symbol, spec.args
    if s == "A":
        return permgroup.alternating(a[0])
    if s == "S":
        return permgroup.symmetric(a[0])
    if s == "C":
        return permgroup.cyclic(a[0])
    if s == "D":
        return permgroup.dihedral(a[0])
    if s == "Q":
        return permgroup.dicyclic(a[0])
    if s == "EA":
        return permgroup.elementary_abelian(*a)
    if s == "PSL2":
        return permgroup.psl2(a[1])
    return permgroup.mathieu11()


def render(spec: GroupSpec) -> str:
    if isinstance(spec, Product):
        return " x ".join(render(f) for f in spec.factors)
    if isinstance(spec, Generators):
        body = ", ".join("".join("(" + " ".join(map(str, c)) + ")" for c in g) for g in spec.generators)
        return f"perm({spec.degree}): {body}" if spec.degree else f"perm: {body}"
    if spec.symbol == "M11":
        return "M11"
    if spec.symbol == "PSL2":
        return f"PSL(2,{spec.args[1]})"
    if len(spec.args) == 1:
        return f"{spec.symbol}{spec.args[0]}"
    return f"{spec.symbol}({','.join(map(str, spec.args))})"


def hs_scan_catalog(max_order: int = 47) -> dict[str, PermGroup]:
    """Small groups for the coset-partition scan: cyclic, dihedral, dicyclic,
    elementary abelian, A4, S4 and a few direct products, all of order <= max_order."""
    names: list[str] = [f"C{n}" for n in range(2, max_order + 1)]
    names += [f"D{n}" for n in range(2, max_order // 2 + 1)]
    names += [f"Q{m}" for m in range(8, max_order + 1, 4)]
    names += [f"EA({p},{k})" for p in (2, 3, 5, 7) for k in range(2, 6) if p**k <= max_order]
    names += ["A4", "S4"]
    products = ["C2 x C4", "C2 x C6", "C2 x C8", "C4 x C4", "C3 x C6", "C2 x C10", "C2 x C12",
                "C2 x C14", "C2 x C16", "C2 x C18", "C2 x C20", "C2 x C22", "C3 x C9", "C3 x C12",
                "C3 x C15", "C2 x C2 x C4", "C2 x C2 x C6", "C2 x C2 x C8", "C2 x C2 x C10",
                "C2 x C4 x C4", "C2 x D3", "C2 x D4", "C2 x Q8", "C3 x D3", "C2 x A4", "C4 x D3",
                "C2 x D5", "C3 x Q8", "C3 x D4", "C2 x D6", "C2 x D7", "C5 x D3", "C2 x D9",
                "C2 x D10", "C2 x D11", "C4 x D5", "C3 x D5", "C3 x D7", "C2 x C2 x D3",
                "C2 x C2 x D5", "C2 x Q12", "C2 x Q16", "C4 x Q8", "C2 x C2 x Q8", "C3 x A4", "C3 x C3 x C3", "C3 x C3 x C5"]
    names += products
    out = {}
    for name in names:
        g = build_group(name)
        if g.order <= max_order:
            out[name] = g
    return out
