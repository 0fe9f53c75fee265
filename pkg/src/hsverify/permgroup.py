"""Permutation groups: stabilizer chains, subgroup lattices and index sums.

Permutations are tuples of 0-based images.  Products act on the right, so
``mul(p, q)`` means "apply p, then q", matching right cosets ``Hx``.

Subgroup enumeration works bottom-up.  Every subgroup ``H != 1`` equals
``<M, g>`` for a maximal subgroup ``M`` of ``H`` and any ``g`` in ``H \\ M``,
and ``g`` can be taken of prime-power order because such elements generate
``H``.  So extending every known class representative ``K`` by every
prime-power element, up to the symmetries that leave ``<K, g>`` unchanged or
conjugate it inside ``N_G(K)``, reaches every class, perfect subgroups
included.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from itertools import product as iproduct
from operator import itemgetter
from typing import Iterable, Sequence

from . import exact

Perm = tuple  # tuple[int, ...]

DEFAULT_ORDER_CAP = 10**4


class GroupError(ValueError):
    pass


class OrderCapExceeded(GroupError):
    def __init__(self, order: int, cap: int):
        super().__init__(f"group order {order} exceeds the enumeration cap {cap}")
        self.order = order
        self.cap = cap


def identity(n: int) -> Perm:
    return tuple(range(n))


def mul(p: Perm, q: Perm) -> Perm:
    """p then q."""
    if len(p) == 1:
        return (q[p[0]],)
    return itemgetter(*p)(q)


def inverse(p: Perm) -> Perm:
    out = [0] * len(p)
    for i, j in enumerate(p):
        out[j] = i
    return tuple(out)


def perm_order(p: Perm) -> int:
    seen = [False] * len(p)
    out = 1
    for i in range(len(p)):
        if not seen[i]:
            n, j = 0, i
            while not seen[j]:
                seen[j] = True
                j = p[j]
                n += 1
            out = math.lcm(out, n)
    return out


def check_perm(p: Sequence[int]) -> None:
    if sorted(p) != list(range(len(p))):
        raise GroupError(f"not a permutation: {tuple(p)}")


def from_cycles(cycles: Iterable[Sequence[int]], degree: int) -> Perm:
    """Build a permutation from 1-based cycles."""
    img = list(range(degree))
    seen: set[int] = set()
    for cyc in cycles:
        for a in cyc:
            if not 1 <= a <= degree:
                raise GroupError(f"point {a} outside 1..{degree}")
            if a in seen:
                raise GroupError(f"point {a} repeated in cycle notation")
            seen.add(a)
        for i, a in enumerate(cyc):
            img[a - 1] = cyc[(i + 1) % len(cyc)] - 1
    return tuple(img)


def to_cycles(p: Perm) -> str:
    seen = set()
    out = []
    for i in range(len(p)):
        if i in seen or p[i] == i:
            continue
        cyc, j = [], i
        while j not in seen:
            seen.add(j)
            cyc.append(j + 1)
            j = p[j]
        out.append("(" + " ".join(map(str, cyc)) + ")")
    return "".join(out) or "()"


# ---------------------------------------------------------------------------
# stabilizer chain


@dataclass
class StabilizerChain:
    degree: int
    base: list[int] = field(default_factory=list)
    gens: list[list[Perm]] = field(default_factory=list)
    transversals: list[dict[int, Perm]] = field(default_factory=list)

    @property
    def order(self) -> int:
        return math.prod(len(t) for t in self.transversals)

    def _transversal(self, level: int) -> None:
        b = self.base[level]
        t = {b: identity(self.degree)}
        queue = deque([b])
        while queue:
            x = queue.popleft()
            for g in self.gens[level]:
                y = g[x]
                if y not in t:
                    t[y] = mul(t[x], g)
                    queue.append(y)
        self.transversals[level] = t

    def strip(self, g: Perm, start: int = 0) -> tuple[Perm, int]:
        for i in range(start, len(self.base)):
            x = g[self.base[i]]
            u = self.transversals[i].get(x)
            if u is None:
                return g, i
            g = mul(g, inverse(u))
        return g, len(self.base)

    def contains(self, g: Perm) -> bool:
        h, _ = self.strip(g)
        return h == identity(self.degree)


def build_chain(generators: Sequence[Perm], degree: int) -> StabilizerChain:
    """Deterministic Schreier-Sims."""
    ident = identity(degree)
    chain = StabilizerChain(degree)
    gens = [g for g in generators if g != ident]

    def add_level(point: int) -> None:
        chain.base.append(point)
        chain.gens.append([])
        chain.transversals.append({point: ident})

    def moved_point(g: Perm) -> int:
        return next(i for i in range(degree) if g[i] != i)

    for g in gens:
        if all(g[b] == b for b in chain.base):
            add_level(moved_point(g))
    for level in range(len(chain.base)):
        chain.gens[level] = [g for g in gens if all(g[b] == b for b in chain.base[:level])]
        chain._transversal(level)

    i = len(chain.base) - 1
    while i >= 0:
        restart = False
        for x, u in list(chain.transversals[i].items()):
            for s in chain.gens[i]:
                ux_s = mul(u, s)
                schreier = mul(ux_s, inverse(chain.transversals[i][s[x]]))
                h, j = chain.strip(schreier, i + 1)
                if h == ident:
                    continue
                if j == len(chain.base):
                    add_level(moved_point(h))
                for level in range(i + 1, j + 1):
                    chain.gens[level].append(h)
                    chain._transversal(level)
                i = j
                restart = True
                break
            if restart:
                break
        if not restart:
            i -= 1
    return chain


# ---------------------------------------------------------------------------
# groups


class PermGroup:
    """A permutation group given by generators."""

    def __init__(self, generators: Iterable[Sequence[int]], degree: int | None = None, name: str = ""):
        gens = [tuple(g) for g in generators]
        if degree is None:
            degree = max((len(g) for g in gens), default=1)
        for g in gens:
            check_perm(g)
            if len(g) != degree:
                raise GroupError(f"generator of degree {len(g)} in a group of degree {degree}")
        self.degree = max(degree, 1)
        self.generators = [g for g in gens if g != identity(self.degree)]
        self.name = name

    def __repr__(self) -> str:
        return f"PermGroup({self.name or 'unnamed'}, degree={self.degree})"

    @cached_property
    def chain(self) -> StabilizerChain:
        return build_chain(self.generators, self.degree)

    @property
    def order(self) -> int:
        return self.chain.order

    def contains(self, p: Perm) -> bool:
        return len(p) == self.degree and self.chain.contains(tuple(p))

    def elements(self, cap: int = DEFAULT_ORDER_CAP) -> list[Perm]:
        """All elements, sorted lexicographically by image tuple."""
        if self.order > cap:
            raise OrderCapExceeded(self.order, cap)
        return sorted(closure(self.generators, self.degree))


def group_order(g: PermGroup) -> int:
    return g.order


def closure(gens: Sequence[Perm], degree: int) -> set[Perm]:
    ident = identity(degree)
    seen = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for x in frontier:
            for s in gens:
                y = mul(x, s)
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return seen


# ---------------------------------------------------------------------------
# subgroup lattice


@dataclass(frozen=True)
class SubgroupClass:
    generators: tuple[Perm, ...]
    order: int
    size: int  # number of conjugates


@dataclass(frozen=True)
class SubgroupClassTable:
    group_order: int
    classes: tuple[SubgroupClass, ...]

    @property
    def orders(self) -> list[int]:
        return sorted({c.order for c in self.classes})

    @property
    def total_subgroups(self) -> int:
        return sum(c.size for c in self.classes)


class _IndexedGroup:
    """Elements of a small group indexed 0..|G|-1 in lexicographic order."""

    def __init__(self, group: PermGroup, cap: int):
        self.group = group
        self.elements = group.elements(cap)
        self.index = {p: i for i, p in enumerate(self.elements)}
        self.n = len(self.elements)
        self.identity = self.index[identity(group.degree)]
        self.inv = [self.index[inverse(p)] for p in self.elements]
        self.order_of = [perm_order(p) for p in self.elements]
        gens = [self.index[g] for g in group.generators]
        # conj[s][i] = index of s^-1 e_i s
        self._left: dict[int, list[int]] = {}
        self._right: dict[int, list[int]] = {}
        self._conj: dict[int, list[int]] = {}
        self.conj_gens = gens
        self.conj = [self.conj_table(s) for s in gens]

    def mul(self, i: int, j: int) -> int:
        return self.index[mul(self.elements[i], self.elements[j])]

    def left_table(self, k: int) -> list[int]:
        """x -> k x, cached."""
        t = self._left.get(k)
        if t is None:
            pk = self.elements[k]
            t = self._left[k] = [self.index[mul(pk, p)] for p in self.elements]
        return t

    def right_table(self, k: int) -> list[int]:
        """x -> x k, cached."""
        t = self._right.get(k)
        if t is None:
            pk = self.elements[k]
            t = self._right[k] = [self.index[mul(p, pk)] for p in self.elements]
        return t

    def conj_table(self, s: int) -> list[int]:
        """x -> s^-1 x s, cached."""
        t = self._conj.get(s)
        if t is None:
            t = self._conj[s] = self._conj_table(s)
        return t

    def _conj_table(self, s: int) -> list[int]:
        ps, pinv = self.elements[s], self.elements[self.inv[s]]
        return [self.index[mul(mul(pinv, p), ps)] for p in self.elements]

    def conjugate_by(self, x: int, y: int) -> int:
        """x^-1 y x."""
        return self.mul(self.mul(self.inv[x], y), x)

    def join(self, k_elems: list[int], k_gens: list[int], g: int) -> list[int]:
        """Elements of <K, g>, built as a union of right cosets of K."""
        members = set(k_elems)
        if g in members:
            return k_elems
        out = list(k_elems)
        gens = k_gens + [g]
        reps = [self.identity]
        idx = 0
        while idx < len(reps):
            r = reps[idx]
            idx += 1
            for s in gens:
                y = self.mul(r, s)
                if y in members:
                    continue
                py = self.elements[y]
                for k in k_elems:
                    z = self.index[mul(self.elements[k], py)]
                    members.add(z)
                    out.append(z)
                reps.append(y)
        return out

    def conjugacy_orbit(self, elems: frozenset[int]) -> tuple[list[frozenset[int]], list[int]]:
        """All conjugates of a subgroup, with a transversal (conjugating element per conjugate)."""
        orbit = [elems]
        words = [self.identity]
        seen = {elems: 0}
        i = 0
        while i < len(orbit):
            h = orbit[i]
            for s, table in zip(self.conj_gens, self.conj):
                c = frozenset(table[x] for x in h)
                if c not in seen:
                    seen[c] = len(orbit)
                    orbit.append(c)
                    words.append(self.mul(words[i], s))
            i += 1
        return orbit, words

    def normalizer_gens(self, elems: frozenset[int], orbit, words) -> list[int]:
        """Schreier generators of N_G(H) from its conjugation orbit."""
        pos = {c: i for i, c in enumerate(orbit)}
        out = []
        for i, h in enumerate(orbit):
            for s, table in zip(self.conj_gens, self.conj):
                c = frozenset(table[x] for x in h)
                j = pos[c]
                sg = self.mul(self.mul(words[i], s), self.inv[words[j]])
                if sg not in elems and sg not in out:
                    out.append(sg)
        return out


class SubgroupLattice:
    """All subgroups of a small permutation group, organised by conjugacy class."""

    def __init__(self, group: PermGroup, cap: int = DEFAULT_ORDER_CAP):
        order = group.order
        if order > cap:
            raise OrderCapExceeded(order, cap)
        self.group = group
        self.ig = _IndexedGroup(group, cap)
        self.class_members: list[list[frozenset[int]]] = []
        self.class_gens: list[list[int]] = []
        self.class_elems: list[list[int]] = []
        self._lookup: dict[frozenset[int], int] = {}
        self._enumerate()

    def _register(self, elems: list[int], gens: list[int]) -> int:
        key = frozenset(elems)
        cid = self._lookup.get(key)
        if cid is not None:
            return cid
        orbit, _ = self.ig.conjugacy_orbit(key)
        cid = len(self.class_members)
        for c in orbit:
            self._lookup[c] = cid
        self.class_members.append(orbit)
        self.class_gens.append(gens)
        self.class_elems.append(sorted(elems))
        return cid

    def _enumerate(self) -> None:
        ig = self.ig
        prime_power = [
            i for i in range(ig.n) if i != ig.identity and len(exact.factor(ig.order_of[i])) == 1
        ]
        self._register([ig.identity], [])
        c = 0
        while c < len(self.class_members):
            k_elems, k_gens = self.class_elems[c], self.class_gens[c]
            key = self.class_members[c][0]
            if len(k_elems) < ig.n:
                self._extend(key, k_elems, k_gens, prime_power)
            c += 1

    def _extend(self, key, k_elems, k_gens, candidates) -> None:
        ig = self.ig
        orbit, words = ig.conjugacy_orbit(key)
        # N_G(K) acts by conjugation; K acts by left and right multiplication
        n_gens = ig.normalizer_gens(key, orbit, words)
        tables = [ig.conj_table(n) for n in n_gens]
        tables += [ig.left_table(k) for k in k_gens] + [ig.right_table(k) for k in k_gens]
        marked = bytearray(ig.n)
        for k in k_elems:
            marked[k] = 1
        for g in candidates:
            if marked[g]:
                continue
            h_elems = ig.join(k_elems, k_gens, g)
            self._register(h_elems, k_gens + [g])
            seeds = self._generators_of_cyclic(g)
            queue = []
            for s in seeds:
                if not marked[s]:
                    marked[s] = 1
                    queue.append(s)
            while queue:
                x = queue.pop()
                for t in tables:
                    y = t[x]
                    if not marked[y]:
                        marked[y] = 1
                        queue.append(y)

    def _generators_of_cyclic(self, g: int) -> list[int]:
        """The powers g^j with j coprime to the order of g."""
        ig = self.ig
        n = ig.order_of[g]
        p = ig.elements[g]
        out, x = [], p
        for j in range(1, n):
            if math.gcd(j, n) == 1:
                out.append(ig.index[x])
            x = mul(x, p)
        return out

    # views -----------------------------------------------------------------

    def class_table(self) -> SubgroupClassTable:
        order = self.ig.n
        classes = []
        for cid, members in enumerate(self.class_members):
            gens = tuple(self.ig.elements[i] for i in self.class_gens[cid])
            classes.append(SubgroupClass(gens, len(members[0]), len(members)))
        classes.sort(key=lambda c: (c.order, c.size))
        return SubgroupClassTable(order, tuple(classes))

    def all_subgroups(self) -> list[frozenset[int]]:
        """Every subgroup as a set of element indices, ordered by size then content."""
        subs = [s for members in self.class_members for s in members]
        subs.sort(key=lambda s: (len(s), sorted(s)))
        return subs


def subgroup_classes(group: PermGroup, cap: int = DEFAULT_ORDER_CAP) -> SubgroupClassTable:
    return SubgroupLattice(group, cap).class_table()


def index_set(group: PermGroup, cap: int = DEFAULT_ORDER_CAP) -> list[int]:
    table = subgroup_classes(group, cap)
    return sorted({table.group_order // o for o in table.orders})


def jvalue_from_indices(indices: Iterable[int]) -> Fraction:
    return sum((Fraction(1, m) for m in set(indices)), Fraction(0))


def jvalue(group: PermGroup, cap: int = DEFAULT_ORDER_CAP) -> Fraction:
    """Sum of reciprocals of the distinct subgroup indices, 1 and |G| included."""
    return jvalue_from_indices(index_set(group, cap))


# ---------------------------------------------------------------------------
# constructions


def regular_representation(elements: Sequence, op, generators: Sequence, name: str = "") -> PermGroup:
    """Right regular representation of an abstract group given by a multiplication."""
    pos = {x: i for i, x in enumerate(elements)}
    gens = [tuple(pos[op(x, g)] for x in elements) for g in generators]
    return PermGroup(gens, len(elements), name)


def cyclic(n: int) -> PermGroup:
    if n < 1:
        raise GroupError("C_n needs n >= 1")
    return PermGroup([tuple((i + 1) % n for i in range(n))], n, f"C{n}")


def dihedral(n: int) -> PermGroup:
    """Dihedral group of order 2n."""
    if n < 1:
        raise GroupError("D_n needs n >= 1")
    if n < 3:
        els = [(i, j) for j in range(2) for i in range(n)]
        op = lambda a, b: ((a[0] * (1 if b[1] == 0 else -1) + b[0]) % n, (a[1] + b[1]) % 2)
        return regular_representation(els, op, [(1 % n, 0), (0, 1)], f"D{n}")
    rot = tuple((i + 1) % n for i in range(n))
    ref = tuple((-i) % n for i in range(n))
    return PermGroup([rot, ref], n, f"D{n}")


def dicyclic(order: int) -> PermGroup:
    """Dicyclic group Q_{4m} of the given order 4m (Q8 is the quaternion group)."""
    if order < 8 or order % 4:
        raise GroupError("Q needs an order 4m with m >= 2")
    m = order // 4
    els = [(i, j) for j in range(2) for i in range(2 * m)]

    def op(a, b):
        # a^i x^j: x a = a^-1 x, x^2 = a^m
        i1, j1 = a
        i2, j2 = b
        if j1 == 0:
            return ((i1 + i2) % (2 * m), j2)
        i = (i1 - i2) % (2 * m)
        if j2 == 0:
            return (i, 1)
        return ((i + m) % (2 * m), 0)

    return regular_representation(els, op, [(1, 0), (0, 1)], f"Q{order}")


def elementary_abelian(p: int, k: int) -> PermGroup:
    if not exact.is_prime(p) or k < 1:
        raise GroupError("EA(p, k) needs a prime p and k >= 1")
    els = list(iproduct(range(p), repeat=k))
    op = lambda a, b: tuple((x + y) % p for x, y in zip(a, b))
    gens = [tuple(1 if i == j else 0 for i in range(k)) for j in range(k)]
    return regular_representation(els, op, gens, f"EA({p},{k})")


def symmetric(n: int) -> PermGroup:
    if n < 1:
        raise GroupError("S_n needs n >= 1")
    if n == 1:
        return PermGroup([], 1, "S1")
    if n == 2:
        return PermGroup([(1, 0)], 2, "S2")
    return PermGroup([(1, 0) + tuple(range(2, n)), tuple((i + 1) % n for i in range(n))], n, f"S{n}")


def alternating(n: int) -> PermGroup:
    if n < 1:
        raise GroupError("A_n needs n >= 1")
    if n < 3:
        return PermGroup([], n, f"A{n}")
    gens = []
    for i in range(2, n):
        img = list(range(n))
        img[0], img[1], img[i] = 1, i, 0
        gens.append(tuple(img))
    return PermGroup(gens, n, f"A{n}")


def direct_product(*groups: PermGroup) -> PermGroup:
    degree = sum(g.degree for g in groups)
    gens = []
    offset = 0
    for g in groups:
        for s in g.generators:
            img = list(range(degree))
            for i, j in enumerate(s):
                img[offset + i] = offset + j
            gens.append(tuple(img))
        offset += g.degree
    return PermGroup(gens, degree, " x ".join(g.name for g in groups))


class GF:
    """The finite field of order p^k, elements encoded as base-p digit integers."""

    def __init__(self, q: int):
        f = exact.factor(q)
        if len(f) != 1:
            raise GroupError(f"{q} is not a prime power")
        self.q = q
        self.p, self.k = f[0]
        self.modulus = self._irreducible() if self.k > 1 else None
        self._mul = [[self._slow_mul(a, b) for b in range(q)] for a in range(q)]

    def _digits(self, a: int) -> list[int]:
        return [(a // self.p**i) % self.p for i in range(self.k)]

    def _from(self, d: Sequence[int]) -> int:
        return sum(c * self.p**i for i, c in enumerate(d))

    def _irreducible(self) -> list[int]:
        p, k = self.p, self.k
        for tail in iproduct(range(p), repeat=k):
            poly = list(tail) + [1]
            if poly[0] == 0:
                continue
            # no roots is enough for k <= 3; check all monic divisors of degree <= k//2 in general
            if all(self._poly_mod(poly, list(d) + [1]) for deg in range(1, k // 2 + 1) for d in iproduct(range(p), repeat=deg)):
                return poly
        raise GroupError("no irreducible polynomial found")

    def _poly_mod(self, a: list[int], b: list[int]) -> bool:
        a = a[:]
        p = self.p
        while len(a) >= len(b):
            c = a[-1] % p
            shift = len(a) - len(b)
            for i, x in enumerate(b):
                a[shift + i] = (a[shift + i] - c * x) % p
            a.pop()
        return any(x % p for x in a)

    def add(self, a: int, b: int) -> int:
        return self._from([(x + y) % self.p for x, y in zip(self._digits(a), self._digits(b))])

    def neg(self, a: int) -> int:
        return self._from([(-x) % self.p for x in self._digits(a)])

    def _slow_mul(self, a: int, b: int) -> int:
        if self.k == 1:
            return a * b % self.p
        da, db = self._digits(a), self._digits(b)
        prod = [0] * (2 * self.k - 1)
        for i, x in enumerate(da):
            for j, y in enumerate(db):
                prod[i + j] = (prod[i + j] + x * y) % self.p
        m = self.modulus
        for i in range(len(prod) - 1, self.k - 1, -1):
            c = prod[i]
            if c:
                for j in range(self.k + 1):
                    prod[i - self.k + j] = (prod[i - self.k + j] - c * m[j]) % self.p
        return self._from(prod[: self.k])

    def mul(self, a: int, b: int) -> int:
        return self._mul[a][b]

    def inv(self, a: int) -> int:
        return next(b for b in range(1, self.q) if self._mul[a][b] == 1)

    def primitive_element(self) -> int:
        for a in range(2 if self.q > 2 else 1, self.q):
            x, n = a, 1
            while x != 1:
                x = self.mul(x, a)
                n += 1
            if n == self.q - 1:
                return a
        raise GroupError("no primitive element")


def psl2(q: int) -> PermGroup:
    """PSL(2, q) acting on the q + 1 points of the projective line."""
    F = GF(q)
    inf = q
    a = F.primitive_element()
    a2 = F.mul(a, a)

    def mobius(fn):
        return tuple(fn(x) for x in range(q + 1))

    one = 1
    trans = mobius(lambda x: inf if x == inf else F.add(x, one))
    scale = mobius(lambda x: inf if x == inf else F.mul(a2, x))
    invert = mobius(lambda x: 0 if x == inf else (inf if x == 0 else F.neg(F.inv(x))))
    return PermGroup([trans, scale, invert], q + 1, f"PSL(2,{q})")


M11_GENERATORS = [
    [(1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11)],
    [(3, 7, 11, 8), (4, 10, 5, 6)],
]


def mathieu11() -> PermGroup:
    return PermGroup([from_cycles(c, 11) for c in M11_GENERATORS], 11, "M11")


def quotient(group: PermGroup, normal: PermGroup, cap: int = DEFAULT_ORDER_CAP) -> PermGroup:
    """G/N as the action of G on the right cosets of a normal subgroup N."""
    n_elems = normal.elements(cap)
    cosets: dict[frozenset, int] = {}
    reps = []
    for x in group.elements(cap):
        c = frozenset(mul(h, x) for h in n_elems)
        if c not in cosets:
            cosets[c] = len(reps)
            reps.append(x)
    gens = []
    for s in group.generators:
        img = []
        for r in reps:
            c = frozenset(mul(h, mul(r, s)) for h in n_elems)
            img.append(cosets[c])
        gens.append(tuple(img))
    return PermGroup(gens, len(reps), f"{group.name}/{normal.name}")


def is_normal(group: PermGroup, sub: PermGroup) -> bool:
    for s in group.generators:
        sinv = inverse(s)
        for h in sub.generators:
            if not sub.contains(mul(mul(sinv, h), s)):
                return False
    return True


# the isomorphism types of groups of orders 7..15 (5 of order 8, 5 of order 12,
# 2 each of orders 9, 10, 14, one each of the remaining orders)
SMALL_GROUPS_7_TO_15 = (
    "C7",
    "C8", "C4 x C2", "EA(2,3)", "D4", "Q8",
    "C9", "C3 x C3",
    "C10", "D5",
    "C11",
    "C12", "C6 x C2", "A4", "D6", "Q12",
    "C13",
    "C14", "D7",
    "C15",
)
