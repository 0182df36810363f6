"""Finite groups as multiplication tables, with the constructions used downstream.

Elements are indices 0..order-1 and index 0 is always the identity.  All
constructions (subgroups, quotients, normalizers, semidirect products) are
exhaustive table computations; the groups this tool targets are small.
"""

from __future__ import annotations

import itertools
import random
from functools import cached_property
from typing import Callable, Iterable, Optional, Sequence

from .errors import ActionNotHomomorphic, InputError, NotNormal

_ASSOC_EXHAUSTIVE_LIMIT = 512


class FiniteGroup:
    """Group given by a dense multiplication table over indices 0..order-1."""

    def __init__(
        self,
        mul: Sequence[Sequence[int]],
        labels: Optional[Sequence[str]] = None,
        name: str = "G",
        _trusted: bool = False,
    ) -> None:
        self.mul = tuple(tuple(int(v) for v in row) for row in mul)
        self.order = len(self.mul)
        self.name = name
        self.labels = tuple(labels) if labels is not None else None
        if any(len(row) != self.order for row in self.mul):
            raise InputError("multiplication table is not square")
        if self.labels is not None and len(self.labels) != self.order:
            raise InputError("label count does not match order")
        self.identity = 0
        inv = [None] * self.order
        for a in range(self.order):
            if self.mul[0][a] != a or self.mul[a][0] != a:
                raise InputError("index 0 is not a two-sided identity")
            for b in range(self.order):
                if self.mul[a][b] == 0:
                    if inv[a] is not None and inv[a] != b:
                        raise InputError("element has two right inverses")
                    inv[a] = b
        if any(b is None for b in inv):
            raise InputError("some element has no inverse")
        for a in range(self.order):
            if self.mul[inv[a]][a] != 0:
                raise InputError("right inverse is not a left inverse")
        self.inv = tuple(inv)
        if not _trusted:
            self._check_associativity()
        self._caches: dict = {}

    def _check_associativity(self) -> None:
        n = self.order
        mul = self.mul
        if n <= _ASSOC_EXHAUSTIVE_LIMIT:
            triples = itertools.product(range(n), repeat=3)
        else:
            rng = random.Random(0xA550C)
            triples = (
                (rng.randrange(n), rng.randrange(n), rng.randrange(n)) for _ in range(200_000)
            )
        for a, b, c in triples:
            if mul[mul[a][b]][c] != mul[a][mul[b][c]]:
                raise InputError(f"associativity fails at ({a}, {b}, {c})")

    # -- basic operations ----------------------------------------------------

    def op(self, a: int, b: int) -> int:
        return self.mul[a][b]

    def inverse(self, a: int) -> int:
        return self.inv[a]

    def conjugate(self, g: int, x: int) -> int:
        """g * x * g^-1"""
        return self.mul[self.mul[g][x]][self.inv[g]]

    def commutator(self, a: int, b: int) -> int:
        """a * b * a^-1 * b^-1"""
        return self.mul[self.mul[self.mul[a][b]][self.inv[a]]][self.inv[b]]

    def element_order(self, a: int) -> int:
        x = a
        n = 1
        while x != 0:
            x = self.mul[x][a]
            n += 1
        return n

    def power(self, a: int, k: int) -> int:
        if k < 0:
            a, k = self.inv[a], -k
        x = 0
        for _ in range(k):
            x = self.mul[x][a]
        return x

    def label(self, a: int) -> str:
        return self.labels[a] if self.labels else str(a)

    @cached_property
    def is_abelian(self) -> bool:
        return all(
            self.mul[a][b] == self.mul[b][a]
            for a in range(self.order)
            for b in range(a + 1, self.order)
        )

    @cached_property
    def key(self) -> int:
        return hash(self.mul)

    def __repr__(self) -> str:
        return f"FiniteGroup({self.name}, order={self.order})"

    # -- constructors ----------------------------------------------------------

    @staticmethod
    def from_operation(elements: Sequence, op: Callable, name: str = "G") -> "FiniteGroup":
        """Build a table group from explicit elements and a binary operation.

        The identity is detected and moved to index 0.
        """
        elems = list(elements)
        ident = None
        for e in elems:
            if all(op(e, x) == x == op(x, e) for x in elems):
                ident = e
                break
        if ident is None:
            raise InputError("operation has no identity on the given elements")
        elems.remove(ident)
        elems.insert(0, ident)
        index = {e: i for i, e in enumerate(elems)}
        mul = [[index[op(a, b)] for b in elems] for a in elems]
        return FiniteGroup(mul, labels=[str(e) for e in elems], name=name)

    @staticmethod
    def cyclic(n: int) -> "FiniteGroup":
        mul = [[(a + b) % n for b in range(n)] for a in range(n)]
        return FiniteGroup(mul, name=f"Z{n}", _trusted=True)

    @staticmethod
    def direct_product(a: "FiniteGroup", b: "FiniteGroup") -> "FiniteGroup":
        nb = b.order
        mul = [
            [
                a.mul[x1][x2] * nb + b.mul[y1][y2]
                for x2 in range(a.order)
                for y2 in range(nb)
            ]
            for x1 in range(a.order)
            for y1 in range(nb)
        ]
        labels = [f"({a.label(x)},{b.label(y)})" for x in range(a.order) for y in range(nb)]
        return FiniteGroup(mul, labels=labels, name=f"{a.name}x{b.name}", _trusted=True)

    @staticmethod
    def dihedral(n: int) -> "FiniteGroup":
        """Dihedral group of order 2n: indices 0..n-1 rotations, n..2n-1 reflections."""

        def op(x: int, y: int) -> int:
            rx, sx = x % n, x // n
            ry, sy = y % n, y // n
            if sx == 0:
                return (rx + ry) % n + n * sy
            return (rx - ry) % n + n * (1 - sy)

        mul = [[op(x, y) for y in range(2 * n)] for x in range(2 * n)]
        return FiniteGroup(mul, name=f"D{n}")

    @staticmethod
    def quaternion8() -> "FiniteGroup":
        """Quaternion group {1, -1, i, -i, j, -j, k, -k} of order 8."""
        labels = ["1", "-1", "i", "-i", "j", "-j", "k", "-k"]
        # sign s in {0,1} and axis in {1:"i", 2:"j", 3:"k"}; element = (sign, axis), axis 0 scalar
        def decode(x: int) -> tuple[int, int]:
            return x % 2, x // 2

        def encode(s: int, axis: int) -> int:
            return axis * 2 + s

        table_axis = {
            (1, 1): (1, 0), (2, 2): (1, 0), (3, 3): (1, 0),
            (1, 2): (0, 3), (2, 3): (0, 1), (3, 1): (0, 2),
            (2, 1): (1, 3), (3, 2): (1, 1), (1, 3): (1, 2),
        }

        def op(x: int, y: int) -> int:
            sx, ax = decode(x)
            sy, ay = decode(y)
            if ax == 0:
                return encode((sx + sy) % 2, ay)
            if ay == 0:
                return encode((sx + sy) % 2, ax)
            sign, axis = table_axis[(ax, ay)]
            return encode((sx + sy + sign) % 2, axis)

        mul = [[op(x, y) for y in range(8)] for x in range(8)]
        return FiniteGroup(mul, labels=labels, name="Q8")

    @staticmethod
    def symmetric3() -> "FiniteGroup":
        """S_3 on {0,1,2}; even permutations come first (indices 0..2)."""
        perms = [(0, 1, 2), (1, 2, 0), (2, 0, 1), (0, 2, 1), (1, 0, 2), (2, 1, 0)]
        index = {p: i for i, p in enumerate(perms)}

        def op(x: int, y: int) -> int:
            p, q = perms[x], perms[y]
            return index[tuple(p[q[i]] for i in range(3))]

        mul = [[op(x, y) for y in range(6)] for x in range(6)]
        labels = ["".join(map(str, p)) for p in perms]
        return FiniteGroup(mul, labels=labels, name="S3")

    @staticmethod
    def heisenberg(k: int) -> "FiniteGroup":
        """Upper unitriangular 3x3 matrices over Z_k; order k^3, center of order k."""
        if k < 2:
            raise InputError("heisenberg modulus must be >= 2")

        def pack(x: int, y: int, z: int) -> int:
            return (x * k + y) * k + z

        mul = [[0] * k**3 for _ in range(k**3)]
        labels = [""] * k**3
        for x in range(k):
            for y in range(k):
                for z in range(k):
                    i = pack(x, y, z)
                    labels[i] = f"({x},{y},{z})"
                    for a in range(k):
                        for b in range(k):
                            for c in range(k):
                                mul[i][pack(a, b, c)] = pack(
                                    (x + a) % k, (y + b) % k, (z + c + x * b) % k
                                )
        return FiniteGroup(mul, labels=labels, name=f"Heis{k}", _trusted=True)


class SubgroupHandle:
    """A subgroup of ``parent`` given by its sorted element indices."""

    def __init__(self, parent: FiniteGroup, elements: Iterable[int]) -> None:
        self.parent = parent
        self.elements = tuple(sorted(set(elements)))
        self.element_set = frozenset(self.elements)
        if 0 not in self.element_set:
            raise InputError("subgroup does not contain the identity")
        for a in self.elements:
            if parent.inv[a] not in self.element_set:
                raise InputError("subgroup not closed under inverses")
            for b in self.elements:
                if parent.mul[a][b] not in self.element_set:
                    raise InputError("subgroup not closed under multiplication")

    @property
    def order(self) -> int:
        return len(self.elements)

    def __contains__(self, a: int) -> bool:
        return a in self.element_set

    @cached_property
    def is_normal(self) -> bool:
        g = self.parent
        return all(
            g.conjugate(x, h) in self.element_set for x in range(g.order) for h in self.elements
        )

    def as_group(self) -> tuple[FiniteGroup, dict[int, int]]:
        """The subgroup as a standalone FiniteGroup plus parent-index -> new-index map."""
        to_new = {e: i for i, e in enumerate(self.elements)}
        mul = [
            [to_new[self.parent.mul[a][b]] for b in self.elements] for a in self.elements
        ]
        labels = [self.parent.label(e) for e in self.elements]
        sub = FiniteGroup(mul, labels=labels, name=f"{self.parent.name}_sub", _trusted=True)
        return sub, to_new

    def generators(self) -> tuple[int, ...]:
        """A small generating set (greedy)."""
        gens: list[int] = []
        closure = {0}
        for e in self.elements:
            if e not in closure:
                gens.append(e)
                closure = set(subgroup_closure(self.parent, gens).elements)
                if len(closure) == self.order:
                    break
        return tuple(gens)

    def __repr__(self) -> str:
        return f"SubgroupHandle(order={self.order} in {self.parent.name})"


class GroupMorphism:
    """Homomorphism between table groups, stored as the full image table."""

    def __init__(self, src: FiniteGroup, dst: FiniteGroup, image: Sequence[int]) -> None:
        self.src = src
        self.dst = dst
        self.image = tuple(int(v) for v in image)
        if len(self.image) != src.order:
            raise InputError("image table length does not match source order")
        if self.image[0] != 0:
            raise InputError("morphism does not preserve the identity")
        for a in range(src.order):
            for b in range(src.order):
                if self.image[src.mul[a][b]] != dst.mul[self.image[a]][self.image[b]]:
                    raise InputError("image table is not a homomorphism")

    def __call__(self, a: int) -> int:
        return self.image[a]

    def compose(self, inner: "GroupMorphism") -> "GroupMorphism":
        """self o inner"""
        if inner.dst is not self.src:
            raise InputError("composition mismatch")
        return GroupMorphism(inner.src, self.dst, [self.image[x] for x in inner.image])

    @cached_property
    def is_surjective(self) -> bool:
        return len(set(self.image)) == self.dst.order

    @cached_property
    def is_injective(self) -> bool:
        return len(set(self.image)) == self.src.order

    @staticmethod
    def identity(g: FiniteGroup) -> "GroupMorphism":
        return GroupMorphism(g, g, list(range(g.order)))


def subgroup_closure(g: FiniteGroup, gens: Iterable[int]) -> SubgroupHandle:
    """Smallest subgroup of g containing gens."""
    closure = {0}
    frontier = [0]
    gen_list = [x for x in gens]
    for x in gen_list:
        if x not in closure:
            closure.add(x)
            frontier.append(x)
    while frontier:
        a = frontier.pop()
        for b in gen_list + [g.inv[a]]:
            for c in (g.mul[a][b], g.mul[b][a], g.inv[a]):
                if c not in closure:
                    closure.add(c)
                    frontier.append(c)
    # close under multiplication until stable (generators may interact)
    changed = True
    while changed:
        changed = False
        items = sorted(closure)
        for a in items:
            for b in items:
                c = g.mul[a][b]
                if c not in closure:
                    closure.add(c)
                    changed = True
    return SubgroupHandle(g, closure)


def morphism_kernel_image(phi: GroupMorphism) -> tuple[SubgroupHandle, SubgroupHandle]:
    kernel = [a for a in range(phi.src.order) if phi.image[a] == 0]
    image = sorted(set(phi.image))
    return SubgroupHandle(phi.src, kernel), SubgroupHandle(phi.dst, image)


def quotient_with_transversal(
    g: FiniteGroup, n: SubgroupHandle
) -> tuple[FiniteGroup, GroupMorphism, tuple[int, ...]]:
    """Quotient G/N with projection and the canonical section.

    The section picks the minimal element index in each coset; cosets are
    numbered by increasing minimal element, which puts the identity coset at
    index 0 and makes the section preserve the identity.
    """
    if n.parent is not g:
        raise InputError("subgroup belongs to a different group")
    if not n.is_normal:
        raise NotNormal("subgroup is not normal")
    coset_of = [-1] * g.order
    reps: list[int] = []
    for a in range(g.order):
        if coset_of[a] >= 0:
            continue
        rep_index = len(reps)
        reps.append(a)
        for h in n.elements:
            coset_of[g.mul[a][h]] = rep_index
    q_order = len(reps)
    mul = [
        [coset_of[g.mul[reps[i]][reps[j]]] for j in range(q_order)] for i in range(q_order)
    ]
    labels = [f"{g.label(r)}N" for r in reps]
    q = FiniteGroup(mul, labels=labels, name=f"{g.name}/{n.order}", _trusted=True)
    pi = GroupMorphism(g, q, coset_of)
    return q, pi, tuple(reps)


def normalizer(g: FiniteGroup, h: SubgroupHandle) -> SubgroupHandle:
    """{x in G : x H x^-1 = H}, computed exhaustively."""
    members = [
        x
        for x in range(g.order)
        if all(g.conjugate(x, e) in h.element_set for e in h.elements)
    ]
    return SubgroupHandle(g, members)


def centralizer_center(g: FiniteGroup) -> SubgroupHandle:
    members = [
        x for x in range(g.order) if all(g.mul[x][y] == g.mul[y][x] for y in range(g.order))
    ]
    return SubgroupHandle(g, members)


def commutator_subgroup(g: FiniteGroup) -> SubgroupHandle:
    comms = {g.commutator(a, b) for a in range(g.order) for b in range(g.order)}
    return subgroup_closure(g, comms)


def structural_subgroups(g: FiniteGroup) -> tuple[SubgroupHandle, SubgroupHandle]:
    """(center, commutator subgroup)"""
    return centralizer_center(g), commutator_subgroup(g)


def semidirect_product(
    m: FiniteGroup, g: FiniteGroup, action: Sequence[Sequence[int]]
) -> tuple[FiniteGroup, GroupMorphism, GroupMorphism]:
    """M x| G for abelian M; ``action[x]`` is the permutation of M given by x in G.

    Pairs (a, x) are packed as a * |G| + x; the law is
    (a, x)(b, y) = (a + x.b, xy).  Returns (E, i0: M -> E, p0: E -> G).
    """
    if not m.is_abelian:
        raise InputError("kernel of a semidirect product must be abelian here")
    if len(action) != g.order:
        raise ActionNotHomomorphic("need one automorphism per group element")
    for x in range(g.order):
        perm = action[x]
        if sorted(perm) != list(range(m.order)) or perm[0] != 0:
            raise ActionNotHomomorphic(f"action of {x} is not an automorphism table")
        for a in range(m.order):
            for b in range(m.order):
                if perm[m.mul[a][b]] != m.mul[perm[a]][perm[b]]:
                    raise ActionNotHomomorphic(f"action of {x} is not multiplicative")
    for x in range(g.order):
        for y in range(g.order):
            xy = g.mul[x][y]
            for a in range(m.order):
                if action[x][action[y][a]] != action[xy][a]:
                    raise ActionNotHomomorphic("action is not a homomorphism into Aut(M)")
    ng = g.order
    mul = [
        [
            m.mul[a][action[x][b]] * ng + g.mul[x][y]
            for b in range(m.order)
            for y in range(ng)
        ]
        for a in range(m.order)
        for x in range(ng)
    ]
    labels = [f"({m.label(a)};{g.label(x)})" for a in range(m.order) for x in range(ng)]
    e = FiniteGroup(mul, labels=labels, name=f"{m.name}x|{g.name}")
    i0 = GroupMorphism(m, e, [a * ng for a in range(m.order)])
    p0 = GroupMorphism(e, g, [x % ng for x in range(m.order * ng)])
    return e, i0, p0
