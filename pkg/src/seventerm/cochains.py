"""Normalized cochains on finite groups and the bar-resolution coboundary.

A degree-n cochain is a function from n-tuples of group elements to module
coordinates that vanishes whenever an argument is the identity; only the
values on tuples of non-identity elements are stored.  The sign conventions
are fixed once and for all:

    (d0 m)(g)        = g.m - m
    (d1 u)(g,h)      = g.u(h) - u(gh) + u(g)
    (d2 f)(g,h,k)    = g.f(h,k) - f(gh,k) + f(g,hk) - f(g,h)
    (d3 c)(g,h,k,l)  = g.c(h,k,l) - c(gh,k,l) + c(g,hk,l) - c(g,h,kl) + c(g,h,k)

so that a 2-cocycle is exactly a factor set for the extension group law
(m, g)(m', g') = (m + g.m' + f(g, g'), gg').
"""

from __future__ import annotations

import itertools
from typing import Iterator, Optional, Sequence

from .abelian import ModuleElement
from .errors import DegreeOverflow, InputError
from .gmodules import GModule

MAX_DEGREE = 3


def tuple_count(order: int, degree: int) -> int:
    return (order - 1) ** degree


def tuple_index(t: Sequence[int], order: int) -> int:
    idx = 0
    for g in t:
        idx = idx * (order - 1) + (g - 1)
    return idx


def index_tuple(idx: int, degree: int, order: int) -> tuple[int, ...]:
    out = []
    for _ in range(degree):
        out.append(idx % (order - 1) + 1)
        idx //= order - 1
    return tuple(reversed(out))


def nonidentity_tuples(order: int, degree: int) -> Iterator[tuple[int, ...]]:
    return itertools.product(range(1, order), repeat=degree)


class Cochain:
    """Normalized cochain of degree 0..3 with values in a G-module."""

    def __init__(self, module: GModule, degree: int, table: Optional[list] = None) -> None:
        if not 0 <= degree <= MAX_DEGREE:
            raise DegreeOverflow(f"degree {degree} not supported")
        self.module = module
        self.group = module.group
        self.degree = degree
        r = module.base.ngens
        size = tuple_count(self.group.order, degree)
        if table is None:
            table = [(0,) * r for _ in range(size)]
        if len(table) != size:
            raise InputError("table size does not match the tuple space")
        self._table = [tuple(int(v) for v in row) for row in table]

    # -- access ----------------------------------------------------------------

    def value(self, args: Sequence[int]) -> tuple[int, ...]:
        """Raw coordinate value at a tuple (zero when any argument is the identity)."""
        if len(args) != self.degree:
            raise InputError("argument count does not match the degree")
        if any(a == 0 for a in args):
            return (0,) * self.module.base.ngens
        return self._table[tuple_index(args, self.group.order)]

    def element(self, *args: int) -> ModuleElement:
        return ModuleElement.make(self.module.base, self.value(args))

    def set_value(self, args: Sequence[int], coords: Sequence[int]) -> None:
        if any(a == 0 for a in args):
            if any(coords):
                raise InputError("normalized cochains vanish on identity tuples")
            return
        self._table[tuple_index(args, self.group.order)] = tuple(int(v) for v in coords)

    # -- arithmetic --------------------------------------------------------------

    def _binop(self, other: "Cochain", sign: int) -> "Cochain":
        if other.degree != self.degree or (
            other.module is not self.module and other.module.key != self.module.key
        ):
            raise InputError("cochain mismatch")
        table = [
            tuple(a + sign * b for a, b in zip(ra, rb))
            for ra, rb in zip(self._table, other._table)
        ]
        return Cochain(self.module, self.degree, table)

    def __add__(self, other: "Cochain") -> "Cochain":
        return self._binop(other, 1)

    def __sub__(self, other: "Cochain") -> "Cochain":
        return self._binop(other, -1)

    def __neg__(self) -> "Cochain":
        return self.scale(-1)

    def scale(self, k: int) -> "Cochain":
        return Cochain(self.module, self.degree, [tuple(k * v for v in row) for row in self._table])

    def canonicalize(self) -> "Cochain":
        base = self.module.base
        return Cochain(self.module, self.degree, [base.canonical(row) for row in self._table])

    def is_zero(self) -> bool:
        base = self.module.base
        return all(not any(base.canonical(row)) for row in self._table)

    def equals(self, other: "Cochain") -> bool:
        return (self - other).is_zero()

    # -- flat vectors for the linear algebra layer -------------------------------

    def flat(self) -> list[int]:
        return [v for row in self._table for v in row]

    @staticmethod
    def from_flat(module: GModule, degree: int, vec: Sequence[int]) -> "Cochain":
        r = module.base.ngens
        size = tuple_count(module.group.order, degree)
        if len(vec) != size * r:
            raise InputError("flat vector has the wrong length")
        table = [tuple(vec[i * r : (i + 1) * r]) for i in range(size)]
        return Cochain(module, degree, table)

    @staticmethod
    def zero(module: GModule, degree: int) -> "Cochain":
        return Cochain(module, degree)

    def __repr__(self) -> str:
        return f"Cochain(degree={self.degree}, module={self.module.name}, group={self.group.name})"


def coboundary(u: Cochain) -> Cochain:
    """The coboundary of a normalized cochain of degree <= 2."""
    if u.degree >= MAX_DEGREE:
        raise DegreeOverflow("coboundary would exceed the supported degree range")
    return Cochain(u.module, u.degree + 1, list(_coboundary_values(u)))


def coboundary_is_zero(u: Cochain) -> bool:
    """Whether the coboundary vanishes modulo the relation lattice (degrees <= 3)."""
    base = u.module.base
    return all(not any(base.canonical(row)) for row in _coboundary_values(u))


def _coboundary_values(u: Cochain) -> Iterator[tuple[int, ...]]:
    group = u.group
    module = u.module
    n = u.degree
    r = module.base.ngens
    for s in nonidentity_tuples(group.order, n + 1):
        acc = list(module.act_raw(s[0], u.value(s[1:])))
        sign = -1
        for k in range(1, n + 1):
            merged = s[: k - 1] + (group.mul[s[k - 1]][s[k]],) + s[k + 1 :]
            val = u.value(merged)
            if any(val):
                for i in range(r):
                    acc[i] += sign * val[i]
            sign = -sign
        tail = u.value(s[:n])
        for i in range(r):
            acc[i] += sign * tail[i]
        yield tuple(acc)


def delta_entries(
    module: GModule, degree: int
) -> tuple[int, int, list[tuple[int, int, int]]]:
    """Sparse matrix of the degree-``degree`` coboundary on flat cochain vectors.

    Returns (rows, cols, entries); rows index non-identity (degree+1)-tuples
    times module generators, columns index degree-tuples times generators.
    """
    group = module.group
    o = group.order
    r = module.base.ngens
    n = degree
    rows = tuple_count(o, n + 1) * r
    cols = tuple_count(o, n) * r
    entries: list[tuple[int, int, int]] = []
    for s in nonidentity_tuples(o, n + 1):
        base_row = tuple_index(s, o) * r
        acc: dict[tuple[int, int], int] = {}

        def accumulate(col_tuple: Sequence[int], coeff: int, matrix=None) -> None:
            if any(a == 0 for a in col_tuple) and n > 0:
                return
            base_col = (tuple_index(col_tuple, o) if n > 0 else 0) * r
            if matrix is None:
                for i in range(r):
                    key = (base_row + i, base_col + i)
                    acc[key] = acc.get(key, 0) + coeff
            else:
                for i in range(r):
                    for j in range(r):
                        v = matrix[i][j]
                        if v:
                            key = (base_row + i, base_col + j)
                            acc[key] = acc.get(key, 0) + coeff * v

        accumulate(s[1:], 1, matrix=module.action[s[0]])
        sign = -1
        for k in range(1, n + 1):
            merged = s[: k - 1] + (group.mul[s[k - 1]][s[k]],) + s[k + 1 :]
            accumulate(merged, sign)
            sign = -sign
        accumulate(s[:n], sign)
        for (row, col), v in acc.items():
            if v:
                entries.append((row, col, v))
    return rows, cols, entries
