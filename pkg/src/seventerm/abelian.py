"""Finitely generated abelian groups presented by generators and relations."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property
from typing import Iterator, Optional, Sequence

from .intlin import IntegerLattice, IntMatrix, smith_normal_form


class FgAbelianGroup:
    """Z^ngens modulo the row lattice of ``relations``.

    Elements are integer coordinate vectors; two vectors represent the same
    element iff their difference lies in the relation lattice.  ``canonical``
    picks a unique representative per coset.
    """

    def __init__(self, ngens: int, relations: Sequence[Sequence[int]] = ()) -> None:
        self.ngens = ngens
        self.relations = tuple(tuple(int(v) for v in row) for row in relations)
        for row in self.relations:
            if len(row) != ngens:
                raise ValueError("relation length does not match generator count")

    @cached_property
    def lattice(self) -> IntegerLattice:
        return IntegerLattice(self.ngens, self.relations)

    def canonical(self, coords: Sequence[int]) -> tuple[int, ...]:
        return self.lattice.reduce(coords)

    def zero(self) -> tuple[int, ...]:
        return (0,) * self.ngens

    def is_zero(self, coords: Sequence[int]) -> bool:
        return not any(self.canonical(coords))

    def equal(self, a: Sequence[int], b: Sequence[int]) -> bool:
        return self.canonical(a) == self.canonical(b)

    def add(self, a: Sequence[int], b: Sequence[int]) -> tuple[int, ...]:
        return self.canonical([x + y for x, y in zip(a, b)])

    def sub(self, a: Sequence[int], b: Sequence[int]) -> tuple[int, ...]:
        return self.canonical([x - y for x, y in zip(a, b)])

    def neg(self, a: Sequence[int]) -> tuple[int, ...]:
        return self.canonical([-x for x in a])

    def scale(self, k: int, a: Sequence[int]) -> tuple[int, ...]:
        return self.canonical([k * x for x in a])

    @cached_property
    def invariant_factors(self) -> tuple[int, ...]:
        """Nontrivial torsion orders d1 | d2 | ... followed by one 0 per free rank."""
        if not self.relations:
            return (0,) * self.ngens
        snf = smith_normal_form(IntMatrix.from_rows(self.relations, self.ngens))
        fac = list(snf.invariant_factors)
        free = self.ngens - len(fac)
        return tuple(d for d in fac if d != 1) + (0,) * free

    @cached_property
    def is_finite(self) -> bool:
        return len(self.lattice.pivot_cols) == self.ngens

    @cached_property
    def order(self) -> Optional[int]:
        """Group order, or None when infinite."""
        if not self.is_finite:
            return None
        p = 1
        for i, j in enumerate(self.lattice.pivot_cols):
            p *= self.lattice.basis[i][j]
        return p

    def elements(self) -> Iterator[tuple[int, ...]]:
        """All elements of a finite group, zero first, as canonical tuples."""
        if not self.is_finite:
            raise ValueError("cannot enumerate an infinite group")
        pivots = [self.lattice.basis[i][j] for i, j in enumerate(self.lattice.pivot_cols)]
        for combo in itertools.product(*[range(p) for p in pivots]):
            yield tuple(combo)

    def element_order(self, coords: Sequence[int]) -> Optional[int]:
        a = self.canonical(coords)
        acc = a
        n = 1
        bound = self.order
        while any(acc):
            acc = self.add(acc, a)
            n += 1
            if bound is not None and n > bound:
                raise AssertionError("order computation exceeded group order")
            if bound is None and n > 10**6:
                return None
        return n

    def uniform_exponent(self) -> Optional[int]:
        """d such that the relation lattice is exactly d*Z^ngens (0 for Z^ngens), else None."""
        if not self.relations:
            return 0
        rows = self.lattice.hnf_rows()
        if not rows:
            return 0
        if len(rows) != self.ngens:
            return None
        d = rows[0][0]
        for i, row in enumerate(rows):
            if any(row[j] != (d if j == i else 0) for j in range(self.ngens)):
                return None
        return d

    def contains_coords(self, coords: Sequence[int]) -> bool:
        return len(coords) == self.ngens

    def __repr__(self) -> str:
        return f"FgAbelianGroup(ngens={self.ngens}, invariant_factors={self.invariant_factors})"


def diagonal_group(orders: Sequence[int]) -> FgAbelianGroup:
    """Direct sum of cyclic groups Z_{d} (d = 0 meaning Z)."""
    n = len(orders)
    rels = [[orders[i] if j == i else 0 for j in range(n)] for i in range(n) if orders[i]]
    return FgAbelianGroup(n, rels)


@dataclass(frozen=True)
class ModuleElement:
    """An element of an FgAbelianGroup in canonical coordinates."""

    owner: FgAbelianGroup
    coords: tuple[int, ...]

    @staticmethod
    def make(owner: FgAbelianGroup, coords: Sequence[int]) -> "ModuleElement":
        return ModuleElement(owner, owner.canonical(coords))

    def __add__(self, other: "ModuleElement") -> "ModuleElement":
        if other.owner is not self.owner:
            raise ValueError("elements of different groups")
        return ModuleElement(self.owner, self.owner.add(self.coords, other.coords))

    def __neg__(self) -> "ModuleElement":
        return ModuleElement(self.owner, self.owner.neg(self.coords))

    def __sub__(self, other: "ModuleElement") -> "ModuleElement":
        return self + (-other)

    def is_zero(self) -> bool:
        return not any(self.coords)


class AbelianMorphism:
    """Homomorphism between presented abelian groups, as a matrix on generators.

    ``matrix`` has shape (dst.ngens, src.ngens): image coords = matrix @ coords.
    """

    def __init__(self, src: FgAbelianGroup, dst: FgAbelianGroup, matrix: IntMatrix) -> None:
        if matrix.rows != dst.ngens or matrix.cols != src.ngens:
            raise ValueError("matrix shape does not match source/destination")
        self.src = src
        self.dst = dst
        self.matrix = matrix
        for rel in src.relations:
            if not dst.is_zero(matrix.vec_mul(rel)):
                raise ValueError("matrix does not map source relations into the destination lattice")

    def apply(self, coords: Sequence[int]) -> tuple[int, ...]:
        return self.dst.canonical(self.matrix.vec_mul(list(coords)))

    @staticmethod
    def identity(g: FgAbelianGroup) -> "AbelianMorphism":
        return AbelianMorphism(g, g, IntMatrix.identity(g.ngens))
