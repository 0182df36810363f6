"""Independent mod-2 reference implementation used only by the tests.

Cochains with Z_2 coefficients are bitmasks indexed by full tuples over the
group (identity included, forced to zero by construction).  All linear
algebra is GF(2) row reduction on Python ints; nothing here touches the
package's integer Smith machinery, so agreement is meaningful.
"""

from __future__ import annotations

import itertools


def tuples(order: int, degree: int):
    return list(itertools.product(range(order), repeat=degree))


def tindex(t, order: int) -> int:
    idx = 0
    for g in t:
        idx = idx * order + g
    return idx


def delta_mask(mul, degree: int, table_bits: int, order: int) -> int:
    """Coboundary of a bitmask cochain (trivial Z_2 coefficients)."""
    out = 0
    for s in tuples(order, degree + 1):
        acc = (table_bits >> tindex(s[1:], order)) & 1
        for k in range(1, degree + 1):
            merged = s[: k - 1] + (mul[s[k - 1]][s[k]],) + s[k + 1 :]
            acc ^= (table_bits >> tindex(merged, order)) & 1
        acc ^= (table_bits >> tindex(s[:degree], order)) & 1
        if acc:
            out |= 1 << tindex(s, order)
    return out


def normalized_basis_vectors(order: int, degree: int):
    """One bitmask per tuple of non-identity entries."""
    out = []
    for t in tuples(order, degree):
        if all(g != 0 for g in t):
            out.append(1 << tindex(t, order))
    return out


class Gf2Space:
    """Row space over GF(2) with reduction, kept in echelon form."""

    def __init__(self):
        self.rows: list[int] = []  # decreasing leading bits

    def reduce(self, v: int) -> int:
        for r in self.rows:
            if v ^ r < v:
                v ^= r
        return v

    def add(self, v: int) -> bool:
        v = self.reduce(v)
        if v == 0:
            return False
        self.rows.append(v)
        self.rows.sort(reverse=True)
        # full reduction keeps canonical coset representatives unique
        for i in range(len(self.rows)):
            for j in range(len(self.rows)):
                if i != j and self.rows[i] ^ self.rows[j] < self.rows[i]:
                    self.rows[i] ^= self.rows[j]
        self.rows = sorted((r for r in self.rows if r), reverse=True)
        return True

    @property
    def dim(self) -> int:
        return len(self.rows)

    def __contains__(self, v: int) -> bool:
        return self.reduce(v) == 0


def cocycle_space(mul, degree: int) -> Gf2Space:
    """Basis of normalized degree-``degree`` cocycles, by kernel back-substitution."""
    order = len(mul)
    gens = normalized_basis_vectors(order, degree)
    images = [delta_mask(mul, degree, g, order) for g in gens]
    # eliminate: rows are (image, preimage) pairs
    pivots: list[tuple[int, int]] = []
    kernel = Gf2Space()
    for img, pre in zip(images, gens):
        for pimg, ppre in pivots:
            if img ^ pimg < img:
                img ^= pimg
                pre ^= ppre
        if img:
            pivots.append((img, pre))
        else:
            kernel.add(pre)
    return kernel


def coboundary_space(mul, degree: int) -> Gf2Space:
    """Basis of degree-``degree`` coboundaries of normalized cochains."""
    order = len(mul)
    space = Gf2Space()
    for g in normalized_basis_vectors(order, degree - 1):
        space.add(delta_mask(mul, degree - 1, g, order))
    return space


def cohomology_dim(mul, degree: int) -> int:
    return cocycle_space(mul, degree).dim - coboundary_space(mul, degree).dim


def cohomology_dim_enumerated(mul, degree: int) -> int:
    """Literal enumeration of all normalized cochains (small spaces only)."""
    order = len(mul)
    gens = normalized_basis_vectors(order, degree)
    if len(gens) > 16:
        raise ValueError("space too large to enumerate literally")
    cocycles = []
    for bits in range(1 << len(gens)):
        v = 0
        for i, g in enumerate(gens):
            if (bits >> i) & 1:
                v |= g
        if delta_mask(mul, degree, v, order) == 0:
            cocycles.append(v)
    cob = set()
    prev = normalized_basis_vectors(order, degree - 1)
    if len(prev) > 16:
        raise ValueError("coboundary space too large to enumerate literally")
    for bits in range(1 << len(prev)):
        v = 0
        for i, g in enumerate(prev):
            if (bits >> i) & 1:
                v |= g
        cob.add(delta_mask(mul, degree - 1, v, order))
    # number of classes = |Z| / |B|
    assert len(cocycles) % len(cob) == 0
    classes = len(cocycles) // len(cob)
    dim = classes.bit_length() - 1
    assert 1 << dim == classes
    return dim


class ClassSpace:
    """H^n as explicit canonical coset representatives over GF(2).

    The coboundary basis is kept fully reduced, so ``canonical`` (reduction
    mod coboundaries) is a unique normal form per cohomology class.
    """

    def __init__(self, mul, degree: int):
        self.order = len(mul)
        self.degree = degree
        self.cocycles = cocycle_space(mul, degree)
        self.cobound = coboundary_space(mul, degree)
        span = Gf2Space()
        for row in self.cobound.rows:
            span.add(row)
        self.reps: list[int] = []
        for z in self.cocycles.rows:
            if span.reduce(z):
                self.reps.append(self.cobound.reduce(z))
                span.add(z)

    @property
    def dim(self) -> int:
        return len(self.reps)

    def canonical(self, cocycle_bits: int) -> int:
        return self.cobound.reduce(cocycle_bits)

    def all_classes(self) -> list[int]:
        out = set()
        for bits in range(1 << len(self.reps)):
            v = 0
            for i, r in enumerate(self.reps):
                if (bits >> i) & 1:
                    v ^= r
            out.add(self.canonical(v))
        assert len(out) == 1 << len(self.reps)
        return sorted(out)
