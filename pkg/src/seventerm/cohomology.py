"""Cohomology of finite groups in degrees 1..3 by exact integer reduction.

The complex of normalized cochains is reduced once per (group, action,
degree): the coboundary matrix is diagonalized by unimodular transforms, and
each coefficient quotient (Z, Z_d, or a general presented group) is then read
off cheaply.  Cohomology groups come with explicit generator cocycles, a
class solver, and coboundary witnesses.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Sequence

from .abelian import FgAbelianGroup, diagonal_group
from .errors import InputError, InternalCheckFailed, NotACocycle, NotNormal, SizeBudgetExceeded
from .gmodules import GModule
from .groups import FiniteGroup, SubgroupHandle, quotient_with_transversal
from .cochains import Cochain, coboundary, delta_entries, tuple_count
from .intlin import Diagonalization, LinearSolver, sparse_diagonalize

DEFAULT_BUDGET = 200_000


# ---------------------------------------------------------------------------
# Cached complex data, one entry per (group, action, degree)
# ---------------------------------------------------------------------------


def _group_cache(group: FiniteGroup) -> dict:
    return group._caches


def cached_delta(module: GModule, degree: int) -> tuple[int, int, list[tuple[int, int, int]]]:
    cache = _group_cache(module.group)
    key = ("delta", module.key, degree)
    if key not in cache:
        cache[key] = delta_entries(module, degree)
    return cache[key]


def cached_diag(module: GModule, degree: int) -> tuple[Diagonalization, list[dict[int, int]]]:
    """Diagonalization of the degree-``degree`` coboundary plus V^-1 by columns."""
    cache = _group_cache(module.group)
    key = ("diag", module.key, degree)
    if key not in cache:
        rows, cols, entries = cached_delta(module, degree)
        diag = sparse_diagonalize(rows, cols, entries)
        vinv_cols: list[dict[int, int]] = [dict() for _ in range(cols)]
        for r, row in enumerate(diag.vinv_rows):
            for c, v in row.items():
                vinv_cols[c][r] = v
        cache[key] = (diag, vinv_cols)
    return cache[key]


def _vinv_apply(diag: Diagonalization, vinv_cols: list[dict[int, int]], x: Sequence[int]) -> list[int]:
    out = [0] * diag.n
    for i, xv in enumerate(x):
        if xv:
            for r, v in vinv_cols[i].items():
                out[r] += xv * v
    return out


def lattice_columns(module: GModule, degree: int) -> list[list[int]]:
    """Columns spanning the relation lattice of the degree-``degree`` cochain group."""
    r = module.base.ngens
    size = tuple_count(module.group.order, degree) * r
    cols = []
    for t in range(tuple_count(module.group.order, degree)):
        for rel in module.base.relations:
            col = [0] * size
            for i, v in enumerate(rel):
                col[t * r + i] = v
            cols.append(col)
    return cols


def _budget_cost(order: int, ngens: int, degree: int) -> int:
    return order ** (degree + 1) * ngens


# ---------------------------------------------------------------------------
# Diagonal presentation of a quotient  Z^k / <relation rows>
# ---------------------------------------------------------------------------


class DiagonalPresentation:
    """Quotient of Z^k by integer relation rows, in diagonal coordinates.

    ``coords`` maps a Z^k vector to canonical coordinates in
    ⊕ Z_{orders[j]} (order 0 meaning Z); ``generator`` returns the Z^k vector
    representing the j-th generator.
    """

    def __init__(self, k: int, relation_rows: Sequence[Sequence[int]]) -> None:
        self.k = k
        rows = [list(r) for r in relation_rows]
        entries = [(i, j, v) for i, row in enumerate(rows) for j, v in enumerate(row) if v]
        self._diag = sparse_diagonalize(len(rows), k, entries)
        full_orders = []
        for c in range(k):
            val = self._diag.pivot_value(c)
            full_orders.append(abs(val))
        self.kept = [c for c in range(k) if full_orders[c] != 1]
        self.orders = tuple(full_orders[c] for c in self.kept)
        self.group = diagonal_group(self.orders)

    def coords(self, z: Sequence[int]) -> tuple[int, ...]:
        out = []
        for c in self.kept:
            w = sum(v * z[r] for r, v in self._diag.v_cols[c].items())
            d = self.orders[len(out)]
            out.append(w % d if d else w)
        return tuple(out)

    def generator(self, j: int) -> list[int]:
        c = self.kept[j]
        vec = [0] * self.k
        for i, v in self._diag.vinv_rows[c].items():
            vec[i] = v
        return vec

    @property
    def ngens(self) -> int:
        return len(self.kept)


# ---------------------------------------------------------------------------
# The space of cocycles, with two reduction strategies
# ---------------------------------------------------------------------------


class CocycleSpace:
    """Z^n(B, M): cocycles of one degree, with coordinates over a generating set.

    Exposes the generating cochain vectors, the relation rows coming from the
    coefficient lattice alone, the extra rows coming from coboundaries, and a
    coordinate solver.  Uses a fast route when the coefficient lattice is
    d * Z^r for a single d (this covers Z^r and Z_d^r), and a generic stacked
    kernel otherwise.
    """

    def __init__(self, module: GModule, degree: int, budget: int = DEFAULT_BUDGET) -> None:
        group = module.group
        if _budget_cost(group.order, module.base.ngens, degree) > budget:
            raise SizeBudgetExceeded(
                f"degree-{degree} complex of {group.name} exceeds the size budget"
            )
        self.module = module
        self.degree = degree
        self.rows_n, self.cols_n, self.delta = cached_delta(module, degree)
        self._delta_rows: Optional[list[dict[int, int]]] = None
        self.uniform = module.base.uniform_exponent()
        if self.uniform is not None:
            self._init_fast(self.uniform)
        else:
            self._init_generic()

    # -- fast route: coefficient lattice is d * Z^r ---------------------------

    def _init_fast(self, d: int) -> None:
        diag, vinv_cols = cached_diag(self.module, self.degree)
        self._fdiag = diag
        self._fvinv_cols = vinv_cols
        n = self.cols_n
        s = [diag.pivot_value(c) for c in range(n)]
        if d == 0:
            self.live = [c for c in range(n) if s[c] == 0]
            self.t = {c: 1 for c in self.live}
            self.lattice_rows: list[list[int]] = []
        else:
            self.live = list(range(n))
            self.t = {c: d // math.gcd(s[c], d) for c in self.live}
            g = {c: math.gcd(s[c], d) for c in self.live}
            # generators with g == 1 are zero in every quotient by the lattice
            self.live = [c for c in self.live if g[c] != 1]
            self.lattice_rows = [
                [g[c] if i == j else 0 for j, _ in enumerate(self.live)]
                for i, c in enumerate(self.live)
            ]
        self.k = len(self.live)

    # -- generic route: arbitrary relation lattice ----------------------------

    def _init_generic(self) -> None:
        lat_next = lattice_columns(self.module, self.degree + 1)
        entries = list(self.delta)
        base_col = self.cols_n
        for col in lat_next:
            for i, v in enumerate(col):
                if v:
                    entries.append((i, base_col, v))
            base_col += 1
        diag = sparse_diagonalize(self.rows_n, base_col, entries)
        gens = []
        for c in range(base_col):
            if c not in diag.pivots:
                vec = diag.v_combination({c: 1})[: self.cols_n]
                if any(vec):
                    gens.append(vec)
        self.gens_x = gens
        self.k = len(gens)
        lat_self = lattice_columns(self.module, self.degree)
        self._gen_solver = LinearSolver(
            [list(g) for g in gens] + [list(c) for c in lat_self],
            [],
            self.cols_n,
        )
        self.lattice_rows = self._lattice_relation_rows(lat_self)

    def _lattice_relation_rows(self, lat_self: list[list[int]]) -> list[list[int]]:
        entries = []
        col = 0
        for g in self.gens_x:
            for i, v in enumerate(g):
                if v:
                    entries.append((i, col, v))
            col += 1
        for c in lat_self:
            for i, v in enumerate(c):
                if v:
                    entries.append((i, col, v))
            col += 1
        diag = sparse_diagonalize(self.cols_n, col, entries)
        rows = []
        for c in range(col):
            if c not in diag.pivots:
                vec = diag.v_combination({c: 1})[: self.k]
                if any(vec):
                    rows.append(vec)
        return rows

    # -- shared interface ------------------------------------------------------

    def generator_vector(self, idx: int) -> list[int]:
        """Flat cochain vector of the idx-th generator."""
        if self.uniform is not None:
            c = self.live[idx]
            y = {c: self.t[c]}
            return self._fdiag.v_combination(y)
        return list(self.gens_x[idx])

    def combination_vector(self, z: Sequence[int]) -> list[int]:
        if self.uniform is not None:
            y = {c: self.t[c] * z[i] for i, c in enumerate(self.live) if z[i]}
            return self._fdiag.v_combination(y)
        out = [0] * self.cols_n
        for i, w in enumerate(z):
            if w:
                for j, v in enumerate(self.gens_x[i]):
                    out[j] += w * v
        return out

    def z_coords(self, x: Sequence[int]) -> list[int]:
        """Coordinates of a cocycle vector over the generators (exact)."""
        if self.uniform is not None:
            y = _vinv_apply(self._fdiag, self._fvinv_cols, x)
            d = self.uniform
            for c in range(self.cols_n):
                s = self._fdiag.pivot_value(c)
                if d == 0:
                    if s != 0 and y[c] != 0:
                        raise InternalCheckFailed("cocycle vector outside the kernel")
                else:
                    if (s * y[c]) % d:
                        raise InternalCheckFailed("cocycle vector outside the kernel mod d")
            out = []
            for c in self.live:
                if y[c] % self.t[c]:
                    raise InternalCheckFailed("kernel coordinate not divisible by its index")
                out.append(y[c] // self.t[c])
            return out
        sol = self._gen_solver.solve(list(x))
        if sol is None:
            raise InternalCheckFailed("cocycle vector outside the generated kernel")
        return list(sol.x[: self.k])

    def coboundary_relation_rows(self) -> list[list[int]]:
        """Relations imposed by coboundaries: images of degree-(n-1) basis cochains."""
        if self.degree == 0:
            return []
        rows_prev, cols_prev, prev = cached_delta(self.module, self.degree - 1)
        cols: list[dict[int, int]] = [dict() for _ in range(cols_prev)]
        for r, c, v in prev:
            cols[c][r] = cols[c].get(r, 0) + v
        out = []
        for c in range(cols_prev):
            vec = [0] * self.cols_n
            for r, v in cols[c].items():
                vec[r] = v
            row = self.z_coords(vec)
            if any(row):
                out.append(row)
        return out

    def is_cocycle(self, u: Cochain) -> bool:
        base = self.module.base
        x = u.flat()
        row_vals: dict[int, int] = {}
        for r, c, v in self.delta:
            if x[c]:
                row_vals[r] = row_vals.get(r, 0) + v * x[c]
        r_gens = base.ngens
        per_tuple: dict[int, list[int]] = {}
        for r, v in row_vals.items():
            if v:
                per_tuple.setdefault(r // r_gens, [0] * r_gens)[r % r_gens] += v
        return all(not any(base.canonical(vec)) for vec in per_tuple.values())


# ---------------------------------------------------------------------------
# Cohomology groups, classes and subgroups
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CohomologyClass:
    owner: "PresentedGroup"
    coords: tuple[int, ...]

    def __add__(self, other: "CohomologyClass") -> "CohomologyClass":
        if other.owner is not self.owner:
            raise InputError("classes live in different groups")
        return CohomologyClass(self.owner, self.owner.presentation.add(self.coords, other.coords))

    def __neg__(self) -> "CohomologyClass":
        return CohomologyClass(self.owner, self.owner.presentation.neg(self.coords))

    def __sub__(self, other: "CohomologyClass") -> "CohomologyClass":
        return self + (-other)

    def scale(self, n: int) -> "CohomologyClass":
        return CohomologyClass(self.owner, self.owner.presentation.scale(n, self.coords))

    def is_zero(self) -> bool:
        return not any(self.coords)


class PresentedGroup:
    """Shared behavior: a diagonal presentation plus representative cochains."""

    presentation: FgAbelianGroup
    orders: tuple[int, ...]

    @property
    def ngens(self) -> int:
        return self.presentation.ngens

    def zero_class(self) -> CohomologyClass:
        return CohomologyClass(self, self.presentation.zero())

    def class_from_coords(self, coords: Sequence[int]) -> CohomologyClass:
        return CohomologyClass(self, self.presentation.canonical(coords))

    def cochain_of(self, coords: Sequence[int]) -> Cochain:
        acc = None
        for c, g in zip(coords, self.gens):
            term = g.scale(c)
            acc = term if acc is None else acc + term
        if acc is None:
            acc = Cochain.zero(self.module, self.degree)
        return acc.canonicalize()

    def representative(self, cls: CohomologyClass) -> Cochain:
        return self.cochain_of(cls.coords)

    def all_classes(self):
        if not self.presentation.is_finite:
            raise InputError("group is infinite")
        for coords in self.presentation.elements():
            yield CohomologyClass(self, coords)


class CohomologyGroup(PresentedGroup):
    """H^degree(B, M) with explicit generator cocycles and a class solver."""

    def __init__(self, module: GModule, degree: int, budget: int = DEFAULT_BUDGET) -> None:
        if degree not in (1, 2, 3):
            raise InputError("supported degrees are 1, 2, 3")
        self.module = module
        self.group = module.group
        self.degree = degree
        self.space = CocycleSpace(module, degree, budget)
        rel_rows = self.space.coboundary_relation_rows() + list(self.space.lattice_rows)
        self.diagram = DiagonalPresentation(self.space.k, rel_rows)
        self.orders = self.diagram.orders
        self.presentation = self.diagram.group
        self.gens = [
            Cochain.from_flat(
                module, degree, self.space.combination_vector(self.diagram.generator(j))
            ).canonicalize()
            for j in range(self.diagram.ngens)
        ]
        self._witness_solver: Optional[LinearSolver] = None

    def class_of(self, u: Cochain) -> CohomologyClass:
        if u.module is not self.module and u.module.key != self.module.key:
            raise InputError("cochain lives over a different module")
        if u.degree != self.degree:
            raise InputError("cochain degree mismatch")
        if not self.space.is_cocycle(u):
            raise NotACocycle("cochain does not satisfy the cocycle identity")
        z = self.space.z_coords(u.flat())
        return CohomologyClass(self, self.diagram.coords(z))

    def is_coboundary(self, u: Cochain) -> Optional[Cochain]:
        """A degree-(n-1) witness w with delta(w) = u (mod lattice), or None."""
        cls = self.class_of(u)
        if not cls.is_zero():
            return None
        if self._witness_solver is None:
            rows_prev, cols_prev, prev = cached_delta(self.module, self.degree - 1)
            cols: list[list[int]] = [[0] * self.space.cols_n for _ in range(cols_prev)]
            for r, c, v in prev:
                cols[c][r] += v
            lat = lattice_columns(self.module, self.degree)
            self._witness_solver = LinearSolver(cols + lat, [], self.space.cols_n)
            self._witness_cols_prev = cols_prev
        sol = self._witness_solver.solve(u.flat())
        if sol is None:
            raise InternalCheckFailed("zero class without a coboundary witness")
        return Cochain.from_flat(
            self.module, self.degree - 1, list(sol.x[: self._witness_cols_prev])
        ).canonicalize()

    def __repr__(self) -> str:
        return (
            f"H^{self.degree}({self.group.name}, {self.module.name}) = "
            f"{_format_orders(self.orders)}"
        )


class CohomologySubgroup(PresentedGroup):
    """Subgroup of a cohomology group given by generating coordinate vectors."""

    def __init__(self, owner: PresentedGroup, gen_coords: Sequence[Sequence[int]], name: str = "") -> None:
        self.owner = owner
        self.module = owner.module
        self.degree = owner.degree
        self.gen_coords = [list(c) for c in gen_coords]
        self.name = name
        k = len(self.gen_coords)
        n = owner.presentation.ngens
        entries = []
        for j, col in enumerate(self.gen_coords):
            for i, v in enumerate(col):
                if v:
                    entries.append((i, j, v))
        extra = list(owner.presentation.relations)
        for ridx, rel in enumerate(extra):
            for i, v in enumerate(rel):
                if v:
                    entries.append((i, k + ridx, v))
        ker = sparse_diagonalize(n, k + len(extra), entries)
        rel_rows = []
        for c in range(k + len(extra)):
            if c not in ker.pivots:
                vec = ker.v_combination({c: 1})[:k]
                if any(vec):
                    rel_rows.append(vec)
        self.diagram = DiagonalPresentation(k, rel_rows)
        self.orders = self.diagram.orders
        self.presentation = self.diagram.group
        self._member_solver = LinearSolver(
            [list(c) for c in self.gen_coords] + [list(r) for r in extra],
            [],
            n,
        )
        self.gens = [self._lift_cochain(self.diagram.generator(j)) for j in range(self.diagram.ngens)]
        self.gen_owner_coords = [
            self._orig_coords(self.diagram.generator(j)) for j in range(self.diagram.ngens)
        ]

    def _orig_coords(self, z: Sequence[int]) -> tuple[int, ...]:
        n = self.owner.presentation.ngens
        out = [0] * n
        for w, col in zip(z, self.gen_coords):
            for i, v in enumerate(col):
                out[i] += w * v
        return self.owner.presentation.canonical(out)

    def _lift_cochain(self, z: Sequence[int]) -> Cochain:
        return self.owner.cochain_of(self._orig_coords(z))

    def member_coords(self, cls: CohomologyClass) -> Optional[tuple[int, ...]]:
        """Coordinates of an owner class in this subgroup, or None if outside."""
        if cls.owner is not self.owner:
            raise InputError("class belongs to a different group")
        sol = self._member_solver.solve(list(cls.coords))
        if sol is None:
            return None
        return self.presentation.canonical(
            self.diagram.coords(list(sol.x[: len(self.gen_coords)]))
        )

    def class_of(self, u: Cochain) -> CohomologyClass:
        outer = self.owner.class_of(u)
        coords = self.member_coords(outer)
        if coords is None:
            raise InputError("cochain class lies outside the subgroup")
        return CohomologyClass(self, coords)

    def include(self, cls: CohomologyClass) -> CohomologyClass:
        """Map a subgroup class to the ambient group."""
        if cls.owner is not self:
            raise InputError("class belongs to a different group")
        return self.owner.class_from_coords(self._orig_coords_from_final(cls.coords))

    def _orig_coords_from_final(self, final_coords: Sequence[int]) -> tuple[int, ...]:
        n = self.owner.presentation.ngens
        out = [0] * n
        for w, oc in zip(final_coords, self.gen_owner_coords):
            for i, v in enumerate(oc):
                out[i] += w * v
        return self.owner.presentation.canonical(out)

    def __repr__(self) -> str:
        return f"Subgroup({self.name or 'unnamed'}) = {_format_orders(self.orders)}"


def _format_orders(orders: tuple[int, ...]) -> str:
    if not orders:
        return "0"
    return " + ".join("Z" if d == 0 else f"Z{d}" for d in orders)


def cohomology_group(
    group: FiniteGroup, module: GModule, degree: int, budget: int = DEFAULT_BUDGET
) -> CohomologyGroup:
    if module.group is not group:
        raise InputError("module is not over the given group")
    return CohomologyGroup(module, degree, budget)


# ---------------------------------------------------------------------------
# Derivations
# ---------------------------------------------------------------------------


class Derivation:
    """A map d : N -> M with d(n n') = d(n) + n.d(n'), stored as a value table."""

    def __init__(self, cochain: Cochain, validate: bool = True) -> None:
        if cochain.degree != 1:
            raise InputError("derivations are degree-1 cochains")
        self.cochain = cochain.canonicalize()
        self.module = cochain.module
        self.group = cochain.group
        if validate and not self.check_law():
            raise InputError("value table violates the derivation law")

    def check_law(self) -> bool:
        g = self.group
        m = self.module
        base = m.base
        for a in range(g.order):
            for b in range(g.order):
                lhs = self.cochain.value((g.mul[a][b],))
                rhs = [
                    x + y
                    for x, y in zip(self.cochain.value((a,)), m.act_raw(a, self.cochain.value((b,))))
                ]
                if base.canonical(lhs) != base.canonical(rhs):
                    return False
        return True

    def __call__(self, n: int) -> tuple[int, ...]:
        return self.cochain.value((n,))

    def conjugate(self, ambient: FiniteGroup, embed: Sequence[int], g: int, module_ambient: GModule) -> "Derivation":
        """The derivation n -> g.d(g^-1 n g) over the same group N (N normal in ambient)."""
        inv_embed = {e: i for i, e in enumerate(embed)}
        table = []
        for n in range(1, self.group.order):
            gn = ambient.conjugate(ambient.inv[g], embed[n])
            if gn not in inv_embed:
                raise NotNormal("conjugation does not preserve the subgroup")
            table.append(module_ambient.act(g, self(inv_embed[gn])))
        out = Cochain(self.module, 1, table)
        return Derivation(out, validate=False)

    def add(self, other: "Derivation") -> "Derivation":
        return Derivation(self.cochain + other.cochain, validate=False)

    def sub(self, other: "Derivation") -> "Derivation":
        return Derivation(self.cochain - other.cochain, validate=False)

    @staticmethod
    def inner(module: GModule, coords: Sequence[int]) -> "Derivation":
        """The inner derivation n -> n.m - m."""
        table = []
        for n in range(1, module.group.order):
            img = module.act_raw(n, coords)
            table.append(tuple(a - b for a, b in zip(img, coords)))
        return Derivation(Cochain(module, 1, table), validate=False)

    @staticmethod
    def zero(module: GModule) -> "Derivation":
        return Derivation(Cochain.zero(module, 1), validate=False)


def derivation_groups(
    group: FiniteGroup, module: GModule, budget: int = DEFAULT_BUDGET
) -> tuple[FgAbelianGroup, list[tuple[int, ...]], CohomologyGroup]:
    """(Der(N, M) with representatives, inner sublattice coords, H^1(N, M)).

    The first component is the diagonal presentation of the full group of
    derivations; its generators can be recovered through ``derivation_generators``.
    """
    space = CocycleSpace(module, 1, budget)
    pres = DiagonalPresentation(space.k, space.lattice_rows)
    der_group = pres.group
    inner = []
    for i in range(module.base.ngens):
        unit = [0] * module.base.ngens
        unit[i] = 1
        d = Derivation.inner(module, unit)
        z = space.z_coords(d.cochain.flat())
        inner.append(der_group.canonical(pres.coords(z)))
    h1 = CohomologyGroup(module, 1, budget)
    der_gens = [
        Derivation(
            Cochain.from_flat(module, 1, space.combination_vector(pres.generator(j))),
            validate=False,
        )
        for j in range(pres.ngens)
    ]
    der_group._derivation_generators = der_gens
    return der_group, inner, h1


def derivation_generators(der_group: FgAbelianGroup) -> list[Derivation]:
    return der_group._derivation_generators


# ---------------------------------------------------------------------------
# The induced module structure on H^1(N, M)
# ---------------------------------------------------------------------------


class InducedQModule(GModule):
    """H^1(N, M) as a module over Q = G/N, acting through conjugation."""

    def __init__(
        self,
        qgroup: FiniteGroup,
        h1: CohomologyGroup,
        action: Sequence[Sequence[Sequence[int]]],
        section: Sequence[int],
        ambient_module: GModule,
        embed: Sequence[int],
    ) -> None:
        super().__init__(qgroup, h1.presentation, action, name=f"H1({h1.group.name},{h1.module.name})")
        self.h1 = h1
        self.section = tuple(section)
        self.ambient_module = ambient_module
        self.embed = tuple(embed)

    def act_class(self, q: int, cls: CohomologyClass) -> CohomologyClass:
        if cls.owner is not self.h1:
            raise InputError("class does not live in the underlying H^1")
        return self.h1.class_from_coords(self.act(q, cls.coords))

    def section_derivation(self, coords: Sequence[int]) -> Derivation:
        """Deterministic representative derivation of the class with given coordinates.

        Uses the canonical coordinates of the class against the stored
        generator derivations; this is a section of the quotient map.
        """
        canon = self.h1.presentation.canonical(coords)
        acc = Cochain.zero(self.h1.module, 1)
        for c, g in zip(canon, self.h1.gens):
            acc = acc + g.scale(c)
        return Derivation(acc.canonicalize(), validate=False)


def conjugation_action_on_h1(
    group: FiniteGroup,
    nsub: SubgroupHandle,
    module: GModule,
    budget: int = DEFAULT_BUDGET,
) -> InducedQModule:
    """The Q-module H^1(N, M) with q acting by d -> (g.d(g^-1 n g)) for g over q."""
    if nsub.parent is not group:
        raise InputError("subgroup belongs to a different group")
    if not nsub.is_normal:
        raise NotNormal("need a normal subgroup")
    if module.group is not group:
        raise InputError("module is not over the ambient group")
    ngroup, to_new = nsub.as_group()
    embed = nsub.elements
    mod_n = module.restrict(ngroup, embed)
    h1 = CohomologyGroup(mod_n, 1, budget)
    q, pi, alpha = quotient_with_transversal(group, nsub)
    mats = []
    for qi in range(q.order):
        g = alpha[qi]
        cols = []
        for gen in h1.gens:
            d = Derivation(gen, validate=False)
            dg = d.conjugate(group, embed, g, module)
            cols.append(h1.class_of(dg.cochain).coords)
        mats.append(tuple(tuple(col[i] for col in cols) for i in range(h1.presentation.ngens)))
    return InducedQModule(q, h1, mats, alpha, module, embed)


def invariant_classes(
    h1: CohomologyGroup, qmod: InducedQModule
) -> CohomologySubgroup:
    """The fixed subgroup of the induced action, with representative derivations."""
    if qmod.h1 is not h1:
        raise InputError("module was built from a different H^1")
    n = h1.presentation.ngens
    entries = []
    row = 0
    width = n
    rels = list(h1.presentation.relations)
    for qi in range(1, qmod.group.order):
        mat = qmod.action[qi]
        for i in range(n):
            for j in range(n):
                v = mat[i][j] - (1 if i == j else 0)
                if v:
                    entries.append((row + i, j, v))
        for rel in rels:
            for i, v in enumerate(rel):
                if v:
                    entries.append((row + i, width, v))
            width += 1
        row += n
    diag = sparse_diagonalize(row, width, entries)
    gens = []
    for c in range(width):
        if c not in diag.pivots:
            vec = diag.v_combination({c: 1})[:n]
            if any(h1.presentation.canonical(vec)):
                gens.append(h1.presentation.canonical(vec))
    return CohomologySubgroup(h1, gens, name=f"H1({h1.group.name})^Q")
