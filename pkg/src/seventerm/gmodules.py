"""Modules over finite groups: f.g. abelian coefficient groups with a group action."""

from __future__ import annotations

from functools import cached_property
from typing import Optional, Sequence

from .abelian import FgAbelianGroup, AbelianMorphism, diagonal_group
from .errors import ActionInconsistent, InputError
from .groups import FiniteGroup, GroupMorphism, SubgroupHandle, subgroup_closure
from .intlin import IntMatrix, LinearSolver, kernel_basis


def _mat_mul(a: Sequence[Sequence[int]], b: Sequence[Sequence[int]]) -> tuple[tuple[int, ...], ...]:
    bt = list(zip(*b))
    return tuple(tuple(sum(x * y for x, y in zip(row, col)) for col in bt) for row in a)


def _mat_vec(a: Sequence[Sequence[int]], v: Sequence[int]) -> list[int]:
    return [sum(x * y for x, y in zip(row, v)) for row in a]


class GModule:
    """A finitely generated abelian group with an action of a finite group.

    ``action[g]`` is an integer matrix (rows of length base.ngens) giving the
    action of group element g on generator coordinates, well defined modulo
    the relation lattice.
    """

    def __init__(
        self,
        group: FiniteGroup,
        base: FgAbelianGroup,
        action: Sequence[Sequence[Sequence[int]]],
        name: str = "M",
        validate: bool = True,
    ) -> None:
        self.group = group
        self.base = base
        self.action = tuple(tuple(tuple(int(v) for v in row) for row in mat) for mat in action)
        self.name = name
        r = base.ngens
        if len(self.action) != group.order or any(
            len(m) != r or any(len(row) != r for row in m) for m in self.action
        ):
            raise InputError("need one r x r action matrix per group element")
        if validate:
            self._validate()

    def _validate(self) -> None:
        base = self.base
        r = base.ngens
        ident = self.action[0]
        for j in range(r):
            unit = [0] * r
            unit[j] = 1
            if base.canonical(_mat_vec(ident, unit)) != base.canonical(unit):
                raise InputError("identity element must act as the identity map")
        for g in range(self.group.order):
            # relations must be preserved, otherwise the action is ill defined
            for rel in base.relations:
                if not base.is_zero(_mat_vec(self.action[g], rel)):
                    raise InputError("action does not preserve the relation lattice")
        for g in range(self.group.order):
            for h in range(self.group.order):
                gh = self.group.mul[g][h]
                comp = _mat_mul(self.action[g], self.action[h])
                for j in range(r):
                    if base.canonical([comp[i][j] for i in range(r)]) != base.canonical(
                        [self.action[gh][i][j] for i in range(r)]
                    ):
                        raise InputError("action matrices are not multiplicative")

    def act(self, g: int, coords: Sequence[int]) -> tuple[int, ...]:
        return self.base.canonical(_mat_vec(self.action[g], coords))

    def act_raw(self, g: int, coords: Sequence[int]) -> list[int]:
        return _mat_vec(self.action[g], coords)

    @cached_property
    def is_trivial_action(self) -> bool:
        r = self.base.ngens
        unit = [[1 if i == j else 0 for j in range(r)] for i in range(r)]
        return all(
            self.base.canonical(_mat_vec(self.action[g], unit[j]))
            == self.base.canonical(unit[j])
            for g in range(self.group.order)
            for j in range(r)
        )

    @cached_property
    def key(self) -> tuple:
        """Cache key: the differential matrices depend only on this."""
        return (self.group.key, self.base.ngens, self.action)

    def restrict(self, sub: FiniteGroup, embed: Sequence[int]) -> "GModule":
        """Module over a subgroup; ``embed[i]`` is the parent index of sub element i."""
        return GModule(
            sub,
            self.base,
            [self.action[embed[i]] for i in range(sub.order)],
            name=self.name,
            validate=False,
        )

    def pullback(self, phi: GroupMorphism) -> "GModule":
        """Module over phi.src with x acting as phi(x)."""
        if phi.dst is not self.group:
            raise InputError("morphism does not land in the acting group")
        return GModule(
            phi.src,
            self.base,
            [self.action[phi.image[x]] for x in range(phi.src.order)],
            name=self.name,
            validate=False,
        )

    def __repr__(self) -> str:
        return f"GModule({self.name} over {self.group.name})"


def trivial_module(group: FiniteGroup, order: int = 0, rank: int = 1) -> GModule:
    """Z^rank (order 0) or Z_order^rank with the trivial action."""
    base = diagonal_group([order] * rank)
    ident = [[1 if i == j else 0 for j in range(rank)] for i in range(rank)]
    name = ("Z" if order == 0 else f"Z{order}") + (f"^{rank}" if rank > 1 else "")
    return GModule(group, base, [ident] * group.order, name=name, validate=False)


def module_from_generator_action(
    group: FiniteGroup,
    base: FgAbelianGroup,
    generator_action: dict[int, Sequence[Sequence[int]]],
    name: str = "M",
) -> GModule:
    """Complete an action given on group generators by closure.

    Raises ActionInconsistent when two generator words for the same element
    yield different matrices modulo the relation lattice.
    """
    gens = sorted(generator_action)
    if subgroup_closure(group, gens).order != group.order:
        raise ActionInconsistent("given elements do not generate the group")
    r = base.ngens
    ident = tuple(tuple(1 if i == j else 0 for j in range(r)) for i in range(r))
    mats: dict[int, tuple] = {0: ident}
    frontier = [0]
    while frontier:
        x = frontier.pop()
        for g in gens:
            y = group.mul[x][g]
            mat = _mat_mul(mats[x], generator_action[g])
            if y in mats:
                for j in range(r):
                    col_new = base.canonical([mat[i][j] for i in range(r)])
                    col_old = base.canonical([mats[y][i][j] for i in range(r)])
                    if col_new != col_old:
                        raise ActionInconsistent(
                            "generator action matrices are inconsistent on the relations"
                        )
            else:
                mats[y] = mat
                frontier.append(y)
    action = [mats[x] for x in range(group.order)]
    return GModule(group, base, action, name=name)


def invariant_submodule(
    module: GModule, over: SubgroupHandle
) -> tuple[FgAbelianGroup, AbelianMorphism]:
    """Fixed submodule under a subgroup, with its inclusion into the module.

    Returned as a presented group whose generators are explicit coordinate
    vectors in the ambient module (the columns of the inclusion matrix).
    """
    base = module.base
    r = base.ngens
    rows: list[tuple[int, int, int]] = []
    row_count = 0
    elems = [e for e in over.elements if e != 0]
    if not elems:
        gens = [[1 if i == j else 0 for i in range(r)] for j in range(r)]
    else:
        entries = []
        lattice_cols = []
        for e in elems:
            mat = module.action[e]
            for i in range(r):
                for j in range(r):
                    v = mat[i][j] - (1 if i == j else 0)
                    if v:
                        entries.append((row_count + i, j, v))
            # allow the difference to land anywhere in the relation lattice
            for rel_idx, rel in enumerate(base.relations):
                col = r + len(lattice_cols)
                for i in range(r):
                    if rel[i]:
                        entries.append((row_count + i, col, rel[i]))
                lattice_cols.append(col)
            row_count += r
        width = r + len(lattice_cols)
        gens_full = kernel_basis(row_count, width, entries)
        gens = [vec[:r] for vec in gens_full if any(vec[:r])]
        # the relation lattice itself is always fixed pointwise as a set of cosets
        for rel in base.relations:
            gens.append(list(rel))
    # present the sublattice spanned by gens
    incl_cols = [list(g) for g in gens]
    sub = _present_sublattice(base, incl_cols)
    k = len(incl_cols)
    incl_matrix = IntMatrix.from_rows(
        [[incl_cols[j][i] for j in range(k)] for i in range(r)], k
    )
    return sub, AbelianMorphism(sub, base, incl_matrix)


def _present_sublattice(base: FgAbelianGroup, gen_cols: list[list[int]]) -> FgAbelianGroup:
    """Present <gen_cols> + lattice inside base: relations = {c : sum c_j gen_j in lattice}."""
    r = base.ngens
    k = len(gen_cols)
    entries = []
    for j, col in enumerate(gen_cols):
        for i, v in enumerate(col):
            if v:
                entries.append((i, j, v))
    for ridx, rel in enumerate(base.relations):
        for i, v in enumerate(rel):
            if v:
                entries.append((i, k + ridx, v))
    ker = kernel_basis(r, k + len(base.relations), entries)
    relations = [vec[:k] for vec in ker if any(vec[:k])]
    return FgAbelianGroup(k, relations)


def abelian_subgroup_presentation(
    host: FiniteGroup, sub: SubgroupHandle
) -> tuple[FgAbelianGroup, dict[int, tuple[int, ...]], dict[tuple[int, ...], int]]:
    """Present an abelian subgroup of a table group by generators and relations.

    Returns (presentation, element -> canonical coords, canonical coords ->
    element); the relation lattice is generated by the closure walk, so the
    presentation has exactly one canonical vector per subgroup element.
    """
    for a in sub.elements:
        for b in sub.elements:
            if host.mul[a][b] != host.mul[b][a]:
                raise InputError("subgroup is not abelian")
    gens = sub.generators()
    k = len(gens)
    raw: dict[int, tuple[int, ...]] = {0: (0,) * k}
    relations: list[list[int]] = []
    frontier = [0]
    while frontier:
        x = frontier.pop()
        for i, g in enumerate(gens):
            y = host.mul[x][g]
            cand = list(raw[x])
            cand[i] += 1
            if y in raw:
                rel = [a - b for a, b in zip(cand, raw[y])]
                if any(rel):
                    relations.append(rel)
            else:
                raw[y] = tuple(cand)
                frontier.append(y)
    pres = FgAbelianGroup(k, relations)
    if pres.order != sub.order:
        raise InputError("relation walk did not close the subgroup")
    elem_coords = {x: pres.canonical(c) for x, c in raw.items()}
    coords_elem = {c: x for x, c in elem_coords.items()}
    if len(coords_elem) != sub.order:
        raise InputError("canonical coordinates collide")
    return pres, elem_coords, coords_elem


def solve_into_submodule(
    base: FgAbelianGroup, incl: AbelianMorphism, coords: Sequence[int]
) -> Optional[tuple[int, ...]]:
    """Coordinates of ``coords`` in the submodule presentation, or None."""
    a_cols = [incl.matrix.column(j) for j in range(incl.matrix.cols)]
    r_cols = [list(rel) for rel in base.relations]
    sol = LinearSolver(a_cols, r_cols, base.ngens).solve(list(coords))
    if sol is None:
        return None
    return incl.src.canonical(sol.x)
