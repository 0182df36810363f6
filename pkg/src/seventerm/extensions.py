"""Group extensions with abelian kernel: concrete groups, factor sets, and
the constructions that feed the connecting maps (pull-back, push-out, partial
semidirect complements, and the normalizer quotient)."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Optional, Sequence

from .abelian import AbelianMorphism, FgAbelianGroup
from .cochains import Cochain, coboundary, coboundary_is_zero
from .cohomology import CohomologyGroup, CohomologyClass, Derivation
from .errors import (
    InfiniteModule,
    InputError,
    InternalCheckFailed,
    InvariantViolation,
    NotACocycle,
    NotInKernelOfRestriction,
    NotModuleMorphism,
    NotPartiallySplit,
    SectionInvalid,
)
from .gmodules import GModule
from .groups import (
    FiniteGroup,
    GroupMorphism,
    SubgroupHandle,
    normalizer,
    quotient_with_transversal,
    semidirect_product,
)
from .intlin import LinearSolver


class AmbientExtension:
    """1 -> N -> G -> Q -> 1 for a normal subgroup N of a table group G.

    Carries the canonical transversal (minimal element index per coset,
    identity preserving) and its factor set with values in N.
    """

    def __init__(self, group: FiniteGroup, nsub: SubgroupHandle) -> None:
        if nsub.parent is not group:
            raise InputError("subgroup belongs to a different group")
        self.group = group
        self.nsub = nsub
        self.quotient, self.projection, self.section = quotient_with_transversal(group, nsub)
        self.ngroup, self.n_to_sub = nsub.as_group()
        self.n_embed = nsub.elements
        q = self.quotient.order
        self._factor = [[0] * q for _ in range(q)]
        for q1 in range(q):
            for q2 in range(q):
                a = group.mul[self.section[q1]][self.section[q2]]
                val = group.mul[a][group.inv[self.section[self.quotient.mul[q1][q2]]]]
                if val not in nsub.element_set:
                    raise InternalCheckFailed("transversal factor set left the kernel")
                self._factor[q1][q2] = val

    def factor_set(self, q1: int, q2: int) -> int:
        """f(q1, q2) as an element index of G (always inside N)."""
        return self._factor[q1][q2]

    def factor_set_sub(self, q1: int, q2: int) -> int:
        """f(q1, q2) as an element index of the standalone N group."""
        return self.n_to_sub[self._factor[q1][q2]]

    @property
    def is_split(self) -> bool:
        """Whether the canonical transversal happens to be a homomorphism."""
        q = self.quotient.order
        return all(self._factor[q1][q2] == 0 for q1 in range(q) for q2 in range(q))

    def __repr__(self) -> str:
        return (
            f"AmbientExtension(1 -> N({self.nsub.order}) -> {self.group.name} "
            f"-> Q({self.quotient.order}) -> 1)"
        )


class ConcreteExtension:
    """0 -> M -> E -> G -> 1 with finite abelian kernel, as explicit groups.

    ``embed`` maps canonical module coordinates (tuples) to element indices
    of E; ``proj`` is the quotient morphism onto the base group.
    """

    def __init__(
        self,
        module: GModule,
        egroup: FiniteGroup,
        embed: dict[tuple[int, ...], int],
        proj: GroupMorphism,
        validate: bool = True,
    ) -> None:
        self.module = module
        self.base_group = module.group
        self.egroup = egroup
        self.embed = dict(embed)
        self.proj = proj
        self.embed_inv = {e: m for m, e in self.embed.items()}
        if validate:
            self._validate()

    def _validate(self) -> None:
        if not self.module.base.is_finite:
            raise InfiniteModule("concrete extensions need a finite kernel")
        if self.proj.src is not self.egroup or self.proj.dst is not self.base_group:
            raise InputError("projection endpoints are wrong")
        if not self.proj.is_surjective:
            raise InputError("projection is not surjective")
        base = self.module.base
        elems = list(base.elements())
        if len(self.embed) != len(elems) or len(self.embed_inv) != len(elems):
            raise InputError("kernel embedding is not injective on module elements")
        for a in elems:
            for b in elems:
                s = base.add(a, b)
                if self.egroup.mul[self.embed[a]][self.embed[b]] != self.embed[s]:
                    raise InputError("kernel embedding is not a homomorphism")
        kernel = {e for e in range(self.egroup.order) if self.proj.image[e] == 0}
        if kernel != set(self.embed.values()):
            raise InputError("embedded kernel does not equal ker(projection)")
        for e in range(self.egroup.order):
            g = self.proj.image[e]
            for a in elems:
                lhs = self.egroup.conjugate(e, self.embed[a])
                if lhs != self.embed[self.module.act(g, a)]:
                    raise InputError("conjugation does not realize the module action")

    def kernel_coords(self, e: int) -> tuple[int, ...]:
        if e not in self.embed_inv:
            raise InputError("element is not in the embedded kernel")
        return self.embed_inv[e]

    def canonical_section(self) -> list[int]:
        """Minimal-index section of the projection, identity preserving."""
        sect = [-1] * self.base_group.order
        for e in range(self.egroup.order):
            g = self.proj.image[e]
            if sect[g] < 0:
                sect[g] = e
        return sect

    def __repr__(self) -> str:
        return (
            f"ConcreteExtension(0 -> {self.module.name} -> E({self.egroup.order}) "
            f"-> {self.base_group.name} -> 1)"
        )


# ---------------------------------------------------------------------------
# Factor sets and concrete groups, both ways
# ---------------------------------------------------------------------------


def extension_from_cocycle(
    group: FiniteGroup, module: GModule, f: Cochain, validate: bool = True
) -> ConcreteExtension:
    """The group M x_f G with law (m, g)(m', g') = (m + g.m' + f(g, g'), gg')."""
    if module.group is not group:
        raise InputError("module is not over the given group")
    if not module.base.is_finite:
        raise InfiniteModule("the cocycle route needs a finite module")
    if f.degree != 2 or f.module is not module:
        raise InputError("need a degree-2 cochain over the same module")
    if validate and not coboundary_is_zero(f):
        raise NotACocycle("table does not satisfy the 2-cocycle identity")
    base = module.base
    elems = list(base.elements())
    index = {m: i for i, m in enumerate(elems)}
    ng = group.order
    mul = [[0] * (len(elems) * ng) for _ in range(len(elems) * ng)]
    for i, m in enumerate(elems):
        for g in range(ng):
            row = mul[i * ng + g]
            for j, m2 in enumerate(elems):
                for h in range(ng):
                    s = base.add(base.add(m, module.act(g, m2)), f.value((g, h)))
                    row[j * ng + h] = index[s] * ng + group.mul[g][h]
    labels = [f"({base.canonical(m)};{group.label(g)})" for m in elems for g in range(ng)]
    egroup = FiniteGroup(mul, labels=labels, name=f"{module.name}x_f{group.name}")
    embed = {m: index[m] * ng for m in elems}
    proj = GroupMorphism(egroup, group, [e % ng for e in range(len(elems) * ng)])
    return ConcreteExtension(module, egroup, embed, proj, validate=validate)


def factor_set_of_section(ext: ConcreteExtension, section: Sequence[int]) -> Cochain:
    """The normalized 2-cocycle measuring how far a section is from splitting."""
    g = ext.base_group
    e = ext.egroup
    if len(section) != g.order or section[0] != 0:
        raise SectionInvalid("section must be identity preserving and total")
    for x in range(g.order):
        if ext.proj.image[section[x]] != x:
            raise SectionInvalid("table is not a section of the projection")
    out = Cochain.zero(ext.module, 2)
    for x in range(1, g.order):
        for y in range(1, g.order):
            prod = e.mul[section[x]][section[y]]
            defect = e.mul[prod][e.inv[section[g.mul[x][y]]]]
            out.set_value((x, y), ext.kernel_coords(defect))
    return out.canonicalize()


def standard_split_extension(module: GModule) -> ConcreteExtension:
    """The semidirect product M x| G as a concrete extension (zero cocycle)."""
    return extension_from_cocycle(module.group, module, Cochain.zero(module, 2), validate=False)


# ---------------------------------------------------------------------------
# Normalizing representatives of partially split classes
# ---------------------------------------------------------------------------


def normalize_partially_split(
    f: Cochain, ext: AmbientExtension, h2n: Optional[CohomologyGroup] = None
) -> Cochain:
    """A cohomologous cocycle that vanishes on N x N.

    Solves f|_{N x N} = d(u) on N, extends u by zero off N, and subtracts
    d(u~); raises NotInKernelOfRestriction when the restricted class is
    nonzero.
    """
    if f.degree != 2:
        raise InputError("need a degree-2 cochain")
    module = f.module
    mod_n = module.restrict(ext.ngroup, ext.n_embed)
    restricted = restrict_cochain(f, ext)
    if h2n is None:
        h2n = CohomologyGroup(mod_n, 2)
    witness = h2n.is_coboundary(restricted)
    if witness is None:
        raise NotInKernelOfRestriction("restriction to N is not a coboundary")
    lifted = Cochain.zero(module, 1)
    for n_idx in range(1, ext.ngroup.order):
        lifted.set_value((ext.n_embed[n_idx],), witness.value((n_idx,)))
    out = (f - coboundary(lifted)).canonicalize()
    for a in ext.n_embed:
        for b in ext.n_embed:
            if any(out.value((a, b))) and a and b:
                raise InternalCheckFailed("normalization left values on N x N")
    return out


def restrict_cochain(f: Cochain, ext: AmbientExtension) -> Cochain:
    """Restriction of a cochain over G to the standalone N group."""
    mod_n = f.module.restrict(ext.ngroup, ext.n_embed)
    out = Cochain.zero(mod_n, f.degree)
    o = ext.ngroup.order
    for t in itertools.product(range(1, o), repeat=f.degree):
        out.set_value(t, f.value(tuple(ext.n_embed[i] for i in t)))
    return out


# ---------------------------------------------------------------------------
# Pull-back and push-out
# ---------------------------------------------------------------------------


def pull_back_extension(
    ext: ConcreteExtension, phi: GroupMorphism
) -> tuple[ConcreteExtension, GroupMorphism]:
    """Pull back 0 -> M -> E -> H -> 1 along phi : G -> H.

    Returns the extension of G by M (with the module acting through phi) and
    the comparison morphism P -> E.
    """
    if phi.dst is not ext.base_group:
        raise InputError("morphism does not land in the base of the extension")
    g = phi.src
    e = ext.egroup
    pairs = [
        (x, a) for x in range(e.order) for a in range(g.order) if ext.proj.image[x] == phi.image[a]
    ]
    pair_index = {p: i for i, p in enumerate(pairs)}
    if pairs[0] != (0, 0):
        raise InternalCheckFailed("identity pair is not first")
    mul = [
        [pair_index[(e.mul[x1][x2], g.mul[a1][a2])] for (x2, a2) in pairs]
        for (x1, a1) in pairs
    ]
    p_group = FiniteGroup(mul, name=f"pullback({e.name})", _trusted=True)
    module_g = ext.module.pullback(phi)
    embed = {m: pair_index[(idx, 0)] for m, idx in ext.embed.items()}
    proj = GroupMorphism(p_group, g, [a for (_, a) in pairs])
    compare = GroupMorphism(p_group, e, [x for (x, _) in pairs])
    return ConcreteExtension(module_g, p_group, embed, proj), compare


def pulled_back_cocycle(f: Cochain, phi: GroupMorphism, module_src: GModule) -> Cochain:
    """f o (phi x ... x phi) over the source group of phi."""
    out = Cochain.zero(module_src, f.degree)
    o = phi.src.order
    for t in itertools.product(range(1, o), repeat=f.degree):
        out.set_value(t, f.value(tuple(phi.image[a] for a in t)))
    return out.canonicalize()


def push_out_extension(
    ext: ConcreteExtension, target: GModule, morphism: AbelianMorphism
) -> ConcreteExtension:
    """Push 0 -> M1 -> E1 -> G -> 1 forward along a module morphism M1 -> M2.

    Built as (M2 x| E1) / {(-i2(m), i1(m))}; requires M2 finite.
    """
    g = ext.base_group
    if target.group is not g:
        raise InputError("target module is over a different group")
    if morphism.src is not ext.module.base or morphism.dst is not target.base:
        raise InputError("morphism endpoints do not match the modules")
    if not target.base.is_finite:
        raise InfiniteModule("concrete push-out needs a finite target module")
    for x in range(g.order):
        for m in ext.module.base.elements():
            lhs = morphism.apply(ext.module.act(x, m))
            rhs = target.act(x, morphism.apply(m))
            if lhs != rhs:
                raise NotModuleMorphism("map does not commute with the action")
    # M2 as a table group plus the action of E1 through the projection
    m2_elems = list(target.base.elements())
    m2_index = {m: i for i, m in enumerate(m2_elems)}
    m2_mul = [[m2_index[target.base.add(a, b)] for b in m2_elems] for a in m2_elems]
    m2_group = FiniteGroup(m2_mul, name=target.name, _trusted=True)
    e1 = ext.egroup
    action = [
        [m2_index[target.act(ext.proj.image[x], m)] for m in m2_elems] for x in range(e1.order)
    ]
    big, i_m2, i_e1 = semidirect_product(m2_group, e1, action)
    sub_elems = [
        big.mul[i_m2.image[m2_index[target.base.neg(morphism.apply(m))]]][i_e1.image[e_idx]]
        for m, e_idx in ext.embed.items()
    ]
    s_handle = SubgroupHandle(big, sub_elems)
    if not s_handle.is_normal:
        raise InternalCheckFailed("push-out relation subgroup is not normal")
    quot, proj_q, _ = quotient_with_transversal(big, s_handle)
    embed = {
        target.base.canonical(m): proj_q.image[i_m2.image[m2_index[target.base.canonical(m)]]]
        for m in m2_elems
    }
    # p(m2, e1) = p1(e1) is constant on cosets of S; pick any representative.
    base_images = [0] * quot.order
    seen = [False] * quot.order
    for x in range(big.order):
        c = proj_q.image[x]
        if not seen[c]:
            seen[c] = True
            base_images[c] = ext.proj.image[x % e1.order]
    base_proj = GroupMorphism(quot, g, base_images)
    return ConcreteExtension(target, quot, embed, base_proj)


def pushed_cocycle(f: Cochain, target: GModule, morphism: AbelianMorphism) -> Cochain:
    """morphism o f, a cocycle with values in the target module."""
    out = Cochain.zero(target, f.degree)
    o = f.group.order
    for t in itertools.product(range(1, o), repeat=f.degree):
        out.set_value(t, morphism.apply(f.value(t)))
    return out.canonicalize()


# ---------------------------------------------------------------------------
# Partial semidirect complements
# ---------------------------------------------------------------------------


@dataclass
class SDCHandle:
    """A partial semidirect complement of N inside a concrete extension."""

    ext: ConcreteExtension
    nsub: SubgroupHandle
    subgroup: SubgroupHandle

    def __post_init__(self) -> None:
        proj = self.ext.proj
        images = [proj.image[h] for h in self.subgroup.elements]
        if sorted(images) != list(self.nsub.elements) or len(set(images)) != len(images):
            raise NotPartiallySplit("subgroup does not project bijectively onto N")

    def splitting(self) -> dict[int, int]:
        """n (parent index) -> its unique preimage in the complement."""
        return {self.ext.proj.image[h]: h for h in self.subgroup.elements}


def sdc_of_derivation(
    e0: ConcreteExtension, nsub: SubgroupHandle, d: Derivation
) -> SDCHandle:
    """The complement {i(d(n)) s0(n)} of N in the standard split extension."""
    if d.group.order != nsub.order:
        raise InputError("derivation is not over the subgroup")
    section = e0.canonical_section()
    ngroup, to_sub = nsub.as_group()
    members = []
    for n_parent in nsub.elements:
        val = e0.module.base.canonical(d(to_sub[n_parent]))
        members.append(e0.egroup.mul[e0.embed[val]][section[n_parent]])
    return SDCHandle(e0, nsub, SubgroupHandle(e0.egroup, members))


def derivation_of_sdc(handle: SDCHandle) -> Derivation:
    """Value table n -> i^-1(h s0(n)^-1) recovering the derivation."""
    e0 = handle.ext
    section = e0.canonical_section()
    ngroup, to_sub = handle.nsub.as_group()
    mod_n = e0.module.restrict(ngroup, handle.nsub.elements)
    table = []
    split = handle.splitting()
    for n_idx in range(1, ngroup.order):
        n_parent = handle.nsub.elements[n_idx]
        h = split[n_parent]
        diff = e0.egroup.mul[h][e0.egroup.inv[section[n_parent]]]
        table.append(e0.kernel_coords(diff))
    return Derivation(Cochain(mod_n, 1, table), validate=True)


def sdc_sum(a: SDCHandle, b: SDCHandle) -> SDCHandle:
    """The complement {(h1 + h2, n)} implementing addition of derivations."""
    if a.ext is not b.ext or a.nsub is not b.nsub:
        raise InputError("complements live in different hosts")
    da = derivation_of_sdc(a)
    db = derivation_of_sdc(b)
    return sdc_of_derivation(a.ext, a.nsub, da.add(db))


@dataclass
class OrbitData:
    """Conjugation orbit of a complement class under the host group."""

    is_invariant: bool
    derivation_tables: list[tuple[tuple[int, ...], ...]]


def q_action_and_invariance(handle: SDCHandle, h1n: Optional[CohomologyGroup] = None) -> OrbitData:
    """Conjugate the complement by every host element and test class invariance."""
    e0 = handle.ext
    egroup = e0.egroup
    d0 = derivation_of_sdc(handle)
    mod_n = d0.module
    seen: list[tuple[tuple[int, ...], ...]] = []
    invariant = True
    for e in range(egroup.order):
        members = [egroup.conjugate(e, h) for h in handle.subgroup.elements]
        conj = SDCHandle(e0, handle.nsub, SubgroupHandle(egroup, members))
        de = derivation_of_sdc(conj)
        diff = de.sub(d0)
        if not _is_inner(diff):
            invariant = False
        tbl = tuple(de.cochain.value((n,)) for n in range(1, mod_n.group.order))
        if tbl not in seen:
            seen.append(tbl)
    return OrbitData(is_invariant=invariant, derivation_tables=seen)


def _is_inner(d: Derivation) -> bool:
    """Whether d(n) = n.m - m has a solution m (exactly, over the lattice)."""
    module = d.module
    base = module.base
    r = base.ngens
    o = module.group.order
    rows = (o - 1) * r
    a_cols = []
    for j in range(r):
        col = [0] * rows
        for n in range(1, o):
            img = module.act_raw(n, [1 if i == j else 0 for i in range(r)])
            for i in range(r):
                col[(n - 1) * r + i] = img[i] - (1 if i == j else 0)
        a_cols.append(col)
    lat_cols = []
    for n in range(1, o):
        for rel in base.relations:
            col = [0] * rows
            for i, v in enumerate(rel):
                col[(n - 1) * r + i] = v
            lat_cols.append(col)
    b = []
    for n in range(1, o):
        b.extend(d(n))
    return LinearSolver(a_cols, lat_cols, rows).solve(b) is not None


def derivation_invariance(
    group: FiniteGroup, nsub: SubgroupHandle, module: GModule, d: Derivation
) -> bool:
    """Whether the class of d is fixed by conjugation (works for infinite M)."""
    for g in range(group.order):
        dg = d.conjugate(group, nsub.elements, g, module)
        if not _is_inner(dg.sub(d)):
            return False
    return True


# ---------------------------------------------------------------------------
# The normalizer quotient construction
# ---------------------------------------------------------------------------


def normalizer_quotient_class(
    e: ConcreteExtension,
    ext: AmbientExtension,
    handle: SDCHandle,
    mn_module: GModule,
    mn_cols: Sequence[Sequence[int]],
    h2q: CohomologyGroup,
) -> CohomologyClass:
    """Class of 0 -> M^N -> N_E(H)/H -> Q -> 1 in H^2(Q, M^N).

    ``mn_module`` is M^N as a Q-module and ``mn_cols`` are the ambient module
    coordinates of its generators.
    """
    egroup = e.egroup
    w_handle = normalizer(egroup, handle.subgroup)
    # the embedded fixed submodule must be exactly i(M) intersect the normalizer
    mn_elems = set()
    for coords in _submodule_elements(e.module.base, mn_module.base, mn_cols):
        mn_elems.add(e.embed[coords])
    im_cap = {idx for m, idx in e.embed.items() if idx in w_handle.element_set}
    if im_cap != mn_elems:
        raise InternalCheckFailed("i(M) meet the normalizer is not i(M^N)")
    images = {e.proj.image[w] for w in w_handle.elements}
    if len(images) != e.base_group.order:
        raise InvariantViolation("complement class is not conjugation invariant")
    wgroup, w_to_sub = w_handle.as_group()
    h_in_w = SubgroupHandle(wgroup, [w_to_sub[h] for h in handle.subgroup.elements])
    wq, proj_wq, _ = quotient_with_transversal(wgroup, h_in_w)
    # maps of the quotient extension
    bar_i = {}
    for coords in _submodule_elements(e.module.base, mn_module.base, mn_cols):
        mn_coords = _coords_in_submodule(e.module.base, mn_module.base, mn_cols, coords)
        bar_i[mn_coords] = proj_wq.image[w_to_sub[e.embed[coords]]]
    bar_i_inv = {v: k for k, v in bar_i.items()}
    if len(bar_i_inv) != len(bar_i):
        raise InternalCheckFailed("quotient kernel embedding not injective")
    bar_p = [0] * wq.order
    for w_idx in range(wgroup.order):
        q = ext.projection.image[e.proj.image[w_handle.elements[w_idx]]]
        bar_p[proj_wq.image[w_idx]] = q
    proj_to_q = GroupMorphism(wq, ext.quotient, bar_p)
    if {x for x in range(wq.order) if bar_p[x] == 0} != set(bar_i.values()):
        raise InternalCheckFailed("quotient extension is not exact at the kernel")
    # canonical section of wq -> Q and its factor set with values in M^N
    section = [-1] * ext.quotient.order
    for x in range(wq.order):
        if section[bar_p[x]] < 0:
            section[bar_p[x]] = x
    out = Cochain.zero(mn_module, 2)
    for q1 in range(1, ext.quotient.order):
        for q2 in range(1, ext.quotient.order):
            prod = wq.mul[section[q1]][section[q2]]
            defect = wq.mul[prod][wq.inv[section[ext.quotient.mul[q1][q2]]]]
            if defect not in bar_i_inv:
                raise InternalCheckFailed("factor set value escaped i(M^N)")
            out.set_value((q1, q2), bar_i_inv[defect])
    return h2q.class_of(out.canonicalize())


def _submodule_elements(base: FgAbelianGroup, sub: FgAbelianGroup, cols: Sequence[Sequence[int]]):
    """Canonical ambient coordinates of every element of the submodule."""
    for coords in sub.elements():
        amb = [0] * base.ngens
        for c, col in zip(coords, cols):
            for i, v in enumerate(col):
                amb[i] += c * v
        yield base.canonical(amb)


def _coords_in_submodule(
    base: FgAbelianGroup, sub: FgAbelianGroup, cols: Sequence[Sequence[int]], coords
) -> tuple[int, ...]:
    for cand in sub.elements():
        amb = [0] * base.ngens
        for c, col in zip(cand, cols):
            for i, v in enumerate(col):
                amb[i] += c * v
        if base.canonical(amb) == base.canonical(coords):
            return cand
    raise InternalCheckFailed("element is not in the submodule")
