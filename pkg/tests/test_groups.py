"""Table-group machinery: constructors, subgroups, quotients, products."""

from __future__ import annotations

import pytest

from seventerm.errors import ActionNotHomomorphic, InputError, NotNormal
from seventerm.groups import (
    FiniteGroup,
    GroupMorphism,
    SubgroupHandle,
    centralizer_center,
    commutator_subgroup,
    morphism_kernel_image,
    normalizer,
    quotient_with_transversal,
    semidirect_product,
    structural_subgroups,
    subgroup_closure,
)


def test_table_validation_rejects_bad_identity():
    with pytest.raises(InputError):
        FiniteGroup([[1, 0], [0, 1]])


def test_table_validation_rejects_non_associative():
    # a "subtraction" table is not associative
    n = 3
    mul = [[(a - b) % n for b in range(n)] for a in range(n)]
    with pytest.raises(InputError):
        FiniteGroup(mul)


def test_cyclic_basics():
    g = FiniteGroup.cyclic(6)
    assert g.order == 6 and g.inverse(2) == 4 and g.element_order(2) == 3
    assert g.is_abelian


def test_constructors_orders_and_centers():
    d4 = FiniteGroup.dihedral(4)
    assert d4.order == 8 and not d4.is_abelian
    assert centralizer_center(d4).elements == (0, 2)

    q8 = FiniteGroup.quaternion8()
    assert q8.order == 8
    assert centralizer_center(q8).elements == (0, 1)
    assert sorted(q8.element_order(x) for x in range(8)) == [1, 2, 4, 4, 4, 4, 4, 4]

    s3 = FiniteGroup.symmetric3()
    assert s3.order == 6 and not s3.is_abelian

    h3 = FiniteGroup.heisenberg(3)
    assert h3.order == 27
    assert centralizer_center(h3).elements == (0, 1, 2)
    # commutator relation [a, b] = c for the standard generators
    a, b = 9, 3  # (1,0,0) and (0,1,0)
    assert h3.commutator(a, b) == 1  # (0,0,1)


def test_subgroup_closure_examples():
    z6 = FiniteGroup.cyclic(6)
    assert subgroup_closure(z6, [2]).elements == (0, 2, 4)
    assert subgroup_closure(z6, []).elements == (0,)
    s3 = FiniteGroup.symmetric3()
    transposition = 3
    assert subgroup_closure(s3, [transposition]).order == 2


def test_subgroup_validation():
    z4 = FiniteGroup.cyclic(4)
    with pytest.raises(InputError):
        SubgroupHandle(z4, [0, 1])  # not closed
    with pytest.raises(InputError):
        SubgroupHandle(z4, [2])  # no identity


def test_quotient_with_transversal_examples():
    z4 = FiniteGroup.cyclic(4)
    q, pi, alpha = quotient_with_transversal(z4, SubgroupHandle(z4, [0, 2]))
    assert q.order == 2 and alpha == (0, 1)
    assert pi.image == (0, 1, 0, 1)
    for q1 in range(q.order):
        for q2 in range(q.order):
            assert pi.image[z4.mul[alpha[q1]][alpha[q2]]] == q.mul[q1][q2]

    q, pi, alpha = quotient_with_transversal(z4, SubgroupHandle(z4, range(4)))
    assert q.order == 1 and alpha == (0,)

    h2 = FiniteGroup.heisenberg(2)
    center = centralizer_center(h2)
    q, pi, alpha = quotient_with_transversal(h2, center)
    assert q.order == 4 and q.is_abelian
    assert all(q.element_order(x) <= 2 for x in range(4))  # Klein four group


def test_quotient_rejects_non_normal():
    s3 = FiniteGroup.symmetric3()
    with pytest.raises(NotNormal):
        quotient_with_transversal(s3, subgroup_closure(s3, [3]))


def test_normalizer_examples():
    z6 = FiniteGroup.cyclic(6)
    h = SubgroupHandle(z6, [0, 3])
    assert normalizer(z6, h).order == 6  # abelian: everything normalizes

    s3 = FiniteGroup.symmetric3()
    h = subgroup_closure(s3, [3])
    assert normalizer(s3, h).elements == h.elements  # self-normalizing

    a3 = SubgroupHandle(s3, [0, 1, 2])
    assert normalizer(s3, a3).order == 6  # normal subgroups normalize to G


def test_structural_subgroups_examples():
    z6 = FiniteGroup.cyclic(6)
    center, derived = structural_subgroups(z6)
    assert center.order == 6 and derived.elements == (0,)

    s3 = FiniteGroup.symmetric3()
    center, derived = structural_subgroups(s3)
    assert center.elements == (0,)
    assert derived.elements == (0, 1, 2)  # the alternating subgroup

    for p in (2, 3):
        hp = FiniteGroup.heisenberg(p)
        center, derived = structural_subgroups(hp)
        assert center.order == p and center.elements == derived.elements


def test_semidirect_product_examples():
    z3 = FiniteGroup.cyclic(3)
    z2 = FiniteGroup.cyclic(2)
    trivial = [[0, 1, 2], [0, 1, 2]]
    e, i0, p0 = semidirect_product(z3, z2, trivial)
    direct = FiniteGroup.direct_product(z3, z2)
    assert e.order == 6 and e.is_abelian
    assert sorted(e.element_order(x) for x in range(6)) == sorted(
        direct.element_order(x) for x in range(6)
    )

    inversion = [[0, 1, 2], [0, 2, 1]]
    e, i0, p0 = semidirect_product(z3, z2, inversion)
    assert not e.is_abelian and centralizer_center(e).order == 1
    assert all(p0.image[i0.image[a]] == 0 for a in range(3))

    trivial_group = FiniteGroup.cyclic(1)
    e, i0, p0 = semidirect_product(z3, trivial_group, [[0, 1, 2]])
    assert e.order == 3 and e.mul == z3.mul


def test_semidirect_rejects_bad_action():
    z3 = FiniteGroup.cyclic(3)
    z2 = FiniteGroup.cyclic(2)
    with pytest.raises(ActionNotHomomorphic):
        semidirect_product(z3, z2, [[0, 1, 2], [0, 1, 2], [0, 1, 2]])
    with pytest.raises(ActionNotHomomorphic):
        # swapping 0 and 1 is not an automorphism table (moves the identity)
        semidirect_product(z3, z2, [[0, 1, 2], [1, 0, 2]])


def test_morphism_kernel_image():
    z4 = FiniteGroup.cyclic(4)
    z2 = FiniteGroup.cyclic(2)
    ident = GroupMorphism.identity(z4)
    k, im = morphism_kernel_image(ident)
    assert k.elements == (0,) and im.order == 4

    trivial = GroupMorphism(z4, z2, [0, 0, 0, 0])
    k, im = morphism_kernel_image(trivial)
    assert k.order == 4 and im.elements == (0,)

    pi = GroupMorphism(z4, z2, [0, 1, 0, 1])
    k, im = morphism_kernel_image(pi)
    assert k.elements == (0, 2) and im.order == 2


def test_morphism_validation():
    z4 = FiniteGroup.cyclic(4)
    z2 = FiniteGroup.cyclic(2)
    with pytest.raises(InputError):
        GroupMorphism(z4, z2, [0, 1, 1, 0])


def test_subgroup_as_group_and_generators():
    d4 = FiniteGroup.dihedral(4)
    rot = SubgroupHandle(d4, range(4))
    sub, to_new = rot.as_group()
    assert sub.order == 4 and sub.element_order(to_new[1]) == 4
    gens = rot.generators()
    assert subgroup_closure(d4, gens).elements == rot.elements
