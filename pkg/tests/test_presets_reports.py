"""Presets, document round trips, and determinism of emitted reports."""

from __future__ import annotations

import pytest

from seventerm.errors import ActionInconsistent, BadParams, UnknownPreset
from seventerm.gmodules import module_from_generator_action
from seventerm.groups import FiniteGroup, centralizer_center
from seventerm.presets import (
    battery_module_specs,
    build_extension,
    build_module,
    build_preset,
    parse_spec,
)
from seventerm.report import (
    dumps,
    extension_document,
    extension_from_document,
    group_document,
    group_from_document,
    loads,
    module_document,
    module_from_document,
    render_text,
    seven_term_document,
)
from seventerm.sevenmaps import seven_term_report


def test_preset_heisenberg_mod_2():
    ext, module = build_preset("heisenberg_mod:2", "Z2")
    assert ext.group.order == 8
    assert ext.nsub.order == 2
    q = ext.quotient
    assert q.order == 4 and all(q.element_order(x) <= 2 for x in range(4))
    assert module.base.invariant_factors == (2,)


def test_preset_cyclic_2_2():
    ext, module = build_preset("cyclic:2,2", "Z")
    assert ext.group.order == 4 and ext.nsub.elements == (0, 2)
    assert ext.quotient.order == 2
    assert not module.base.is_finite


def test_preset_dihedral_4():
    ext = build_extension("dihedral:4")
    assert ext.group.order == 8
    assert ext.nsub.elements == (0, 1, 2, 3)
    assert ext.quotient.order == 2


def test_preset_quaternion_and_symmetric():
    ext = build_extension("quaternion8")
    assert ext.nsub.elements == tuple(centralizer_center(ext.group).elements)
    ext = build_extension("symmetric3")
    assert ext.group.order == 6 and ext.nsub.order == 3


def test_preset_errors():
    with pytest.raises(UnknownPreset):
        build_extension("octahedral")
    with pytest.raises(BadParams):
        build_extension("cyclic:2")
    with pytest.raises(BadParams):
        build_extension("heisenberg_mod:1")
    with pytest.raises(BadParams):
        build_extension("cyclic:a,b")
    assert parse_spec("cyclic:2,3") == ("cyclic", [2, 3])


def test_module_spec_grammar():
    ext = build_extension("cyclic:2,2")
    assert build_module("Z", ext).base.invariant_factors == (0,)
    assert build_module("Z4", ext).base.invariant_factors == (4,)
    m = build_module("Z3^2", ext)
    assert m.base.invariant_factors == (3, 3)
    with pytest.raises(BadParams):
        build_module("Z1", ext)
    with pytest.raises(BadParams):
        build_module("bogus", ext)


def test_sign_module_rules():
    ext = build_extension("symmetric3")
    sign = build_module("sign", ext)
    assert sign.action[3][0][0] == -1 and sign.action[1][0][0] == 1
    heis = build_extension("heisenberg_mod:2")
    with pytest.raises(BadParams):
        build_module("sign", heis)  # quotient has order 4


def test_battery_module_specs():
    assert battery_module_specs("cyclic:2,2") == ["Z", "Z2", "Z4"]
    assert battery_module_specs("cyclic:3,3") == ["Z", "Z2", "Z4", "Z3"]
    assert battery_module_specs("symmetric3") == ["Z", "Z2", "Z4", "Z3", "sign"]


def test_module_from_generator_action_closure():
    ext = build_extension("symmetric3")
    from seventerm.abelian import FgAbelianGroup

    base = FgAbelianGroup(1, [])
    # sign character given on the two standard generators: a 3-cycle and a transposition
    module = module_from_generator_action(ext.group, base, {1: [[1]], 3: [[-1]]})
    for g in range(6):
        assert module.action[g][0][0] == (1 if g < 3 else -1)
    with pytest.raises(ActionInconsistent):
        module_from_generator_action(ext.group, base, {1: [[-1]], 3: [[-1]]})


def test_group_document_round_trip():
    g = FiniteGroup.dihedral(3)
    doc = group_document(g)
    g2 = group_from_document(loads(dumps(doc)))
    assert g2.mul == g.mul and g2.labels == g.labels


def test_extension_document_round_trip():
    ext = build_extension("quaternion8")
    doc = extension_document(ext)
    ext2 = extension_from_document(loads(dumps(doc)))
    assert ext2.group.mul == ext.group.mul
    assert ext2.nsub.elements == ext.nsub.elements
    assert ext2.section == ext.section


def test_module_document_round_trip():
    ext = build_extension("symmetric3")
    module = build_module("sign", ext)
    doc = module_document(module)
    module2 = module_from_document(loads(dumps(doc)), ext.group)
    assert module2.action == module.action
    assert module2.base.relations == module.base.relations


def test_seven_term_document_and_determinism():
    ext, module = build_preset("cyclic:2,2", "Z2")
    rep1 = seven_term_report(ext, module, meta={"preset": "cyclic:2,2", "module": "Z2", "seed": 0})
    ext2, module2 = build_preset("cyclic:2,2", "Z2")
    rep2 = seven_term_report(ext2, module2, meta={"preset": "cyclic:2,2", "module": "Z2", "seed": 0})
    assert dumps(seven_term_document(rep1)) == dumps(seven_term_document(rep2))
    doc = loads(dumps(seven_term_document(rep1)))
    assert doc["all_joints_exact"] is True
    assert doc["groups"]["h3_q_mn"]["invariant_factors"] == ["2"]
    text = render_text(doc)
    assert "pass" in text and "FAIL" not in text


def test_large_entries_survive_serialization():
    big = 10**30
    doc = {"kind": "cohomology", "invariant_factors": [str(big)]}
    assert loads(dumps(doc))["invariant_factors"] == [str(big)]
