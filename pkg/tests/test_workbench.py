"""RunConfig execution and remaining module-level invariants."""

from __future__ import annotations

import pytest

from seventerm.abelian import FgAbelianGroup
from seventerm.errors import BadParams, InputError
from seventerm.gmodules import GModule, trivial_module
from seventerm.groups import FiniteGroup, SubgroupHandle, normalizer, subgroup_closure
from seventerm.report import dumps, loads
from seventerm.workbench import RunConfig, emit_bytes, run_and_emit


def test_run_and_emit_cohomology():
    # the quaternion group has periodic mod-2 cohomology: dim H^2 = 2
    doc = run_and_emit(
        RunConfig(computation="cohomology", preset="quaternion8", module="Z2", degree=2)
    )
    assert doc["invariant_factors"] == ["2", "2"]
    assert doc["ok"] is True
    # and the Heisenberg group over Z_2 has dim H^2 = 3
    doc = run_and_emit(
        RunConfig(computation="cohomology", preset="heisenberg_mod:2", module="Z2", degree=2)
    )
    assert doc["invariant_factors"] == ["2", "2", "2"]


def test_run_and_emit_seven_term_round_trip():
    text = emit_bytes(RunConfig(computation="seven-term", preset="dihedral:4", module="Z2", seed=3))
    doc = loads(text)
    assert doc["ok"] is True and doc["config"]["seed"] == 3
    # round trip: the serialized document re-parses to the same bytes
    assert dumps(doc) == text


def test_run_config_validation():
    with pytest.raises(BadParams):
        RunConfig(computation="verify", budget=-1)
    with pytest.raises(InputError):
        RunConfig(computation="frobnicate")


def test_gmodule_validation_rejects_broken_actions():
    z2 = FiniteGroup.cyclic(2)
    base = FgAbelianGroup(1, [])
    with pytest.raises(InputError):
        GModule(z2, base, [[[1]], [[2]]])  # 2 is not an involution on Z
    with pytest.raises(InputError):
        GModule(z2, base, [[[2]], [[1]]])  # identity must act as the identity
    base4 = FgAbelianGroup(1, [[4]])
    with pytest.raises(InputError):
        GModule(z2, base4, [[[1]], [[2]]])  # 2*2 = 4 = 0: not invertible mod 4
    # but 3 is a valid involution mod 4
    GModule(z2, base4, [[[1]], [[3]]])


def test_induced_action_independent_of_coset_representative(workspace_cache):
    ws = workspace_cache("heisenberg_mod:2", "Z4")
    qmod = ws.qmod
    h1 = ws.h1_n
    for q in range(qmod.group.order):
        g = ws.ext.section[q]
        for n_parent in ws.ext.n_embed:
            g2 = ws.group.mul[g][n_parent]
            for gen in h1.gens:
                from seventerm.cohomology import Derivation

                d = Derivation(gen, validate=False)
                via_g = h1.class_of(d.conjugate(ws.group, ws.ext.n_embed, g, ws.module).cochain)
                via_g2 = h1.class_of(d.conjugate(ws.group, ws.ext.n_embed, g2, ws.module).cochain)
                assert via_g == via_g2


def test_normalizer_contains_subgroup():
    for group in (FiniteGroup.symmetric3(), FiniteGroup.dihedral(4), FiniteGroup.quaternion8()):
        for gen in range(group.order):
            h = subgroup_closure(group, [gen])
            w = normalizer(group, h)
            assert set(h.elements) <= set(w.elements)
            if h.is_normal:
                assert w.order == group.order
