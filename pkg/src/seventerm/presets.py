"""Named extension presets and coefficient-module builders."""

from __future__ import annotations

import re
from typing import Optional, Sequence

from .abelian import FgAbelianGroup
from .errors import BadParams, UnknownPreset
from .extensions import AmbientExtension
from .gmodules import GModule, module_from_generator_action, trivial_module
from .groups import FiniteGroup, SubgroupHandle, centralizer_center

PRESET_NAMES = ("cyclic", "dihedral", "quaternion8", "symmetric3", "heisenberg_mod")


def parse_spec(spec: str) -> tuple[str, list[int]]:
    """Split 'name:1,2' into the name and integer parameters."""
    name, _, rest = spec.partition(":")
    name = name.strip()
    params = []
    if rest.strip():
        for tok in rest.split(","):
            try:
                params.append(int(tok))
            except ValueError as exc:
                raise BadParams(f"parameter {tok!r} is not an integer") from exc
    return name, params


def build_extension(spec: str) -> AmbientExtension:
    """An ambient extension 1 -> N -> G -> Q -> 1 from a preset spec string.

    cyclic:n,m          0 -> Z_n -> Z_{nm} -> Z_m -> 0
    dihedral:n          rotations inside the dihedral group of order 2n
    quaternion8         the center {1, -1} inside the quaternion group
    symmetric3          the alternating subgroup inside S_3
    heisenberg_mod:k    the center of the Heisenberg group over Z_k
    """
    name, params = parse_spec(spec)
    if name == "cyclic":
        if len(params) != 2 or min(params) < 1:
            raise BadParams("cyclic needs two positive parameters n,m")
        n, m = params
        group = FiniteGroup.cyclic(n * m)
        nsub = SubgroupHandle(group, [m * i for i in range(n)])
    elif name == "dihedral":
        if len(params) != 1 or params[0] < 2:
            raise BadParams("dihedral needs one parameter n >= 2")
        group = FiniteGroup.dihedral(params[0])
        nsub = SubgroupHandle(group, range(params[0]))
    elif name == "quaternion8":
        if params:
            raise BadParams("quaternion8 takes no parameters")
        group = FiniteGroup.quaternion8()
        nsub = centralizer_center(group)
    elif name == "symmetric3":
        if params:
            raise BadParams("symmetric3 takes no parameters")
        group = FiniteGroup.symmetric3()
        nsub = SubgroupHandle(group, [0, 1, 2])
    elif name == "heisenberg_mod":
        if len(params) != 1 or params[0] < 2:
            raise BadParams("heisenberg_mod needs one parameter k >= 2")
        group = FiniteGroup.heisenberg(params[0])
        nsub = centralizer_center(group)
    else:
        raise UnknownPreset(f"unknown preset {name!r}")
    return AmbientExtension(group, nsub)


_MODULE_RE = re.compile(r"^Z(\d*)(?:\^(\d+))?$")


def build_module(spec: str, ext: AmbientExtension) -> GModule:
    """A coefficient module over the middle group of an extension.

    Z, Z4, Z^2, Z3^2   trivial action on Z^r or (Z_d)^r
    sign               Z with the quotient of order two acting by -1
    """
    spec = spec.strip()
    if spec == "sign":
        if ext.quotient.order != 2:
            raise BadParams("sign module needs a quotient of order 2")
        pi = ext.projection.image
        action = [[[1]] if pi[g] == 0 else [[-1]] for g in range(ext.group.order)]
        return GModule(ext.group, FgAbelianGroup(1, []), action, name="Zsign")
    m = _MODULE_RE.match(spec)
    if not m:
        raise BadParams(f"cannot parse module spec {spec!r}")
    order = int(m.group(1)) if m.group(1) else 0
    rank = int(m.group(2)) if m.group(2) else 1
    if order == 1 or rank < 1:
        raise BadParams("module order must be 0 or >= 2 and rank >= 1")
    return trivial_module(ext.group, order, rank)


def build_module_from_data(
    ext: AmbientExtension,
    relations: Sequence[Sequence[int]],
    ngens: int,
    generator_action: dict[int, Sequence[Sequence[int]]],
    name: str = "M",
) -> GModule:
    """Module from explicit relation and generator-action matrices."""
    base = FgAbelianGroup(ngens, relations)
    return module_from_generator_action(ext.group, base, generator_action, name=name)


def build_preset(preset_spec: str, module_spec: str) -> tuple[AmbientExtension, GModule]:
    ext = build_extension(preset_spec)
    return ext, build_module(module_spec, ext)


def battery_module_specs(preset_spec: str) -> list[str]:
    """The default coefficient modules exercised for one preset.

    Z, Z2 and Z4 always; Z3 when 3 divides the group order; the sign module
    for symmetric3.
    """
    ext = build_extension(preset_spec)
    specs = ["Z", "Z2", "Z4"]
    if ext.group.order % 3 == 0:
        specs.append("Z3")
    if parse_spec(preset_spec)[0] == "symmetric3":
        specs.append("sign")
    return specs
