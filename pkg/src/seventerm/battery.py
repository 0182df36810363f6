"""The default verification battery: exactness grid plus property checks.

Used by the ``verify`` CLI subcommand and by the acceptance test suite.  All
randomized checks draw from an explicit seeded generator, so a fixed
(config, seed) pair produces byte-identical report documents.
"""

from __future__ import annotations

import random
from typing import Callable, Optional

from .cochains import Cochain, coboundary
from .cohomology import DEFAULT_BUDGET, Derivation
from .errors import SevenTermError
from .extensions import AmbientExtension, normalize_partially_split
from .gmodules import GModule
from .groups import FiniteGroup, GroupMorphism, SubgroupHandle
from .intlin import IntMatrix, det, smith_normal_form
from .presets import battery_module_specs, build_extension, build_module
from .sevenmaps import SevenTermWorkspace, seven_term_report

BATTERY_PRESETS = (
    "cyclic:2,2",
    "cyclic:2,4",
    "cyclic:3,3",
    "dihedral:4",
    "quaternion8",
    "symmetric3",
    "heisenberg_mod:2",
    "heisenberg_mod:3",
)

SPLIT_PRESETS = ("dihedral:4", "symmetric3")


def _unit(group_like, j: int) -> tuple[int, ...]:
    return tuple(1 if i == j else 0 for i in range(group_like.ngens))


def _invariant_generators(ws: SevenTermWorkspace) -> list[Derivation]:
    sub = ws.h1_n_invariant
    return [
        Derivation(sub.cochain_of(_unit(sub, j)), validate=False) for j in range(sub.ngens)
    ]


def exactness_case(ws: SevenTermWorkspace, meta: dict) -> dict:
    report = seven_term_report(ws.ext, ws.module, ws.budget, meta=meta)
    return {
        "groups": report.groups,
        "verdicts": report.verdicts,
        "maps": report.maps,
        "exact": report.all_exact
        and report.verdicts["inflation1_injective"]
        and report.verdicts["inflation_lands_in_kernel_of_restriction"],
    }


def cross_route_case(ws: SevenTermWorkspace) -> dict:
    """Transgression routes must agree on every invariant generator (finite M)."""
    passes = failures = 0
    for d in _invariant_generators(ws):
        a = ws.transgression(d, "eta")
        b = ws.transgression(d, "normalizer")
        c = ws.transgression(d, "omega")
        if a == b == c:
            passes += 1
        else:
            failures += 1
    return {"passes": passes, "failures": failures}


def is_n_invariant(ws: SevenTermWorkspace) -> bool:
    module = ws.module
    r = module.base.ngens
    for n in ws.ext.nsub.elements:
        for j in range(r):
            unit = [1 if i == j else 0 for i in range(r)]
            if module.base.canonical(module.act_raw(n, unit)) != module.base.canonical(unit):
                return False
    return True


def evens_case(ws: SevenTermWorkspace) -> dict:
    passes = failures = 0
    for d in _invariant_generators(ws) + [Derivation.zero(ws.mod_n)]:
        if ws.evens_pushforward_check(d):
            passes += 1
        else:
            failures += 1
    return {"passes": passes, "failures": failures}


def split_degeneracy_case(ws: SevenTermWorkspace) -> dict:
    passes = failures = 0
    for d in _invariant_generators(ws):
        if ws.transgression(d).is_zero():
            passes += 1
        else:
            failures += 1
    for j in range(ws.h1_q_h1n.ngens):
        cls = ws.h1_q_h1n.class_from_coords(_unit(ws.h1_q_h1n, j))
        if ws.lifting_obstruction_class(cls).is_zero():
            passes += 1
        else:
            failures += 1
    return {"passes": passes, "failures": failures}


def random_cochain(module: GModule, degree: int, rng: random.Random, span: int = 3) -> Cochain:
    out = Cochain.zero(module, degree)
    o = module.group.order
    r = module.base.ngens
    import itertools

    for t in itertools.product(range(1, o), repeat=degree):
        out.set_value(t, tuple(rng.randint(-span, span) for _ in range(r)))
    return out


def twist_reshuffle_case(ws: SevenTermWorkspace, rng: random.Random, trials: int) -> dict:
    """The twist map must not depend on the normalized representative."""
    passes = failures = 0
    sub = ws.h2_g_ker_res
    for j in range(sub.ngens):
        base_cls = sub.class_from_coords(_unit(sub, j))
        reference = ws.splitting_twist(base_cls)
        f = sub.cochain_of(base_cls.coords)
        for _ in range(trials):
            v = random_cochain(ws.module, 1, rng)
            shifted = (f + coboundary(v)).canonicalize()
            shifted = normalize_partially_split(shifted, ws.ext, ws.h2_n)
            got = ws.splitting_twist(shifted)
            if got == reference:
                passes += 1
            else:
                failures += 1
    return {"passes": passes, "failures": failures}


def obstruction_section_case(ws: SevenTermWorkspace, rng: random.Random, trials: int) -> dict:
    """The obstruction map must not depend on the section of Der -> H1."""
    passes = failures = 0
    group = ws.h1_q_h1n
    r = ws.module.base.ngens
    for j in range(group.ngens):
        cls = group.class_from_coords(_unit(group, j))
        reference = ws.lifting_obstruction_class(cls)
        for _ in range(trials):
            shifts: dict[tuple[int, ...], Derivation] = {}

            def perturbed(coords, _shifts=shifts):
                canon = ws.h1_n.presentation.canonical(coords)
                base = ws.qmod.section_derivation(canon)
                if not any(canon):
                    return base
                if canon not in _shifts:
                    m = tuple(rng.randint(-2, 2) for _ in range(r))
                    _shifts[canon] = Derivation.inner(ws.mod_n, m)
                return base.add(_shifts[canon])

            got = ws.lifting_obstruction_class(cls, section=perturbed)
            if got == reference:
                passes += 1
            else:
                failures += 1
    return {"passes": passes, "failures": failures}


def naturality_cases(budget: int = DEFAULT_BUDGET) -> dict:
    """The two fixed naturality checks: a cyclic quotient and a modular reduction."""
    from .sevenmaps import naturality_check

    out = {}
    z8 = FiniteGroup.cyclic(8)
    z4 = FiniteGroup.cyclic(4)
    alpha = GroupMorphism(z8, z4, [x % 4 for x in range(8)])
    ext8 = AmbientExtension(z8, SubgroupHandle(z8, [0, 4]))
    ext4 = AmbientExtension(z4, SubgroupHandle(z4, [0, 2]))
    res = naturality_check(alpha, ext8, ext4, build_module("Z2", ext4), budget)
    out["cyclic_quotient_z8_to_z4"] = res["commutes"]

    h4 = FiniteGroup.heisenberg(4)
    h2 = FiniteGroup.heisenberg(2)
    red = []
    for i in range(64):
        x, y, z = i // 16, (i // 4) % 4, i % 4
        red.append(((x % 2) * 2 + (y % 2)) * 2 + (z % 2))
    alpha_h = GroupMorphism(h4, h2, red)
    ext_h4 = AmbientExtension(h4, SubgroupHandle(h4, [0, 1, 2, 3]))
    ext_h2 = AmbientExtension(h2, SubgroupHandle(h2, [0, 1]))
    res = naturality_check(alpha_h, ext_h4, ext_h2, build_module("Z2", ext_h2), budget)
    out["heisenberg_mod4_to_mod2"] = res["commutes"]
    return out


def linear_algebra_case(rng: random.Random, matrices: int = 200, max_dim: int = 12) -> dict:
    """Random Smith forms: transform identity, unimodularity, divisibility chain."""
    passes = failures = 0
    for _ in range(matrices):
        m = rng.randint(1, max_dim)
        n = rng.randint(1, max_dim)
        a = IntMatrix.from_rows(
            [[rng.randint(-9, 9) for _ in range(n)] for _ in range(m)]
        )
        snf = smith_normal_form(a)
        ok = snf.U.mat_mul(a).mat_mul(snf.V) == snf.S
        ok = ok and abs(det(snf.U)) == 1 and abs(det(snf.V)) == 1
        f = snf.invariant_factors
        ok = ok and all(f[i + 1] % f[i] == 0 for i in range(len(f) - 1))
        if ok:
            passes += 1
        else:
            failures += 1
    return {"passes": passes, "failures": failures}


def run_battery(
    trials: int = 20,
    seed: int = 0,
    budget: int = DEFAULT_BUDGET,
    presets: tuple[str, ...] = BATTERY_PRESETS,
    progress: Optional[Callable[[str], None]] = None,
) -> dict:
    """Run the full battery and return a structured result document body."""
    rng = random.Random(seed)
    say = progress or (lambda _msg: None)
    cases = {}
    ok = True
    for preset in presets:
        ext = build_extension(preset)
        for module_spec in battery_module_specs(preset):
            key = f"{preset}/{module_spec}"
            say(f"case {key}")
            module = build_module(module_spec, ext)
            ws = SevenTermWorkspace(ext, module, budget)
            entry: dict = {"preset": preset, "module": module_spec}
            try:
                entry["exactness"] = exactness_case(
                    ws, {"preset": preset, "module": module_spec, "seed": seed}
                )
                if module.base.is_finite:
                    entry["cross_route_transgression"] = cross_route_case(ws)
                if is_n_invariant(ws):
                    entry["evens_pushforward"] = evens_case(ws)
                if preset in SPLIT_PRESETS and is_n_invariant(ws):
                    entry["split_degeneracy"] = split_degeneracy_case(ws)
                entry["twist_representative_invariance"] = twist_reshuffle_case(ws, rng, trials)
                entry["obstruction_section_invariance"] = obstruction_section_case(
                    ws, rng, trials
                )
            except SevenTermError as exc:
                entry["error"] = {"code": exc.code, "message": str(exc)}
                ok = False
            cases[key] = entry
            if "exactness" in entry and not entry["exactness"]["exact"]:
                ok = False
            for check in (
                "cross_route_transgression",
                "evens_pushforward",
                "split_degeneracy",
                "twist_representative_invariance",
                "obstruction_section_invariance",
            ):
                if check in entry and entry[check]["failures"]:
                    ok = False
    say("naturality")
    nat = naturality_cases(budget)
    ok = ok and all(nat.values())
    say("linear algebra")
    lin = linear_algebra_case(rng)
    ok = ok and lin["failures"] == 0
    checks = {"naturality": {"passes": sum(nat.values()), "failures": sum(not v for v in nat.values())},
              "linear_algebra": lin}
    return {
        "kind": "verification_report",
        "config": {"trials": trials, "seed": seed, "budget": budget, "presets": list(presets)},
        "cases": cases,
        "naturality": nat,
        "checks": checks,
        "ok": ok,
    }
