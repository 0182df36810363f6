"""Acceptance criteria, one test per criterion, each printing a verdict line.

The exactness/property battery (criteria 1, 2, 4, 5, 6, 7) runs once per
session with 20 randomized trials per case at seed 2024; every comparison in
it is exact integer equality, with no tolerances anywhere.
"""

from __future__ import annotations

import itertools
import math
import random

import pytest

from gf2oracle import cohomology_dim, cohomology_dim_enumerated
from seventerm.battery import BATTERY_PRESETS, SPLIT_PRESETS, run_battery
from seventerm.cochains import coboundary_is_zero
from seventerm.cohomology import Derivation, cohomology_group
from seventerm.gmodules import trivial_module
from seventerm.groups import FiniteGroup
from seventerm.intlin import IntegerLattice, IntMatrix, det, smith_normal_form, solve_modular_linear
from seventerm.presets import battery_module_specs

JOINTS = (
    "exact_at_h1_g",
    "exact_at_h1_n_invariant",
    "exact_at_h2_q_mn",
    "exact_at_h2_g_ker_res",
    "exact_at_h1_q_h1n",
)

TRIALS = 20
SEED = 2024


def verdict(name: str, ok: bool) -> None:
    print(f"ACCEPTANCE {name}: {'PASS' if ok else 'FAIL'}")
    assert ok


@pytest.fixture(scope="module")
def battery_doc():
    return run_battery(trials=TRIALS, seed=SEED)


def test_criterion_1_exactness_battery(battery_doc):
    expected_cases = {
        f"{preset}/{module}"
        for preset in BATTERY_PRESETS
        for module in battery_module_specs(preset)
    }
    assert set(battery_doc["cases"]) == expected_cases
    ok = True
    for key, entry in sorted(battery_doc["cases"].items()):
        assert "error" not in entry, (key, entry.get("error"))
        verdicts = entry["exactness"]["verdicts"]
        case_ok = all(verdicts[j] for j in JOINTS) and verdicts["inflation1_injective"]
        ok = ok and case_ok
    verdict("1 exactness battery (all joints, image = kernel exactly)", ok)


def test_criterion_2_cross_route_transgression(battery_doc):
    ok = True
    seen = 0
    for key, entry in sorted(battery_doc["cases"].items()):
        if "cross_route_transgression" in entry:
            tally = entry["cross_route_transgression"]
            seen += tally["passes"]
            ok = ok and tally["failures"] == 0
    assert seen > 0
    verdict("2 cross-route transgression agreement (exact class equality)", ok)


def test_criterion_3_brute_force_oracle_equivalence():
    groups = {
        "Z1": FiniteGroup.cyclic(1),
        "Z2": FiniteGroup.cyclic(2),
        "Z3": FiniteGroup.cyclic(3),
        "Z4": FiniteGroup.cyclic(4),
        "V4": FiniteGroup.direct_product(FiniteGroup.cyclic(2), FiniteGroup.cyclic(2)),
    }
    ok = True
    for name, group in groups.items():
        module = trivial_module(group, 2)
        for degree in (1, 2, 3):
            h = cohomology_group(group, module, degree)
            dim = cohomology_dim(group.mul, degree)
            ok = ok and h.orders == (2,) * dim
            free_bits = (group.order - 1) ** degree
            prev_bits = (group.order - 1) ** (degree - 1)
            if free_bits <= 16 and prev_bits <= 16:
                ok = ok and cohomology_dim_enumerated(group.mul, degree) == dim
    verdict("3 brute-force oracle equivalence (order <= 4, Z_2 coefficients)", ok)


def test_criterion_4_evens_comparison(battery_doc, workspace_cache):
    ok = True
    seen = 0
    for key, entry in sorted(battery_doc["cases"].items()):
        if "evens_pushforward" in entry:
            seen += 1
            ok = ok and entry["evens_pushforward"]["failures"] == 0
    assert seen > 0
    # the executable shadow of the infinite example: for the Heisenberg
    # presets, the generator of H^1(N, Z_p)^Q transgresses to minus the class
    # of the central extension itself, which is nonzero
    for p in (2, 3):
        ws = workspace_cache(f"heisenberg_mod:{p}", f"Z{p}")
        sub = ws.h1_n_invariant
        cls = sub.class_from_coords(tuple(1 if i == 0 else 0 for i in range(sub.ngens)))
        d = Derivation(sub.cochain_of(cls.coords), validate=False)
        tr = ws.transgression(d)
        ok = ok and not tr.is_zero()
        ok = ok and ws.evens_pushforward_check(d)
    verdict("4 abelianized push-forward comparison tr[d] = -d*[eps]", ok)


def test_criterion_5_split_degeneracy(battery_doc):
    ok = True
    seen = 0
    for preset in SPLIT_PRESETS:
        for key, entry in sorted(battery_doc["cases"].items()):
            if entry["preset"] == preset and "split_degeneracy" in entry:
                seen += 1
                ok = ok and entry["split_degeneracy"]["failures"] == 0
    assert seen > 0
    verdict("5 split-case degeneracy (transgression and obstruction vanish)", ok)


def test_criterion_6_well_definedness(battery_doc, workspace_cache):
    ok = True
    for key, entry in sorted(battery_doc["cases"].items()):
        ok = ok and entry["twist_representative_invariance"]["failures"] == 0
        ok = ok and entry["obstruction_section_invariance"]["failures"] == 0
    # the obstruction output passes the degree-3 cocycle identity exhaustively
    for preset, module in (("cyclic:2,2", "Z2"), ("heisenberg_mod:3", "Z3")):
        ws = workspace_cache(preset, module)
        for j in range(ws.h1_q_h1n.ngens):
            cls = ws.h1_q_h1n.class_from_coords(
                tuple(1 if i == j else 0 for i in range(ws.h1_q_h1n.ngens))
            )
            out = ws.lifting_obstruction_class(cls)
            rep = ws.h3_q_mn.representative(out)
            ok = ok and coboundary_is_zero(rep)
    verdict("6 well-definedness (20 trials per case; delta^3 c = 0 exhaustive)", ok)


def test_criterion_7_naturality(battery_doc):
    nat = battery_doc["naturality"]
    ok = nat["cyclic_quotient_z8_to_z4"] and nat["heisenberg_mod4_to_mod2"]
    verdict("7 naturality squares (Z_8 -> Z_4 and Heisenberg mod 4 -> mod 2)", ok)


def test_criterion_8_linear_algebra_kernel():
    rng = random.Random(123456)
    ok = True
    for _ in range(1000):
        m = rng.randint(1, 12)
        n = rng.randint(1, 12)
        a = IntMatrix.from_rows([[rng.randint(-9, 9) for _ in range(n)] for _ in range(m)])
        snf = smith_normal_form(a)
        ok = ok and snf.U.mat_mul(a).mat_mul(snf.V) == snf.S
        ok = ok and abs(det(snf.U)) == 1 and abs(det(snf.V)) == 1
        f = snf.invariant_factors
        ok = ok and all(f[i + 1] % f[i] == 0 for i in range(len(f) - 1))
        if not ok:
            break
    # modular solving against literal enumeration, modulus product <= 10^4
    for _ in range(200):
        nvars = rng.randint(1, 3)
        nrows = rng.randint(1, 3)
        moduli = [rng.choice([2, 3, 4, 5, 6]) for _ in range(nrows)]
        a_rows = [[rng.randint(-5, 5) for _ in range(nvars)] for _ in range(nrows)]
        b = [rng.randint(-5, 5) for _ in range(nrows)]
        assert math.prod(moduli) <= 10_000
        r_rows = [[moduli[i] if j == i else 0 for j in range(nrows)] for i in range(nrows)]
        sol = solve_modular_linear(
            IntMatrix.from_rows(a_rows, nvars), IntMatrix.from_rows(r_rows, nrows), b
        )
        lcm = math.lcm(*moduli)
        box = [
            x
            for x in itertools.product(range(lcm), repeat=nvars)
            if all(
                (sum(r * v for r, v in zip(row, x)) - bi) % d == 0
                for row, bi, d in zip(a_rows, b, moduli)
            )
        ]
        if sol is None:
            ok = ok and not box
        else:
            ok = ok and all(
                (sum(r * v for r, v in zip(row, sol.x)) - bi) % d == 0
                for row, bi, d in zip(a_rows, b, moduli)
            )
            lat = IntegerLattice(nvars, sol.kernel)
            ok = ok and all(
                [xv - pv for xv, pv in zip(x, sol.x)] in lat for x in box
            )
    verdict("8 linear-algebra kernel (1000 Smith forms; solver vs enumeration)", ok)
