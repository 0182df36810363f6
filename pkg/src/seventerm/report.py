"""Structured documents for groups, modules, extensions and run reports.

Documents are JSON-compatible dicts.  Multiplication tables, element indices
and orders are plain integers; everything that can be a large exact integer
(matrix entries, coordinates, invariant factors) is serialized as a decimal
string so nothing is lost to word sizes on the way through other tools.
"""

from __future__ import annotations

import json
from typing import Sequence

from .abelian import FgAbelianGroup
from .errors import InputError
from .extensions import AmbientExtension
from .gmodules import GModule, module_from_generator_action
from .groups import FiniteGroup, SubgroupHandle
from .sevenmaps import SevenTermReport

TOOL_NAME = "seventerm"
TOOL_VERSION = "0.1.0"


def _enc_int(v: int) -> str:
    return str(int(v))


def _enc_matrix(rows: Sequence[Sequence[int]]) -> list[list[str]]:
    return [[_enc_int(v) for v in row] for row in rows]


def _dec_matrix(rows) -> list[list[int]]:
    return [[int(v) for v in row] for row in rows]


def group_document(group: FiniteGroup) -> dict:
    doc = {
        "kind": "group",
        "name": group.name,
        "order": group.order,
        "mul": [list(row) for row in group.mul],
    }
    if group.labels:
        doc["labels"] = list(group.labels)
    return doc


def group_from_document(doc: dict) -> FiniteGroup:
    if doc.get("kind") != "group":
        raise InputError("document is not a group")
    return FiniteGroup(doc["mul"], labels=doc.get("labels"), name=doc.get("name", "G"))


def module_document(module: GModule) -> dict:
    return {
        "kind": "module",
        "name": module.name,
        "ngens": module.base.ngens,
        "relations": _enc_matrix(module.base.relations),
        "action": [_enc_matrix(mat) for mat in module.action],
    }


def module_from_document(doc: dict, group: FiniteGroup) -> GModule:
    if doc.get("kind") != "module":
        raise InputError("document is not a module")
    base = FgAbelianGroup(doc["ngens"], _dec_matrix(doc["relations"]))
    if "action" in doc:
        action = [_dec_matrix(m) for m in doc["action"]]
        return GModule(group, base, action, name=doc.get("name", "M"))
    gen_action = {
        int(g): _dec_matrix(m) for g, m in doc["action_generators"].items()
    }
    return module_from_generator_action(group, base, gen_action, name=doc.get("name", "M"))


def extension_document(ext: AmbientExtension) -> dict:
    return {
        "kind": "extension",
        "group": group_document(ext.group),
        "kernel": list(ext.nsub.elements),
        "quotient_order": ext.quotient.order,
        "section": list(ext.section),
    }


def extension_from_document(doc: dict) -> AmbientExtension:
    if doc.get("kind") != "extension":
        raise InputError("document is not an extension")
    group = group_from_document(doc["group"])
    return AmbientExtension(group, SubgroupHandle(group, doc["kernel"]))


def cohomology_document(meta: dict, orders: Sequence[int], gens_meta: dict) -> dict:
    return {
        "kind": "cohomology",
        "tool": {"name": TOOL_NAME, "version": TOOL_VERSION},
        "config": meta,
        "invariant_factors": [_enc_int(d) for d in sorted(orders)],
        **gens_meta,
    }


def seven_term_document(report: SevenTermReport) -> dict:
    return {
        "kind": "seven_term_report",
        "tool": {"name": TOOL_NAME, "version": TOOL_VERSION},
        "config": report.meta,
        "groups": {
            name: {"invariant_factors": [_enc_int(d) for d in data["orders"]]}
            for name, data in sorted(report.groups.items())
        },
        "maps": {name: _enc_matrix(rows) for name, rows in sorted(report.maps.items())},
        "verdicts": dict(sorted(report.verdicts.items())),
        "all_joints_exact": report.all_exact,
    }


def render_text(doc: dict) -> str:
    """Human-readable rendering derived from the structured document."""
    lines = [f"{doc.get('kind', 'document')} ({TOOL_NAME} {TOOL_VERSION})"]
    config = doc.get("config", {})
    if config:
        lines.append("config:")
        for k, v in sorted(config.items()):
            lines.append(f"  {k} = {v}")
    if "invariant_factors" in doc:
        lines.append("invariant factors: " + _fmt_factors(doc["invariant_factors"]))
    for name, data in sorted(doc.get("groups", {}).items()):
        lines.append(f"  {name:24s} {_fmt_factors(data['invariant_factors'])}")
    if "maps" in doc:
        lines.append("maps (matrix on generators):")
        for name, rows in sorted(doc["maps"].items()):
            lines.append(f"  {name:24s} {rows}")
    if "verdicts" in doc:
        lines.append("verdicts:")
        for name, v in sorted(doc["verdicts"].items()):
            lines.append(f"  {name:40s} {'pass' if v else 'FAIL'}")
    if "checks" in doc:
        lines.append("checks:")
        for name, v in sorted(doc["checks"].items()):
            status = "pass" if v.get("failures", 1) == 0 else "FAIL"
            lines.append(f"  {name:40s} {status} ({v.get('passes', 0)} passed)")
    if "all_joints_exact" in doc:
        lines.append(f"all joints exact: {doc['all_joints_exact']}")
    if "ok" in doc:
        lines.append(f"overall: {'pass' if doc['ok'] else 'FAIL'}")
    return "\n".join(lines) + "\n"


def _fmt_factors(factors: list[str]) -> str:
    if not factors:
        return "0"
    return " + ".join("Z" if f == "0" else f"Z{f}" for f in factors)


def dumps(doc: dict) -> str:
    """Deterministic serialization: sorted keys, fixed indentation."""
    return json.dumps(doc, sort_keys=True, indent=2) + "\n"


def loads(text: str) -> dict:
    return json.loads(text)
