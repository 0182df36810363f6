"""Batch execution: a run configuration in, a structured document out."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from .cohomology import DEFAULT_BUDGET, CohomologyGroup
from .errors import BadParams, InputError
from .presets import build_extension, build_module
from .report import (
    cohomology_document,
    dumps,
    loads,
    module_from_document,
    seven_term_document,
)
from .sevenmaps import seven_term_report


@dataclass
class RunConfig:
    """One requested computation; a fixed config yields byte-identical output."""

    computation: str  # "cohomology" | "seven-term" | "verify"
    preset: str = ""
    module: str = ""
    degree: int = 2
    budget: int = DEFAULT_BUDGET
    trials: int = 20
    seed: int = 0
    transgression_route: str = "eta"

    def __post_init__(self) -> None:
        if self.budget <= 0:
            raise BadParams("budget must be positive")
        if self.computation not in ("cohomology", "seven-term", "verify"):
            raise InputError(f"unknown computation {self.computation!r}")


def _resolve_module(spec: str, ext):
    if spec.startswith("file:"):
        with open(spec[5:], "r", encoding="utf-8") as fh:
            return module_from_document(loads(fh.read()), ext.group)
    return build_module(spec, ext)


def run_and_emit(config: RunConfig) -> dict:
    """Execute one configuration and return the report document.

    Output is deterministic for a fixed config: generator orderings are
    canonical, invariant factors sorted, maps emitted as integer matrices,
    and the seed is echoed into the document.
    """
    if config.computation == "cohomology":
        ext = build_extension(config.preset)
        module = _resolve_module(config.module, ext)
        h = CohomologyGroup(module, config.degree, config.budget)
        return cohomology_document(
            {
                "preset": config.preset,
                "module": config.module,
                "degree": config.degree,
                "group_order": ext.group.order,
                "budget": config.budget,
                "seed": config.seed,
            },
            h.orders,
            {"ngens": h.ngens, "ok": True},
        )
    if config.computation == "seven-term":
        ext = build_extension(config.preset)
        module = _resolve_module(config.module, ext)
        report = seven_term_report(
            ext,
            module,
            config.budget,
            meta={
                "preset": config.preset,
                "module": config.module,
                "budget": config.budget,
                "seed": config.seed,
            },
            transgression_route=config.transgression_route,
        )
        doc = seven_term_document(report)
        doc["ok"] = report.all_exact
        return doc
    from .battery import run_battery

    return run_battery(trials=config.trials, seed=config.seed, budget=config.budget)


def emit_bytes(config: RunConfig) -> str:
    return dumps(run_and_emit(config))
