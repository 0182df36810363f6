"""Shared fixtures: preset workspaces are cached per session so the heavy
complex reductions (heisenberg_mod:3 in particular) run once."""

from __future__ import annotations

import pytest

from seventerm.presets import build_extension, build_module
from seventerm.sevenmaps import SevenTermWorkspace


@pytest.fixture(scope="session")
def workspace_cache():
    exts: dict = {}
    cache: dict = {}

    def get(preset: str, module_spec: str) -> SevenTermWorkspace:
        key = (preset, module_spec)
        if key not in cache:
            if preset not in exts:
                exts[preset] = build_extension(preset)
            ext = exts[preset]
            cache[key] = SevenTermWorkspace(ext, build_module(module_spec, ext))
        return cache[key]

    return get
