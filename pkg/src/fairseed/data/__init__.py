"""Bundled toy networks used by tests, demos, and the CLI examples."""

from __future__ import annotations

from importlib import resources
from pathlib import Path

from ..graph import Graph, load_edge_list, load_manifest

FIXTURE_NAMES = (
    "p3",
    "p5",
    "k3",
    "k4",
    "star3",
    "c4",
    "c6",
    "twin_triangles",
    "k4_tail",
    "double_star",
)


def data_dir() -> Path:
    return Path(resources.files(__package__))


def fixture_path(name: str) -> Path:
    path = data_dir() / f"{name}.edges"
    if not path.exists():
        raise ValueError(f"unknown fixture {name!r}; have {FIXTURE_NAMES}")
    return path


def fixture_manifest_path() -> Path:
    return data_dir() / "manifest.json"


def load_fixture(name: str, extract_lcc: bool = True) -> Graph:
    entry = next(
        (e for e in load_manifest(fixture_manifest_path()) if e.name == name), None
    )
    if entry is None:
        raise ValueError(f"unknown fixture {name!r}; have {FIXTURE_NAMES}")
    return load_edge_list(entry.path, extract_lcc, name=entry.name, domain=entry.domain)
