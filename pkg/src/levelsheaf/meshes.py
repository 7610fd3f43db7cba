"""Meshes shipped with the package, used by the examples and the test suite."""

from __future__ import annotations

from importlib import resources

from .levelset import PLFunction
from .serialize import mesh_from_json


def bundled_mesh_names() -> list[str]:
    root = resources.files("levelsheaf") / "data" / "meshes"
    return sorted(p.name[: -len(".json")] for p in root.iterdir() if p.name.endswith(".json"))


def bundled_mesh_text(name: str) -> str:
    return (resources.files("levelsheaf") / "data" / "meshes" / f"{name}.json").read_text(encoding="utf-8")


def load_bundled_mesh(name: str) -> PLFunction:
    return mesh_from_json(bundled_mesh_text(name))


def torus_triangles(n: int = 3) -> list[tuple[str, str, str]]:
    """The n-by-n grid on the torus, each square cut along one diagonal."""

    def v(i: int, j: int) -> str:
        return f"t{i % n}{j % n}"

    tris = []
    for i in range(n):
        for j in range(n):
            tris.append((v(i, j), v(i + 1, j), v(i + 1, j + 1)))
            tris.append((v(i, j), v(i, j + 1), v(i + 1, j + 1)))
    return tris
