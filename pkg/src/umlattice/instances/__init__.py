"""Concrete uniform modular lattices."""

from .module import ModuleLattice
from .tree import Tree
from .zn import Zn


def make_instance(config: dict):
    """Build an instance from a config dict (kind, n, d0, d1, q, B)."""
    kind = config.get("kind")
    if kind == "zn":
        return Zn(int(config.get("n", 2)))
    if kind == "tree":
        return Tree(int(config.get("d0", 3)), int(config.get("d1", 3)))
    if kind == "module":
        return ModuleLattice(
            int(config.get("n", 2)),
            int(config.get("q", 2)),
            int(config.get("B", 4)),
            int(config.get("sample_radius", 1)),
        )
    raise ValueError(f"unknown instance kind {kind!r}")


__all__ = ["ModuleLattice", "Tree", "Zn", "make_instance"]
