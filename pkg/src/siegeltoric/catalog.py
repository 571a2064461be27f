"""Builtin cone catalog.

Ships only the classically described cones: the principal cone of the
central cone decomposition (Igusa, Namikawa) for genus 2 and 3, and its
level-n rescaling n * Sym_g(Z) for principal congruence level structures.
Generator order is diagonal edges first, then off-diagonal pairs in
lexicographic order.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .cone_lattice import MarkedCone, zeta_matrix


class UnknownCatalogEntryError(KeyError):
    pass


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    cone: MarkedCone
    provenance: str


def principal_cone(g: int, scale: int = 1) -> MarkedCone:
    """Principal cone: edges E_ii and -E_ij - E_ji + E_ii + E_jj, all on the
    boundary of the positive-definite cone, scaled into scale*Sym_g(Z)."""
    pairs = [(i, i) for i in range(g)]
    pairs += [(i, j) for i in range(g) for j in range(i + 1, g)]
    gens = []
    labels = []
    for i, j in pairs:
        base = zeta_matrix(g, i, j)
        gens.append(tuple(tuple(scale * v for v in row) for row in base))
        labels.append(f"z{i + 1}{j + 1}")
    return MarkedCone(g=g, scale=scale, generators=tuple(gens),
                      labels=tuple(labels))


_LEVEL_PATTERN = re.compile(r"^principal-g2-level-(\d+)$")


def catalog_get(name: str) -> CatalogEntry:
    if name == "principal-g2":
        return CatalogEntry(
            name=name, cone=principal_cone(2, 1),
            provenance="principal cone of the central cone decomposition "
                       "(Igusa, Namikawa), genus 2, full level")
    if name == "principal-g3":
        return CatalogEntry(
            name=name, cone=principal_cone(3, 1),
            provenance="principal cone of the central cone decomposition "
                       "(Igusa, Namikawa), genus 3, full level")
    m = _LEVEL_PATTERN.match(name)
    if m:
        level = int(m.group(1))
        if level < 1:
            raise UnknownCatalogEntryError(f"level must be positive in {name!r}")
        return CatalogEntry(
            name=name, cone=principal_cone(2, level),
            provenance="principal cone of the central cone decomposition, "
                       f"genus 2, principal congruence level {level}")
    raise UnknownCatalogEntryError(f"no catalog entry named {name!r}")


def catalog_names(representative_level: int = 3) -> list[str]:
    """Concrete catalog names; the level family is listed at one
    representative level (any 'principal-g2-level-<n>' resolves)."""
    return ["principal-g2", "principal-g3",
            f"principal-g2-level-{representative_level}"]
