"""Built-in groups used by the command line interface and the test suite.

Every 2-group of order up to 16 that shows distinct lattice behavior, plus
the small symmetric and alternating groups as ambient groups for fusion.
``primes`` lists the primes an entry is meant to be studied at; the first is
the command line default.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cache

from .errors import InputError
from .permgroup import Group, generate_group, parse_permutation

__all__ = ["CatalogEntry", "CATALOG", "P_GROUP_NAMES", "AMBIENT_PAIRS",
           "catalog", "lookup", "group"]


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    degree: int
    cycles: tuple[str, ...]
    primes: tuple[int, ...]
    summary: str

    def build(self) -> Group:
        gens = tuple(parse_permutation(c, self.degree) for c in self.cycles)
        return generate_group(self.degree, gens, name=self.name)


_ENTRIES = (
    CatalogEntry("C2", 2, ("(1 2)",), (2,), "cyclic of order 2"),
    CatalogEntry("C4", 4, ("(1 2 3 4)",), (2,), "cyclic of order 4"),
    CatalogEntry("C2xC2", 4, ("(1 2)", "(3 4)"), (2,), "Klein four-group"),
    CatalogEntry("C8", 8, ("(1 2 3 4 5 6 7 8)",), (2,), "cyclic of order 8"),
    CatalogEntry("D8", 4, ("(1 2 3 4)", "(1 3)"), (2,),
                 "dihedral of order 8 (square symmetries)"),
    # Left regular representation of the quaternions on 1,-1,i,-i,j,-j,k,-k.
    CatalogEntry("Q8", 8, ("(1 3 2 4)(5 7 6 8)", "(1 5 2 6)(3 8 4 7)"), (2,),
                 "quaternion group of order 8"),
    CatalogEntry("C2xC4", 6, ("(1 2)", "(3 4 5 6)"), (2,),
                 "direct product of C2 and C4"),
    CatalogEntry("D16", 8, ("(1 2 3 4 5 6 7 8)", "(1 8)(2 7)(3 6)(4 5)"), (2,),
                 "dihedral of order 16 (octagon symmetries)"),
    CatalogEntry("S3", 3, ("(1 2 3)", "(1 2)"), (3, 2),
                 "symmetric group on 3 letters"),
    CatalogEntry("S4", 4, ("(1 2 3 4)", "(1 2)"), (2, 3),
                 "symmetric group on 4 letters"),
    CatalogEntry("S5", 5, ("(1 2)", "(1 2 3 4 5)"), (2, 3),
                 "symmetric group on 5 letters"),
    CatalogEntry("A4", 4, ("(1 2 3)", "(2 3 4)"), (2,),
                 "alternating group on 4 letters"),
)

CATALOG: dict[str, CatalogEntry] = {e.name: e for e in _ENTRIES}

P_GROUP_NAMES = ("C2", "C4", "C2xC2", "C8", "D8", "Q8", "C2xC4", "D16")

# Ambient group and prime combinations with a proper Sylow subgroup.
AMBIENT_PAIRS = (("S4", 2), ("S5", 2), ("S5", 3), ("S3", 3), ("A4", 2))


def catalog() -> list[CatalogEntry]:
    """Every built-in entry, in catalog order."""
    return list(_ENTRIES)


def lookup(name: str) -> CatalogEntry:
    entry = CATALOG.get(name)
    if entry is None:
        known = ", ".join(sorted(CATALOG))
        raise InputError(f"unknown catalog group {name!r}; available: {known}")
    return entry


@cache
def group(name: str) -> Group:
    """Build a catalog group once per process so downstream caches are shared."""
    return lookup(name).build()
