"""Fusion data induced on a Sylow subgroup by an ambient finite group.

Two subgroups of the Sylow subgroup S are fused when some ambient element
conjugates one onto the other. That merges S-conjugacy classes into fusion
classes; each fusion class carries a fully normalized representative, the
member class whose normalizer in S is largest.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

from .errors import InputError, WitnessError
from .permgroup import (
    Group,
    Permutation,
    Subgroup,
    SubgroupClassTable,
    class_table,
    is_prime,
    normalizer,
    subgroup_as_group,
    sylow_subgroup,
)

__all__ = [
    "ConjugationWitness",
    "FusionData",
    "fusion_from_group",
    "fully_normalized_rep",
    "normalizer_lift",
]


@dataclass(frozen=True)
class ConjugationWitness:
    """An ambient element g with g·source·g^-1 = target."""

    element: Permutation
    source: Subgroup
    target: Subgroup


class FusionData:
    """The fusion pattern of an ambient group on its Sylow p-subgroup.

    ``table`` is the class table of the Sylow subgroup (as its own group);
    ``fclasses`` partitions its class indices, each part sorted, parts ordered
    by their first member. ``fn_rep[f]`` is the member class with maximal
    normalizer, ties resolved toward the smaller class index.
    """

    def __init__(self, ambient: Group, prime: int, sylow: Subgroup,
                 sgroup: Group, table: SubgroupClassTable,
                 fclasses: tuple[tuple[int, ...], ...]):
        self.ambient = ambient
        self.prime = prime
        self.sylow = sylow
        self.sgroup = sgroup
        self.table = table
        self.fclasses = fclasses
        fclass_of = [-1] * len(table)
        for f, members in enumerate(fclasses):
            for m in members:
                fclass_of[m] = f
        self.fclass_of: tuple[int, ...] = tuple(fclass_of)
        self.fn_rep: tuple[int, ...] = tuple(
            max(members, key=lambda m: (table.normalizer_order(m), -m))
            for members in fclasses)

    @property
    def n_fclasses(self) -> int:
        return len(self.fclasses)

    def members(self, f: int) -> tuple[int, ...]:
        return self.fclasses[f]

    def fclass_order(self, f: int) -> int:
        return self.table.class_order(self.fclasses[f][0])

    def fn_subgroup(self, f: int) -> Subgroup:
        return self.table.rep(self.fn_rep[f])

    def fclass_label(self, f: int) -> str:
        """Fusion classes are labeled by their fully normalized representative."""
        return self.table.labels[self.fn_rep[f]]

    def is_fully_normalized(self, s_class: int) -> bool:
        f = self.fclass_of[s_class]
        best = self.table.normalizer_order(self.fn_rep[f])
        return self.table.normalizer_order(s_class) == best

    @cached_property
    def _ambient_of_sgroup(self) -> tuple[int, ...]:
        G = self.ambient
        return tuple(G.element_index(p) for p in self.sgroup.elements)

    def _ambient_set(self, sub: Subgroup) -> frozenset[int]:
        if sub.parent is not self.sgroup:
            raise InputError("subgroup does not live in this Sylow subgroup")
        amb = self._ambient_of_sgroup
        return frozenset(amb[i] for i in sub.indices)

    def conjugation_witness(self, source: Subgroup,
                            target: Subgroup) -> ConjugationWitness | None:
        """The least ambient element conjugating source onto target, if any."""
        G = self.ambient
        src = self._ambient_set(source)
        tgt = self._ambient_set(target)
        if len(src) != len(tgt):
            return None
        for g in range(G.order):
            gi = G.inv(g)
            if all(G.mul(G.mul(g, x), gi) in tgt for x in src):
                return ConjugationWitness(G.elements[g], source, target)
        return None

    def __repr__(self) -> str:
        amb = self.ambient.name or f"order-{self.ambient.order} group"
        return (f"<fusion of {amb} at p={self.prime}: "
                f"{self.n_fclasses} classes over {len(self.table)}>")


def fusion_from_group(G: Group, p: int) -> FusionData:
    """Fusion of G on a Sylow p-subgroup, by exhaustive conjugacy testing.

    When p does not divide |G| this degenerates to the trivial group with a
    single class. For G itself a p-group the Sylow subgroup is all of G and
    nothing fuses beyond S-conjugacy.
    """
    if not is_prime(p):
        raise InputError(f"{p} is not prime")
    syl = sylow_subgroup(G, p)
    if (G.order // syl.order) % p == 0:
        raise InputError("Sylow subgroup has index divisible by p")
    sgrp = subgroup_as_group(syl)
    table = class_table(sgrp)
    n = len(table)
    amb = tuple(G.element_index(pm) for pm in sgrp.elements)
    rep_sets = []
    for i in range(n):
        rep_sets.append(frozenset(amb[j] for j in table.rep(i).indices))
    parent = list(range(n))

    def find(a: int) -> int:
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for i in range(n):
        for j in range(i + 1, n):
            if table.class_order(i) != table.class_order(j):
                continue
            if find(i) == find(j):
                continue
            src, tgt = rep_sets[i], rep_sets[j]
            for g in range(G.order):
                gi = G.inv(g)
                if all(G.mul(G.mul(g, x), gi) in tgt for x in src):
                    ra, rb = find(i), find(j)
                    parent[max(ra, rb)] = min(ra, rb)
                    break
    groups: dict[int, list[int]] = {}
    for i in range(n):
        groups.setdefault(find(i), []).append(i)
    fclasses = tuple(tuple(sorted(v)) for _, v in sorted(groups.items()))
    return FusionData(G, p, syl, sgrp, table, fclasses)


def fully_normalized_rep(F: FusionData, f: int) -> int:
    """Class index of the fully normalized representative of fusion class f."""
    if not 0 <= f < F.n_fclasses:
        raise InputError(f"no fusion class {f}")
    return F.fn_rep[f]


def normalizer_lift(F: FusionData, Q: Subgroup, P: Subgroup) -> ConjugationWitness:
    """An ambient witness g with gQg^-1 = P that also maps N_S(Q) into N_S(P).

    P must be fully normalized and Q fused to it; saturation then guarantees a
    witness. The scan takes the first valid g in ambient element order, so the
    result is deterministic.
    """
    table = F.table
    q_cls = table.class_of(Q)
    p_cls = table.class_of(P)
    if F.fclass_of[q_cls] != F.fclass_of[p_cls]:
        raise InputError("Q is not conjugate to P in this fusion system")
    if not F.is_fully_normalized(p_cls):
        raise InputError("P is not fully normalized in its fusion class")
    G = F.ambient
    src = F._ambient_set(Q)
    tgt = F._ambient_set(P)
    nq = F._ambient_set(normalizer(F.sgroup, Q))
    np_ = F._ambient_set(normalizer(F.sgroup, P))
    for g in range(G.order):
        gi = G.inv(g)
        if not all(G.mul(G.mul(g, x), gi) in tgt for x in src):
            continue
        if all(G.mul(G.mul(g, x), gi) in np_ for x in nq):
            return ConjugationWitness(G.elements[g], Q, P)
    raise WitnessError(
        "saturation witness missing: no ambient element carries N(Q) into N(P)")
