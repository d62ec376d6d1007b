"""Concrete finite permutation groups.

Everything downstream (marks, fusion, stable sets) works with indices into a
group's fixed element list, so the ordering conventions here are load-bearing:
elements are sorted by image tuple, subgroups are canonically keyed by their
sorted element indices, and conjugacy classes of subgroups are ordered by
decreasing subgroup order with lexicographic tie-breaking on the least member
key. Identical inputs always produce identical tables.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from functools import cache, cached_property

from .errors import InputError, InvariantError, SizeCapError

MAX_GROUP_ORDER = 10_000
MAX_LATTICE_ORDER = 64
MAX_SUBGROUPS = 4_096

__all__ = [
    "Permutation",
    "Group",
    "Subgroup",
    "SubgroupClass",
    "SubgroupClassTable",
    "generate_group",
    "enumerate_subgroups",
    "class_table",
    "normalizer",
    "centralizer",
    "center",
    "transporter",
    "sylow_subgroup",
    "subgroups_of_order",
    "subgroup_as_group",
    "coset_representatives",
    "closure_indices",
    "parse_permutation",
    "parse_group_file",
    "load_group_file",
    "is_prime",
]


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


@dataclass(frozen=True, order=True)
class Permutation:
    """A bijection of {0, ..., n-1} stored as its tuple of images."""

    images: tuple[int, ...]

    @classmethod
    def from_images(cls, images) -> Permutation:
        images = tuple(images)
        n = len(images)
        if n == 0:
            raise InputError("a permutation needs at least one point")
        seen = [False] * n
        for x in images:
            if not isinstance(x, int) or not 0 <= x < n or seen[x]:
                raise InputError(f"not a permutation of 0..{n - 1}: {images!r}")
            seen[x] = True
        return cls(images)

    @classmethod
    def identity(cls, degree: int) -> Permutation:
        if degree < 1:
            raise InputError("degree must be at least 1")
        return cls(tuple(range(degree)))

    @property
    def degree(self) -> int:
        return len(self.images)

    def __call__(self, point: int) -> int:
        return self.images[point]

    def __mul__(self, other: Permutation) -> Permutation:
        # (p * q)(x) = p(q(x)): q acts first.
        if len(self.images) != len(other.images):
            raise InputError("cannot compose permutations of different degree")
        img = self.images
        return Permutation(tuple(img[x] for x in other.images))

    def inverse(self) -> Permutation:
        inv = [0] * len(self.images)
        for i, x in enumerate(self.images):
            inv[x] = i
        return Permutation(tuple(inv))

    def is_identity(self) -> bool:
        return all(i == x for i, x in enumerate(self.images))

    def cycles(self) -> list[tuple[int, ...]]:
        """Disjoint cycles of length > 1, each rotated to start at its minimum."""
        seen = [False] * len(self.images)
        out = []
        for start in range(len(self.images)):
            if seen[start] or self.images[start] == start:
                seen[start] = True
                continue
            cyc = []
            x = start
            while not seen[x]:
                seen[x] = True
                cyc.append(x)
                x = self.images[x]
            out.append(tuple(cyc))
        return out

    def order(self) -> int:
        return math.lcm(1, *(len(c) for c in self.cycles()))

    def __str__(self) -> str:
        cycs = self.cycles()
        if not cycs:
            return "()"
        return "".join("(" + " ".join(str(p + 1) for p in cyc) + ")" for cyc in cycs)


_CYCLE_RE = re.compile(r"\(([^()]*)\)")


def parse_permutation(text: str, degree: int) -> Permutation:
    """Parse disjoint-cycle notation like ``(1 2 3)(4 5)``. Points are 1-based."""
    s = text.strip()
    if degree < 1:
        raise InputError("degree must be at least 1")
    body = _CYCLE_RE.sub("", s)
    if body.strip():
        raise InputError(f"unparsable permutation text: {text!r}")
    images = list(range(degree))
    used: set[int] = set()
    for group in _CYCLE_RE.findall(s):
        tokens = [t for t in re.split(r"[,\s]+", group.strip()) if t]
        if not tokens:
            continue  # "()" denotes the identity
        points = []
        for tok in tokens:
            try:
                p = int(tok)
            except ValueError:
                raise InputError(f"bad point {tok!r} in {text!r}") from None
            if not 1 <= p <= degree:
                raise InputError(f"point {p} outside 1..{degree} in {text!r}")
            if p - 1 in used:
                raise InputError(f"point {p} repeated in {text!r}; cycles must be disjoint")
            used.add(p - 1)
            points.append(p - 1)
        for i, p in enumerate(points):
            images[p] = points[(i + 1) % len(points)]
    return Permutation(tuple(images))


class Group:
    """A finite permutation group with a fixed, sorted element list.

    Do not call the constructor directly; use :func:`generate_group`,
    :func:`parse_group_file`, or :func:`subgroup_as_group`, which establish the
    invariants (elements sorted, closed, identity present).
    """

    # Full multiplication tables are only built for groups up to this order.
    _TABLE_LIMIT = 512

    def __init__(self, degree: int, generators: tuple[Permutation, ...],
                 elements: tuple[Permutation, ...], name: str | None = None):
        self.degree = degree
        self.generators = generators
        self.elements = elements
        self.name = name
        self._index: dict[Permutation, int] = {p: i for i, p in enumerate(elements)}
        # The identity sorts lexicographically below every other permutation,
        # so it always sits at index 0.
        if not elements[0].is_identity():
            raise InvariantError("element list must start with the identity")
        self._table: list[tuple[int, ...]] | None = None
        self._inv: tuple[int, ...] | None = None

    @property
    def order(self) -> int:
        return len(self.elements)

    def __repr__(self) -> str:
        label = self.name or "group"
        return f"<{label}: order {self.order} on {self.degree} points>"

    def element_index(self, perm: Permutation) -> int:
        try:
            return self._index[perm]
        except KeyError:
            raise InputError(f"{perm} is not an element of this group") from None

    def __contains__(self, perm: Permutation) -> bool:
        return perm in self._index

    def _ensure_table(self) -> None:
        if self._table is not None:
            return
        els = self.elements
        idx = self._index
        self._table = [
            tuple(idx[a * b] for b in els)
            for a in els
        ]

    def mul(self, i: int, j: int) -> int:
        if self.order <= self._TABLE_LIMIT:
            self._ensure_table()
        if self._table is not None:
            return self._table[i][j]
        return self._index[self.elements[i] * self.elements[j]]

    def inv(self, i: int) -> int:
        if self._inv is None:
            self._inv = tuple(self._index[p.inverse()] for p in self.elements)
        return self._inv[i]

    def conj(self, g: int, x: int) -> int:
        """Index of g x g^-1."""
        return self.mul(self.mul(g, x), self.inv(g))

    def power(self, i: int, k: int) -> int:
        if k < 0:
            i, k = self.inv(i), -k
        acc, base = 0, i
        while k:
            if k & 1:
                acc = self.mul(acc, base)
            base = self.mul(base, base)
            k >>= 1
        return acc

    def element_order(self, i: int) -> int:
        return self.elements[i].order()

    def subgroup(self, indices) -> Subgroup:
        """Build a subgroup from element indices, checking closure."""
        key = tuple(sorted(set(indices)))
        if not key:
            raise InputError("a subgroup needs at least the identity")
        if any(not 0 <= i < self.order for i in key):
            raise InputError("subgroup indices out of range")
        members = set(key)
        for a in key:
            for b in key:
                if self.mul(a, b) not in members:
                    raise InputError("the given elements are not closed under products")
        if 0 not in members:
            raise InputError("a subgroup must contain the identity")
        return Subgroup(self, key)

    def subgroup_from_perms(self, perms) -> Subgroup:
        return self.subgroup(self.element_index(p) for p in perms)

    def full_subgroup(self) -> Subgroup:
        return Subgroup(self, tuple(range(self.order)))

    def trivial_subgroup(self) -> Subgroup:
        return Subgroup(self, (0,))


@dataclass(frozen=True)
class Subgroup:
    """A subgroup of a :class:`Group`, keyed by sorted element indices."""

    parent: Group
    indices: tuple[int, ...]

    @property
    def order(self) -> int:
        return len(self.indices)

    @cached_property
    def index_set(self) -> frozenset[int]:
        return frozenset(self.indices)

    def perms(self) -> tuple[Permutation, ...]:
        return tuple(self.parent.elements[i] for i in self.indices)

    def __contains__(self, idx: int) -> bool:
        return idx in self.index_set

    def is_subset_of(self, other: Subgroup) -> bool:
        return self.index_set <= other.index_set

    def __repr__(self) -> str:
        return f"<subgroup of order {self.order}>"


def generate_group(degree: int, generators, *, name: str | None = None,
                   max_order: int = MAX_GROUP_ORDER) -> Group:
    """Breadth-first closure of the generators inside Sym(degree)."""
    if degree < 1:
        raise InputError("degree must be at least 1")
    gens = []
    for g in generators:
        if not isinstance(g, Permutation):
            g = Permutation.from_images(g)
        else:
            Permutation.from_images(g.images)  # revalidate: cheap, catches bad tuples
        if g.degree != degree:
            raise InputError(f"generator degree {g.degree} does not match {degree}")
        gens.append(g)
    ident = Permutation.identity(degree)
    elements = {ident}
    frontier = [ident]
    while frontier:
        new: list[Permutation] = []
        for x in frontier:
            for g in gens:
                y = x * g
                if y not in elements:
                    elements.add(y)
                    new.append(y)
                    if len(elements) > max_order:
                        raise SizeCapError(
                            f"group order exceeds the cap of {max_order}")
        frontier = new
    return Group(degree, tuple(gens), tuple(sorted(elements)), name=name)


def closure_indices(G: Group, seed, cap: int | None = None) -> tuple[int, ...] | None:
    """Sorted element indices of the subgroup generated by ``seed``.

    With ``cap`` set, returns None as soon as the closure exceeds cap elements.
    """
    gens = sorted(set(seed))
    members = {0}
    members.update(gens)
    if cap is not None and len(members) > cap:
        return None
    frontier = list(members)
    while frontier:
        new = []
        for x in frontier:
            for g in gens:
                y = G.mul(x, g)
                if y not in members:
                    members.add(y)
                    new.append(y)
                    if cap is not None and len(members) > cap:
                        return None
        frontier = new
    return tuple(sorted(members))


def coset_representatives(G: Group, sub_indices, within=None) -> tuple[int, ...]:
    """Representatives of left cosets g·H, smallest element index first.

    ``within`` restricts the ambient set to a subgroup's indices (it must
    contain H and be closed); by default cosets run over the whole group.
    """
    ambient = range(G.order) if within is None else within
    covered: set[int] = set()
    reps = []
    for g in ambient:
        if g in covered:
            continue
        reps.append(g)
        covered.update(G.mul(g, h) for h in sub_indices)
    return tuple(reps)


def enumerate_subgroups(G: Group, *, max_order: int = MAX_LATTICE_ORDER,
                        max_subgroups: int = MAX_SUBGROUPS) -> list[Subgroup]:
    """Every subgroup of G, each exactly once, in deterministic order.

    Bottom-up: all cyclic subgroups first, then repeatedly extend each known
    subgroup by one outside element (one per coset, which suffices) and close,
    until nothing new appears. Intended for small groups; the default cap
    matches the package-wide limit on lattice enumeration.
    """
    if G.order > max_order:
        raise SizeCapError(
            f"subgroup enumeration is capped at order {max_order}; "
            f"this group has order {G.order}")
    gens_of: dict[tuple[int, ...], tuple[int, ...]] = {(0,): ()}
    for i in range(G.order):
        key = closure_indices(G, (i,))
        if key not in gens_of:
            gens_of[key] = (i,)
    queue = list(gens_of)
    at = 0
    while at < len(queue):
        key = queue[at]
        at += 1
        if len(key) == G.order:
            continue
        base_gens = gens_of[key]
        covered = bytearray(G.order)
        for h in key:
            covered[h] = 1
        for g in range(G.order):
            if covered[g]:
                continue
            for h in key:
                covered[G.mul(g, h)] = 1
            new_key = closure_indices(G, base_gens + (g,))
            if new_key not in gens_of:
                gens_of[new_key] = base_gens + (g,)
                queue.append(new_key)
                if len(gens_of) > max_subgroups:
                    raise SizeCapError(
                        f"more than {max_subgroups} subgroups; giving up")
    keys = sorted(gens_of, key=lambda k: (-len(k), k))
    return [Subgroup(G, k) for k in keys]


def subgroups_of_order(G: Group, n: int) -> list[Subgroup]:
    """All subgroups of exactly order n, found by capped generator growth.

    Every order-n subgroup is reached through a chain of subgroups whose
    orders divide n, so the search prunes to that sublattice and stays cheap
    even in groups far above the full-enumeration cap.
    """
    if n < 1 or G.order % n:
        return []
    known: dict[tuple[int, ...], tuple[int, ...]] = {(0,): ()}
    queue = list(known)
    at = 0
    while at < len(queue):
        key = queue[at]
        at += 1
        if len(key) >= n:
            continue
        base_gens = known[key]
        covered = bytearray(G.order)
        for h in key:
            covered[h] = 1
        for g in range(G.order):
            if covered[g]:
                continue
            for h in key:
                covered[G.mul(g, h)] = 1
            new_key = closure_indices(G, base_gens + (g,), cap=n)
            if new_key is None or n % len(new_key):
                continue
            if new_key not in known:
                known[new_key] = base_gens + (g,)
                queue.append(new_key)
    return [Subgroup(G, k) for k in sorted(known) if len(k) == n]


def _require_parent(G: Group, *subs: Subgroup) -> None:
    for s in subs:
        if s.parent is not G:
            raise InputError("subgroup does not belong to this group")


def normalizer(G: Group, P: Subgroup) -> Subgroup:
    _require_parent(G, P)
    pset = P.index_set
    out = [g for g in range(G.order)
           if all(G.conj(g, x) in pset for x in P.indices)]
    return Subgroup(G, tuple(out))


def centralizer(G: Group, P: Subgroup) -> Subgroup:
    _require_parent(G, P)
    out = [g for g in range(G.order)
           if all(G.conj(g, x) == x for x in P.indices)]
    return Subgroup(G, tuple(out))


def center(G: Group) -> Subgroup:
    return centralizer(G, G.full_subgroup())


def transporter(G: Group, Q: Subgroup, P: Subgroup) -> tuple[Permutation, ...]:
    """All g in G with g Q g^-1 contained in P, in element order."""
    return tuple(G.elements[g] for g in _transporter_indices(G, Q, P))


def _transporter_indices(G: Group, Q: Subgroup, P: Subgroup) -> list[int]:
    _require_parent(G, Q, P)
    pset = P.index_set
    return [g for g in range(G.order)
            if all(G.conj(g, x) in pset for x in Q.indices)]


def sylow_subgroup(G: Group, p: int) -> Subgroup:
    """A Sylow p-subgroup, grown by repeatedly extending inside normalizers.

    While the current p-subgroup P has index divisible by p, its normalizer
    contains an element g outside P with g^p in P; adjoining g multiplies the
    order by exactly p. Deterministic: the smallest such g is taken each time.
    """
    if not is_prime(p):
        raise InputError(f"{p} is not prime")
    target = 1
    rest = G.order
    while rest % p == 0:
        target *= p
        rest //= p
    current = (0,)
    current_gens: tuple[int, ...] = ()
    while len(current) < target:
        if len(current) == 1:
            candidates = range(G.order)
        else:
            candidates = normalizer(G, Subgroup(G, current)).indices
        cset = set(current)
        chosen = -1
        for g in candidates:
            if g in cset:
                continue
            if G.power(g, p) in cset:
                chosen = g
                break
        if chosen < 0:
            raise InvariantError("Sylow growth stalled; this cannot happen")
        current_gens += (chosen,)
        grown = closure_indices(G, current_gens)
        if len(grown) != p * len(current):
            raise InvariantError("Sylow extension did not multiply order by p")
        current = grown
    return Subgroup(G, current)


@cache
def subgroup_as_group(sub: Subgroup) -> Group:
    """Promote a subgroup to a standalone Group on the same points.

    Cached on the subgroup value, so equal subgroups of the same parent share
    one Group object (and therefore one class table) per process.
    """
    elements = tuple(sorted(sub.perms()))
    gens: list[Permutation] = []
    G = sub.parent
    have: tuple[int, ...] = (0,)
    for i in sub.indices:
        if i not in have:
            gens.append(G.elements[i])
            have = closure_indices(G, tuple(G.element_index(g) for g in gens))
        if len(have) == sub.order:
            break
    name = None
    if sub.order == G.order:
        name = G.name
    return Group(G.degree, tuple(gens) or (Permutation.identity(G.degree),),
                 elements, name=name)


@dataclass(frozen=True)
class SubgroupClass:
    """One conjugacy class of subgroups: canonical representative first."""

    rep: Subgroup
    members: tuple[Subgroup, ...]

    @property
    def order(self) -> int:
        return self.rep.order

    @property
    def size(self) -> int:
        return len(self.members)


class SubgroupClassTable:
    """Conjugacy classes of subgroups in canonical order.

    Class 0 is the whole group, the last class is trivial; order decreases
    along the list and ties are broken by the lexicographically least member
    key, which is also the canonical representative.
    """

    def __init__(self, group: Group, classes: tuple[SubgroupClass, ...]):
        self.group = group
        self.classes = classes
        per_order: dict[int, int] = {}
        labels = []
        for cls in classes:
            k = per_order.get(cls.order, 0)
            per_order[cls.order] = k + 1
            labels.append(f"{cls.order}:{k}")
        self.labels: tuple[str, ...] = tuple(labels)
        self._label_index = {lab: i for i, lab in enumerate(labels)}
        self._lookup: dict[tuple[int, ...], int] = {}
        for i, cls in enumerate(classes):
            for m in cls.members:
                self._lookup[m.indices] = i
        self._normalizers: list[Subgroup | None] = [None] * len(classes)

    def __len__(self) -> int:
        return len(self.classes)

    def rep(self, i: int) -> Subgroup:
        return self.classes[i].rep

    def class_order(self, i: int) -> int:
        return self.classes[i].order

    def class_of(self, sub) -> int:
        """Class index of a subgroup (or of a sorted index-tuple key)."""
        key = sub.indices if isinstance(sub, Subgroup) else tuple(sub)
        if isinstance(sub, Subgroup) and sub.parent is not self.group:
            raise InputError("subgroup belongs to a different group")
        try:
            return self._lookup[key]
        except KeyError:
            raise InputError("not a subgroup key of this table") from None

    def label_index(self, label: str) -> int:
        try:
            return self._label_index[label]
        except KeyError:
            raise InputError(f"unknown class label {label!r}") from None

    def normalizer(self, i: int) -> Subgroup:
        if self._normalizers[i] is None:
            self._normalizers[i] = normalizer(self.group, self.classes[i].rep)
        return self._normalizers[i]

    def normalizer_order(self, i: int) -> int:
        return self.normalizer(i).order

    def weyl_order(self, i: int) -> int:
        """|N(P)/P| for the class representative."""
        n, rem = divmod(self.normalizer_order(i), self.class_order(i))
        if rem:
            raise InvariantError("normalizer order not divisible by subgroup order")
        return n


@cache
def class_table(G: Group) -> SubgroupClassTable:
    """Subgroup conjugacy classes of G, cached per group object."""
    subs = enumerate_subgroups(G)
    seen: set[tuple[int, ...]] = set()
    classes: list[SubgroupClass] = []
    # Iteration visits keys by (-order, lex), so the first unseen key of each
    # class is automatically its canonical (least) member.
    for sub in subs:
        key = sub.indices
        if key in seen:
            continue
        orbit = {key}
        for g in range(G.order):
            orbit.add(tuple(sorted(G.conj(g, x) for x in key)))
        members = tuple(Subgroup(G, k) for k in sorted(orbit))
        seen.update(orbit)
        classes.append(SubgroupClass(members[0], members))
    table = SubgroupClassTable(G, tuple(classes))
    if table.classes[0].order != G.order or table.classes[-1].order != 1:
        raise InvariantError("class table must run from the full group down to 1")
    return table


def parse_group_file(text: str, *, name: str | None = None,
                     max_order: int = MAX_GROUP_ORDER) -> Group:
    """Parse the plain-text group format.

    First significant line is ``degree n``; every further line is one
    generator in disjoint-cycle notation with 1-based points. ``#`` starts a
    comment; blank lines are skipped.
    """
    degree = None
    gens: list[Permutation] = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if degree is None:
            m = re.fullmatch(r"degree\s+(\d+)", line, flags=re.IGNORECASE)
            if not m:
                raise InputError(f"expected a 'degree n' line first, got {line!r}")
            degree = int(m.group(1))
            if degree < 1:
                raise InputError("degree must be at least 1")
            continue
        gens.append(parse_permutation(line, degree))
    if degree is None:
        raise InputError("empty group file")
    return generate_group(degree, gens, name=name, max_order=max_order)


def load_group_file(path) -> Group:
    import os

    try:
        with open(path, "r", encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise InputError(f"cannot read group file: {exc}") from None
    stem = os.path.splitext(os.path.basename(str(path)))[0]
    return parse_group_file(text, name=stem or None)
