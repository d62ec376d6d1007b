"""The Burnside ring of a finite group, in exact integer arithmetic.

Elements are integer vectors over the conjugacy classes of subgroups; the
basis element at class [P] is the transitive coset space [S/P]. Marks (fixed
point counts), the congruence map on mark vectors, the double-coset product,
and the verification of the resulting short exact sequence all live here.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from functools import cache

import numpy as np

from .errors import (
    InputError,
    InvariantError,
    MarkImageError,
    SizeCapError,
)
from .permgroup import (
    Group,
    Subgroup,
    SubgroupClassTable,
    class_table,
    closure_indices,
    coset_representatives,
    subgroup_as_group,
)

DEFAULT_SEED = 1729
MAX_SWEEP = 1 << 20

__all__ = [
    "BurnsideElement",
    "MarkVector",
    "MarkMatrix",
    "ObstructionVector",
    "CheckResult",
    "SESReport",
    "basis_element",
    "zero_element",
    "mark_matrix",
    "mark",
    "marks_to_orbits",
    "multiply",
    "psi_group",
    "obstruction_moduli",
    "obstruction_order",
    "verify_ses_group",
    "restrict_ambient",
    "element_to_csv",
    "element_from_csv",
    "marks_to_csv",
    "DEFAULT_SEED",
]


@dataclass(frozen=True)
class BurnsideElement:
    """An integer combination of coset spaces [S/P], one coefficient per class."""

    table: SubgroupClassTable
    coeffs: tuple[int, ...]

    def __post_init__(self):
        if len(self.coeffs) != len(self.table):
            raise InputError(
                f"expected {len(self.table)} coefficients, got {len(self.coeffs)}")

    @property
    def is_set(self) -> bool:
        """True when every orbit count is nonnegative (a genuine group set)."""
        return all(c >= 0 for c in self.coeffs)

    def _same(self, other: BurnsideElement) -> None:
        if not isinstance(other, BurnsideElement) or other.table is not self.table:
            raise InputError("elements belong to different class tables")

    def __add__(self, other: BurnsideElement) -> BurnsideElement:
        self._same(other)
        return BurnsideElement(
            self.table, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other: BurnsideElement) -> BurnsideElement:
        self._same(other)
        return BurnsideElement(
            self.table, tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self) -> BurnsideElement:
        return BurnsideElement(self.table, tuple(-a for a in self.coeffs))

    def scaled(self, k: int) -> BurnsideElement:
        return BurnsideElement(self.table, tuple(k * a for a in self.coeffs))

    def __rmul__(self, k: int) -> BurnsideElement:
        if not isinstance(k, int):
            return NotImplemented
        return self.scaled(k)

    def __mul__(self, other):
        if isinstance(other, BurnsideElement):
            return multiply(self, other)
        if isinstance(other, int):
            return self.scaled(other)
        return NotImplemented

    def __str__(self) -> str:
        name = self.table.group.name or "S"
        terms = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            base = f"[{name}/{self.table.labels[i]}]"
            if c == 1:
                terms.append(base)
            else:
                terms.append(f"{c}·{base}")
        if not terms:
            return "0"
        return " + ".join(terms).replace("+ -", "- ")


@dataclass(frozen=True)
class MarkVector:
    """Fixed point counts of an element, indexed by subgroup class."""

    table: SubgroupClassTable
    marks: tuple[int, ...]

    def __post_init__(self):
        if len(self.marks) != len(self.table):
            raise InputError(
                f"expected {len(self.table)} marks, got {len(self.marks)}")

    def pointwise(self, other: MarkVector) -> MarkVector:
        if other.table is not self.table:
            raise InputError("mark vectors belong to different class tables")
        return MarkVector(self.table,
                          tuple(a * b for a, b in zip(self.marks, other.marks)))


@dataclass(frozen=True)
class MarkMatrix:
    """The table of marks: rows are the fixing class, columns the coset class."""

    table: SubgroupClassTable
    entries: tuple[tuple[int, ...], ...]

    def entry(self, q: int, p: int) -> int:
        return self.entries[q][p]


@dataclass(frozen=True)
class ObstructionVector:
    """Residues of the congruence map, one coordinate mod |N(P)/P| per class."""

    table: SubgroupClassTable
    residues: tuple[int, ...]
    moduli: tuple[int, ...]

    @property
    def is_zero(self) -> bool:
        return not any(self.residues)


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str = ""


@dataclass(frozen=True)
class SESReport:
    """Outcome of one short-exact-sequence verification."""

    subject: str
    checks: tuple[CheckResult, ...]

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)


def zero_element(table: SubgroupClassTable) -> BurnsideElement:
    return BurnsideElement(table, (0,) * len(table))


def basis_element(table: SubgroupClassTable, i: int) -> BurnsideElement:
    coeffs = [0] * len(table)
    coeffs[i] = 1
    return BurnsideElement(table, tuple(coeffs))


@cache
def mark_matrix(table: SubgroupClassTable) -> MarkMatrix:
    """Marks of every basis element: entry [Q][P] counts fixed cosets of Q on S/P.

    Computed as |{s : s Q s^-1 <= P}| / |P|, which is exact; a nonzero
    remainder would mean the transporter failed to be a union of right
    P-cosets and is reported as a bug.
    """
    G = table.group
    n = len(table)
    inv = [G.inv(g) for g in range(G.order)]
    rows = []
    for q in range(n):
        Q = table.rep(q).indices
        row = []
        for p in range(n):
            P = table.rep(p)
            pset = P.index_set
            if len(Q) > len(P.indices):
                row.append(0)
                continue
            count = 0
            for g in range(G.order):
                gi = inv[g]
                if all(G.mul(G.mul(g, x), gi) in pset for x in Q):
                    count += 1
            val, rem = divmod(count, P.order)
            if rem:
                raise InvariantError("transporter size not divisible by |P|")
            row.append(val)
        rows.append(tuple(row))
    return MarkMatrix(table, tuple(rows))


def mark(x: BurnsideElement) -> MarkVector:
    M = mark_matrix(x.table).entries
    marks = tuple(
        sum(M[q][p] * c for p, c in enumerate(x.coeffs) if c)
        for q in range(len(x.table)))
    return MarkVector(x.table, marks)


def marks_to_orbits(xi: MarkVector) -> BurnsideElement:
    """Invert the mark homomorphism by forward substitution.

    Raises MarkImageError when the input is not the mark vector of any integer
    combination of coset spaces.
    """
    table = xi.table
    M = mark_matrix(table).entries
    n = len(table)
    coeffs = [0] * n
    for i in range(n):
        acc = xi.marks[i]
        row = M[i]
        for j in range(i):
            if coeffs[j] and row[j]:
                acc -= coeffs[j] * row[j]
        c, rem = divmod(acc, row[i])
        if rem:
            raise MarkImageError(
                f"not in the image of the mark homomorphism "
                f"(congruence fails at class {table.labels[i]})")
        coeffs[i] = c
    return BurnsideElement(table, tuple(coeffs))


@cache
def _basis_product(table: SubgroupClassTable, i: int, j: int) -> tuple[int, ...]:
    """Coefficients of [S/P_i]·[S/P_j], via the double coset decomposition."""
    G = table.group
    P = table.rep(i).indices
    Q = table.rep(j).indices
    pset = set(P)
    qinv = [G.inv(g) for g in range(G.order)]
    out = [0] * len(table)
    visited = bytearray(G.order)
    for s in range(G.order):
        if visited[s]:
            continue
        for a in P:
            as_ = G.mul(a, s)
            for b in Q:
                visited[G.mul(as_, b)] = 1
        si = qinv[s]
        conj = {G.mul(G.mul(s, b), si) for b in Q}
        key = tuple(sorted(pset & conj))
        out[table.class_of(key)] += 1
    return tuple(out)


def multiply(x: BurnsideElement, y: BurnsideElement) -> BurnsideElement:
    """Product in the Burnside ring, extended bilinearly from basis pairs."""
    x._same(y)
    table = x.table
    n = len(table)
    out = [0] * n
    for i, ci in enumerate(x.coeffs):
        if not ci:
            continue
        for j, cj in enumerate(y.coeffs):
            if not cj:
                continue
            a, b = (i, j) if i <= j else (j, i)
            prod = _basis_product(table, a, b)
            w = ci * cj
            for k, pk in enumerate(prod):
                if pk:
                    out[k] += w * pk
    return BurnsideElement(table, tuple(out))


@cache
def _congruence_rows(table: SubgroupClassTable) -> tuple[tuple[int, ...], ...]:
    """Row i counts, per class, the subgroups <s>P over coset reps s of N(P)/P."""
    G = table.group
    rows = []
    for i in range(len(table)):
        P = table.rep(i)
        N = table.normalizer(i)
        counts = [0] * len(table)
        for s in coset_representatives(G, P.indices, within=N.indices):
            key = closure_indices(G, P.indices + (s,))
            counts[table.class_of(key)] += 1
        rows.append(tuple(counts))
    return tuple(rows)


def obstruction_moduli(table: SubgroupClassTable) -> tuple[int, ...]:
    return tuple(table.weyl_order(i) for i in range(len(table)))


def obstruction_order(table: SubgroupClassTable) -> int:
    return math.prod(obstruction_moduli(table))


def psi_group(xi: MarkVector) -> ObstructionVector:
    """Congruence residues of a mark vector.

    Coordinate [P] sums the marks at the classes of <s>P over coset
    representatives s of N(P)/P and reduces mod |N(P)/P|. Vectors of actual
    elements land in the kernel.
    """
    table = xi.table
    rows = _congruence_rows(table)
    moduli = obstruction_moduli(table)
    residues = tuple(
        sum(a * m for a, m in zip(row, xi.marks)) % mod if mod > 1 else 0
        for row, mod in zip(rows, moduli))
    return ObstructionVector(table, residues, moduli)


# ---------------------------------------------------------------------------
# Short exact sequence verification shared by the group and fusion cases.

def _triangular_unit_diagonal(rows) -> tuple[bool, str]:
    for i, row in enumerate(rows):
        if row[i] != 1:
            return False, f"diagonal entry {row[i]} != 1 at row {i}"
        for j in range(i + 1, len(row)):
            if row[j]:
                return False, f"entry above the diagonal at ({i}, {j})"
    return True, ""


def _residue_box(moduli) -> np.ndarray:
    grids = np.meshgrid(*(np.arange(m, dtype=np.int64) for m in moduli),
                        indexing="ij")
    return np.stack(grids, axis=-1).reshape(-1, len(moduli))


def _kernel_survey(moduli, rows, solve, *, seed: int, samples: int,
                   max_sweep: int):
    """Check exactness on one full residue system plus seeded random vectors.

    ``solve`` maps an integer vector in the kernel of the congruence map to
    None (success) or a failure string. Returns (kernel_count, failures).
    """
    n = len(moduli)
    box_size = math.prod(moduli)
    if box_size > max_sweep:
        raise SizeCapError(
            f"residue sweep of size {box_size} exceeds the cap of {max_sweep}")
    A = np.array(rows, dtype=np.int64)
    mods = np.array(moduli, dtype=np.int64)
    if A.size and (np.abs(A).max() > 1 << 20 or mods.max() > 1 << 20):
        raise InvariantError("congruence data out of the checked 64-bit range")
    box = _residue_box(moduli)
    residues = (box @ A.T) % mods[None, :]
    kernel_rows = box[(residues == 0).all(axis=1)]
    failures: list[str] = []
    for vec in kernel_rows:
        problem = solve(tuple(int(v) for v in vec))
        if problem:
            failures.append(problem)
    rng = random.Random(seed)
    py_rows = [list(map(int, r)) for r in rows]
    for _ in range(samples):
        vec = [rng.randint(-30, 30) for _ in range(n)]
        # Project onto the kernel: the map is triangular with unit diagonal,
        # so a top-down sweep can cancel every residue.
        for i in range(n):
            if moduli[i] > 1:
                r = sum(a * v for a, v in zip(py_rows[i], vec)) % moduli[i]
                vec[i] -= r
        for i in range(n):
            if moduli[i] > 1 and sum(a * v for a, v in zip(py_rows[i], vec)) % moduli[i]:
                raise InvariantError("kernel projection failed")
        problem = solve(tuple(vec))
        if problem:
            failures.append(problem)
    return int(kernel_rows.shape[0]), failures


def verify_ses_group(S: Group, *, seed: int = DEFAULT_SEED, samples: int = 100,
                     max_sweep: int = MAX_SWEEP) -> SESReport:
    """Verify that marks embed the ring and the congruence map is exactly its cokernel.

    Three checks: the congruence residues of every basis element vanish; the
    congruence map is onto (triangular with unit diagonal); and every sampled
    kernel vector is the mark vector of an integer element. Sampling is one
    exhaustive residue system modulo the diagonal moduli plus ``samples``
    seeded random vectors projected onto the kernel.
    """
    table = class_table(S)
    checks = []

    bad = []
    for i in range(len(table)):
        ov = psi_group(mark(basis_element(table, i)))
        if not ov.is_zero:
            bad.append(table.labels[i])
    checks.append(CheckResult(
        "congruences vanish on basis elements", not bad,
        "failed at " + ", ".join(bad) if bad else
        f"all {len(table)} basis elements"))

    rows = _congruence_rows(table)
    ok, why = _triangular_unit_diagonal(rows)
    checks.append(CheckResult(
        "congruence map is onto (triangular, unit diagonal)", ok, why))

    moduli = obstruction_moduli(table)

    def solve(vec) -> str | None:
        try:
            x = marks_to_orbits(MarkVector(table, vec))
        except MarkImageError:
            return f"kernel vector {vec} has no integral preimage"
        if mark(x).marks != vec:
            return f"preimage of {vec} does not reproduce its marks"
        return None

    kernel_count, failures = _kernel_survey(
        moduli, rows, solve, seed=seed, samples=samples, max_sweep=max_sweep)
    checks.append(CheckResult(
        "kernel vectors are mark vectors of integer elements",
        not failures,
        failures[0] if failures else
        f"{kernel_count} kernel vectors in a residue system of {math.prod(moduli)}, "
        f"plus {samples} random projections"))

    subject = S.name or f"group of order {S.order}"
    return SESReport(f"marks of {subject}", tuple(checks))


def restrict_ambient(G: Group, H: Subgroup, S: Subgroup) -> BurnsideElement:
    """The coset space G/H as an element over the subgroup classes of S.

    Fixed points of each class representative acting on the cosets are counted
    directly, then converted to orbit coefficients. S and H must both be
    subgroups of G.
    """
    if H.parent is not G or S.parent is not G:
        raise InputError("H and S must be subgroups of G")
    table = class_table(subgroup_as_group(S))
    coset_id = [-1] * G.order
    reps: list[int] = []
    for g in range(G.order):
        if coset_id[g] >= 0:
            continue
        c = len(reps)
        reps.append(g)
        for h in H.indices:
            coset_id[G.mul(g, h)] = c
    marks = []
    for i in range(len(table)):
        q_indices = [G.element_index(p) for p in table.rep(i).perms()]
        fixed = 0
        for c, r in enumerate(reps):
            if all(coset_id[G.mul(q, r)] == c for q in q_indices):
                fixed += 1
        marks.append(fixed)
    x = marks_to_orbits(MarkVector(table, tuple(marks)))
    if not x.is_set:
        raise InvariantError("a coset space decomposed with negative orbit counts")
    return x


# ---------------------------------------------------------------------------
# Serialization: one header row of class labels, one row of integers.

def element_to_csv(x: BurnsideElement) -> str:
    header = ",".join(x.table.labels)
    data = ",".join(str(c) for c in x.coeffs)
    return f"{header}\n{data}\n"


def marks_to_csv(xi: MarkVector) -> str:
    header = ",".join(xi.table.labels)
    data = ",".join(str(c) for c in xi.marks)
    return f"{header}\n{data}\n"


def element_from_csv(text: str, table: SubgroupClassTable) -> BurnsideElement:
    lines = [ln.strip() for ln in text.strip().splitlines() if ln.strip()]
    if len(lines) != 2:
        raise InputError("element CSV must be exactly a header row and a data row")
    header = tuple(h.strip() for h in lines[0].split(","))
    if header != table.labels:
        raise InputError(
            f"CSV header {header} does not match the class labels {table.labels}")
    cells = lines[1].split(",")
    if len(cells) != len(table):
        raise InputError(f"expected {len(table)} integers, got {len(cells)}")
    try:
        coeffs = tuple(int(c.strip()) for c in cells)
    except ValueError as exc:
        raise InputError(f"non-integer coefficient in CSV: {exc}") from None
    return BurnsideElement(table, coeffs)
