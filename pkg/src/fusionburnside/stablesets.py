"""Stable elements under fusion: the irreducible basis and its exact sequence.

An element is stable when its marks are constant along every fusion class.
Stable elements form a subring; it has a canonical basis with one generator
per fusion class, built by seeding a candidate on the class and repairing all
smaller classes top-down. The repair coefficients are integral by the mark
congruences and nonnegative by a fixed point count comparison, and both facts
are asserted at runtime rather than trusted.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cache

from .burnside import (
    DEFAULT_SEED,
    MAX_SWEEP,
    BurnsideElement,
    CheckResult,
    SESReport,
    _kernel_survey,
    _triangular_unit_diagonal,
    mark,
    mark_matrix,
)
from .errors import (
    CongruenceError,
    FixedPointError,
    InputError,
    InvariantError,
    NotFStableError,
)
from .fusion import FusionData
from .permgroup import closure_indices, coset_representatives

__all__ = [
    "FMarkVector",
    "FObstructionVector",
    "AlphaBasis",
    "StabilizationStep",
    "is_f_stable",
    "stability_defect",
    "stabilize",
    "stabilize_element",
    "alpha_basis",
    "build_alpha_basis",
    "alpha_mark_matrix",
    "decompose",
    "phi_fusion",
    "psi_fusion",
    "fusion_obstruction_moduli",
    "verify_ses_fusion",
    "f_subconjugation",
]


@dataclass(frozen=True)
class FMarkVector:
    """One mark per fusion class: the common value along the class."""

    fusion: FusionData
    marks: tuple[int, ...]

    def __post_init__(self):
        if len(self.marks) != self.fusion.n_fclasses:
            raise InputError("wrong number of fusion-class marks")


@dataclass(frozen=True)
class FObstructionVector:
    """Congruence residues over fusion classes, mod the fully normalized Weyl orders."""

    fusion: FusionData
    residues: tuple[int, ...]
    moduli: tuple[int, ...]

    @property
    def is_zero(self) -> bool:
        return not any(self.residues)


@dataclass(frozen=True)
class AlphaBasis:
    """The irreducible stable elements, indexed by fusion class."""

    fusion: FusionData
    alphas: tuple[BurnsideElement, ...]

    def __getitem__(self, f: int) -> BurnsideElement:
        return self.alphas[f]

    def __len__(self) -> int:
        return len(self.alphas)


@dataclass(frozen=True)
class StabilizationStep:
    """One repair coefficient: class ``s_class`` of fusion class ``fclass``."""

    fclass: int
    s_class: int
    coefficient: int
    fully_normalized: bool


def _require_element_of(x: BurnsideElement, F: FusionData) -> None:
    if x.table is not F.table:
        raise InputError("element does not live over this fusion system's table")


@cache
def f_subconjugation(F: FusionData) -> tuple[tuple[bool, ...], ...]:
    """Matrix over fusion classes: [a][b] says class-a subgroups embed, up to
    fusion, into class-b subgroups."""
    M = mark_matrix(F.table).entries
    nf = F.n_fclasses
    out = []
    for a in range(nf):
        row = []
        for b in range(nf):
            row.append(any(
                M[r][q] != 0
                for r in F.members(a) for q in F.members(b)))
        out.append(tuple(row))
    return tuple(out)


def stability_defect(x: BurnsideElement, F: FusionData):
    """None when stable; otherwise (fclass, class_i, class_j, mark_i, mark_j)."""
    _require_element_of(x, F)
    xi = mark(x).marks
    for f, members in enumerate(F.fclasses):
        first = members[0]
        for m in members[1:]:
            if xi[m] != xi[first]:
                return (f, first, m, xi[first], xi[m])
    return None


def is_f_stable(x: BurnsideElement, F: FusionData) -> bool:
    return stability_defect(x, F) is None


def _stabilize(x: BurnsideElement, F: FusionData, fset: frozenset[int], *,
               strict: bool, log: list[StabilizationStep] | None = None) -> BurnsideElement:
    _require_element_of(x, F)
    table = F.table
    nf = F.n_fclasses
    for f in fset:
        if not 0 <= f < nf:
            raise InputError(f"no fusion class {f}")
    fleq = f_subconjugation(F)
    for f in fset:
        for f2 in range(nf):
            if fleq[f2][f] and f2 not in fset:
                raise InputError(
                    "the class set is not closed downward under subconjugation")
    coeffs = list(x.coeffs)
    if strict:
        if not x.is_set:
            raise InputError("strict stabilization requires nonnegative orbit counts")
        for f in fset:
            for m in F.members(f):
                if coeffs[m]:
                    raise InputError(
                        "orbit counts must vanish on every class being stabilized")
    marks = list(mark(x).marks)
    before = tuple(marks)
    for f in range(nf):
        if f in fset:
            continue
        base = marks[F.members(f)[0]]
        for m in F.members(f)[1:]:
            if marks[m] != base:
                raise NotFStableError(
                    f"marks differ on fusion class {F.fclass_label(f)} outside "
                    f"the stabilization set")
    M = mark_matrix(table).entries
    n = len(table)
    # Larger classes first; same-order classes never interact, so this is a
    # valid linear extension of subconjugation among the classes to repair.
    for f in sorted(fset, key=lambda g: F.members(g)[0]):
        base = marks[F.fn_rep[f]]
        for m in F.members(f):
            w = table.weyl_order(m)
            lam, rem = divmod(base - marks[m], w)
            if rem:
                raise CongruenceError(
                    f"repair coefficient at class {table.labels[m]} is not integral: "
                    f"({base} - {marks[m]}) / {w}")
            fn = F.is_fully_normalized(m)
            if strict:
                if lam < 0:
                    raise FixedPointError(
                        f"negative repair coefficient {lam} at class {table.labels[m]}")
                if fn and lam:
                    raise FixedPointError(
                        f"nonzero repair coefficient {lam} at fully normalized "
                        f"class {table.labels[m]}")
            if log is not None:
                log.append(StabilizationStep(f, m, lam, fn))
            if lam:
                coeffs[m] += lam
                col = [M[q][m] for q in range(n)]
                for q in range(n):
                    if col[q]:
                        marks[q] += lam * col[q]
    result = BurnsideElement(table, tuple(coeffs))
    final = mark(result).marks
    if list(final) != marks:
        raise InvariantError("incremental mark bookkeeping diverged")
    for f in range(nf):
        vals = {final[m] for m in F.members(f)}
        if len(vals) > 1:
            raise InvariantError("stabilization did not produce a stable element")
        if f not in fset:
            for m in F.members(f):
                if final[m] != before[m]:
                    raise InvariantError("marks moved outside the stabilized classes")
    return result


def stabilize(x: BurnsideElement, F: FusionData, classes) -> BurnsideElement:
    """Repair an almost-stable group set on a downward-closed set of fusion classes.

    Preconditions (checked): x has nonnegative orbit counts which vanish on
    every class in ``classes``, its marks are constant along every fusion
    class outside ``classes``, and ``classes`` is closed downward under
    subconjugation. The repair coefficients are then integral, nonnegative,
    and zero at fully normalized classes; any violation raises.
    """
    return _stabilize(x, F, frozenset(classes), strict=True)


def stabilize_element(x: BurnsideElement, F: FusionData, classes) -> BurnsideElement:
    """Stabilize an arbitrary ring element; repair coefficients may be negative.

    Only stability outside ``classes`` is required. Integrality of every
    repair coefficient is still guaranteed and asserted.
    """
    return _stabilize(x, F, frozenset(classes), strict=False)


def build_alpha_basis(F: FusionData, fn_choice: dict[int, int] | None = None
                      ) -> tuple[AlphaBasis, list[StabilizationStep]]:
    """Construct the basis and return it with the full stabilization log.

    ``fn_choice`` may pick a different fully normalized member class per
    fusion class (any member of maximal normalizer order is valid); the
    resulting elements do not depend on the choice, which the tests assert.
    """
    table = F.table
    n = len(table)
    fleq = f_subconjugation(F)
    log: list[StabilizationStep] = []
    alphas = []
    for f in range(F.n_fclasses):
        r = F.fn_rep[f]
        if fn_choice is not None and f in fn_choice:
            r = fn_choice[f]
            if r not in F.members(f):
                raise InputError(f"class {r} is not a member of fusion class {f}")
            if table.normalizer_order(r) != table.normalizer_order(F.fn_rep[f]):
                raise InputError(f"class {r} is not fully normalized in its class")
        nr = table.normalizer_order(r)
        coeffs = [0] * n
        for m in F.members(f):
            c, rem = divmod(nr, table.normalizer_order(m))
            if rem:
                raise InvariantError(
                    "normalizer orders in a p-group must divide one another")
            coeffs[m] = c
        seed = BurnsideElement(table, tuple(coeffs))
        below = frozenset(
            f2 for f2 in range(F.n_fclasses) if f2 != f and fleq[f2][f])
        alphas.append(_stabilize(seed, F, below, strict=True, log=log))
    basis = AlphaBasis(F, tuple(alphas))
    _check_alpha_properties(basis)
    return basis, log


@cache
def alpha_basis(F: FusionData) -> AlphaBasis:
    """The canonical stable basis, one element per fusion class (cached)."""
    basis, _ = build_alpha_basis(F)
    return basis


def _check_alpha_properties(basis: AlphaBasis) -> None:
    F = basis.fusion
    table = F.table
    fleq = f_subconjugation(F)
    for f, alpha in enumerate(basis.alphas):
        if not alpha.is_set:
            raise InvariantError("a basis element acquired negative orbit counts")
        xi = mark(alpha).marks
        for q in range(len(table)):
            qf = F.fclass_of[q]
            if xi[q] and not fleq[qf][f]:
                raise InvariantError(
                    "a basis element has marks outside its subconjugacy cone")
        for m in F.members(f):
            if F.is_fully_normalized(m):
                if alpha.coeffs[m] != 1:
                    raise InvariantError(
                        "fully normalized orbit count must be 1 on the home class")
                if xi[m] != table.weyl_order(m):
                    raise InvariantError(
                        "fully normalized mark must equal the Weyl order")
        for q in range(len(table)):
            if F.fclass_of[q] != f and F.is_fully_normalized(q) and alpha.coeffs[q]:
                raise InvariantError(
                    "orbit counts must vanish at fully normalized classes "
                    "of other fusion classes")


def phi_fusion(x: BurnsideElement, F: FusionData) -> FMarkVector:
    """Marks of a stable element collapsed to one value per fusion class."""
    defect = stability_defect(x, F)
    if defect is not None:
        f, a, b, va, vb = defect
        raise NotFStableError(
            f"element is not stable: classes {F.table.labels[a]} and "
            f"{F.table.labels[b]} are fused but have marks {va} and {vb}")
    xi = mark(x).marks
    return FMarkVector(F, tuple(xi[F.fn_rep[f]] for f in range(F.n_fclasses)))


def fusion_obstruction_moduli(F: FusionData) -> tuple[int, ...]:
    return tuple(F.table.weyl_order(F.fn_rep[f]) for f in range(F.n_fclasses))


@cache
def _fusion_congruence_rows(F: FusionData) -> tuple[tuple[int, ...], ...]:
    """Row f counts, per fusion class, the classes of <s>P for the fully
    normalized representative P of fusion class f."""
    table = F.table
    G = F.sgroup
    rows = []
    for f in range(F.n_fclasses):
        P = F.fn_subgroup(f)
        N = table.normalizer(F.fn_rep[f])
        counts = [0] * F.n_fclasses
        for s in coset_representatives(G, P.indices, within=N.indices):
            key = closure_indices(G, P.indices + (s,))
            counts[F.fclass_of[table.class_of(key)]] += 1
        rows.append(tuple(counts))
    return tuple(rows)


def psi_fusion(xi: FMarkVector) -> FObstructionVector:
    """Congruence residues of a fusion-class mark vector.

    Same shape as the plain congruence map, but evaluated only at fully
    normalized representatives and read through the fusion partition.
    """
    F = xi.fusion
    rows = _fusion_congruence_rows(F)
    moduli = fusion_obstruction_moduli(F)
    residues = tuple(
        sum(a * m for a, m in zip(row, xi.marks)) % mod if mod > 1 else 0
        for row, mod in zip(rows, moduli))
    return FObstructionVector(F, residues, moduli)


def alpha_mark_matrix(F: FusionData) -> tuple[tuple[int, ...], ...]:
    """Column f holds the fusion-class marks of basis element f.

    Lower triangular with the fully normalized Weyl orders on the diagonal.
    """
    basis = alpha_basis(F)
    cols = [phi_fusion(a, F).marks for a in basis.alphas]
    nf = F.n_fclasses
    return tuple(tuple(cols[f][q] for f in range(nf)) for q in range(nf))


def _solve_alpha(F: FusionData, xi) -> tuple[int, ...] | None:
    """Integral coordinates of a fusion mark vector over the basis, or None."""
    M = alpha_mark_matrix(F)
    nf = F.n_fclasses
    lam = [0] * nf
    for i in range(nf):
        acc = xi[i]
        for j in range(i):
            if lam[j] and M[i][j]:
                acc -= lam[j] * M[i][j]
        c, rem = divmod(acc, M[i][i])
        if rem:
            return None
        lam[i] = c
    for i in range(nf):
        if sum(M[i][j] * lam[j] for j in range(nf)) != xi[i]:
            raise InvariantError("triangular solve failed to reproduce the input")
    return tuple(lam)


def decompose(x: BurnsideElement, F: FusionData) -> tuple[int, ...]:
    """Coordinates of a stable element over the basis; exact and unique.

    The coordinate at fusion class f is the orbit count of x at the fully
    normalized representative. The reconstruction is compared against x
    coefficient by coefficient before returning.
    """
    defect = stability_defect(x, F)
    if defect is not None:
        f, a, b, va, vb = defect
        raise NotFStableError(
            f"cannot decompose an unstable element: classes {F.table.labels[a]} "
            f"and {F.table.labels[b]} are fused but have marks {va} and {vb}")
    basis = alpha_basis(F)
    lam = tuple(x.coeffs[F.fn_rep[f]] for f in range(F.n_fclasses))
    recon = [0] * len(F.table)
    for f, l in enumerate(lam):
        if l:
            for i, c in enumerate(basis[f].coeffs):
                recon[i] += l * c
    if tuple(recon) != x.coeffs:
        raise InvariantError("decomposition failed to reconstruct the element")
    return lam


def verify_ses_fusion(F: FusionData, *, seed: int = DEFAULT_SEED,
                      samples: int = 100, max_sweep: int = MAX_SWEEP) -> SESReport:
    """Verify the short exact sequence over fusion classes.

    Checks: the congruence residues of every basis element vanish; the fusion
    congruence map is onto; sampled kernel vectors (one exhaustive residue
    system plus seeded random projections) all decompose integrally over the
    basis; and the cokernel size matches the product of the fully normalized
    Weyl orders. For the fusion a p-group induces on itself this reduces to
    the plain group verification, coordinate for coordinate.
    """
    basis = alpha_basis(F)
    checks = []

    bad = []
    for f, alpha in enumerate(basis.alphas):
        if not psi_fusion(phi_fusion(alpha, F)).is_zero:
            bad.append(F.fclass_label(f))
    checks.append(CheckResult(
        "congruences vanish on basis elements", not bad,
        "failed at " + ", ".join(bad) if bad else
        f"all {F.n_fclasses} basis elements"))

    rows = _fusion_congruence_rows(F)
    ok, why = _triangular_unit_diagonal(rows)
    checks.append(CheckResult(
        "congruence map is onto (triangular, unit diagonal)", ok, why))

    moduli = fusion_obstruction_moduli(F)

    def solve(vec) -> str | None:
        lam = _solve_alpha(F, vec)
        if lam is None:
            return f"kernel vector {vec} is not an integral combination of the basis"
        return None

    kernel_count, failures = _kernel_survey(
        moduli, rows, solve, seed=seed, samples=samples, max_sweep=max_sweep)
    checks.append(CheckResult(
        "kernel vectors decompose integrally over the basis",
        not failures,
        failures[0] if failures else
        f"{kernel_count} kernel vectors in a residue system of {math.prod(moduli)}, "
        f"plus {samples} random projections"))

    M = alpha_mark_matrix(F)
    diag = math.prod(M[i][i] for i in range(F.n_fclasses))
    expect = math.prod(moduli)
    checks.append(CheckResult(
        "cokernel size equals the product of fully normalized Weyl orders",
        diag == expect, f"{diag} vs {expect}"))

    amb = F.ambient.name or f"order-{F.ambient.order} group"
    return SESReport(f"stable elements of {amb} at p={F.prime}", tuple(checks))
