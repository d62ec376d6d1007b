"""Stable elements, the irreducible basis, and the fusion exact sequence.

Worked values on the order-120 symmetric group at p = 2 are frozen from hand
computation with the mark matrix: the fused order-2 class carries marks 4 and
0 on [S/Z], so the repair coefficient is (4 - 0)/2 = 2.
"""

import random

import pytest

from fusionburnside.burnside import (
    BurnsideElement,
    MarkVector,
    basis_element,
    mark,
    obstruction_moduli,
    psi_group,
    restrict_ambient,
    zero_element,
)
from fusionburnside.burnside import _congruence_rows
from fusionburnside.catalog import group
from fusionburnside.errors import InputError, NotFStableError
from fusionburnside.fusion import fusion_from_group
from fusionburnside.permgroup import (
    center,
    enumerate_subgroups,
    sylow_subgroup,
)
from fusionburnside.stablesets import (
    FMarkVector,
    alpha_basis,
    alpha_mark_matrix,
    build_alpha_basis,
    decompose,
    f_subconjugation,
    fusion_obstruction_moduli,
    is_f_stable,
    phi_fusion,
    psi_fusion,
    stability_defect,
    stabilize,
    stabilize_element,
    verify_ses_fusion,
)
from fusionburnside.stablesets import _fusion_congruence_rows


@pytest.fixture(scope="module")
def F5():
    return fusion_from_group(group("S5"), 2)


def fused_pair(F):
    """(center class, its fused partner) in a dihedral Sylow fusion."""
    zc = F.table.class_of(center(F.sgroup))
    partner = [m for m in F.members(F.fclass_of[zc]) if m != zc]
    assert len(partner) == 1
    return zc, partner[0]


# ---------------------------------------------------------------------------
# Stability

def test_free_orbit_is_stable_but_center_orbit_is_not(F5):
    table = F5.table
    free = basis_element(table, len(table) - 1)
    assert is_f_stable(free, F5)
    assert mark(free).marks[-1] == 8

    zc, partner = fused_pair(F5)
    x = basis_element(table, zc)
    assert not is_f_stable(x, F5)
    f, a, b, va, vb = stability_defect(x, F5)
    assert {a, b} == {zc, partner}
    assert {va, vb} == {4, 0}


def test_every_basis_element_is_stable_in_the_discrete_system(self_fusions):
    for F in self_fusions.values():
        for i in range(len(F.table)):
            assert is_f_stable(basis_element(F.table, i), F)


def test_stability_is_a_linear_condition(F5):
    zc, partner = fused_pair(F5)
    x = basis_element(F5.table, zc) + 2 * basis_element(F5.table, partner)
    assert is_f_stable(x, F5)
    assert not is_f_stable(x + basis_element(F5.table, zc), F5)


# ---------------------------------------------------------------------------
# Stabilization

def test_stabilize_element_repairs_the_center_orbit(F5):
    table = F5.table
    zc, partner = fused_pair(F5)
    fz = F5.fclass_of[zc]
    ftriv = F5.fclass_of[len(table) - 1]
    x = basis_element(table, zc)
    y = stabilize_element(x, F5, {fz, ftriv})
    assert y.coeffs[zc] == 1 and y.coeffs[partner] == 2
    assert sum(map(abs, y.coeffs)) == 3
    assert is_f_stable(y, F5)
    xi = mark(y).marks
    assert xi[zc] == xi[partner] == 4
    assert xi[-1] == 12


def test_strict_stabilize_preconditions(F5):
    table = F5.table
    zc, _ = fused_pair(F5)
    fz = F5.fclass_of[zc]
    ftriv = F5.fclass_of[len(table) - 1]
    with pytest.raises(InputError):
        # nonzero count on a class inside the stabilization set
        stabilize(basis_element(table, zc), F5, {fz, ftriv})
    with pytest.raises(InputError):
        stabilize(-basis_element(table, 0), F5, {fz, ftriv})
    with pytest.raises(InputError):
        # not downward closed: the trivial class is missing
        stabilize_element(basis_element(table, zc), F5, {fz})
    with pytest.raises(InputError):
        stabilize(basis_element(table, 0), F5, {99})
    with pytest.raises(NotFStableError):
        # unstable on a class outside the set
        stabilize(basis_element(table, zc), F5, {ftriv})


def test_stabilize_rejects_foreign_elements(F5):
    other = fusion_from_group(group("S4"), 2)
    with pytest.raises(InputError):
        stabilize(basis_element(other.table, 0), F5, set())


def test_public_stabilize_reproduces_the_basis(F5):
    fleq = f_subconjugation(F5)
    table = F5.table
    basis = alpha_basis(F5)
    for f in range(F5.n_fclasses):
        r = F5.fn_rep[f]
        coeffs = [0] * len(table)
        for m in F5.members(f):
            coeffs[m] = table.normalizer_order(r) // table.normalizer_order(m)
        below = {f2 for f2 in range(F5.n_fclasses) if f2 != f and fleq[f2][f]}
        got = stabilize(BurnsideElement(table, tuple(coeffs)), F5, below)
        assert got.coeffs == basis[f].coeffs


# ---------------------------------------------------------------------------
# The basis

def test_alpha_basis_on_s5(F5):
    table = F5.table
    zc, partner = fused_pair(F5)
    basis = alpha_basis(F5)
    assert len(basis) == 7
    alpha_z = basis[F5.fclass_of[zc]]
    want = [0] * len(table)
    want[zc], want[partner] = 1, 2
    assert alpha_z.coeffs == tuple(want)
    xi = mark(alpha_z).marks
    assert xi[zc] == xi[partner] == 4 and xi[-1] == 12
    # each order-4 orbit sees the fused pair asymmetrically and is repaired
    # by (mark at Z - mark at the partner) / 2 copies of the partner orbit
    for f in range(F5.n_fclasses):
        a = basis[f]
        r = F5.fn_rep[f]
        assert a.coeffs[r] == 1
        if F5.fclass_order(f) == 4:
            seed_marks = mark(basis_element(table, r)).marks
            lam = (seed_marks[zc] - seed_marks[partner]) // 2
            want = [0] * len(table)
            want[r], want[partner] = 1, lam
            assert a.coeffs == tuple(want)


def test_alpha_basis_on_a4():
    F = fusion_from_group(group("A4"), 2)
    basis = alpha_basis(F)
    assert [a.coeffs for a in basis.alphas] == [
        (1, 0, 0, 0, 0), (0, 1, 1, 1, 0), (0, 0, 0, 0, 1)]
    assert mark(basis[1]).marks == (0, 2, 2, 2, 6)


def test_alpha_basis_is_independent_of_the_normalized_choice():
    F = fusion_from_group(group("A4"), 2)
    base = alpha_basis(F)
    for alt in F.members(1):
        other, _ = build_alpha_basis(F, fn_choice={1: alt})
        assert all(a.coeffs == b.coeffs
                   for a, b in zip(base.alphas, other.alphas))


def test_build_alpha_basis_rejects_bad_choices(F5):
    zc, partner = fused_pair(F5)
    fz = F5.fclass_of[zc]
    with pytest.raises(InputError):
        build_alpha_basis(F5, fn_choice={fz: partner})  # not fully normalized
    with pytest.raises(InputError):
        build_alpha_basis(F5, fn_choice={fz: 0})  # not a member


def test_alpha_properties_across_all_systems(criterion_systems):
    for name, F in criterion_systems.items():
        basis = alpha_basis(F)
        fleq = f_subconjugation(F)
        table = F.table
        for f, alpha in enumerate(basis.alphas):
            assert alpha.is_set, name
            xi = mark(alpha).marks
            for q in range(len(table)):
                if not fleq[F.fclass_of[q]][f]:
                    assert xi[q] == 0, name
            for m in F.members(f):
                if F.is_fully_normalized(m):
                    assert alpha.coeffs[m] == 1, name
                    assert xi[m] == table.weyl_order(m), name
            for q in range(len(table)):
                if F.fclass_of[q] != f and F.is_fully_normalized(q):
                    assert alpha.coeffs[q] == 0, name


def test_stabilization_log_has_no_negative_coefficients(criterion_systems):
    for name, F in criterion_systems.items():
        _, log = build_alpha_basis(F)
        assert all(step.coefficient >= 0 for step in log), name
        assert all(step.coefficient == 0
                   for step in log if step.fully_normalized), name


def test_discrete_systems_have_the_identity_basis(self_fusions):
    for F in self_fusions.values():
        basis = alpha_basis(F)
        for i, alpha in enumerate(basis.alphas):
            assert alpha.coeffs == basis_element(F.table, i).coeffs


# ---------------------------------------------------------------------------
# Decomposition

def test_decompose_inverts_the_basis(F5):
    basis = alpha_basis(F5)
    for f in range(F5.n_fclasses):
        lam = decompose(basis[f], F5)
        assert lam == tuple(int(k == f) for k in range(F5.n_fclasses))


def test_decompose_roundtrips_random_combinations(criterion_systems):
    rng = random.Random(1729)
    for name, F in criterion_systems.items():
        basis = alpha_basis(F)
        nf = F.n_fclasses
        for _ in range(50):
            lam = tuple(rng.randint(0, 6) for _ in range(nf))
            x = zero_element(F.table)
            for f, c in enumerate(lam):
                x = x + c * basis[f]
            assert decompose(x, F) == lam, name
        for _ in range(50):
            lam = tuple(rng.randint(-9, 9) for _ in range(nf))
            x = zero_element(F.table)
            for f, c in enumerate(lam):
                x = x + c * basis[f]
            assert decompose(x, F) == lam, name


def test_decompose_rejects_unstable_elements(F5):
    zc, _ = fused_pair(F5)
    with pytest.raises(NotFStableError) as e:
        decompose(basis_element(F5.table, zc), F5)
    assert "fused" in str(e.value)


def test_decompose_is_orbit_counting_in_the_discrete_system(self_fusions):
    rng = random.Random(8)
    for F in self_fusions.values():
        for _ in range(20):
            coeffs = tuple(rng.randint(0, 5) for _ in range(len(F.table)))
            x = BurnsideElement(F.table, coeffs)
            assert decompose(x, F) == coeffs


def test_restrictions_of_the_sylow_examples_decompose(F5):
    G = group("S5")
    rH = restrict_ambient(G, sylow_subgroup(G, 3), F5.sylow)
    rK = restrict_ambient(G, sylow_subgroup(G, 5), F5.sylow)
    free = basis_element(F5.table, len(F5.table) - 1)
    assert rH.coeffs == (5 * free).coeffs
    assert rK.coeffs == (3 * free).coeffs
    ftriv = F5.fclass_of[len(F5.table) - 1]
    assert decompose(rH, F5)[ftriv] == 5
    assert decompose(rK, F5)[ftriv] == 3
    assert (3 * rH).coeffs == (5 * rK).coeffs


@pytest.mark.parametrize("ambient,p", [("S3", 3), ("S3", 2), ("A4", 2),
                                       ("S4", 2), ("S5", 2), ("S5", 3)])
def test_every_restriction_is_stable_and_decomposes(ambient, p):
    G = group(ambient)
    F = fusion_from_group(G, p)
    basis = alpha_basis(F)
    for H in enumerate_subgroups(G, max_order=G.order):
        x = restrict_ambient(G, H, F.sylow)
        assert is_f_stable(x, F)
        lam = decompose(x, F)
        recon = zero_element(F.table)
        for f, c in enumerate(lam):
            recon = recon + c * basis[f]
        assert recon.coeffs == x.coeffs


# ---------------------------------------------------------------------------
# Fusion marks and congruences

def test_phi_fusion_reads_fully_normalized_marks(F5):
    zc, _ = fused_pair(F5)
    alpha_z = alpha_basis(F5)[F5.fclass_of[zc]]
    fm = phi_fusion(alpha_z, F5)
    assert fm.marks[F5.fclass_of[zc]] == 4
    assert fm.marks[-1] == 12
    with pytest.raises(NotFStableError):
        phi_fusion(basis_element(F5.table, zc), F5)
    with pytest.raises(InputError):
        FMarkVector(F5, (1, 2, 3))


def test_fusion_congruence_rows_collapse_the_group_rows(F5):
    grows = _congruence_rows(F5.table)
    frows = _fusion_congruence_rows(F5)
    for f in range(F5.n_fclasses):
        want = [0] * F5.n_fclasses
        for m, v in enumerate(grows[F5.fn_rep[f]]):
            want[F5.fclass_of[m]] += v
        assert frows[f] == tuple(want)


def test_psi_fusion_degenerates_to_psi_group(self_fusions):
    rng = random.Random(11)
    for F in self_fusions.values():
        assert fusion_obstruction_moduli(F) == obstruction_moduli(F.table)
        for _ in range(10):
            vals = tuple(rng.randint(-20, 20) for _ in range(len(F.table)))
            assert psi_fusion(FMarkVector(F, vals)).residues == \
                psi_group(MarkVector(F.table, vals)).residues


def test_psi_fusion_unit_vector_at_the_free_class(F5):
    ftriv = F5.fclass_of[len(F5.table) - 1]
    unit = FMarkVector(
        F5, tuple(int(f == ftriv) for f in range(F5.n_fclasses)))
    out = psi_fusion(unit)
    # exactly one coset representative generates the trivial subgroup
    assert out.residues[ftriv] == 1
    assert out.moduli[ftriv] == 8
    assert not out.is_zero


def test_psi_fusion_vanishes_on_the_basis(criterion_systems):
    for name, F in criterion_systems.items():
        for alpha in alpha_basis(F).alphas:
            assert psi_fusion(phi_fusion(alpha, F)).is_zero, name


def test_alpha_mark_matrix_is_triangular(criterion_systems):
    for name, F in criterion_systems.items():
        M = alpha_mark_matrix(F)
        moduli = fusion_obstruction_moduli(F)
        for i in range(F.n_fclasses):
            assert M[i][i] == moduli[i], name
            for j in range(i + 1, F.n_fclasses):
                assert M[i][j] == 0, name


def test_verify_ses_fusion_passes(criterion_systems, ambient_fusions):
    for name, F in criterion_systems.items():
        report = verify_ses_fusion(F)
        assert report.passed, (name, [c for c in report.checks if not c.passed])
        assert len(report.checks) == 4
    extra = fusion_from_group(group("S3"), 2)  # Sylow C2, two fusion classes
    assert extra.n_fclasses == 2
    assert verify_ses_fusion(extra).passed
    assert verify_ses_fusion(ambient_fusions[("S5", 3)]).passed
    assert verify_ses_fusion(ambient_fusions[("A4", 2)]).passed
