"""Group machinery against brute-force oracles.

The subgroup and conjugacy oracles here enumerate by raw subset filtering and
elementwise conjugation, sharing no code with the production lattice walk.
"""

from itertools import combinations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fusionburnside.catalog import CATALOG, catalog, group
from fusionburnside.errors import InputError, SizeCapError
from fusionburnside.permgroup import (
    Permutation,
    center,
    centralizer,
    class_table,
    closure_indices,
    coset_representatives,
    enumerate_subgroups,
    generate_group,
    is_prime,
    normalizer,
    parse_group_file,
    parse_permutation,
    subgroup_as_group,
    subgroups_of_order,
    sylow_subgroup,
    transporter,
)


def brute_subgroups(G):
    """Every subset containing the identity that is closed under products."""
    n = G.order
    found = set()
    for size in range(1, n + 1):
        if n % size:
            continue
        for rest in combinations(range(1, n), size - 1):
            cand = (0,) + rest
            members = set(cand)
            if all(G.mul(a, b) in members for a in cand for b in cand):
                found.add(cand)
    return found


def brute_classes(G, keys):
    """Partition subgroup keys into conjugation orbits, least key first."""
    left = set(keys)
    classes = []
    while left:
        k = min(left)
        orbit = {tuple(sorted(G.conj(g, x) for x in k))
                 for g in range(G.order)}
        assert orbit <= left
        left -= orbit
        classes.append(orbit)
    return classes


# ---------------------------------------------------------------------------
# Permutations and parsing

def test_permutation_composition_order():
    r = parse_permutation("(1 2 3 4)", 4)
    s = parse_permutation("(1 3)", 4)
    # (r*s) applies s first
    assert (r * s)(1) == r(s(1)) == 2
    assert r.order() == 4 and s.order() == 2
    assert (r * r.inverse()).is_identity()
    assert str(s * r * s) == str(r.inverse()) == "(1 4 3 2)"


def test_parse_permutation_accepts_commas_and_rejects_junk():
    assert parse_permutation("(1, 2)(3, 4)", 4) == parse_permutation(
        "(1 2)(3 4)", 4)
    with pytest.raises(InputError):
        parse_permutation("(1 2", 4)
    with pytest.raises(InputError):
        parse_permutation("(1 5)", 4)
    with pytest.raises(InputError):
        parse_permutation("(1 2)(2 3)", 4)  # not disjoint
    with pytest.raises(InputError):
        parse_permutation("(0 1)", 4)  # points are 1-based


@given(st.permutations(tuple(range(7))))
def test_cycle_notation_roundtrip(images):
    p = Permutation.from_images(tuple(images))
    assert parse_permutation(str(p), 7) == p


@given(st.permutations(tuple(range(6))), st.permutations(tuple(range(6))))
def test_inverse_undoes_product(a, b):
    p = Permutation.from_images(tuple(a))
    q = Permutation.from_images(tuple(b))
    assert (p * q) * (p * q).inverse() == Permutation.identity(6)
    assert (p * q).inverse() == q.inverse() * p.inverse()


def test_catalog_listing():
    entries = catalog()
    assert [e.name for e in entries] == list(CATALOG)
    assert all(e is CATALOG[e.name] for e in entries)


def test_group_file_roundtrip(tmp_path):
    text = "# octagon\ndegree 8\n(1 2 3 4 5 6 7 8)\n(1 8)(2 7)(3 6)(4 5)\n"
    G = parse_group_file(text, name="D16")
    assert G.order == 16
    assert G.order == CATALOG["D16"].build().order
    with pytest.raises(InputError):
        parse_group_file("(1 2)\n")  # degree line missing
    with pytest.raises(InputError):
        parse_group_file("degree two\n(1 2)\n")


def test_generation_is_order_insensitive():
    a = parse_permutation("(1 2 3 4)", 4)
    b = parse_permutation("(1 3)", 4)
    G1 = generate_group(4, (a, b))
    G2 = generate_group(4, (b, a))
    assert G1.elements == G2.elements


def test_generate_group_respects_cap():
    gens = (parse_permutation("(1 2)", 5), parse_permutation("(1 2 3 4 5)", 5))
    with pytest.raises(SizeCapError):
        generate_group(5, gens, max_order=100)


# ---------------------------------------------------------------------------
# Subgroup lattice against the subset-filter oracle

@pytest.mark.parametrize("name", ["C2", "C4", "C2xC2", "C8", "D8", "Q8",
                                  "C2xC4", "D16", "S3", "A4"])
def test_enumerate_subgroups_matches_brute_force(name):
    G = group(name)
    got = {s.indices for s in enumerate_subgroups(G)}
    assert got == brute_subgroups(G)


@pytest.mark.parametrize("name,count", [
    ("D8", 10), ("Q8", 6), ("C2xC2", 5), ("C2xC4", 8), ("D16", 19),
    ("S4", 30), ("S5", 156), ("A4", 10),
])
def test_subgroup_counts(name, count):
    G = group(name)
    assert len(enumerate_subgroups(G, max_order=G.order)) == count


def test_enumerate_subgroups_caps_large_groups():
    with pytest.raises(SizeCapError):
        enumerate_subgroups(group("S5"))  # order 120 over the default cap


@pytest.mark.parametrize("name", ["D8", "Q8", "C2xC4", "S3", "A4", "D16"])
def test_class_table_matches_brute_force(name):
    G = group(name)
    table = class_table(G)
    oracle = brute_classes(G, brute_subgroups(G))
    got = {frozenset(m.indices for m in cls.members) for cls in table.classes}
    assert got == {frozenset(orbit) for orbit in oracle}
    for cls in table.classes:
        assert cls.rep.indices == min(m.indices for m in cls.members)


def test_class_table_is_ordered_by_decreasing_order():
    table = class_table(group("D16"))
    orders = [table.class_order(i) for i in range(len(table))]
    assert orders == sorted(orders, reverse=True)
    assert orders[0] == 16 and orders[-1] == 1
    assert len(table) == 11


def test_labels_count_within_order():
    table = class_table(group("D8"))
    assert table.labels == ("8:0", "4:0", "4:1", "4:2", "2:0", "2:1", "2:2",
                            "1:0")
    assert table.label_index("4:2") == 3
    with pytest.raises(InputError):
        table.label_index("3:0")


def test_orbit_stabilizer_for_every_subgroup_class():
    # |class| * |normalizer| = |G| across the whole catalog
    for name in CATALOG:
        G = group(name)
        for cls in class_table(subgroup_as_group(
                sylow_subgroup(G, CATALOG[name].primes[0]))).classes:
            S = cls.rep.parent
            assert cls.size * normalizer(S, cls.rep).order == S.order
        for sub in enumerate_subgroups(G, max_order=G.order):
            orbit = {tuple(sorted(G.conj(g, x) for x in sub.indices))
                     for g in range(G.order)}
            assert len(orbit) * normalizer(G, sub).order == G.order


# ---------------------------------------------------------------------------
# Normalizers, centralizers, transporters

def test_normalizer_and_centralizer_on_d8():
    G = group("D8")
    table = class_table(G)
    z = center(G)
    assert z.order == 2
    assert table.class_order(table.class_of(z)) == 2
    for i in range(len(table)):
        P = table.rep(i)
        N = normalizer(G, P)
        C = centralizer(G, P)
        assert C.index_set <= N.index_set
        assert all(x in N for x in P.indices)


def test_transporter_is_union_of_cosets():
    G = group("D8")
    table = class_table(G)
    for q in range(len(table)):
        for p in range(len(table)):
            Q, P = table.rep(q), table.rep(p)
            t = transporter(G, Q, P)
            assert len(t) % P.order == 0
            for perm in t:
                g = G.element_index(perm)
                assert all(G.conj(g, x) in P.index_set for x in Q.indices)


def test_coset_representatives_partition():
    G = group("D16")
    table = class_table(G)
    P = table.rep(5)
    reps = coset_representatives(G, P.indices)
    seen = set()
    for r in reps:
        coset = {G.mul(r, h) for h in P.indices}
        assert not (coset & seen)
        seen |= coset
    assert seen == set(range(G.order))


# ---------------------------------------------------------------------------
# Sylow subgroups and bounded order search

@pytest.mark.parametrize("p,order", [(2, 8), (3, 3), (5, 5), (7, 1)])
def test_sylow_subgroups_of_s5(p, order):
    G = group("S5")
    P = sylow_subgroup(G, p)
    assert P.order == order
    assert (G.order // P.order) % p != 0 or p == 7


def test_sylow_rejects_nonprime():
    with pytest.raises(InputError):
        sylow_subgroup(group("S4"), 4)
    assert is_prime(2) and is_prime(97) and not is_prime(1) and not is_prime(91)


def test_sylow_2_of_s5_is_dihedral():
    S = subgroup_as_group(sylow_subgroup(group("S5"), 2))
    assert S.order == 8
    # dihedral signature: an element of order 4 and five involutions
    orders = sorted(S.element_order(i) for i in range(8))
    assert orders == [1, 2, 2, 2, 2, 2, 4, 4]


def test_subgroups_of_order_finds_all_klein_subgroups():
    G = group("S4")
    got = {s.indices for s in subgroups_of_order(G, 4)}
    want = {k for k in brute_subgroups(G) if len(k) == 4}
    assert got == want
    assert subgroups_of_order(G, 5) == []


def test_closure_indices_cap():
    G = group("S5")
    a = G.element_index(parse_permutation("(1 2)", 5))
    b = G.element_index(parse_permutation("(1 2 3 4 5)", 5))
    assert closure_indices(G, (a, b), cap=30) is None
    assert len(closure_indices(G, (a, b))) == 120


def test_subgroup_as_group_is_shared():
    G = group("S5")
    P = sylow_subgroup(G, 2)
    assert subgroup_as_group(P) is subgroup_as_group(sylow_subgroup(G, 2))
