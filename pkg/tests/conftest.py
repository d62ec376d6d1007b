import pytest

from fusionburnside.catalog import AMBIENT_PAIRS, P_GROUP_NAMES, group, lookup
from fusionburnside.fusion import fusion_from_group


@pytest.fixture(scope="session")
def pgroups():
    """The catalog p-groups, built once per test run."""
    return {name: group(name) for name in P_GROUP_NAMES}


@pytest.fixture(scope="session")
def self_fusions(pgroups):
    """Each p-group fused by itself (the discrete fusion system)."""
    return {name: fusion_from_group(G, lookup(name).primes[0])
            for name, G in pgroups.items()}


@pytest.fixture(scope="session")
def ambient_fusions():
    return {(name, p): fusion_from_group(group(name), p)
            for name, p in AMBIENT_PAIRS}


@pytest.fixture(scope="session")
def criterion_systems(self_fusions, ambient_fusions):
    """The fusion systems the acceptance criteria quantify over: every
    p-group on itself, plus S4 and S5 at p=2 and S3 at p=3."""
    systems = {f"F_{name}({name})": F for name, F in self_fusions.items()}
    systems["F(S4, p=2)"] = ambient_fusions[("S4", 2)]
    systems["F(S5, p=2)"] = ambient_fusions[("S5", 2)]
    systems["F(S3, p=3)"] = ambient_fusions[("S3", 3)]
    return systems
