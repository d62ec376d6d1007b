"""Burnside rings of finite p-groups and the stable elements under fusion.

The pipeline: build a permutation group, enumerate subgroup classes, compute
tables of marks, merge classes under the fusion an ambient group induces on a
Sylow subgroup, construct the irreducible stable elements, and verify the
congruence short exact sequences that make the whole picture exact.
"""

from .burnside import (
    DEFAULT_SEED,
    BurnsideElement,
    CheckResult,
    MarkMatrix,
    MarkVector,
    ObstructionVector,
    SESReport,
    basis_element,
    element_from_csv,
    element_to_csv,
    mark,
    mark_matrix,
    marks_to_csv,
    marks_to_orbits,
    multiply,
    obstruction_moduli,
    obstruction_order,
    psi_group,
    restrict_ambient,
    verify_ses_group,
    zero_element,
)
from .catalog import CATALOG, AMBIENT_PAIRS, P_GROUP_NAMES, CatalogEntry, lookup
from .errors import (
    CongruenceError,
    FixedPointError,
    FusionBurnsideError,
    InputError,
    InvariantError,
    MarkImageError,
    NotFStableError,
    SizeCapError,
    WitnessError,
)
from .fusion import (
    ConjugationWitness,
    FusionData,
    fully_normalized_rep,
    fusion_from_group,
    normalizer_lift,
)
from .permgroup import (
    Group,
    Permutation,
    Subgroup,
    SubgroupClassTable,
    center,
    centralizer,
    class_table,
    enumerate_subgroups,
    generate_group,
    load_group_file,
    normalizer,
    parse_group_file,
    parse_permutation,
    subgroup_as_group,
    subgroups_of_order,
    sylow_subgroup,
    transporter,
)
from .stablesets import (
    AlphaBasis,
    FMarkVector,
    FObstructionVector,
    StabilizationStep,
    alpha_basis,
    alpha_mark_matrix,
    build_alpha_basis,
    decompose,
    is_f_stable,
    phi_fusion,
    psi_fusion,
    stabilize,
    stabilize_element,
    verify_ses_fusion,
)

__version__ = "0.1.0"

__all__ = [
    "__version__",
    "DEFAULT_SEED",
    "Permutation", "Group", "Subgroup", "SubgroupClassTable",
    "generate_group", "parse_permutation", "parse_group_file",
    "load_group_file", "class_table", "enumerate_subgroups",
    "subgroups_of_order", "subgroup_as_group", "sylow_subgroup",
    "normalizer", "centralizer", "center", "transporter",
    "BurnsideElement", "MarkVector", "MarkMatrix", "ObstructionVector",
    "CheckResult", "SESReport", "basis_element", "zero_element",
    "mark_matrix", "mark", "marks_to_orbits", "multiply", "psi_group",
    "obstruction_moduli", "obstruction_order", "verify_ses_group",
    "restrict_ambient", "element_to_csv", "element_from_csv", "marks_to_csv",
    "FusionData", "ConjugationWitness", "fusion_from_group",
    "fully_normalized_rep", "normalizer_lift",
    "FMarkVector", "FObstructionVector", "AlphaBasis", "StabilizationStep",
    "is_f_stable", "stabilize", "stabilize_element", "alpha_basis",
    "build_alpha_basis", "alpha_mark_matrix", "decompose", "phi_fusion",
    "psi_fusion", "verify_ses_fusion",
    "CatalogEntry", "CATALOG", "P_GROUP_NAMES", "AMBIENT_PAIRS", "lookup",
    "FusionBurnsideError", "InputError", "SizeCapError", "MarkImageError",
    "NotFStableError", "CongruenceError", "FixedPointError", "WitnessError",
    "InvariantError",
]
