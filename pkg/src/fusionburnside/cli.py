"""Command line interface.

Every subcommand works on a pair (G, p): the group comes from a file or the
built-in catalog, and the reports concern the Sylow p-subgroup S and the
fusion G induces on it. Output is deterministic given (input, prime, seed);
identical invocations produce byte-identical output.

Exit codes: 0 success, 1 library error or failed verification, 2 malformed
input.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from pathlib import Path

from .burnside import (
    DEFAULT_SEED,
    element_from_csv,
    mark,
    mark_matrix,
    restrict_ambient,
    verify_ses_group,
)
from .catalog import CATALOG, lookup
from .catalog import group as catalog_group
from .errors import FusionBurnsideError, InputError
from .fusion import FusionData, fusion_from_group
from .permgroup import (
    Group,
    center,
    class_table,
    is_prime,
    load_group_file,
    subgroup_as_group,
    subgroups_of_order,
    sylow_subgroup,
)
from .stablesets import alpha_basis, decompose, verify_ses_fusion

__all__ = ["RunConfig", "run", "main"]

_SUBCOMMANDS = ("marks", "classes", "fusion", "alpha", "decompose", "verify",
                "demo")


@dataclass(frozen=True)
class RunConfig:
    subcommand: str
    group: str | None = None
    catalog: str | None = None
    prime: int | None = None
    fmt: str = "text"
    seed: int = DEFAULT_SEED
    element: str | None = None
    verbose: bool = False


def _resolve_group(cfg: RunConfig) -> Group:
    if cfg.catalog is not None:
        return catalog_group(cfg.catalog)
    if cfg.group is not None:
        return load_group_file(cfg.group)
    raise InputError("provide a group with --group FILE or --catalog NAME")


def _resolve_prime(cfg: RunConfig, G: Group) -> int:
    if cfg.prime is not None:
        if not is_prime(cfg.prime):
            raise InputError(f"{cfg.prime} is not prime")
        return cfg.prime
    if cfg.catalog is not None:
        return lookup(cfg.catalog).primes[0]
    n = G.order
    for p in range(2, n + 1):
        if n % p == 0:
            while n % p == 0:
                n //= p
            if n == 1:
                return p
            break
    raise InputError(
        f"--prime is required: order {G.order} is not a prime power")


def _emit(text: str) -> None:
    sys.stdout.write(text)


def _aligned(rows) -> str:
    widths = [max(len(r[i]) for r in rows) for i in range(len(rows[0]))]
    return "".join(
        "  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip() + "\n"
        for r in rows)


def _csv(rows) -> str:
    return "".join(",".join(r) + "\n" for r in rows)


def _json(obj) -> str:
    return json.dumps(obj, indent=2, ensure_ascii=False) + "\n"


def _sylow_table(cfg: RunConfig):
    G = _resolve_group(cfg)
    p = _resolve_prime(cfg, G)
    S = subgroup_as_group(sylow_subgroup(G, p))
    return class_table(S)


def _fusion(cfg: RunConfig) -> FusionData:
    G = _resolve_group(cfg)
    return fusion_from_group(G, _resolve_prime(cfg, G))


def _cmd_marks(cfg: RunConfig) -> int:
    table = _sylow_table(cfg)
    M = mark_matrix(table).entries
    labels = table.labels
    if cfg.fmt == "json":
        _emit(_json({labels[q]: {labels[p]: M[q][p] for p in range(len(table))}
                     for q in range(len(table))}))
        return 0
    rows = [["class", *labels]]
    rows += [[labels[q], *(str(v) for v in M[q])] for q in range(len(table))]
    _emit(_csv(rows) if cfg.fmt == "csv" else _aligned(rows))
    return 0


def _cmd_classes(cfg: RunConfig) -> int:
    table = _sylow_table(cfg)
    G = table.group

    def rep_elements(i: int) -> str:
        return " ".join(str(p) for p in table.rep(i).perms())

    header = ["class", "order", "size", "normalizer", "weyl"]
    if cfg.verbose:
        header.append("representative")
    if cfg.fmt == "json":
        out = {}
        for i, label in enumerate(table.labels):
            row = {"order": table.class_order(i),
                   "size": len(table.classes[i].members),
                   "normalizer": table.normalizer_order(i),
                   "weyl": table.weyl_order(i)}
            if cfg.verbose:
                row["representative"] = rep_elements(i)
            out[label] = row
        _emit(_json(out))
        return 0
    rows = [header]
    for i, label in enumerate(table.labels):
        row = [label, str(table.class_order(i)),
               str(len(table.classes[i].members)),
               str(table.normalizer_order(i)), str(table.weyl_order(i))]
        if cfg.verbose:
            row.append(rep_elements(i))
        rows.append(row)
    _emit(_csv(rows) if cfg.fmt == "csv" else _aligned(rows))
    return 0


def _cmd_fusion(cfg: RunConfig) -> int:
    F = _fusion(cfg)
    table = F.table

    def member_names(f: int) -> list[str]:
        return [table.labels[m] + ("*" if m == F.fn_rep[f] else "")
                for m in F.members(f)]

    if cfg.fmt == "json":
        out = {}
        for f in range(F.n_fclasses):
            row = {"order": F.fclass_order(f),
                   "members": [table.labels[m] for m in F.members(f)],
                   "fully_normalized": F.fclass_label(f)}
            if cfg.verbose:
                row["representative"] = " ".join(
                    str(p) for p in F.fn_subgroup(f).perms())
            out[F.fclass_label(f)] = row
        _emit(_json(out))
        return 0
    header = ["fclass", "order", "members"]
    if cfg.verbose:
        header.append("representative")
    rows = [header]
    for f in range(F.n_fclasses):
        row = [F.fclass_label(f), str(F.fclass_order(f)),
               " ".join(member_names(f))]
        if cfg.verbose:
            row.append(" ".join(str(p) for p in F.fn_subgroup(f).perms()))
        rows.append(row)
    _emit(_csv(rows) if cfg.fmt == "csv" else _aligned(rows))
    return 0


def _cmd_alpha(cfg: RunConfig) -> int:
    F = _fusion(cfg)
    basis = alpha_basis(F)
    labels = F.table.labels
    if cfg.fmt == "json":
        _emit(_json({F.fclass_label(f): dict(zip(labels, basis[f].coeffs))
                     for f in range(F.n_fclasses)}))
        return 0
    rows = [["fclass", *labels]]
    rows += [[F.fclass_label(f), *(str(c) for c in basis[f].coeffs)]
             for f in range(F.n_fclasses)]
    _emit(_csv(rows) if cfg.fmt == "csv" else _aligned(rows))
    return 0


def _cmd_decompose(cfg: RunConfig) -> int:
    if cfg.element is None:
        raise InputError("decompose needs --element FILE")
    F = _fusion(cfg)
    try:
        text = Path(cfg.element).read_text(encoding="utf-8")
    except OSError as e:
        raise InputError(f"cannot read element file: {e}") from None
    x = element_from_csv(text, F.table)
    lam = decompose(x, F)
    flabels = [F.fclass_label(f) for f in range(F.n_fclasses)]
    if cfg.fmt == "json":
        _emit(_json(dict(zip(flabels, lam))))
    elif cfg.fmt == "csv":
        _emit(_csv([flabels, [str(v) for v in lam]]))
    else:
        _emit(_aligned([["fclass", "coefficient"],
                        *[[l, str(v)] for l, v in zip(flabels, lam)]]))
    return 0


def _cmd_verify(cfg: RunConfig) -> int:
    G = _resolve_group(cfg)
    p = _resolve_prime(cfg, G)
    F = fusion_from_group(G, p)
    reports = [verify_ses_group(F.sgroup, seed=cfg.seed),
               verify_ses_fusion(F, seed=cfg.seed)]
    if cfg.fmt == "json":
        out = {}
        for r in reports:
            out[r.subject] = {
                "passed": r.passed,
                "checks": {c.name: {"passed": c.passed, "detail": c.detail}
                           for c in r.checks}}
        _emit(_json(out))
    elif cfg.fmt == "csv":
        rows = [["subject", "check", "result", "detail"]]
        for r in reports:
            rows += [[r.subject, c.name, "PASS" if c.passed else "FAIL",
                      c.detail] for c in r.checks]
        _emit(_csv(rows))
    else:
        for r in reports:
            _emit(f"{r.subject}: {'PASS' if r.passed else 'FAIL'}\n")
            for c in r.checks:
                tag = "PASS" if c.passed else "FAIL"
                detail = f" ({c.detail})" if c.detail else ""
                _emit(f"  [{tag}] {c.name}{detail}\n")
    return 0 if all(r.passed for r in reports) else 1


def _cmd_demo(cfg: RunConfig) -> int:
    """Walk through the order-120 symmetric group at p = 2, checking every
    printed number against the computed value."""
    failures: list[str] = []

    def check(what: str, got, want) -> None:
        if got != want:
            failures.append(f"{what}: computed {got!r}, expected {want!r}")

    G = catalog_group("S5")
    F = fusion_from_group(G, 2)
    table = F.table
    triv = len(table) - 1
    zc = table.class_of(center(F.sgroup))
    fz = F.fclass_of[zc]
    partner = [m for m in F.members(fz) if m != zc]
    check("fused classes alongside the center", len(partner), 1)
    names = list(table.labels)
    names[triv] = "1"
    names[zc] = "Z"
    if partner:
        names[partner[0]] = "⟨rs⟩"

    def render(x) -> str:
        terms = []
        for i, c in enumerate(x.coeffs):
            if c:
                base = f"[D8/{names[i]}]"
                terms.append(base if c == 1 else f"{c}·{base}")
        return " + ".join(terms) if terms else "0"

    _emit("S5 has order 120; its Sylow 2-subgroup S is dihedral of order "
          f"{F.sgroup.order} (D8).\n")
    check("Sylow 2-subgroup order", F.sgroup.order, 8)

    H = sylow_subgroup(G, 3)
    K = sylow_subgroup(G, 5)
    rH = restrict_ambient(G, H, F.sylow)
    rK = restrict_ambient(G, K, F.sylow)
    check("cosets of H", G.order // H.order, 40)
    check("cosets of K", G.order // K.order, 24)
    _emit(f"\n[S5/H] for a Sylow 3-subgroup H ({G.order // H.order} cosets) "
          f"restricts to the D8-set {render(rH)}.\n")
    _emit(f"[S5/K] for a Sylow 5-subgroup K ({G.order // K.order} cosets) "
          f"restricts to {render(rK)}.\n")
    check("restriction of [S5/H]", render(rH), "5·[D8/1]")
    check("restriction of [S5/K]", render(rK), "3·[D8/1]")
    both = 3 * rH
    check("equal restrictions", (3 * rH).coeffs, (5 * rK).coeffs)
    check("common restriction", render(both), "15·[D8/1]")
    _emit(f"3·[S5/H] and 5·[S5/K] both restrict to {render(both)}, so "
          "restriction is far from injective.\n")
    _emit("The free orbit [D8/1] itself (8 points) extends to no transitive "
          "S5-set: that would need a subgroup of index 8.\n")
    feasible = G.order % 8 == 0
    order15 = subgroups_of_order(G, 15)
    _emit(f"  index 8 passes Lagrange (120 = 8·15): {feasible}; subgroups of "
          f"order 15 found: {len(order15)}.\n")
    check("Lagrange feasibility of index 8", feasible, True)
    check("subgroups of order 15", len(order15), 0)

    _emit(f"\nThe fusion S5 induces on D8 merges the {len(table)} conjugacy "
          f"classes of subgroups into {F.n_fclasses} classes:\n")
    check("fusion class count", F.n_fclasses, 7)
    for f in range(F.n_fclasses):
        members = " ".join(
            names[m] + ("*" if m == F.fn_rep[f] else "") for m in F.members(f))
        _emit(f"  [{F.fclass_label(f)}] order {F.fclass_order(f)}: {members}\n")
    _emit("The center Z fuses with the non-central double-transposition "
          "class ⟨rs⟩; Z stays fully normalized (normalizer 8 against 4).\n")
    check("center fully normalized", F.fn_rep[fz], zc)
    check("normalizer order at Z", table.normalizer_order(zc), 8)
    if partner:
        check("normalizer order at ⟨rs⟩", table.normalizer_order(partner[0]), 4)

    basis = alpha_basis(F)
    _emit("\nIrreducible stable sets, one per fusion class:\n")
    for f in range(F.n_fclasses):
        _emit(f"  α_{names[F.fn_rep[f]]} = {render(basis[f])}\n")
    alpha_z = basis[fz]
    check("α_Z", render(alpha_z), "[D8/Z] + 2·[D8/⟨rs⟩]")
    xi = mark(alpha_z).marks
    _emit(f"α_Z has the common mark {xi[zc]} on the fused class and "
          f"{xi[triv]} points in total.\n")
    check("common mark of α_Z on the fused class",
          (xi[zc], xi[partner[0]] if partner else None), (4, 4))
    check("total size of α_Z", xi[triv], 12)

    lam_h = decompose(rH, F)
    lam_k = decompose(rK, F)
    ftriv = F.fclass_of[triv]
    _emit(f"\nBoth restrictions are stable and decompose over the basis: "
          f"{render(rH)} = {lam_h[ftriv]}·α_1 and {render(rK)} = "
          f"{lam_k[ftriv]}·α_1.\n")
    want_h = tuple(5 if f == ftriv else 0 for f in range(F.n_fclasses))
    want_k = tuple(3 if f == ftriv else 0 for f in range(F.n_fclasses))
    check("decomposition of the first restriction", lam_h, want_h)
    check("decomposition of the second restriction", lam_k, want_k)

    if failures:
        _emit("\nDEMO MISMATCHES:\n")
        for line in failures:
            _emit(f"  {line}\n")
        return 1
    _emit("\nAll demo values match.\n")
    return 0


_HANDLERS = {
    "marks": _cmd_marks,
    "classes": _cmd_classes,
    "fusion": _cmd_fusion,
    "alpha": _cmd_alpha,
    "decompose": _cmd_decompose,
    "verify": _cmd_verify,
    "demo": _cmd_demo,
}


def run(cfg: RunConfig) -> int:
    if cfg.subcommand not in _HANDLERS:
        raise InputError(f"unknown subcommand {cfg.subcommand!r}")
    if cfg.fmt not in ("text", "csv", "json"):
        raise InputError(f"unknown format {cfg.fmt!r}")
    return _HANDLERS[cfg.subcommand](cfg)


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fusionburnside",
        description="Tables of marks, fusion classes, and stable-set bases "
                    "for finite groups at a prime.")
    sub = parser.add_subparsers(dest="subcommand", required=True)
    helps = {
        "marks": "table of marks of the Sylow p-subgroup",
        "classes": "conjugacy classes of subgroups of the Sylow p-subgroup",
        "fusion": "fusion classes induced by the ambient group",
        "alpha": "basis of irreducible stable elements",
        "decompose": "coordinates of a stable element over the basis",
        "verify": "run both short-exact-sequence verifications",
        "demo": "worked order-120 example with self-checked values",
    }
    for name in _SUBCOMMANDS:
        sp = sub.add_parser(name, help=helps[name])
        src = sp.add_mutually_exclusive_group()
        src.add_argument("--group", metavar="FILE",
                         help="group file (degree line, one generator per line)")
        src.add_argument("--catalog", metavar="NAME",
                         help="built-in group: " + ", ".join(sorted(CATALOG)))
        sp.add_argument("--prime", type=int, metavar="P",
                        help="the prime p (defaults to the catalog entry's "
                             "first prime, or the unique prime of a "
                             "prime-power order)")
        sp.add_argument("--format", dest="fmt", default="text",
                        choices=("text", "csv", "json"))
        sp.add_argument("--seed", type=int, default=DEFAULT_SEED,
                        help="seed for sampled verification "
                             f"(default {DEFAULT_SEED})")
        sp.add_argument("--element", metavar="FILE",
                        help="element file for decompose (CSV: header of "
                             "class labels, one row of integers)")
        sp.add_argument("--verbose", action="store_true",
                        help="add representative element lists")
    return parser


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    cfg = RunConfig(subcommand=args.subcommand, group=args.group,
                    catalog=args.catalog, prime=args.prime, fmt=args.fmt,
                    seed=args.seed, element=args.element,
                    verbose=args.verbose)
    try:
        return run(cfg)
    except InputError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except FusionBurnsideError as e:
        print(f"error: {e}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
