"""Command line interface: parse job files, run the verdict pipeline, and
expose the individual computations as subcommands.

Exit codes: 0 = report produced (any verdict), 2 = input error,
3 = unsupported case encountered.
"""

from __future__ import annotations

import argparse
import json
import sys
from importlib import resources

from .binforms import bform_root_action
from .cyclo import CycNum
from .dp4 import (
    SignedPerm,
    conjugate_in_WD5,
    invariant_lines,
    lattice_h1,
    line_permutation,
    orbits,
    pic_action,
)
from .errors import (
    NotASymmetry,
    SchemaError,
    TwoQuadricsError,
    UnsupportedCase,
)
from .groups import (
    MatrixGroup,
    closure,
    scalar_lift_search,
    verify_relations,
)
from .jsonio import (
    cycnum_to_json,
    mat_from_json,
    parse_job,
    relation_from_json,
    signedperm_from_json,
)
from .matrices import Mat, contragredient
from .pencils import (
    branch_permutation,
    degeneracy_form,
    equivariance,
    fixed_points_on_X,
    invariant_lines_abelian,
    is_smooth,
)
from .smith import IntMatrix
from .torsion import fixed_classes


def _load_fixture(name):
    base = resources.files("twoquadrics") / "fixtures" / name
    if not base.is_file():
        raise SchemaError(f"no such fixture: {name}")
    return base.read_text()


def _read_input(args):
    if getattr(args, "fixture", None):
        return _load_fixture(args.fixture)
    if getattr(args, "jobfile", None):
        with open(args.jobfile, "r", encoding="utf-8") as fh:
            return fh.read()
    raise SchemaError("provide a job file or --fixture")


def _perm_cycles(perm):
    """Cycle notation for a 1-indexed image tuple."""
    n = len(perm)
    seen = [False] * n
    parts = []
    for i in range(n):
        if seen[i] or perm[i] == i + 1:
            seen[i] = True
            continue
        cyc = []
        j = i
        while not seen[j]:
            seen[j] = True
            cyc.append(j + 1)
            j = perm[j] - 1
        parts.append("(" + " ".join(map(str, cyc)) + ")")
    return "".join(parts) or "()"


def _point_group(job, max_closure):
    """The group acting on points: contragredients of the matrix
    generators."""
    if job.group is None:
        return None
    gens = [(lab, contragredient(m)) for lab, m in job.group.generators]
    named = {k: contragredient(m) for k, m in job.group.named.items()}
    g = MatrixGroup(gens, named=named)
    closure(g, max_closure)
    return g


def _sign_vector(m: Mat):
    """Canonical +-1 sign vector of a diagonal sign matrix up to scalar,
    or None."""
    n = m.rows
    for i in range(n):
        for j in range(n):
            if i != j and not m.entries[i][j].is_zero():
                return None
    lead = m.entries[0][0]
    if lead.is_zero():
        return None
    inv = lead.inverse()
    signs = []
    for i in range(n):
        x = m.entries[i][i] * inv
        if x.is_one():
            signs.append(1)
        elif (-x).is_one():
            signs.append(-1)
        else:
            return None
    return tuple(signs)


def _branch_perms(job, max_closure):
    """Branch permutations for every generator, matrix or moebius-only."""
    perms = {}
    if job.branch is None:
        return perms
    if job.group is not None:
        for lab, m in job.group.generators:
            sym = equivariance(job.pencil, m)
            perms[lab] = branch_permutation(job.pencil, sym, job.branch)
    for lab, mo in job.moebius_generators:
        perms[lab] = bform_root_action(job.branch.form, job.branch.roots, mo)
    return perms


def run_report(job, max_closure=10000):
    """The verdict pipeline; returns a dict with status, evidence, and
    soundness conditions."""
    pencil = job.pencil
    evidence = []
    soundness = []

    # stage 1: smoothness
    smooth = is_smooth(pencil)
    evidence.append({"stage": 1, "smooth": smooth})
    if not smooth:
        return {
            "status": "INCONCLUSIVE",
            "evidence": evidence,
            "soundness_conditions": ["pencil is not smooth; theory not applicable"],
        }

    # stage 2: equivariance and branch permutations
    stage2 = []
    if job.group is not None:
        for lab, m in job.group.generators:
            sym = equivariance(pencil, m)
            (a, b), (c, d) = sym.action2x2
            stage2.append(
                {
                    "label": lab,
                    "action2x2": [[repr(a), repr(b)], [repr(c), repr(d)]],
                }
            )
    perms = _branch_perms(job, max_closure)
    for lab, p in perms.items():
        for entry in stage2:
            if entry["label"] == lab:
                entry["branch_permutation"] = _perm_cycles(p)
                break
        else:
            stage2.append(
                {"label": lab, "moebius_only": True,
                 "branch_permutation": _perm_cycles(p)}
            )
    evidence.append({"stage": 2, "generators": stage2})
    if job.moebius_generators:
        soundness.append(
            "generators given only by their pencil-parameter action cannot "
            "be checked on lines or fixed points"
        )

    if pencil.g != 2:
        evidence.append({"stage": 3, "skipped": "full verdict chain needs g = 2"})
        return {
            "status": "INCONCLUSIVE",
            "evidence": evidence,
            "soundness_conditions": soundness,
        }

    pg = _point_group(job, max_closure)

    # stage 3: invariant lines via cyclic subgroups
    certified_lines = []
    search_complete = False
    if pg is not None:
        for lab, a in pg.generators:
            sub = MatrixGroup([(lab, a)])
            try:
                rep = invariant_lines_abelian(pencil, sub)
            except UnsupportedCase as exc:
                evidence.append({"stage": 3, "subgroup": lab, "unsupported": str(exc)})
                continue
            if not rep.complete:
                continue
            search_complete = True
            kept = []
            for line in rep.lines:
                if all(
                    line.plane.image_under(b) == line.plane
                    for _, b in pg.generators
                ):
                    kept.append(line)
            evidence.append(
                {
                    "stage": 3,
                    "bounding_subgroup": lab,
                    "candidates": len(rep.lines),
                    "invariant_under_all": len(kept),
                }
            )
            certified_lines = kept
            break
        if search_complete and certified_lines and not job.moebius_generators:
            lines_json = [
                [[cycnum_to_json(x) for x in v] for v in line.plane.basis]
                for line in certified_lines
            ]
            evidence.append({"stage": 3, "lines": lines_json})
            soundness.append(
                "linearizability via the invariant-line criterion for "
                "threefold intersections of two quadrics"
            )
            return {
                "status": "LINEARIZABLE_CERTIFIED",
                "evidence": evidence,
                "soundness_conditions": soundness,
            }
        if search_complete and certified_lines and job.moebius_generators:
            soundness.append(
                "invariant lines found for the matrix generators only; "
                "certification withheld"
            )
    if pg is None:
        evidence.append({"stage": 3, "skipped": "no matrix generators"})
    elif not search_complete:
        evidence.append(
            {"stage": 3, "incomplete": "no cyclic subgroup bounded the search"}
        )

    # stage 4: free two-torsion translations (diagonal sign elements, k = 2)
    diag_ok = all(
        pencil.q1.gram.entries[i][j].is_zero()
        and pencil.q2.gram.entries[i][j].is_zero()
        for i in range(pencil.size)
        for j in range(pencil.size)
        if i != j
    )
    if not diag_ok:
        evidence.append({"stage": 4, "skipped": "pencil not diagonal"})
    elif pg is not None:
        for m, word in pg.element_words:
            signs = _sign_vector(m)
            if signs is None or len(set(signs)) == 1:
                continue
            k = signs.count(-1)
            if k > pencil.g + 1:
                k = len(signs) - k
            if k == 2:
                evidence.append(
                    {
                        "stage": 4,
                        "free_two_torsion": True,
                        "witness_word": list(word) or ["identity"],
                        "sign_vector": list(signs),
                    }
                )
                soundness.append(
                    "sign-change elements of translation type act freely on "
                    "the variety of lines"
                )
                return {
                    "status": "OBSTRUCTED",
                    "evidence": evidence,
                    "soundness_conditions": soundness,
                }

    # stage 5: theta obstruction (needs an iota-lift among the elements)
    iota_lift = None
    if diag_ok and pg is not None:
        for m, word in pg.element_words:
            signs = _sign_vector(m)
            if signs is None or len(set(signs)) == 1:
                continue
            k = signs.count(-1)
            if k > pencil.g + 1:
                k = len(signs) - k
            if k % 2 == 1:
                iota_lift = (word, signs)
                break
    if iota_lift is not None and job.branch is not None and perms:
        fixed = fixed_classes(list(perms.values()), "odd", pencil.g)
        evidence.append(
            {
                "stage": 5,
                "iota_lift_word": list(iota_lift[0]) or ["identity"],
                "branch_permutations": {
                    lab: _perm_cycles(p) for lab, p in perms.items()
                },
                "fixed_odd_classes": [repr(c) for c in fixed],
            }
        )
        soundness.append(
            "theta stage assumes the group contains a lift of the "
            "hyperelliptic involution, so fixed points of the torsor lie "
            "among the 16 two-torsion classes"
        )
        if not fixed:
            return {
                "status": "OBSTRUCTED",
                "evidence": evidence,
                "soundness_conditions": soundness,
            }
    elif iota_lift is None:
        evidence.append({"stage": 5, "skipped": "no iota-lift found"})
    else:
        evidence.append({"stage": 5, "skipped": "no branch data"})

    return {
        "status": "INCONCLUSIVE",
        "evidence": evidence,
        "soundness_conditions": soundness,
    }


def emit(verdict, fmt="human"):
    if fmt == "json":
        return json.dumps(verdict, indent=2, sort_keys=True)
    lines = [f"verdict: {verdict['status']}"]
    for item in verdict["evidence"]:
        lines.append(f"  stage {item.get('stage', '?')}: " + json.dumps(
            {k: v for k, v in item.items() if k != "stage"}, sort_keys=True))
    for cond in verdict["soundness_conditions"]:
        lines.append(f"  assumes: {cond}")
    return "\n".join(lines)


# -- subcommand implementations ----------------------------------------


def _cmd_report(args):
    job = parse_job(_read_input(args))
    verdict = run_report(job, max_closure=args.max_closure)
    print(emit(verdict, args.format))
    return 0


def _cmd_branch(args):
    job = parse_job(_read_input(args))
    f = degeneracy_form(job.pencil)
    out = {
        "degeneracy_form": repr(f),
        "smooth": is_smooth(job.pencil),
        "permutations": {
            lab: _perm_cycles(p)
            for lab, p in _branch_perms(job, args.max_closure).items()
        },
    }
    print(json.dumps(out, indent=2) if args.format == "json" else
          "\n".join(f"{k}: {v}" for k, v in out.items()))
    return 0


def _cmd_fixed_points(args):
    job = parse_job(_read_input(args))
    pg = _point_group(job, args.max_closure)
    if pg is None:
        raise SchemaError("no matrix generators")
    fx = fixed_points_on_X(job.pencil, pg)
    out = {
        "points": [[repr(x) for x in p] for p in fx.points],
        "lines_on_x": [
            [[repr(x) for x in v] for v in ln.plane.basis] for ln in fx.lines_on_x
        ],
        "higher_dimensional": [
            {"projective_dim": s.dim - 1} for s, _ in fx.curves
        ],
    }
    print(json.dumps(out, indent=2))
    return 0


def _cmd_invariant_lines(args):
    job = parse_job(_read_input(args))
    pg = _point_group(job, args.max_closure)
    if pg is None:
        raise SchemaError("no matrix generators")
    rep = invariant_lines_abelian(job.pencil, pg)
    out = {
        "lines": [
            [[repr(x) for x in v] for v in ln.plane.basis] for ln in rep.lines
        ],
        "families": list(rep.families),
        "complete": rep.complete,
    }
    print(json.dumps(out, indent=2, default=repr))
    return 0


def _cmd_theta(args):
    job = parse_job(_read_input(args))
    perms = _branch_perms(job, args.max_closure)
    if not perms:
        raise SchemaError("job has no branch data")
    fixed = fixed_classes(list(perms.values()), "odd", job.pencil.g)
    out = {
        "permutations": {lab: _perm_cycles(p) for lab, p in perms.items()},
        "fixed_odd_classes": [repr(c) for c in fixed],
        "empty": not fixed,
    }
    print(json.dumps(out, indent=2))
    return 0


def _cmd_dp4(args):
    obj = json.loads(_read_input(args))
    out = {}
    elements = {}
    for name, sp in obj.get("elements", {}).items():
        s = signedperm_from_json(sp, f"$.elements.{name}")
        elements[name] = s
        a = pic_action(s)
        out[name] = {
            "order": s.order(),
            "cycle_type": list(s.cycle_type()),
            "pic_action": [list(r) for r in a.entries],
            "invariant_lines": [list(l) for l in invariant_lines(s)],
            "orbit_sizes": sorted(len(o) for o in orbits([s])),
            "lattice_h1": list(lattice_h1(a, s.order())),
        }
    for pair in obj.get("conjugacy", []):
        a, b = elements[pair[0]], elements[pair[1]]
        ok, wit = conjugate_in_WD5(a, b)
        out.setdefault("conjugacy", []).append(
            {
                "pair": pair,
                "conjugate": ok,
                "witness": {"perm": list(wit.perm), "signs": list(wit.signs)}
                if wit
                else None,
            }
        )
    for name, mat in obj.get("regressions", {}).items():
        m = IntMatrix(mat["matrix"])
        power = m ** mat.get("power", 4)
        out.setdefault("regressions", {})[name] = {
            "power_diagonal": [power.entries[i][i] for i in range(power.rows)],
            "matches_expected": [
                power.entries[i][i] for i in range(power.rows)
            ]
            == mat.get("expected_diagonal"),
        }
    print(json.dumps(out, indent=2))
    return 0


def _cmd_identities(args):
    from .torsion import excess_identity, section_count_identity

    out = {"section_count": [], "excess": []}
    for g in range(1, args.g_max + 1):
        r = section_count_identity(g)
        out["section_count"].append(
            {"g": g, "lhs": r["lhs"], "rhs": r["rhs"], "equal": r["equal"]}
        )
    for g in range(2, args.g_max + 3):
        e = excess_identity(g)
        out["excess"].append(
            {
                "g": g,
                "value": str(e["closed"]),
                "equal": e["equal"],
            }
        )
    print(json.dumps(out, indent=2))
    return 0


def _cmd_lift(args):
    obj = json.loads(_read_input(args))
    rels_json = obj.get("relations", [])
    out = {}
    for name, repdata in obj.get("representations", {}).items():
        gens = [
            (g["label"], mat_from_json(g["matrix"], f"$.{name}.generators"))
            for g in repdata["generators"]
        ]
        named = {
            k: mat_from_json(m, f"$.{name}.named.{k}")
            for k, m in repdata.get("named", {}).items()
        }
        group = MatrixGroup(gens, named=named)
        rels = [relation_from_json(r, "$.relations") for r in rels_json]
        closure(group, args.max_closure)
        reports = verify_relations(group, rels, mode="up_to_scalar")
        res = scalar_lift_search(group, rels, args.scalar_order)
        out[name] = {
            "closure_order": group.order(),
            "relation_scalars": [repr(r.scalar) for r in reports],
            "lift": {k: repr(v) for k, v in res["lift"].items()}
            if "lift" in res
            else None,
            "obstructed": "obstruction" in res,
            "tested": res["tested"],
            "scalar_order": res["scalar_order"],
        }
    print(json.dumps(out, indent=2))
    return 0


def build_parser():
    parser = argparse.ArgumentParser(
        prog="twoquadrics",
        description="Equivariant geometry of pencils of quadrics, exactly.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    commands = {
        "report": _cmd_report,
        "branch": _cmd_branch,
        "fixed-points": _cmd_fixed_points,
        "invariant-lines": _cmd_invariant_lines,
        "theta": _cmd_theta,
        "dp4": _cmd_dp4,
        "identities": _cmd_identities,
        "lift": _cmd_lift,
    }
    for name, fn in commands.items():
        p = sub.add_parser(name)
        p.add_argument("jobfile", nargs="?", help="job JSON file")
        p.add_argument("--fixture", help="name of a shipped fixture")
        p.add_argument("--format", choices=("human", "json"), default="human")
        p.add_argument("--max-closure", type=int, default=10000)
        if name == "identities":
            p.add_argument("--g-max", type=int, default=6)
        if name == "lift":
            p.add_argument("--scalar-order", type=int, default=8)
        p.set_defaults(fn=fn)
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except (SchemaError, NotASymmetry, FileNotFoundError) as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return 2
    except UnsupportedCase as exc:
        print(f"unsupported: {exc}", file=sys.stderr)
        return 3
    except TwoQuadricsError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
