"""Command line front end.

    python -m cosetcat tables --preset s5
    python -m cosetcat verify --preset d6 --suite all
    python -m cosetcat search --group S3 --subgroup "(12)" --require contains_e,left_division
    python -m cosetcat export --preset d6 --what H --out h_d6.json

A system is given by ``--preset``, by ``--system FILE`` (JSON with keys
``group``, ``subgroup``, ``transversal`` and optional ``names``), or by
``--group``/``--subgroup``/``--transversal``.  Element lists are separated by
``;`` and each element is either 1-based cycle notation or a 0-based image
array such as ``[1,0,2]``.

Exit codes: 0 when every applicable check passes (skips included), 1 on a
failed check, 2 on usage or parse errors.
"""

from __future__ import annotations

import argparse
import json
import os
import re
import sys
import time

import numpy as np

from .linear import set_threads
from .permgroup import FiniteGroup, Permutation, cyclic, dihedral, group_closure, symmetric
from .presets import PRESETS, preset
from .report import Report
from .transversal import (
    CosetSystem,
    build_coset_system,
    classify,
    reconstruct_group,
    search_transversals,
    verify_matched_pair,
)

SUITES = ("transversal", "catC", "H", "double", "catD", "hopf", "all")
EXPORTS = ("tables", "classify", "H", "D", "circ", "report")
PREDICATES = {
    "contains_e": lambda cs, st: st.contains_group_identity,
    "left_division": lambda cs, st: st.has_left_division,
    "right_division": lambda cs, st: st.has_right_division,
    "two_sided_identity": lambda cs, st: st.has_two_sided_identity,
    "subgroup": lambda cs, st: st.is_subgroup,
    "not_subgroup": lambda cs, st: not st.is_subgroup,
    "tau_trivial": lambda cs, st: st.tau_trivial,
    "tau_nontrivial": lambda cs, st: not st.tau_trivial,
}
# beyond this many source vectors an unbudgeted sweep is replaced by a spot check
EXHAUSTIVE_LIMIT = 50_000_000


class UsageError(Exception):
    pass


# -- parsing


def parse_element(text: str, degree: int) -> Permutation:
    text = text.strip()
    if text.startswith("["):
        try:
            images = json.loads(text)
        except json.JSONDecodeError as exc:
            raise UsageError(f"bad image array {text!r}: {exc}") from None
        if len(images) != degree:
            raise UsageError(f"image array {text!r} has length {len(images)}, expected {degree}")
        try:
            return Permutation(images)
        except ValueError as exc:
            raise UsageError(f"{text!r}: {exc}") from None
    try:
        return Permutation.parse(text, degree)
    except ValueError as exc:
        raise UsageError(f"cannot parse {text!r}: {exc}") from None


def split_list(text: str) -> list[str]:
    return [t for t in (s.strip() for s in text.split(";")) if t]


def parse_group(text: str, degree: int | None) -> FiniteGroup:
    m = re.fullmatch(r"\s*([SDC])(\d+)\s*", text)
    if m:
        kind, n = m.group(1), int(m.group(2))
        if n < 1:
            raise UsageError(f"bad group size in {text!r}")
        return {"S": symmetric, "D": dihedral, "C": cyclic}[kind](n)
    gens = split_list(text)
    if not gens:
        raise UsageError("empty group description")
    if degree is None:
        digits = [int(d) for d in re.findall(r"\d+", text)]
        degree = max(digits) if digits else 1
    return group_closure([parse_element(g, degree) for g in gens], degree)


def parse_indices(group: FiniteGroup, text: str) -> list[int]:
    if text.strip().startswith("stab:"):
        return group.stabilizer(int(text.strip()[5:]) - 1).tolist()
    out = []
    for t in split_list(text):
        p = parse_element(t, group.degree)
        if p not in group:
            raise UsageError(f"{t} is not in the group")
        out.append(group.idx(p))
    return out


def system_from_json(data: dict) -> CosetSystem:
    from .permgroup import group_from_dict

    try:
        X = group_from_dict(data["group"])
        sub = data["subgroup"]
        sub = [sub] if isinstance(sub, str) else sub
        if len(sub) == 1 and sub[0].startswith("stab:"):
            G = parse_indices(X, sub[0])
        else:
            G = X.closure_indices([X.idx(parse_element(s, X.degree)) for s in sub])
        M = [X.idx(parse_element(s, X.degree)) for s in data["transversal"]]
        names = {parse_element(v, X.degree): k for k, v in data.get("names", {}).items()}
    except (KeyError, TypeError) as exc:
        raise UsageError(f"bad system file: missing or malformed {exc}") from None
    try:
        return build_coset_system(X, G, M, names)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def load_system(args) -> CosetSystem:
    given = [args.preset is not None, args.system is not None, args.group is not None]
    if sum(given) != 1:
        raise UsageError("give exactly one of --preset, --system or --group")
    if args.preset is not None:
        if args.preset not in PRESETS:
            raise UsageError(f"unknown preset {args.preset!r}; choose from {', '.join(sorted(PRESETS))}")
        return preset(args.preset)
    if args.system is not None:
        try:
            with open(args.system) as fh:
                data = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise UsageError(f"cannot read {args.system}: {exc}") from None
        return system_from_json(data)
    X = parse_group(args.group, args.degree)
    if args.subgroup is None or args.transversal is None:
        raise UsageError("--group needs --subgroup and --transversal")
    G = X.closure_indices(parse_indices(X, args.subgroup)) if not args.subgroup.startswith("stab:") else parse_indices(X, args.subgroup)
    M = parse_indices(X, args.transversal)
    try:
        return build_coset_system(X, G, M)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


# -- tables


def format_table(row_labels, col_labels, cells, corner: str) -> str:
    width = max(len(s) for s in [corner, *row_labels, *col_labels, *(c for r in cells for c in r)])
    lines = [" ".join([corner.ljust(width), "|"] + [c.ljust(width) for c in col_labels]).rstrip()]
    lines.append("-" * len(lines[0]))
    for lab, row in zip(row_labels, cells):
        lines.append(" ".join([lab.ljust(width), "|"] + [c.ljust(width) for c in row]).rstrip())
    return "\n".join(lines)


def tables(cs: CosetSystem, actions: bool = False) -> dict:
    """Row ``s`` column ``t`` entries ``s . t`` and ``tau(s, t)`` (plus ``|>``, ``<|``) as labels."""
    ms = [cs.m_label(s) for s in range(cs.nM)]
    gs = [cs.g_label(u) for u in range(cs.nG)]
    out = {
        "M": ms,
        "G": gs,
        "dot": [[cs.m_label(v) for v in row] for row in cs.dot],
        "tau": [[cs.g_label(v) for v in row] for row in cs.tau],
    }
    if actions:
        out["lact"] = [[cs.g_label(v) for v in row] for row in cs.lact]
        out["ract"] = [[cs.m_label(v) for v in row] for row in cs.ract]
    return out


def render_tables(cs: CosetSystem, t: dict) -> str:
    parts = [repr(cs), format_table(t["M"], t["M"], t["dot"], "."), format_table(t["M"], t["M"], t["tau"], "tau")]
    if "lact" in t:
        parts.append(format_table(t["M"], t["G"], t["lact"], "|>"))
        parts.append(format_table(t["M"], t["G"], t["ract"], "<|"))
    return "\n\n".join(parts)


# -- suites


def _rng():
    return np.random.default_rng(int(os.environ.get("TRANSVERSAL_SEED", "0")))


def suite_transversal(cs, args) -> list[Report]:
    rep = verify_matched_pair(cs)
    st = classify(cs)
    info = Report("classification")
    for k, v in st.as_dict().items():
        info.add(f"{k} = {v}", True, 1)
    return [rep, info, reconstruct_group(cs).report]


def suite_catC(cs, args) -> list[Report]:
    from .cat_c import (
        m_regular_object,
        random_morphism,
        tensor,
        validate_object,
        verify_naturality,
        verify_pentagon,
        verify_snake,
        verify_triangle,
    )

    R = m_regular_object(cs)
    rep = Report("tensor category")
    validate_object(R, rep)
    validate_object(tensor(R, R), rep)
    verify_pentagon(R, R, R, R, rep)
    verify_triangle(R, R, rep)
    rng = _rng()
    f = random_morphism(R, R, rng, name="f")
    g = random_morphism(R, R, rng, name="g")
    h = random_morphism(R, R, rng, name="h")
    if f is None:
        rep.skip("naturality", "no nonzero morphisms R -> R")
    else:
        verify_naturality(f, g, h, rep)
    verify_snake(R, rep)
    return [rep]


def suite_H(cs, args) -> list[Report]:
    from .algebra_h import build_H, verify_H

    try:
        H = build_H(cs)
    except ValueError as exc:
        rep = Report("algebra H")
        rep.skip("algebra H", str(exc))
        return [rep]
    budget = args.budget
    if budget is None and H.dim ** 3 > EXHAUSTIVE_LIMIT:
        budget = 200_000
    return [verify_H(H, budget=budget, rng=_rng())]


def _double(cs):
    from .double import build_double

    return build_double(cs)


def suite_double(cs, args) -> list[Report]:
    from .cat_d import conjugation_dobject, verify_hat_action
    from .double import verify_double

    ds = _double(cs)
    reps = [verify_double(ds)]
    if cs.e_in_m < 0:
        rep = Report("X-action")
        rep.skip("X-action", "the group identity is not in M")
        return reps + [rep]
    reps.append(verify_hat_action(conjugation_dobject(ds)))
    D = _try_D(ds)
    if isinstance(D, str):
        rep = Report("X-action on D")
        rep.skip("X-action on D", D)
    else:
        pairs = args.budget
        if pairs is None and D.dim * ds.n * ds.n > EXHAUSTIVE_LIMIT:
            pairs = 2000
        rep = verify_hat_action(D.module, pairs=pairs, rng=_rng())
    return reps + [rep]


def _try_D(ds):
    from .hopf_d import build_D

    try:
        return build_D(ds)
    except ValueError as exc:
        return str(exc)


def _objects(ds, names: str):
    from .cat_d import conjugation_dobject, unit_dobject

    out = []
    for tok in [t.strip() for t in names.split(",")]:
        if tok == "D":
            D = _try_D(ds)
            if isinstance(D, str):
                raise ValueError(D)
            out.append(D.module)
        elif tok == "Ad":
            out.append(conjugation_dobject(ds))
        elif tok == "k":
            out.append(unit_dobject(ds))
        else:
            raise UsageError(f"unknown object {tok!r}; use D, Ad or k")
    if len(out) != 3:
        raise UsageError("--objects needs three comma-separated objects")
    return out


def suite_catD(cs, args) -> list[Report]:
    from .cat_d import verify_braided

    rep = Report("braided category")
    if cs.e_in_m < 0:
        rep.skip("braided category", "the group identity is not in M")
        return [rep]
    ds = _double(cs)
    names = args.objects or "D,D,D"
    try:
        objs = _objects(ds, names)
    except ValueError as exc:
        if args.objects:
            rep.skip("braided category", str(exc))
            return [rep]
        objs = _objects(ds, "Ad,Ad,Ad")
        rep.skip("objects D", f"{exc}; using Ad instead")
    V, W, Z = objs
    if V.dim * W.dim * Z.dim > EXHAUSTIVE_LIMIT and not args.objects:
        rep.skip("objects D", f"dimension {V.dim} is too large for an exhaustive sweep; using Ad instead")
        objs = _objects(ds, "Ad,Ad,Ad")
        V, W, Z = objs
    if V.dim * W.dim * Z.dim > EXHAUSTIVE_LIMIT:
        rep.skip("braided category", f"objects of dimension {V.dim} are too large for an exhaustive sweep")
        return [rep]
    verify_braided(objs, rep)
    return [rep]


def suite_hopf(cs, args) -> list[Report]:
    from .hopf_d import spot_check_hopf, verify_hopf

    rep = Report("Hopf algebra D")
    if cs.e_in_m < 0:
        rep.skip("Hopf algebra D", "the group identity is not in M")
        return [rep]
    D = _try_D(_double(cs))
    if isinstance(D, str):
        rep.skip("Hopf algebra D", D)
        return [rep]
    if args.budget is None and D.dim ** 3 > EXHAUSTIVE_LIMIT:
        rep = spot_check_hopf(D, rng=_rng())
        rep.skip("exhaustive sweep", f"dimension {D.dim} is too large; pass --budget for a sampled run")
        return [rep]
    return [verify_hopf(D, budget=args.budget, rng=_rng())]


SUITE_FUNCS = {
    "transversal": suite_transversal,
    "catC": suite_catC,
    "H": suite_H,
    "double": suite_double,
    "catD": suite_catD,
    "hopf": suite_hopf,
}


def run_suite(cs: CosetSystem, suite: str, args) -> list[Report]:
    names = list(SUITE_FUNCS) if suite == "all" else [suite]
    reps = []
    for name in names:
        t0 = time.perf_counter()
        for r in SUITE_FUNCS[name](cs, args):
            r.seconds = time.perf_counter() - t0
            reps.append(r)
    return reps


# -- commands


def cmd_tables(args) -> int:
    cs = load_system(args)
    t = tables(cs, args.actions)
    if args.json:
        print(json.dumps(t, indent=1))
    else:
        print(render_tables(cs, t))
        st = classify(cs)
        print()
        print("\n".join(f"{k}: {v}" for k, v in st.as_dict().items()))
    return 0


def cmd_verify(args) -> int:
    cs = load_system(args)
    reps = run_suite(cs, args.suite, args)
    passed = all(r.passed for r in reps)
    if args.json:
        print(json.dumps({"system": repr(cs), "suite": args.suite, "passed": passed,
                          "reports": [r.to_dict() for r in reps]}, indent=1))
    else:
        print(repr(cs))
        for r in reps:
            print(r)
    return 0 if passed else 1


def cmd_search(args) -> int:
    if args.group is None or args.subgroup is None:
        raise UsageError("search needs --group and --subgroup")
    X = parse_group(args.group, args.degree)
    G = parse_indices(X, args.subgroup) if args.subgroup.startswith("stab:") else X.closure_indices(parse_indices(X, args.subgroup))
    preds = []
    for tok in [t.strip() for t in (args.require or "").split(",") if t.strip()]:
        if tok not in PREDICATES:
            raise UsageError(f"unknown predicate {tok!r}; choose from {', '.join(PREDICATES)}")
        preds.append(PREDICATES[tok])

    def keep(cs):
        st = classify(cs)
        return all(p(cs, st) for p in preds)

    res = search_transversals(X, G, keep, limit=args.limit, budget=args.budget)
    found = [[cs.x_label(m) for m in cs.m_elems] for cs in res.systems]
    if args.json:
        print(json.dumps({"examined": res.examined, "partial": res.partial, "transversals": found}, indent=1))
    else:
        for m in found:
            print("; ".join(m))
        print(f"# {len(found)} found, {res.examined} examined" + (" (budget exhausted)" if res.partial else ""))
    return 0


def export_data(cs: CosetSystem, what: str, args) -> dict:
    if what == "tables":
        return tables(cs, actions=True)
    if what == "classify":
        return classify(cs).as_dict()
    if what == "H":
        from .algebra_h import build_H

        H = build_H(cs)
        i, j = np.divmod(np.arange(H.dim * H.dim), H.dim)
        k = H.product_images(i, j)
        live = k >= 0
        return {
            "basis": [[cs.m_label(a), cs.g_label(b)] for a, b in zip(H.s_of, H.u_of)],
            "grade": [cs.m_label(g) for g in H.grades],
            "mu": [[int(a), int(b), int(c)] for a, b, c in zip(i[live], j[live], k[live])],
            "unit": sorted(H.unit_vector()),
            "counit": [int(b) for b in np.flatnonzero(H.s_of == cs.e_in_m)],
        }
    if what == "D":
        D = _try_D(_double(cs))
        if isinstance(D, str):
            raise ValueError(D)
        return D.structure_constants()
    if what == "circ":
        ds = _double(cs)
        return {"elements": [cs.x_label(y) for y in range(ds.n)], "circ": ds.circ.tolist()}
    if what == "report":
        reps = run_suite(cs, args.suite or "all", args)
        return {"system": repr(cs), "passed": all(r.passed for r in reps), "reports": [r.to_dict() for r in reps]}
    raise UsageError(f"unknown export {what!r}; choose from {', '.join(EXPORTS)}")


def cmd_export(args) -> int:
    cs = load_system(args)
    if args.what not in EXPORTS:
        raise UsageError(f"unknown export {args.what!r}; choose from {', '.join(EXPORTS)}")
    try:
        data = export_data(cs, args.what, args)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    text = json.dumps(data, indent=1, sort_keys=True)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="cosetcat", description="Tensor categories from left coset representatives.")
    sub = p.add_subparsers(dest="command", required=True)

    def system_args(sp):
        sp.add_argument("--preset", help=f"one of {', '.join(sorted(PRESETS))}")
        sp.add_argument("--system", help="JSON file describing the system")
        sp.add_argument("--group", help="S<n>, D<n>, C<n> or ';'-separated generators")
        sp.add_argument("--degree", type=int, help="degree for generator lists")
        sp.add_argument("--subgroup", help="';'-separated generators, or stab:<point>")
        sp.add_argument("--transversal", help="';'-separated representatives")
        sp.add_argument("--json", action="store_true", help="machine-readable output")
        sp.add_argument("--threads", type=int, default=None, help="worker threads for sweeps")
        sp.add_argument("--budget", type=int, default=None, help="cap on sampled basis vectors per sweep")

    t = sub.add_parser("tables", help="print the dot and tau tables")
    system_args(t)
    t.add_argument("--actions", action="store_true", help="also print |> and <|")
    t.set_defaults(func=cmd_tables)

    v = sub.add_parser("verify", help="run a verification suite")
    system_args(v)
    v.add_argument("--suite", default="all", choices=SUITES)
    v.add_argument("--objects", help="three of D, Ad, k for the braided suite, e.g. D,D,D")
    v.set_defaults(func=cmd_verify)

    s = sub.add_parser("search", help="enumerate transversals with given properties")
    system_args(s)
    s.add_argument("--require", help=f"comma-separated predicates: {', '.join(PREDICATES)}")
    s.add_argument("--limit", type=int, default=None)
    s.set_defaults(func=cmd_search)

    e = sub.add_parser("export", help="write structure data as JSON")
    system_args(e)
    e.add_argument("--what", required=True, help=f"one of {', '.join(EXPORTS)}")
    e.add_argument("--out", help="output file (default stdout)")
    e.add_argument("--suite", default=None, choices=SUITES, help="suite for --what report")
    e.add_argument("--objects", help=argparse.SUPPRESS)
    e.set_defaults(func=cmd_export)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0) and 2
    set_threads(args.threads)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
